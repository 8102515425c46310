#include "revival/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace revival::cli
{

namespace
{

constexpr std::size_t max_list_length = 1000000;

std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r");
	if(first == std::string_view::npos)
	{
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r");
	return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
	std::vector<std::string_view> parts;
	std::size_t start = 0;
	while(true)
	{
		const auto pos = s.find(sep, start);
		parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
		if(pos == std::string_view::npos)
		{
			return parts;
		}
		start = pos + 1;
	}
}

template <typename T>
std::optional<T> parse_number(std::string_view s)
{
	s = trim(s);
	if(!s.empty() && s.front() == '+')
	{
		s.remove_prefix(1);
	}
	T value{};
	const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
	if(s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
	{
		return std::nullopt;
	}
	if constexpr(std::is_floating_point_v<T>)
	{
		if(!std::isfinite(value))
		{
			return std::nullopt;
		}
	}
	return value;
}

std::optional<bool> parse_bool(std::string_view s)
{
	std::string v{trim(s)};
	std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
	if(v == "true" || v == "1" || v == "yes" || v == "on")
	{
		return true;
	}
	if(v == "false" || v == "0" || v == "no" || v == "off")
	{
		return false;
	}
	return std::nullopt;
}

double round_significant(double v)
{
	std::array<char, 64> buf{};
	const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
	double out = 0.0;
	std::from_chars(buf.data(), res.ptr, out);
	return out == 0.0 ? 0.0 : out;
}

const KeySpec* find_spec(std::string_view key)
{
	for(const KeySpec& spec : config_schema())
	{
		if(spec.key == key)
		{
			return &spec;
		}
	}
	return nullptr;
}

void check_value(const KeySpec& spec, const std::string& value)
{
	bool ok = true;
	switch(spec.kind)
	{
	case ValueKind::Int: ok = parse_number<int>(value).has_value(); break;
	case ValueKind::Real: ok = parse_number<double>(value).has_value(); break;
	case ValueKind::Bool: ok = parse_bool(value).has_value(); break;
	case ValueKind::IntList: parse_int_list(value); break;
	case ValueKind::RealList: parse_real_list(value); break;
	case ValueKind::Text: ok = !trim(value).empty(); break;
	}
	if(!ok)
	{
		static const std::array<const char*, 6> names{"an integer", "a number", "true or false", "an integer list",
		                                              "a number list", "non-empty text"};
		throw ConfigError(std::string(spec.key) + " must be " + names[static_cast<std::size_t>(spec.kind)] +
		                  ", got '" + value + "'");
	}
}

const std::vector<Command> all_commands{Command::Dynamics, Command::FidelityScan, Command::Wigner,
                                        Command::Metrology};

} // namespace

std::string_view command_name(Command command)
{
	switch(command)
	{
	case Command::Dynamics: return "dynamics";
	case Command::FidelityScan: return "fidelity-scan";
	case Command::Wigner: return "wigner";
	case Command::Metrology: return "metrology";
	}
	return "unknown";
}

Command parse_command(std::string_view name)
{
	for(const Command c : all_commands)
	{
		if(command_name(c) == name)
		{
			return c;
		}
	}
	throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<KeySpec>& config_schema()
{
	using C = Command;
	static const std::vector<KeySpec> schema{
	    {"model.N", ValueKind::Int, {C::Dynamics, C::Wigner}, "number of spins"},
	    {"model.zeta_sq", ValueKind::Real, {C::Dynamics, C::Wigner}, "|zeta|^2"},
	    {"model.x", ValueKind::Real, {C::Dynamics, C::Wigner}, "|zeta|^2 / N, alternative to zeta_sq"},
	    {"model.zeta_phase", ValueKind::Real, {C::Dynamics, C::Wigner}, "arg zeta in radians"},
	    {"model.omega", ValueKind::Real, {C::Dynamics}, "big-spin frequency"},
	    {"model.qubit_omega", ValueKind::Real, {C::Dynamics}, "qubit frequency"},
	    {"model.lambda", ValueKind::Real, all_commands, "coupling; times are in units of 1/lambda"},
	    {"time.t_start", ValueKind::Real, {C::Dynamics, C::FidelityScan}, "first sample time"},
	    {"time.t_end", ValueKind::Real, {C::Dynamics, C::FidelityScan}, "last sample time (absolute)"},
	    {"time.t_end_over_t0", ValueKind::Real, {C::Dynamics, C::FidelityScan}, "last sample time in units of t0"},
	    {"time.samples", ValueKind::Int, {C::Dynamics, C::FidelityScan}, "number of time samples"},
	    {"sweep.N_list", ValueKind::IntList, {C::FidelityScan, C::Metrology}, "surface rows"},
	    {"sweep.x_list", ValueKind::RealList, {C::FidelityScan, C::Metrology}, "surface columns |zeta|^2 / N"},
	    {"sweep.N_max", ValueKind::Int, {C::FidelityScan, C::Metrology}, "largest N of the default row list"},
	    {"series.N_list", ValueKind::IntList, {C::FidelityScan}, "N values of the fidelity-vs-time series"},
	    {"series.zeta_sq", ValueKind::Real, {C::FidelityScan}, "|zeta|^2 of the fidelity-vs-time series"},
	    {"cross.x", ValueKind::Real, {C::Metrology}, "|zeta|^2 / N of the cross-section"},
	    {"cross.N_min", ValueKind::Int, {C::Metrology}, "first N of the cross-section"},
	    {"cross.N_max", ValueKind::Int, {C::Metrology}, "last N of the cross-section"},
	    {"sphere.n_theta", ValueKind::Int, {C::Wigner}, "polar nodes (Gauss-Legendre)"},
	    {"sphere.n_phi", ValueKind::Int, {C::Wigner}, "azimuthal nodes (uniform)"},
	    {"jc.cutoff", ValueKind::Int, {C::Dynamics}, "Fock cutoff of the JC reference"},
	    {"run.jc", ValueKind::Bool, {C::Dynamics}, "also evolve the JC reference"},
	    {"run.out", ValueKind::Text, all_commands, "output directory"},
	    {"run.workers", ValueKind::Int, all_commands, "worker threads for sweeps"},
	    {"run.oracle", ValueKind::Bool, all_commands, "cross-check against dense diagonalization"},
	};
	return schema;
}

std::string describe_schema()
{
	std::ostringstream out;
	static const std::array<const char*, 6> kinds{"int", "real", "bool", "int list", "real list", "text"};
	for(const KeySpec& spec : config_schema())
	{
		out << spec.key << " (" << kinds[static_cast<std::size_t>(spec.kind)] << "; ";
		for(std::size_t k = 0; k < spec.commands.size(); ++k)
		{
			out << (k ? ", " : "") << command_name(spec.commands[k]);
		}
		out << "): " << spec.doc << '\n';
	}
	return out.str();
}

void RunConfig::set(const std::string& key, const std::string& value, const std::string& origin)
{
	const KeySpec* spec = find_spec(key);
	if(spec == nullptr)
	{
		throw ConfigError(origin + ": unknown key '" + key + "'");
	}
	if(std::find(spec->commands.begin(), spec->commands.end(), command_) == spec->commands.end())
	{
		throw ConfigError(origin + ": key '" + key + "' does not apply to " + std::string(command_name(command_)));
	}
	const std::string text{trim(value)};
	try
	{
		check_value(*spec, text);
	}
	catch(const ConfigError& e)
	{
		throw ConfigError(origin + ": " + e.what());
	}
	values_[key] = text;
}

void RunConfig::merge_file(const std::string& path)
{
	std::ifstream in(path);
	if(!in)
	{
		throw ConfigError("cannot read config file '" + path + "'");
	}
	std::ostringstream text;
	text << in.rdbuf();
	merge_text(text.str(), path);
}

void RunConfig::merge_text(std::string_view text, const std::string& origin)
{
	std::string section;
	std::map<std::string, int> seen;
	int line_no = 0;
	for(std::string_view raw : split(text, '\n'))
	{
		++line_no;
		const auto comment = raw.find_first_of("#;");
		const std::string_view line = trim(raw.substr(0, comment));
		const std::string where = origin + ":" + std::to_string(line_no);
		if(line.empty())
		{
			continue;
		}
		if(line.front() == '[')
		{
			if(line.back() != ']' || trim(line.substr(1, line.size() - 2)).empty())
			{
				throw ConfigError(where + ": malformed section header");
			}
			section = trim(line.substr(1, line.size() - 2));
			continue;
		}
		const auto eq = line.find('=');
		if(eq == std::string_view::npos)
		{
			throw ConfigError(where + ": expected key = value");
		}
		if(section.empty())
		{
			throw ConfigError(where + ": key outside any [section]");
		}
		const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
		if(seen.count(key))
		{
			throw ConfigError(where + ": duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) +
			                  ")");
		}
		seen[key] = line_no;
		set(key, std::string(line.substr(eq + 1)), where);
	}
}

int RunConfig::get_int(const std::string& key, int fallback) const
{
	return find_int(key).value_or(fallback);
}

double RunConfig::get_real(const std::string& key, double fallback) const
{
	return find_real(key).value_or(fallback);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? fallback : *parse_bool(it->second);
}

std::string RunConfig::get_text(const std::string& key, const std::string& fallback) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? fallback : it->second;
}

std::optional<double> RunConfig::find_real(const std::string& key) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? std::nullopt : parse_number<double>(it->second);
}

std::optional<int> RunConfig::find_int(const std::string& key) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? std::nullopt : parse_number<int>(it->second);
}

std::vector<int> RunConfig::get_int_list(const std::string& key, const std::vector<int>& fallback) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? fallback : parse_int_list(it->second);
}

std::vector<double> RunConfig::get_real_list(const std::string& key, const std::vector<double>& fallback) const
{
	const auto it = values_.find(key);
	return it == values_.end() ? fallback : parse_real_list(it->second);
}

std::vector<int> parse_int_list(std::string_view text)
{
	const auto range = split(text, ':');
	std::vector<int> out;
	if(range.size() == 3)
	{
		const auto start = parse_number<int>(range[0]);
		const auto stop = parse_number<int>(range[1]);
		const auto step = parse_number<int>(range[2]);
		if(!start || !stop || !step || *step <= 0 || *stop < *start)
		{
			throw ConfigError("bad integer range '" + std::string(text) + "' (want start:stop:step, step > 0)");
		}
		for(long long v = *start; v <= *stop; v += *step)
		{
			out.push_back(static_cast<int>(v));
		}
		return out;
	}
	if(range.size() != 1)
	{
		throw ConfigError("bad integer list '" + std::string(text) + "'");
	}
	for(const std::string_view item : split(text, ','))
	{
		const auto v = parse_number<int>(item);
		if(!v)
		{
			throw ConfigError("bad integer '" + std::string(item) + "' in list '" + std::string(text) + "'");
		}
		out.push_back(*v);
	}
	return out;
}

std::vector<double> parse_real_list(std::string_view text)
{
	const auto range = split(text, ':');
	std::vector<double> out;
	if(range.size() == 3)
	{
		const auto start = parse_number<double>(range[0]);
		const auto stop = parse_number<double>(range[1]);
		const auto step = parse_number<double>(range[2]);
		if(!start || !stop || !step || *step <= 0.0 || *stop < *start)
		{
			throw ConfigError("bad range '" + std::string(text) + "' (want start:stop:step, step > 0)");
		}
		const double count = std::floor((*stop - *start) / *step + 1e-9);
		if(count + 1 > double(max_list_length))
		{
			throw ConfigError("range '" + std::string(text) + "' has too many points");
		}
		for(long long k = 0; k <= static_cast<long long>(count); ++k)
		{
			out.push_back(round_significant(*start + double(k) * *step));
		}
		return out;
	}
	if(range.size() != 1)
	{
		throw ConfigError("bad number list '" + std::string(text) + "'");
	}
	for(const std::string_view item : split(text, ','))
	{
		const auto v = parse_number<double>(item);
		if(!v)
		{
			throw ConfigError("bad number '" + std::string(item) + "' in list '" + std::string(text) + "'");
		}
		out.push_back(*v);
	}
	return out;
}

std::vector<int> figures_for(Command command)
{
	switch(command)
	{
	case Command::Dynamics: return {1};
	case Command::FidelityScan: return {2, 3};
	case Command::Wigner: return {4};
	case Command::Metrology: return {5, 6};
	}
	return {};
}

} // namespace revival::cli
