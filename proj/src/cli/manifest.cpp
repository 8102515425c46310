#include "revival/cli/manifest.hpp"

#include "revival/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <sstream>

namespace revival::cli
{

namespace
{

class Sha256
{
public:
	Sha256() : ctx_(EVP_MD_CTX_new())
	{
		if(ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
		{
			EVP_MD_CTX_free(ctx_);
			throw Error("sha256: digest initialization failed");
		}
	}
	~Sha256() { EVP_MD_CTX_free(ctx_); }
	Sha256(const Sha256&) = delete;
	Sha256& operator=(const Sha256&) = delete;

	void update(const char* data, std::size_t size)
	{
		if(EVP_DigestUpdate(ctx_, data, size) != 1)
		{
			throw Error("sha256: update failed");
		}
	}

	std::string hex()
	{
		std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
		unsigned int len = 0;
		if(EVP_DigestFinal_ex(ctx_, digest.data(), &len) != 1)
		{
			throw Error("sha256: finalization failed");
		}
		static constexpr char digits[] = "0123456789abcdef";
		std::string out;
		for(unsigned int i = 0; i < len; ++i)
		{
			out += digits[digest[i] >> 4];
			out += digits[digest[i] & 0xf];
		}
		return out;
	}

private:
	EVP_MD_CTX* ctx_;
};

} // namespace

std::string sha256_hex(const std::string& bytes)
{
	Sha256 h;
	h.update(bytes.data(), bytes.size());
	return h.hex();
}

std::string sha256_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if(!in)
	{
		throw Error("cannot read '" + path.string() + "'");
	}
	Sha256 h;
	std::array<char, 1 << 16> buf{};
	while(in)
	{
		in.read(buf.data(), buf.size());
		h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
	}
	return h.hex();
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir))
{
	std::error_code ec;
	std::filesystem::create_directories(dir_, ec);
	if(ec || !std::filesystem::is_directory(dir_))
	{
		throw Error("cannot create output directory '" + dir_.string() + "'");
	}
}

OutputSet::~OutputSet()
{
	if(!committed_)
	{
		discard();
	}
}

std::ostream& OutputSet::open(const std::string& name)
{
	for(const Pending& p : pending_)
	{
		if(p.name == name)
		{
			throw Error("output '" + name + "' opened twice");
		}
	}
	Pending p{name, dir_ / ("." + name + ".tmp"), nullptr};
	p.stream = std::make_unique<std::ofstream>(p.temp, std::ios::binary | std::ios::trunc);
	if(!*p.stream)
	{
		throw Error("cannot write '" + p.temp.string() + "'");
	}
	pending_.push_back(std::move(p));
	return *pending_.back().stream;
}

void OutputSet::commit()
{
	for(Pending& p : pending_)
	{
		p.stream->close();
		if(!*p.stream)
		{
			throw Error("write to '" + p.temp.string() + "' failed");
		}
	}
	for(Pending& p : pending_)
	{
		const std::filesystem::path target = dir_ / p.name;
		FileRecord record{p.name, sha256_file(p.temp), std::filesystem::file_size(p.temp)};
		std::filesystem::rename(p.temp, target);
		records_.push_back(std::move(record));
	}
	pending_.clear();
	committed_ = true;
}

void OutputSet::discard()
{
	for(Pending& p : pending_)
	{
		p.stream->close();
		std::error_code ec;
		std::filesystem::remove(p.temp, ec);
	}
	pending_.clear();
}

std::string manifest_json(const Manifest& m)
{
	using nlohmann::ordered_json;
	ordered_json j;
	j["command"] = m.command;
	j["presets"] = m.presets;
	j["version"] = m.version;
	j["config_hash"] = m.config_hash;
	ordered_json params = ordered_json::object();
	for(const auto& [k, v] : m.parameters)
	{
		params[k] = v;
	}
	j["parameters"] = params;
	j["workers"] = m.workers;
	j["wall_time_seconds"] = m.wall_time_seconds;
	j["exit_code"] = m.exit_code;

	ordered_json files = ordered_json::array();
	for(const FileRecord& f : m.files)
	{
		files.push_back({{"path", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
	}
	j["files"] = files;

	ordered_json failures = ordered_json::array();
	for(const CellFailure& f : m.failures)
	{
		failures.push_back({{"file", f.file}, {"N", f.num_spins}, {"x", f.x}, {"error", f.error}});
	}
	j["cells"] = {{"total", m.cells_total},
	              {"ok", m.cells_total - m.failures.size()},
	              {"failed", m.failures.size()},
	              {"failures", failures}};

	ordered_json checks = ordered_json::array();
	for(const InvariantCheck& c : m.invariants)
	{
		checks.push_back({{"name", c.name},
		                  {"value", c.value},
		                  {"tolerance", c.tolerance},
		                  {"ok", c.ok}});
	}
	j["invariants"] = checks;
	return j.dump(2) + "\n";
}

std::filesystem::path write_manifest(const std::filesystem::path& dir, const Manifest& manifest)
{
	const std::filesystem::path target = dir / ("manifest_" + manifest.command + ".json");
	const std::filesystem::path temp = dir / (".manifest_" + manifest.command + ".json.tmp");
	{
		std::ofstream out(temp, std::ios::binary | std::ios::trunc);
		out << manifest_json(manifest);
		if(!out)
		{
			std::error_code ec;
			std::filesystem::remove(temp, ec);
			throw Error("cannot write manifest '" + target.string() + "'");
		}
	}
	std::filesystem::rename(temp, target);
	return target;
}

} // namespace revival::cli
