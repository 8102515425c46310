#pragma once

// Run configuration for the revival command-line driver.
//
// File format: flat "key = value" lines grouped under [section] headers;
// '#' and ';' start comments. Every key is addressed as section.key, and the
// same names are accepted by --set on the command line. Lists take either
// comma-separated values or an inclusive range start:stop:step.

#include "revival/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revival::cli
{

class ConfigError : public Error
{
public:
	using Error::Error;
};

enum class Command
{
	Dynamics,
	FidelityScan,
	Wigner,
	Metrology,
};

/// "dynamics", "fidelity-scan", "wigner", "metrology"
std::string_view command_name(Command command);
/// Throws ConfigError on an unknown name.
Command parse_command(std::string_view name);

enum class ValueKind
{
	Int,
	Real,
	Bool,
	IntList,
	RealList,
	Text,
};

struct KeySpec
{
	std::string_view key;
	ValueKind kind;
	/// Commands that read this key; a key set for any other command is an error.
	std::vector<Command> commands;
	std::string_view doc;
};

/// Every accepted key, in documentation order.
const std::vector<KeySpec>& config_schema();

/// Schema listing as text, one key per line.
std::string describe_schema();

/// Parsed values of the explicitly set keys, stored as validated text.
class RunConfig
{
public:
	explicit RunConfig(Command command) : command_(command) {}

	[[nodiscard]] Command command() const { return command_; }

	/// Validates the key name, its applicability to the command and the value
	/// syntax; later calls override earlier ones. Throws ConfigError.
	void set(const std::string& key, const std::string& value, const std::string& origin = "command line");

	/// Reads a config file; throws ConfigError on I/O or syntax errors.
	void merge_file(const std::string& path);
	void merge_text(std::string_view text, const std::string& origin);

	[[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
	[[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

	[[nodiscard]] int get_int(const std::string& key, int fallback) const;
	[[nodiscard]] double get_real(const std::string& key, double fallback) const;
	[[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
	[[nodiscard]] std::string get_text(const std::string& key, const std::string& fallback) const;
	[[nodiscard]] std::optional<double> find_real(const std::string& key) const;
	[[nodiscard]] std::optional<int> find_int(const std::string& key) const;
	[[nodiscard]] std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;
	[[nodiscard]] std::vector<double> get_real_list(const std::string& key, const std::vector<double>& fallback) const;

	/// Figure presets requested with --figK.
	std::vector<int> figures;

private:
	Command command_;
	std::map<std::string, std::string> values_;
};

/// Integer list: "12,40,70" or "5:100:5" (inclusive).
std::vector<int> parse_int_list(std::string_view text);
/// Real list: "0.1,0.5" or "0:1:0.01"; range points are start + k step
/// rounded to 12 significant digits so that 0.07 prints as 0.07.
std::vector<double> parse_real_list(std::string_view text);

/// Figure presets each command accepts.
std::vector<int> figures_for(Command command);

} // namespace revival::cli
