#pragma once

// Output staging and the per-run manifest.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace revival::cli
{

/// Lower-case hex SHA-256 of a byte string / file.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct FileRecord
{
	std::string name;
	std::string sha256;
	std::uintmax_t bytes = 0;
};

/// Files are written to hidden temporaries in the output directory and only
/// renamed into place by commit(). Anything not committed is removed when
/// the set is discarded or destroyed.
class OutputSet
{
public:
	/// Creates the directory if needed.
	explicit OutputSet(std::filesystem::path dir);
	~OutputSet();
	OutputSet(const OutputSet&) = delete;
	OutputSet& operator=(const OutputSet&) = delete;

	/// Stream for `name`; throws if the name was already opened.
	std::ostream& open(const std::string& name);

	/// Flushes, renames every file into place and records checksums.
	void commit();
	void discard();

	[[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
	[[nodiscard]] const std::vector<FileRecord>& files() const { return records_; }

private:
	struct Pending
	{
		std::string name;
		std::filesystem::path temp;
		std::unique_ptr<std::ofstream> stream;
	};

	std::filesystem::path dir_;
	std::vector<Pending> pending_;
	std::vector<FileRecord> records_;
	bool committed_ = false;
};

struct CellFailure
{
	std::string file;
	int num_spins = 0;
	double x = 0.0;
	std::string error;
};

struct InvariantCheck
{
	std::string name;
	double value = 0.0;
	double tolerance = 0.0;
	bool ok = true;
};

struct Manifest
{
	std::string command;
	std::vector<std::string> presets;
	std::string version;
	std::string config_hash;
	std::vector<std::pair<std::string, std::string>> parameters;
	int workers = 1;
	double wall_time_seconds = 0.0;
	std::vector<FileRecord> files;
	std::size_t cells_total = 0;
	std::vector<CellFailure> failures;
	std::vector<InvariantCheck> invariants;
	int exit_code = 0;
};

/// Pretty-printed JSON.
std::string manifest_json(const Manifest& manifest);

/// Writes manifest_<command>.json in `dir` via a temporary and rename.
std::filesystem::path write_manifest(const std::filesystem::path& dir, const Manifest& manifest);

} // namespace revival::cli
