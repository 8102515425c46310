#pragma once

// Rectangular (N, x) sweeps with per-cell error capture, a small worker pool
// that gathers results by cell index, and fixed-format CSV output.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace revival
{

struct CellResult
{
	double value = 0.0;
	/// Empty on success.
	std::string error;

	[[nodiscard]] bool ok() const { return error.empty(); }
};

/// Calls fn(i) for i in [0, count) on `workers` threads. Exceptions are
/// caught per cell and reported in the result; output order is by index
/// whatever the worker count.
template <typename Fn>
std::vector<CellResult> run_cells(std::size_t count, int workers, Fn&& fn)
{
	std::vector<CellResult> results(count);
	std::atomic<std::size_t> next{0};
	auto work = [&] {
		for(std::size_t i = next++; i < count; i = next++)
		{
			try
			{
				results[i].value = fn(i);
			}
			catch(const std::exception& e)
			{
				results[i].value = std::numeric_limits<double>::quiet_NaN();
				results[i].error = e.what();
				if(results[i].error.empty())
				{
					results[i].error = "unknown error";
				}
			}
		}
	};

	const auto threads = static_cast<std::size_t>(std::max(1, workers));
	if(threads == 1 || count < 2)
	{
		work();
		return results;
	}
	std::vector<std::jthread> pool;
	pool.reserve(threads);
	for(std::size_t k = 0; k < std::min(threads, count); ++k)
	{
		pool.emplace_back(work);
	}
	pool.clear();
	return results;
}

class SweepGrid
{
public:
	/// Rows and columns are sorted ascending and deduplicated.
	SweepGrid(std::vector<int> rows, std::vector<double> cols, std::string value_name);

	[[nodiscard]] const std::vector<int>& rows() const { return rows_; }
	[[nodiscard]] const std::vector<double>& cols() const { return cols_; }
	[[nodiscard]] const std::string& value_name() const { return value_name_; }
	[[nodiscard]] std::size_t cell_count() const { return rows_.size() * cols_.size(); }
	[[nodiscard]] std::size_t index(std::size_t row, std::size_t col) const { return row * cols_.size() + col; }

	[[nodiscard]] double value(std::size_t row, std::size_t col) const { return cells_[index(row, col)].value; }
	[[nodiscard]] const CellResult& cell(std::size_t row, std::size_t col) const
	{
		return cells_[index(row, col)];
	}
	[[nodiscard]] const std::vector<CellResult>& cells() const { return cells_; }
	[[nodiscard]] std::size_t failed_cells() const;

	void set_cells(std::vector<CellResult> cells);

	/// Extra per-row column written next to every cell of that row.
	void add_row_column(std::string name, std::vector<double> values);
	[[nodiscard]] const std::vector<std::pair<std::string, std::vector<double>>>& row_columns() const
	{
		return row_columns_;
	}

	/// Fills every cell with fn(N, x) on `workers` threads.
	void fill(int workers, const std::function<double(int, double)>& fn);

private:
	std::vector<int> rows_;
	std::vector<double> cols_;
	std::string value_name_;
	std::vector<CellResult> cells_;
	std::vector<std::pair<std::string, std::vector<double>>> row_columns_;
};

/// 17 significant digits, shortest general form; "nan"/"inf" for
/// non-finite values.
std::string format_number(double value);

/// Writes "# key: value" lines for each metadata pair.
void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& metadata);

/// Long-form CSV: N, x, zeta_sq, value, row columns..., status. Rows in
/// lexicographic (N, x) order.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid,
                     const std::vector<std::pair<std::string, std::string>>& metadata);

/// Columns of equal length written side by side under one header row.
void write_columns_csv(std::ostream& out, const std::vector<std::string>& header,
                       const std::vector<const std::vector<double>*>& columns,
                       const std::vector<std::pair<std::string, std::string>>& metadata);

} // namespace revival
