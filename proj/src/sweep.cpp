#include "revival/sweep.hpp"

#include "revival/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace revival
{

SweepGrid::SweepGrid(std::vector<int> rows, std::vector<double> cols, std::string value_name)
    : rows_{std::move(rows)}, cols_{std::move(cols)}, value_name_{std::move(value_name)}
{
	if(rows_.empty() || cols_.empty())
	{
		throw InvalidArgument("sweep grid needs at least one row and one column");
	}
	std::sort(rows_.begin(), rows_.end());
	rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
	std::sort(cols_.begin(), cols_.end());
	cols_.erase(std::unique(cols_.begin(), cols_.end()), cols_.end());
	cells_.assign(cell_count(), CellResult{std::numeric_limits<double>::quiet_NaN(), "not computed"});
}

std::size_t SweepGrid::failed_cells() const
{
	return static_cast<std::size_t>(
	    std::count_if(cells_.begin(), cells_.end(), [](const CellResult& c) { return !c.ok(); }));
}

void SweepGrid::set_cells(std::vector<CellResult> cells)
{
	if(cells.size() != cell_count())
	{
		throw DimensionMismatch("sweep grid has " + std::to_string(cell_count()) + " cells, got " +
		                        std::to_string(cells.size()));
	}
	cells_ = std::move(cells);
}

void SweepGrid::add_row_column(std::string name, std::vector<double> values)
{
	if(values.size() != rows_.size())
	{
		throw DimensionMismatch("row column '" + name + "' needs one value per row");
	}
	row_columns_.emplace_back(std::move(name), std::move(values));
}

void SweepGrid::fill(int workers, const std::function<double(int, double)>& fn)
{
	const std::size_t ncols = cols_.size();
	set_cells(run_cells(cell_count(), workers, [&](std::size_t i) {
		return fn(rows_[i / ncols], cols_[i % ncols]);
	}));
}

std::string format_number(double value)
{
	if(std::isnan(value))
	{
		return "nan";
	}
	if(std::isinf(value))
	{
		return value > 0 ? "inf" : "-inf";
	}
	std::array<char, 64> buf{};
	const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
	return {buf.data(), res.ptr};
}

void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& metadata)
{
	for(const auto& [key, value] : metadata)
	{
		out << "# " << key << ": " << value << '\n';
	}
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid,
                     const std::vector<std::pair<std::string, std::string>>& metadata)
{
	write_metadata(out, metadata);
	out << "N,x,zeta_sq," << grid.value_name();
	for(const auto& [name, values] : grid.row_columns())
	{
		out << ',' << name;
	}
	out << ",status\n";

	for(std::size_t r = 0; r < grid.rows().size(); ++r)
	{
		const int n = grid.rows()[r];
		for(std::size_t c = 0; c < grid.cols().size(); ++c)
		{
			const double x = grid.cols()[c];
			const CellResult& cell = grid.cell(r, c);
			out << n << ',' << format_number(x) << ',' << format_number(x * n) << ','
			    << format_number(cell.value);
			for(const auto& [name, values] : grid.row_columns())
			{
				out << ',' << format_number(values[r]);
			}
			if(cell.ok())
			{
				out << ",ok\n";
			}
			else
			{
				std::string msg = cell.error;
				std::replace(msg.begin(), msg.end(), ',', ';');
				std::replace(msg.begin(), msg.end(), '\n', ' ');
				out << ",error: " << msg << '\n';
			}
		}
	}
}

void write_columns_csv(std::ostream& out, const std::vector<std::string>& header,
                       const std::vector<const std::vector<double>*>& columns,
                       const std::vector<std::pair<std::string, std::string>>& metadata)
{
	if(header.size() != columns.size() || columns.empty())
	{
		throw DimensionMismatch("write_columns_csv: header and column counts differ");
	}
	const std::size_t rows = columns.front()->size();
	for(const auto* col : columns)
	{
		if(col->size() != rows)
		{
			throw DimensionMismatch("write_columns_csv: columns have different lengths");
		}
	}
	write_metadata(out, metadata);
	for(std::size_t k = 0; k < header.size(); ++k)
	{
		out << (k ? "," : "") << header[k];
	}
	out << '\n';
	for(std::size_t i = 0; i < rows; ++i)
	{
		for(std::size_t k = 0; k < columns.size(); ++k)
		{
			out << (k ? "," : "") << format_number((*columns[k])[i]);
		}
		out << '\n';
	}
}

} // namespace revival
