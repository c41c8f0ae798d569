#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace brodyforge {

using Cell = std::variant<long long, double, std::string>;

// A rectangular report. CSV rendering is deterministic: 17-significant-digit
// floats, '.' decimal separator, '\n' line endings.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

std::string to_csv(const Table& t);
std::string to_json(const Table& t); // array of objects, column order preserved

// Long-format (series, x, y) rows for plotting tools.
struct PlotData {
    std::vector<std::tuple<std::string, double, double>> points;

    void add(const std::string& series, double x, double y);
    void add_series(const std::string& series, const Table& t, const std::string& x_col,
                    const std::string& y_col);
};

std::string to_csv(const PlotData& p);

// Atomic-ish write (temp file + rename); throws Error(io) on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace brodyforge
