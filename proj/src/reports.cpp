#include "brodyforge/reports.hpp"

#include "brodyforge/error.hpp"
#include "brodyforge/numeric.hpp"

#include <json.hpp>

#include <fstream>

namespace brodyforge {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return fmt_double(std::get<double>(c));
    return csv_escape(std::get<std::string>(c));
}

double cell_number(const Cell& c, const std::string& col) {
    if (std::holds_alternative<long long>(c)) return static_cast<double>(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    fail(ErrorKind::internal, "column " + col + " is not numeric");
}

size_t column_index(const Table& t, const std::string& col) {
    for (size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == col) return i;
    fail(ErrorKind::internal, "table " + t.name + " has no column " + col);
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        fail(ErrorKind::internal, "row width " + std::to_string(row.size()) + " does not match " +
                                      std::to_string(columns.size()) + " columns of table " + name);
    rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<long long>(c)) obj[t.columns[i]] = std::get<long long>(c);
            else if (std::holds_alternative<double>(c)) obj[t.columns[i]] = std::get<double>(c);
            else obj[t.columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void PlotData::add(const std::string& series, double x, double y) {
    points.emplace_back(series, x, y);
}

void PlotData::add_series(const std::string& series, const Table& t, const std::string& x_col,
                          const std::string& y_col) {
    size_t xi = column_index(t, x_col);
    size_t yi = column_index(t, y_col);
    for (const auto& row : t.rows)
        add(series, cell_number(row[xi], x_col), cell_number(row[yi], y_col));
}

std::string to_csv(const PlotData& p) {
    std::string out = "series,x,y\n";
    for (const auto& [s, x, y] : p.points)
        out += csv_escape(s) + ',' + fmt_double(x) + ',' + fmt_double(y) + '\n';
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) fail(ErrorKind::io, "cannot create directory " + path.parent_path().string() + ": " +
                                        ec.message());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorKind::io, "short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(ErrorKind::io, "cannot move " + tmp.string() + " into place: " + ec.message());
}

} // namespace brodyforge
