#include "dicke/csv.hpp"

#include <cstdio>
#include <fstream>

#include "dicke/errors.hpp"

namespace dicke {

namespace fs = std::filesystem;

std::string format_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_number(v));
    rows.push_back(std::move(row));
}

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("output", "cannot open " + tmp.string() + " for writing");
        out << content;
    }
    fs::rename(tmp, path);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string line;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) line += sep;
        line += parts[i];
    }
    return line;
}

}  // namespace

void write_csv(const fs::path& path, const CsvTable& table) {
    std::string content = join(table.header, ",") + "\n";
    for (const auto& row : table.rows) content += join(row, ",") + "\n";
    write_atomic(path, content);
}

void write_gnuplot(const fs::path& path, const CsvTable& table) {
    std::string content = "# " + join(table.header, " ") + "\n";
    for (const auto& row : table.rows) content += join(row, " ") + "\n";
    write_atomic(path, content);
}

}  // namespace dicke
