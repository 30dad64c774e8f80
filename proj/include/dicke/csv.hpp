// csv.hpp — fixed-schema CSV emission with gnuplot mirrors
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dicke {

inline constexpr const char* kCsvSchemaVersion = "1";

// Floats are printed with 12 significant digits.
std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
};

// Writes atomically (temp file + rename). The gnuplot mirror carries the same
// rows space-separated with a '#' comment header.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_gnuplot(const std::filesystem::path& path, const CsvTable& table);

}  // namespace dicke
