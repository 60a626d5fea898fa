#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace biharm {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// Writes text to `path` atomically (temp file in the same directory,
/// then rename).  Creates parent directories as needed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes a CSV with the exact header given and %.17g cells.
void write_csv_atomic(const std::filesystem::path& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

/// Reads a numeric CSV with a header row.
CsvTable read_csv(const std::filesystem::path& path);

} // namespace biharm
