#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sa::cli {

/// Numeric CSV with a header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column by name; throws listing the available names.
    std::vector<double> column(const std::string& name) const;
    std::string available() const;
};

/// Rejects malformed input with the offending line number.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

} // namespace sa::cli
