#include "sa/cli/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sa::cli {

namespace {
std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
} // namespace

std::string CsvTable::available() const {
    std::string s;
    for (std::size_t i = 1; i < header.size(); ++i) s += (s.empty() ? "" : ", ") + header[i];
    return s;
}

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != name) continue;
        std::vector<double> col;
        col.reserve(rows.size());
        for (const auto& r : rows) col.push_back(r[c]);
        return col;
    }
    throw std::invalid_argument("unknown channel '" + name + "'; available channels: " + available());
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = cells;
            if (t.header.size() < 2) throw std::runtime_error("csv line 1: need at least two columns");
            continue;
        }
        if (cells.size() != t.header.size())
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.header.size()) + " fields, got " + std::to_string(cells.size()));
        std::vector<double> row;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || *end != '\0')
                throw std::runtime_error("csv line " + std::to_string(lineno) + ": not a number: '" + c + "'");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw std::runtime_error("csv: empty input");
    return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_csv(in);
}

} // namespace sa::cli
