#include "agf/report.hpp"

#include "agf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace agf {

std::string CsvTable::to_string() const {
    std::ostringstream os;
    const auto emit = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return os.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.empty() || line.back() == ',') cells.push_back("");
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size())
                throw InputError("CSV row has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(table.header.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) throw InputError("CSV text has no header row");
    return table;
}

std::string format_metric(double value) {
    if (std::isinf(value) && value > 0.0) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open file for writing: " + path);
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!os) throw InputError("failed writing file: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace agf
