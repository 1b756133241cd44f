#pragma once

#include <string>
#include <vector>

namespace agf {

/// Minimal CSV table: header row + data rows, comma-separated, newline
/// terminated. Cells never contain commas or quotes, so serialization
/// round-trips losslessly through parse_csv.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    bool operator==(const CsvTable&) const = default;
};

CsvTable parse_csv(const std::string& text); // InputError on ragged rows

/// Fixed-format metric cell: "inf" for +infinity, otherwise six decimals.
/// The fixed formatting keeps reports byte-identical across runs.
std::string format_metric(double value);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path); // InputError if unreadable

} // namespace agf
