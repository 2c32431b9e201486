#pragma once

#include <string>
#include <vector>

namespace besselab {

/// Rectangular CSV table; header + rows of preformatted cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Decimal with 17 significant digits; enough to round-trip a double.
std::string format_value(double x);

/// RFC-4180-style serialization: header row, LF line endings, quoting only
/// where a cell needs it. Throws on non-rectangular input.
std::string to_csv_string(const CsvTable& table);

/// Write via temp file + rename so readers never see a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace besselab
