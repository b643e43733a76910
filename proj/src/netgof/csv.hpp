#pragma once

#include <string>
#include <vector>

namespace netgof {

// All floating-point output uses 10 significant digits.
std::string fmt_g10(double x);

std::vector<std::string> split_csv_line(const std::string& line);
double parse_double_field(const std::string& field, int line_no);

// Writes to a temporary file in the same directory, then renames into place,
// so readers never observe a partially written file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace netgof
