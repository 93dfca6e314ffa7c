#pragma once

#include "hpnmf/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hpnmf {

/// Matrix text format: one matrix row per line, comma-separated decimal
/// floats, no header. Written with 17 significant digits so values
/// round-trip exactly.
Matrix parse_matrix_csv(std::string_view text);
Matrix read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Matrix& values);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& values);

NonnegMatrix read_nonneg_csv(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace hpnmf
