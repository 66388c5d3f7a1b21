#pragma once

#include <iosfwd>
#include <string>

#include "psifun/matrix.hpp"

namespace psifun {

/// Reads a Matrix Market file, `array` or `coordinate` format, `real`
/// `general` only.  Coordinate entries are densified; duplicates are summed
/// per the format convention.  Throws ParseError (with the line number) on
/// malformed input and on unsupported fields.
Matrix mm_read(const std::string& path);
Matrix mm_read(std::istream& in);

/// Writes `array real general` with 17 significant digits, which makes the
/// write/read round trip bit-exact.
void mm_write(const std::string& path, const Matrix& M);
void mm_write(std::ostream& out, const Matrix& M);

}  // namespace psifun
