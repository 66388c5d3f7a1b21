#include "psifun/mmio.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "psifun/errors.hpp"

namespace psifun {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = (char)std::tolower((unsigned char)c);
  return s;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

bool next_content_line(std::istream& in, std::string& line, long& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;  // blank
    if (line[pos] == '%') continue;          // comment
    return true;
  }
  return false;
}

double parse_value(const std::string& tok, long lineno) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw ParseError("mm_read: malformed numeric value '" + tok + "'", lineno);
  }
  if (!std::isfinite(v))
    throw ParseError("mm_read: non-finite value '" + tok + "'", lineno);
  return v;
}

long parse_index(const std::string& tok, long lineno) {
  long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
    throw ParseError("mm_read: malformed integer '" + tok + "'", lineno);
  return v;
}

}  // namespace

Matrix mm_read(std::istream& in) {
  long lineno = 0;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("mm_read: empty file", 1);
  ++lineno;

  const std::vector<std::string> head = tokens(line);
  if (head.size() < 5 || head[0] != "%%MatrixMarket" || lower(head[1]) != "matrix")
    throw ParseError("mm_read: expected '%%MatrixMarket matrix ...' header",
                     lineno);
  const std::string fmt = lower(head[2]), field = lower(head[3]),
                    symmetry = lower(head[4]);
  if (fmt != "array" && fmt != "coordinate")
    throw ParseError("mm_read: unsupported format '" + fmt + "'", lineno);
  if (field != "real")
    throw ParseError("mm_read: " + field + " unsupported (real only)", lineno);
  if (symmetry != "general")
    throw ParseError("mm_read: symmetry '" + symmetry +
                         "' unsupported (general only)",
                     lineno);

  if (!next_content_line(in, line, lineno))
    throw ParseError("mm_read: missing size line", lineno + 1);
  const std::vector<std::string> size_toks = tokens(line);

  if (fmt == "array") {
    if (size_toks.size() != 2)
      throw ParseError("mm_read: array size line must be 'rows cols'", lineno);
    const long rows = parse_index(size_toks[0], lineno);
    const long cols = parse_index(size_toks[1], lineno);
    if (rows < 1 || cols < 1)
      throw ParseError("mm_read: dimensions must be positive", lineno);
    Matrix M(rows, cols);
    // Array entries are stored column-major.
    for (long j = 0; j < cols; ++j)
      for (long i = 0; i < rows; ++i) {
        if (!next_content_line(in, line, lineno))
          throw ParseError("mm_read: too few array entries", lineno + 1);
        const std::vector<std::string> toks = tokens(line);
        if (toks.size() != 1)
          throw ParseError("mm_read: expected one value per line", lineno);
        M(i, j) = parse_value(toks[0], lineno);
      }
    return M;
  }

  if (size_toks.size() != 3)
    throw ParseError("mm_read: coordinate size line must be 'rows cols nnz'",
                     lineno);
  const long rows = parse_index(size_toks[0], lineno);
  const long cols = parse_index(size_toks[1], lineno);
  const long nnz = parse_index(size_toks[2], lineno);
  if (rows < 1 || cols < 1)
    throw ParseError("mm_read: dimensions must be positive", lineno);
  Matrix M(rows, cols);
  for (long k = 0; k < nnz; ++k) {
    if (!next_content_line(in, line, lineno))
      throw ParseError("mm_read: too few coordinate entries", lineno + 1);
    const std::vector<std::string> toks = tokens(line);
    if (toks.size() != 3)
      throw ParseError("mm_read: coordinate entries are 'i j value'", lineno);
    const long i = parse_index(toks[0], lineno);
    const long j = parse_index(toks[1], lineno);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("mm_read: index out of range", lineno);
    M(i - 1, j - 1) += parse_value(toks[2], lineno);  // duplicates sum
  }
  return M;
}

Matrix mm_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("mm_read: cannot open '" + path + "'", 0);
  return mm_read(in);
}

void mm_write(std::ostream& out, const Matrix& M) {
  out << "%%MatrixMarket matrix array real general\n";
  out << M.rows() << " " << M.cols() << "\n";
  char buf[40];
  for (std::size_t j = 0; j < M.cols(); ++j)
    for (std::size_t i = 0; i < M.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.16e", M(i, j));
      out << buf << "\n";
    }
}

void mm_write(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw ParseError("mm_write: cannot open '" + path + "'", 0);
  mm_write(out, M);
  out.flush();
  if (!out) throw ParseError("mm_write: write failed for '" + path + "'", 0);
}

}  // namespace psifun
