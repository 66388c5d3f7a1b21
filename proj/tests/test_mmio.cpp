#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "psifun/errors.hpp"
#include "psifun/mmio.hpp"

using namespace psifun;
using namespace psifun::testing;

TEST_CASE("write/read round trip is bit-exact") {
  auto gen = rng(701);
  Matrix A = random_matrix(7, 7, gen);
  // Sprinkle awkward magnitudes.
  A(0, 0) = 1e-300;
  A(1, 1) = -9.87654321e250;
  A(2, 3) = 0.1;
  A(4, 5) = -0.0;
  std::stringstream ss;
  mm_write(ss, A);
  CHECK(mm_read(ss) == A);
}

TEST_CASE("coordinate entries densify and duplicates sum") {
  std::stringstream ss(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "3 3 4\n"
      "1 1 2.5\n"
      "2 3 -1.0\n"
      "1 1 0.5\n"
      "3 1 7\n");
  const Matrix M = mm_read(ss);
  CHECK(M(0, 0) == 3.0);
  CHECK(M(1, 2) == -1.0);
  CHECK(M(2, 0) == 7.0);
  CHECK(M(0, 1) == 0.0);
}

TEST_CASE("array entries are column-major") {
  std::stringstream ss(
      "%%MatrixMarket matrix array real general\n"
      "2 2\n"
      "1\n2\n3\n4\n");
  const Matrix M = mm_read(ss);
  CHECK(M(0, 0) == 1.0);
  CHECK(M(1, 0) == 2.0);
  CHECK(M(0, 1) == 3.0);
  CHECK(M(1, 1) == 4.0);
}

TEST_CASE("unsupported fields are rejected") {
  std::stringstream complex_hdr(
      "%%MatrixMarket matrix array complex general\n2 2\n");
  CHECK_THROWS_WITH_AS(mm_read(complex_hdr),
                       doctest::Contains("complex unsupported"), ParseError);

  std::stringstream pattern_hdr(
      "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n");
  CHECK_THROWS_AS(mm_read(pattern_hdr), ParseError);

  std::stringstream sym_hdr(
      "%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n");
  CHECK_THROWS_AS(mm_read(sym_hdr), ParseError);
}

TEST_CASE("malformed input reports the offending line") {
  std::stringstream bad_header("%%NotMatrixMarket stuff\n");
  try {
    mm_read(bad_header);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }

  std::stringstream bad_dims(
      "%%MatrixMarket matrix array real general\n2 x\n1\n2\n3\n4\n");
  try {
    mm_read(bad_dims);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::stringstream bad_value(
      "%%MatrixMarket matrix array real general\n1 2\n1\noops\n");
  try {
    mm_read(bad_value);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }

  std::stringstream truncated(
      "%%MatrixMarket matrix coordinate real general\n3 3 2\n1 1 5.0\n");
  CHECK_THROWS_AS(mm_read(truncated), ParseError);

  std::stringstream out_of_range(
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5.0\n");
  CHECK_THROWS_AS(mm_read(out_of_range), ParseError);

  std::stringstream non_finite(
      "%%MatrixMarket matrix array real general\n1 1\nnan\n");
  CHECK_THROWS_AS(mm_read(non_finite), ParseError);
}
