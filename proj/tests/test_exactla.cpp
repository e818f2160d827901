#include "braidlie/exactla.hpp"

#include <doctest.h>

#include <random>

using exactla::Int;
using exactla::IntMatrix;

namespace {

IntMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = dist(rng);
  return m;
}

// Random product of elementary row operations: swaps, negations, shears.
IntMatrix random_unimodular(std::mt19937& rng, int n, int ops) {
  IntMatrix e = IntMatrix::identity(n);
  std::uniform_int_distribution<int> row(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> factor(-3, 3);
  for (int k = 0; k < ops; ++k) {
    int a = row(rng), b = row(rng);
    switch (kind(rng)) {
      case 0:
        e.swap_rows(a, b);
        break;
      case 1:
        e.negate_row(a);
        break;
      default:
        if (a != b) e.add_row_multiple(a, b, factor(rng));
    }
  }
  return e;
}

Int cofactor_determinant(const IntMatrix& m) {
  int n = m.rows();
  if (n == 1) return m.at(0, 0);
  Int det = 0;
  for (int c = 0; c < n; ++c) {
    if (m.at(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == c) continue;
        minor.at(r - 1, cc++) = m.at(r, k);
      }
    }
    Int term = m.at(0, c) * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

void check_hnf_shape(const IntMatrix& h) {
  int pivot_col = -1;
  std::vector<std::pair<int, int>> pivots;
  for (int r = 0; r < h.rows(); ++r) {
    int c = 0;
    while (c < h.cols() && h.at(r, c) == 0) ++c;
    if (c == h.cols()) {
      // All later rows must be zero too.
      for (int rr = r; rr < h.rows(); ++rr)
        for (int cc = 0; cc < h.cols(); ++cc) CHECK(h.at(rr, cc) == 0);
      break;
    }
    CHECK(c > pivot_col);
    pivot_col = c;
    CHECK(h.at(r, c) > 0);
    pivots.emplace_back(r, c);
  }
  for (auto [r, c] : pivots)
    for (int rr = 0; rr < r; ++rr) {
      CHECK(h.at(rr, c) >= 0);
      CHECK(h.at(rr, c) < h.at(r, c));
    }
}

}  // namespace

TEST_CASE("hnf of the identity is the identity") {
  auto res = exactla::hnf(IntMatrix::identity(4));
  CHECK(res.h.is_identity());
  CHECK(res.u.is_identity());
}

TEST_CASE("hnf of the zero matrix is zero with unimodular transform") {
  IntMatrix z(3, 2);
  auto res = exactla::hnf(z);
  CHECK(res.h.is_zero());
  Int du = exactla::determinant(res.u);
  CHECK((du == 1 || du == -1));
}

TEST_CASE("hnf worked example") {
  auto a = IntMatrix::from_rows({{2, 4}, {1, 3}});
  auto res = exactla::hnf(a);
  CHECK(res.u * a == res.h);
  check_hnf_shape(res.h);
  // Row lattice of [[2,4],[1,3]] is all of Z^2 only if det = +-1; det = 2.
  CHECK(res.h.at(0, 0) * res.h.at(1, 1) == 2);
}

TEST_CASE("hnf postconditions on random matrices") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 5, cols = 1 + (trial / 3) % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    auto res = exactla::hnf(a);
    CHECK(res.u.rows() == rows);
    CHECK(res.u * a == res.h);
    Int du = exactla::determinant(res.u);
    CHECK((du == 1 || du == -1));
    check_hnf_shape(res.h);
  }
}

TEST_CASE("hnf is invariant under unimodular row mixing") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix a = random_matrix(rng, 4, 3, 6);
    IntMatrix e = random_unimodular(rng, 4, 12);
    CHECK(exactla::hnf(a).h == exactla::hnf(e * a).h);
  }
}

TEST_CASE("snf worked examples") {
  auto d1 = exactla::snf(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(d1.d == IntMatrix::from_rows({{1, 0}, {0, 6}}));
  auto d2 = exactla::snf(IntMatrix::from_rows({{1, 2}, {3, 4}}));
  CHECK(d2.d == IntMatrix::from_rows({{1, 0}, {0, 2}}));
}

TEST_CASE("snf postconditions on random matrices") {
  std::mt19937 rng(20240812);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    auto res = exactla::snf(a);
    CHECK(res.u * a * res.v == res.d);
    Int du = exactla::determinant(res.u);
    Int dv = exactla::determinant(res.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (int r = 0; r < res.d.rows(); ++r)
      for (int c = 0; c < res.d.cols(); ++c)
        if (r != c) CHECK(res.d.at(r, c) == 0);
    int k = std::min(rows, cols);
    for (int i = 0; i < k; ++i) CHECK(res.d.at(i, i) >= 0);
    for (int i = 0; i + 1 < k; ++i) {
      if (res.d.at(i + 1, i + 1) != 0) {
        CHECK(res.d.at(i, i) != 0);
        CHECK(res.d.at(i + 1, i + 1) % res.d.at(i, i) == 0);
      }
    }
  }
}

TEST_CASE("kernel worked examples") {
  CHECK(exactla::kernel(IntMatrix::identity(3)).empty());
  auto k1 = exactla::kernel(IntMatrix::from_rows({{1, 1}}));
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == std::vector<Int>{1, -1});
  auto k2 = exactla::kernel(IntMatrix::from_rows({{2, 4}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == std::vector<Int>{2, -1});
  auto k3 = exactla::kernel(IntMatrix(2, 2));  // zero map
  REQUIRE(k3.size() == 2);
  CHECK(k3[0] == std::vector<Int>{1, 0});
  CHECK(k3[1] == std::vector<Int>{0, 1});
}

TEST_CASE("kernel vectors annihilate and span on random matrices") {
  std::mt19937 rng(20240813);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + trial % 4, cols = 1 + (trial / 4) % 5;
    IntMatrix a = random_matrix(rng, rows, cols, 9);
    auto ker = exactla::kernel(a);
    for (const auto& v : ker) {
      auto image = a * v;
      for (const auto& x : image) CHECK(x == 0);
    }
    CHECK(static_cast<int>(ker.size()) + exactla::rank(a) == cols);
    // The kernel lattice is saturated: any integer solution lies in its span.
    if (!ker.empty()) CHECK(exactla::is_saturated(ker, cols));
  }
}

TEST_CASE("injectivity certificates") {
  CHECK(exactla::is_injective(IntMatrix::identity(2)).injective);
  auto cert = exactla::is_injective(IntMatrix::from_rows({{1, -1}, {-1, 1}}));
  CHECK(!cert.injective);
  REQUIRE(cert.kernel_witness.has_value());
  CHECK(*cert.kernel_witness == std::vector<Int>{1, 1});
  auto tall = exactla::is_injective(IntMatrix::from_rows({{2, 0}, {0, 3}, {1, 1}}));
  CHECK(tall.injective);
  REQUIRE(tall.rank.has_value());
  CHECK(*tall.rank == 2);
  // Wide matrices can never be injective.
  CHECK(!exactla::is_injective(IntMatrix::from_rows({{1, 2, 3}})).injective);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(20240814);
  CHECK(exactla::determinant(IntMatrix::identity(3)) == 1);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 5;
    IntMatrix a = random_matrix(rng, n, n, 7);
    CHECK(exactla::determinant(a) == cofactor_determinant(a));
  }
}

TEST_CASE("rank examples") {
  CHECK(exactla::rank(IntMatrix(3, 3)) == 0);
  CHECK(exactla::rank(IntMatrix::identity(3)) == 3);
  CHECK(exactla::rank(IntMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("lattice membership") {
  std::vector<std::vector<Int>> basis = {{2, 0}, {0, 3}};
  CHECK(exactla::lattice_contains(basis, {4, 3}));
  CHECK(exactla::lattice_contains(basis, {0, 0}));
  CHECK(!exactla::lattice_contains(basis, {1, 0}));
  CHECK(!exactla::lattice_contains(basis, {2, 1}));
}

TEST_CASE("saturation") {
  CHECK(exactla::is_saturated({{1, 0}, {0, 1}}, 2));
  CHECK(exactla::is_saturated({{1, 1}}, 2));
  CHECK(!exactla::is_saturated({{2, 0}}, 2));
  CHECK(!exactla::is_saturated({{1, 0}, {0, 2}}, 2));
}
