#include "braidlie/central.hpp"

#include <doctest.h>

using braidlie::Generator;
using braidlie::PnLieElement;
using exactla::Int;

namespace {

PnLieElement gen(int n, int i, int j) { return PnLieElement::generator(n, Generator(i, j)); }

std::vector<std::vector<Int>> coordinate_rows(const std::vector<PnLieElement>& elems, int n,
                                              int q) {
  auto b = braidlie::basis(n, q);
  std::vector<std::vector<Int>> rows;
  for (const auto& e : elems) rows.push_back(b.coordinates(e));
  return rows;
}

}  // namespace

TEST_CASE("centralizer of the top row in degree 1 is the diagonal line") {
  for (int n : {3, 4, 5}) {
    auto c = central::centralizer_of_top(n, 1);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == braidlie::delta(n));
  }
}

TEST_CASE("centralizer of the top row vanishes in higher degrees") {
  CHECK(central::centralizer_of_top(3, 2).empty());
  CHECK(central::centralizer_of_top(3, 3).empty());
  CHECK(central::centralizer_of_top(4, 2).empty());
  CHECK(central::centralizer_of_top(4, 3).empty());
  CHECK(central::centralizer_of_top(5, 2).empty());
}

TEST_CASE("adjoint kernel coincides with the top-row centralizer") {
  for (int n : {3, 4})
    for (int q = 1; q <= 3; ++q) {
      auto a = central::adjoint_kernel(n, q);
      auto c = central::centralizer_of_top(n, q);
      // Both outputs are canonical lattice bases, so equality of the lists
      // is equality of the lattices.
      CHECK(a == c);
    }
}

TEST_CASE("adjoint kernel in degree 1") {
  auto a = central::adjoint_kernel(4, 1);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == braidlie::delta(4));
  CHECK(central::adjoint_kernel(3, 2).empty());
}

TEST_CASE("every centralizer element actually centralizes") {
  PnLieElement z = braidlie::bn_element(4);
  for (int q = 1; q <= 3; ++q) {
    auto c = central::centralizer_of_element(4, z, q);
    for (const auto& e : c) {
      CHECK(braidlie::bracket(e, z).is_zero());
      CHECK(e.degree() == q);
    }
    if (!c.empty())
      CHECK(exactla::is_saturated(coordinate_rows(c, 4, q), braidlie::basis(4, q).size()));
  }
}

TEST_CASE("centralizer of the central element is everything") {
  for (int q = 1; q <= 3; ++q) {
    auto c = central::centralizer_of_element(3, braidlie::delta(3), q);
    CHECK(static_cast<int>(c.size()) == braidlie::basis(3, q).size());
  }
}

TEST_CASE("centralizer of a single generator in degree 1") {
  auto c = central::centralizer_of_element(3, gen(3, 1, 3), 1);
  REQUIRE(c.size() == 2);
  auto rows = coordinate_rows(c, 3, 1);
  auto b1 = braidlie::basis(3, 1);
  CHECK(exactla::lattice_contains(rows, b1.coordinates(gen(3, 1, 3))));
  CHECK(exactla::lattice_contains(rows, b1.coordinates(braidlie::delta(3))));
  CHECK(!exactla::lattice_contains(rows, b1.coordinates(gen(3, 1, 2))));
}

TEST_CASE("centralizer element validation") {
  CHECK_THROWS_AS(central::centralizer_of_element(3, PnLieElement(3), 1),
                  std::invalid_argument);
  PnLieElement deg2 = braidlie::bracket(gen(3, 1, 3), gen(3, 2, 3));
  CHECK_THROWS_AS(central::centralizer_of_element(3, deg2, 1), std::invalid_argument);
  CHECK_THROWS_AS(central::centralizer_of_top(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(central::centralizer_of_top(3, 8), std::invalid_argument);
}

TEST_CASE("theorem verification report") {
  auto report = central::verify_theorem(4, 3);
  CHECK(report.passed);
  CHECK(report.witness.empty());
  REQUIRE(report.degrees.size() == 3);
  CHECK(report.degrees[0].rank == 1);
  CHECK(report.degrees[0].matches_prediction);
  CHECK(report.degrees[1].rank == 0);
  CHECK(report.degrees[2].rank == 0);
  for (const auto& d : report.degrees) CHECK(d.matches_prediction);
}

TEST_CASE("explicit source matches the default") {
  central::DirectSource source;
  for (int q = 1; q <= 2; ++q)
    CHECK(central::centralizer_of_top(4, q, &source) == central::centralizer_of_top(4, q));
}

TEST_CASE("centralizer lattices are saturated") {
  auto c = central::centralizer_of_top(4, 1);
  CHECK(exactla::is_saturated(coordinate_rows(c, 4, 1), braidlie::basis(4, 1).size()));
  auto e = central::centralizer_of_element(3, gen(3, 1, 3), 1);
  CHECK(exactla::is_saturated(coordinate_rows(e, 3, 1), braidlie::basis(3, 1).size()));
}
