#include "braidlie/freelie.hpp"

#include "braidlie/repmaps.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

using freelie::Alphabet;
using freelie::BracketTree;
using freelie::FreeLieElement;
using freelie::Int;
using freelie::LyndonWord;

namespace {

std::vector<int> letters_of(const std::string& s) {
  std::vector<int> out;
  for (char c : s) out.push_back(c - 'a');
  return out;
}

LyndonWord lw(const std::string& s) { return LyndonWord(letters_of(s)); }

// Definition-level Lyndon check: strictly smaller than every proper rotation.
bool lyndon_by_rotations(const std::vector<int>& w) {
  for (size_t k = 1; k < w.size(); ++k) {
    std::vector<int> rot(w.begin() + k, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + k);
    if (rot <= w) return false;
  }
  return !w.empty();
}

std::vector<std::vector<int>> all_words(int k, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(len, 0);
  while (true) {
    out.push_back(w);
    int p = len - 1;
    while (p >= 0 && w[p] == k - 1) w[p--] = 0;
    if (p < 0) return out;
    ++w[p];
  }
}

// Every full bracketing of every word of the given length.
std::vector<BracketTree> all_bracketings(int k, int len) {
  std::function<std::vector<BracketTree>(const std::vector<int>&, int, int)> trees =
      [&](const std::vector<int>& word, int lo, int hi) {
        std::vector<BracketTree> out;
        if (hi - lo == 1) {
          out.push_back(BracketTree::leaf(word[lo]));
          return out;
        }
        for (int mid = lo + 1; mid < hi; ++mid)
          for (const auto& l : trees(word, lo, mid))
            for (const auto& r : trees(word, mid, hi)) out.push_back(BracketTree::pair(l, r));
        return out;
      };
  std::vector<BracketTree> out;
  for (const auto& word : all_words(k, len))
    for (auto& t : trees(word, 0, static_cast<int>(word.size()))) out.push_back(std::move(t));
  return out;
}

FreeLieElement random_element(std::mt19937& rng, const Alphabet& alphabet, int max_degree) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  FreeLieElement x;
  for (int q = 1; q <= max_degree; ++q)
    for (const auto& w : freelie::lyndon_words(alphabet, q))
      x.add_term(w, coeff(rng));
  return x;
}

}  // namespace

TEST_CASE("lyndon word enumeration over two letters") {
  Alphabet ab = Alphabet::latin(2);
  auto deg = [&](int q) {
    std::vector<std::string> out;
    for (const auto& w : freelie::lyndon_words(ab, q)) {
      std::string s;
      for (int l : w.letters()) s.push_back(static_cast<char>('a' + l));
      out.push_back(s);
    }
    return out;
  };
  CHECK(deg(1) == std::vector<std::string>{"a", "b"});
  CHECK(deg(2) == std::vector<std::string>{"ab"});
  CHECK(deg(3) == std::vector<std::string>{"aab", "abb"});
  CHECK(deg(4) == std::vector<std::string>{"aaab", "aabb", "abbb"});
  CHECK(deg(5).size() == 6);
}

TEST_CASE("duval output matches the rotation definition") {
  for (int k = 1; k <= 3; ++k) {
    Alphabet a = Alphabet::latin(k);
    for (int q = 1; q <= 6; ++q) {
      std::vector<std::vector<int>> expected;
      for (const auto& w : all_words(k, q))
        if (lyndon_by_rotations(w)) expected.push_back(w);
      std::sort(expected.begin(), expected.end());
      auto got = freelie::lyndon_words(a, q);
      REQUIRE(got.size() == expected.size());
      for (size_t i = 0; i < got.size(); ++i) CHECK(got[i].letters() == expected[i]);
    }
  }
}

TEST_CASE("lyndon counts match the necklace formula") {
  CHECK(freelie::witt_dimension(2, 1) == 2);
  CHECK(freelie::witt_dimension(2, 2) == 1);
  CHECK(freelie::witt_dimension(2, 3) == 2);
  CHECK(freelie::witt_dimension(2, 6) == 9);
  CHECK(freelie::witt_dimension(3, 3) == 8);
  CHECK(freelie::witt_dimension(1, 1) == 1);
  CHECK(freelie::witt_dimension(1, 2) == 0);
  for (int k = 1; k <= 5; ++k) {
    Alphabet a = Alphabet::latin(k);
    for (int q = 1; q <= 8; ++q)
      CHECK(static_cast<long long>(freelie::lyndon_words(a, q, 8).size()) ==
            freelie::witt_dimension(k, q));
  }
}

TEST_CASE("standard factorization examples") {
  auto check = [](const std::string& w, const std::string& l, const std::string& r) {
    auto [u, v] = freelie::standard_factorization(lw(w));
    CHECK(u == lw(l));
    CHECK(v == lw(r));
  };
  check("ab", "a", "b");
  check("aab", "a", "ab");
  check("abb", "ab", "b");
  check("aabab", "aab", "ab");
  check("aabb", "a", "abb");
}

TEST_CASE("standard factorization picks the longest proper lyndon suffix") {
  for (int k = 2; k <= 3; ++k) {
    Alphabet a = Alphabet::latin(k);
    for (int q = 2; q <= 7; ++q)
      for (const auto& w : freelie::lyndon_words(a, q)) {
        auto [u, v] = freelie::standard_factorization(w);
        std::vector<int> joined = u.letters();
        joined.insert(joined.end(), v.letters().begin(), v.letters().end());
        CHECK(joined == w.letters());
        CHECK(u < v);
        // No longer proper Lyndon suffix exists.
        for (int start = 1; start < static_cast<int>(w.letters().size() - v.letters().size());
             ++start) {
          std::vector<int> suffix(w.letters().begin() + start, w.letters().end());
          CHECK(!LyndonWord::is_lyndon(suffix));
        }
      }
  }
}

TEST_CASE("normalize worked examples") {
  Alphabet ab = Alphabet::latin(2);
  auto a = BracketTree::leaf(0);
  auto b = BracketTree::leaf(1);
  CHECK(freelie::normalize(BracketTree::pair(a, a), ab).is_zero());
  CHECK(freelie::to_string(freelie::normalize(BracketTree::pair(a, b), ab), ab) == "ab");
  CHECK(freelie::to_string(freelie::normalize(BracketTree::pair(b, a), ab), ab) == "-ab");
  CHECK(freelie::to_string(
            freelie::normalize(BracketTree::pair(BracketTree::pair(a, b), b), ab), ab) == "abb");
  CHECK(freelie::to_string(
            freelie::normalize(BracketTree::pair(a, BracketTree::pair(a, b)), ab), ab) == "aab");
  CHECK(freelie::to_string(
            freelie::normalize(BracketTree::pair(BracketTree::pair(a, b), a), ab), ab) ==
        "-aab");
}

TEST_CASE("serialization conventions") {
  Alphabet ab = Alphabet::latin(2);
  FreeLieElement x;
  CHECK(freelie::to_string(x, ab) == "0");
  x.add_term(lw("aab"), 3);
  x.add_term(lw("abb"), -1);
  CHECK(freelie::to_string(x, ab) == "3*aab-abb");
}

TEST_CASE("bracket is bilinear alternating and satisfies jacobi") {
  Alphabet abc = Alphabet::latin(3);
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 10; ++trial) {
    FreeLieElement x = random_element(rng, abc, 2);
    FreeLieElement y = random_element(rng, abc, 2);
    FreeLieElement z = random_element(rng, abc, 2);
    CHECK(freelie::bracket(x, x).is_zero());
    CHECK(freelie::bracket(x, y) + freelie::bracket(y, x) == FreeLieElement());
    CHECK(freelie::bracket(x + y, z) == freelie::bracket(x, z) + freelie::bracket(y, z));
    FreeLieElement jac = freelie::bracket(x, freelie::bracket(y, z)) +
                         freelie::bracket(y, freelie::bracket(z, x)) +
                         freelie::bracket(z, freelie::bracket(x, y));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("bracket respects the grading") {
  Alphabet ab = Alphabet::latin(2);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      for (const auto& u : freelie::lyndon_words(ab, p))
        for (const auto& v : freelie::lyndon_words(ab, q)) {
          FreeLieElement r =
              freelie::bracket(FreeLieElement::from_word(u), FreeLieElement::from_word(v));
          if (!r.is_zero()) {
            CHECK(r.is_homogeneous());
            CHECK(r.degree() == p + q);
          }
        }
}

TEST_CASE("normalizing the standard bracketing returns the basis word") {
  Alphabet abc = Alphabet::latin(3);
  for (int q = 1; q <= 5; ++q)
    for (const auto& w : freelie::lyndon_words(abc, q)) {
      FreeLieElement e = freelie::normalize(freelie::standard_bracketing(w), abc);
      CHECK(e == FreeLieElement::from_word(w));
    }
}

TEST_CASE("normalize agrees with the magnus expansion on every bracketing") {
  // The group-theoretic route (nested commutators of 1 + X_i, lowest term)
  // is computed without any Lie-algebra rewriting, so agreement pins down
  // the basis expansion exactly.
  auto check_all = [](int k, int len) {
    Alphabet a = Alphabet::latin(k);
    for (const auto& expr : all_bracketings(k, len)) {
      FreeLieElement lie = freelie::normalize(expr, a);
      repmaps::TensorSeries left = repmaps::tensor_embedding(lie, k, len);
      repmaps::TensorSeries right = repmaps::magnus_bracket_oracle(expr, k);
      CHECK(left == right);
    }
  };
  check_all(2, 2);
  check_all(2, 3);
  check_all(2, 4);
  check_all(3, 2);
  check_all(3, 3);
}

TEST_CASE("centralizer of a single generator") {
  Alphabet ab = Alphabet::latin(2);
  FreeLieElement a = FreeLieElement::generator(0);
  auto deg1 = freelie::free_centralizer_degree(ab, a, 1);
  REQUIRE(deg1.size() == 1);
  CHECK(deg1[0] == a);
  CHECK(freelie::free_centralizer_degree(ab, a, 2).empty());
  CHECK(freelie::free_centralizer_degree(ab, a, 3).empty());
}

TEST_CASE("centralizer of the sum of the generators") {
  Alphabet ab = Alphabet::latin(2);
  FreeLieElement s = FreeLieElement::generator(0) + FreeLieElement::generator(1);
  auto deg1 = freelie::free_centralizer_degree(ab, s, 1);
  REQUIRE(deg1.size() == 1);
  CHECK(deg1[0] == s);
  CHECK(freelie::free_centralizer_degree(ab, s, 2).empty());
}

TEST_CASE("alphabet and word validation") {
  CHECK_THROWS_AS(Alphabet({}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(LyndonWord(letters_of("ba")), std::invalid_argument);
  CHECK_THROWS_AS(LyndonWord(letters_of("abab")), std::invalid_argument);
  CHECK(Alphabet::numbered(30).size() == 30);
  CHECK(Alphabet::numbered(30).label(29) == "x30");
}
