#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace freelie {

using Int = mpz_class;

/// Hard ceiling on homogeneous degree; guards every entry point that takes a
/// degree argument.  Overridable per call.
inline constexpr int kDefaultDegreeCap = 8;

/// Ordered list of generator labels; the order defines the letter order used
/// by the Lyndon basis.
class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> symbols);
  /// {a, b, c, ...} of size k, for tests and examples.
  static Alphabet latin(int k);
  /// {x1, x2, ...} of any size.
  static Alphabet numbered(int k);
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& label(int index) const;
  std::optional<int> index_of(std::string_view label) const;

private:
  std::vector<std::string> symbols_;
};

/// Word strictly smaller than each of its proper rotations; the words of
/// degree q index the degree-q slice of the Lyndon basis.
class LyndonWord {
public:
  explicit LyndonWord(std::vector<int> letters);
  int degree() const { return static_cast<int>(letters_.size()); }
  const std::vector<int>& letters() const { return letters_; }
  int max_letter() const;

  static bool is_lyndon(const std::vector<int>& letters);

  std::strong_ordering operator<=>(const LyndonWord& o) const = default;

private:
  std::vector<int> letters_;
};

/// All Lyndon words of the exact degree over the alphabet, ascending.
std::vector<LyndonWord> lyndon_words(const Alphabet& alphabet, int degree,
                                     int degree_cap = kDefaultDegreeCap);

/// Rank of the degree-q homogeneous piece of the free Lie ring on k
/// generators (necklace count via Moebius inversion).
long long witt_dimension(int alphabet_size, int degree);

/// Chen-Fox-Lyndon factorization w = u.v with v the longest proper Lyndon
/// suffix; both factors are Lyndon and u < v.  Degree >= 2 required.
std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w);

/// Binary bracketing with leaves of arbitrary payload; the input language for
/// normalize and for expression evaluation downstream.
template <typename Leaf>
class BracketExpr {
public:
  static BracketExpr leaf(Leaf value) {
    BracketExpr e;
    e.leaf_ = std::move(value);
    return e;
  }
  static BracketExpr pair(BracketExpr left, BracketExpr right) {
    BracketExpr e;
    e.left_ = std::make_shared<const BracketExpr>(std::move(left));
    e.right_ = std::make_shared<const BracketExpr>(std::move(right));
    return e;
  }
  bool is_leaf() const { return leaf_.has_value(); }
  const Leaf& value() const { return *leaf_; }
  const BracketExpr& left() const { return *left_; }
  const BracketExpr& right() const { return *right_; }
  int degree() const { return is_leaf() ? 1 : left().degree() + right().degree(); }

  template <typename Fn>
  void for_each_leaf(Fn&& fn) const {
    if (is_leaf()) {
      fn(*leaf_);
    } else {
      left().for_each_leaf(fn);
      right().for_each_leaf(fn);
    }
  }

private:
  std::optional<Leaf> leaf_;
  std::shared_ptr<const BracketExpr> left_, right_;
};

using BracketTree = BracketExpr<int>;

/// Element written in the Lyndon basis: finite Z-combination of basis words.
/// Letters are bare indices; the caller fixes which alphabet they refer to.
class FreeLieElement {
public:
  FreeLieElement() = default;  // zero
  static FreeLieElement generator(int letter);
  static FreeLieElement from_word(LyndonWord w, Int coeff = Int(1));

  bool is_zero() const { return terms_.empty(); }
  const std::map<LyndonWord, Int>& terms() const { return terms_; }
  /// Max degree of the support; 0 for the zero element.
  int degree() const;
  bool is_homogeneous() const;
  int max_letter() const;

  void add_term(const LyndonWord& w, const Int& c);

  FreeLieElement& operator+=(const FreeLieElement& o);
  FreeLieElement& operator-=(const FreeLieElement& o);
  FreeLieElement& operator*=(const Int& c);
  FreeLieElement operator+(const FreeLieElement& o) const;
  FreeLieElement operator-(const FreeLieElement& o) const;
  FreeLieElement operator-() const;
  bool operator==(const FreeLieElement& o) const = default;

private:
  std::map<LyndonWord, Int> terms_;
};

FreeLieElement operator*(const Int& c, const FreeLieElement& x);

/// Lie bracket, expanded into the Lyndon basis by iterated rewriting along
/// standard factorizations.
FreeLieElement bracket(const FreeLieElement& x, const FreeLieElement& y);

/// Basis-expand an arbitrary bracketing.  Leaves must be letters of the
/// alphabet; the tree degree must respect the cap.
FreeLieElement normalize(const BracketTree& expr, const Alphabet& alphabet,
                         int degree_cap = kDefaultDegreeCap);

/// The bracketing of w along iterated standard factorization; normalizing it
/// gives back exactly the basis word w.
BracketTree standard_bracketing(const LyndonWord& w);

/// Basis of {x homogeneous of the given degree : [x, z] = 0}; z must be
/// nonzero, homogeneous of degree 1.  Canonical (HNF-reduced) output.
std::vector<FreeLieElement> free_centralizer_degree(const Alphabet& alphabet,
                                                    const FreeLieElement& z, int degree,
                                                    int degree_cap = kDefaultDegreeCap);

/// Canonical text: terms ascending by word, "3*aab-abb" style, "0" for zero.
std::string to_string(const FreeLieElement& x, const Alphabet& alphabet);

}  // namespace freelie
