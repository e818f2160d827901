#pragma once

#include "braidlie/freelie.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace braidlie {

using Int = mpz_class;
using freelie::kDefaultDegreeCap;

/// Degree-1 generator B(i,j), 1 <= i < j <= n, with B(j,i) identified with
/// B(i,j).  The strand count n is validated at the point of use.
class Generator {
public:
  Generator(int i, int j);
  int i() const { return i_; }
  int j() const { return j_; }
  /// Component of the direct-sum decomposition the generator lives in.
  int component() const { return j_; }
  void require_valid(int n) const;

  auto operator<=>(const Generator&) const = default;
  std::string to_string() const;

private:
  int i_, j_;
};

/// All generators for n strands, ascending by (i, j).
std::vector<Generator> generators(int n);

/// Element of the graded Lie ring attached to the n-strand pure braid tower:
/// one free-Lie summand per component m in 2..n, the m-th over the letters
/// B(1,m), ..., B(m-1,m).
class PnLieElement {
public:
  explicit PnLieElement(int n);
  static PnLieElement generator(int n, Generator g);

  int n() const { return n_; }
  bool is_zero() const { return components_.empty(); }
  const std::map<int, freelie::FreeLieElement>& components() const { return components_; }
  const freelie::FreeLieElement* component(int m) const;
  void set_component(int m, freelie::FreeLieElement e);

  int degree() const;
  bool is_homogeneous() const;

  PnLieElement& operator+=(const PnLieElement& o);
  PnLieElement& operator-=(const PnLieElement& o);
  PnLieElement& operator*=(const Int& c);
  PnLieElement operator+(const PnLieElement& o) const;
  PnLieElement operator-(const PnLieElement& o) const;
  PnLieElement operator-() const;
  bool operator==(const PnLieElement& o) const = default;

private:
  int n_;
  std::map<int, freelie::FreeLieElement> components_;
};

PnLieElement operator*(const Int& c, const PnLieElement& x);

struct BasisEntry {
  int component;
  freelie::LyndonWord word;
  auto operator<=>(const BasisEntry&) const = default;
};

/// Ordered basis of the degree-q homogeneous slice: components ascending,
/// Lyndon words ascending within a component.
class GradedBasis {
public:
  GradedBasis(int n, int degree, std::vector<BasisEntry> entries);
  int n() const { return n_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<BasisEntry>& entries() const { return entries_; }
  const BasisEntry& entry(int index) const { return entries_.at(index); }

  std::optional<int> index_of(int component, const freelie::LyndonWord& w) const;
  PnLieElement element(int index) const;
  /// Coordinates of a homogeneous element of matching degree.
  std::vector<Int> coordinates(const PnLieElement& x) const;
  PnLieElement combine(const std::vector<Int>& coords) const;

private:
  int n_, degree_;
  std::vector<BasisEntry> entries_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

GradedBasis basis(int n, int q, int degree_cap = kDefaultDegreeCap);

/// The graded bracket: free bracket within a component; across components the
/// smaller-component element acts as a derivation on the larger, so the
/// result lands in the larger component.
PnLieElement bracket(const PnLieElement& x, const PnLieElement& y);

using GenTree = freelie::BracketExpr<Generator>;

/// Evaluate a bracketing of generators to basis form.
PnLieElement eval_expression(const GenTree& expr, int n,
                             int degree_cap = kDefaultDegreeCap);

/// Sum of all generators; spans the degree-1 center.
PnLieElement delta(int n);

/// B(1,n) + B(2,n) + ... + B(n-1,n), the distinguished top-component element.
PnLieElement bn_element(int n);

/// Action of a permutation of {1..n} by relabeling strands; sigma[k-1] is the
/// image of k.  A Lie automorphism.
PnLieElement symmetric_action(const std::vector<int>& sigma, const PnLieElement& x);

/// The retraction that deletes strand n: kills component n, keeps the rest.
/// Result lives over n-1 strands; requires n >= 3.
PnLieElement project_delete_strand(const PnLieElement& x);

using BracketFn = std::function<PnLieElement(const PnLieElement&, const PnLieElement&)>;

struct RelationReport {
  bool passed = true;
  std::string witness;  // first failing instance, empty when passed
  long long relation_instances = 0;
  long long antisymmetry_pairs = 0;
  long long jacobi_triples = 0;
};

/// Checks every defining-relation instance among generators, plus
/// antisymmetry/alternating and Jacobi over all basis pairs/triples of total
/// degree <= max_degree.
RelationReport verify_relations(int n, int max_degree = 3,
                                int degree_cap = kDefaultDegreeCap);
/// Same checks against a caller-supplied bracket; lets tests aim the verifier
/// at a corrupted product.
RelationReport verify_relations_with(int n, int max_degree, const BracketFn& br,
                                     int degree_cap = kDefaultDegreeCap);

/// Canonical text, e.g. "B(1,2)+B(1,3)" or "2*B(1,4)B(2,4)-B(2,4)B(3,4)".
std::string to_string(const PnLieElement& x);
std::string word_text(int component, const freelie::LyndonWord& w);

}  // namespace braidlie
