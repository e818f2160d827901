#pragma once

#include "braidlie/braidlie.hpp"
#include "braidlie/central.hpp"
#include "braidlie/exactla.hpp"
#include "braidlie/freelie.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace repmaps {

using Int = mpz_class;

// ---------------------------------------------------------------------------
// Truncated commutative polynomials and matrices over them.

/// Exponent-vector order: total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Element of Z[u_1..u_k] with every monomial of total degree > trunc
/// discarded.  All arithmetic keeps the truncation level of the left operand,
/// which must match the right one.
class TruncPoly {
public:
  TruncPoly(int vars, int trunc);
  static TruncPoly constant(int vars, int trunc, Int c);
  static TruncPoly variable(int vars, int trunc, int index);

  int vars() const { return vars_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Int, GradedLexLess>& terms() const { return terms_; }
  Int coefficient(const std::vector<int>& expo) const;
  Int constant_term() const;

  void add_term(const std::vector<int>& expo, const Int& c);
  TruncPoly homogeneous_part(int d) const;
  TruncPoly with_trunc(int trunc) const;
  /// Image under u_i -> u for all i (one remaining variable).
  TruncPoly collapse_variables() const;

  TruncPoly& operator+=(const TruncPoly& o);
  TruncPoly& operator-=(const TruncPoly& o);
  TruncPoly operator+(const TruncPoly& o) const;
  TruncPoly operator-(const TruncPoly& o) const;
  TruncPoly operator*(const TruncPoly& o) const;
  TruncPoly operator-() const;
  bool operator==(const TruncPoly& o) const = default;

  std::string to_string() const;

private:
  int vars_, trunc_;
  std::map<std::vector<int>, Int, GradedLexLess> terms_;
};

/// Square matrix over TruncPoly; the matrix form of a representation image
/// in the congruence filtration.
class TruncSeriesMatrix {
public:
  TruncSeriesMatrix(int size, int vars, int trunc);
  static TruncSeriesMatrix identity(int size, int vars, int trunc);
  static TruncSeriesMatrix from_int_matrix(const exactla::IntMatrix& m, int vars, int trunc);

  int size() const { return size_; }
  int vars() const { return vars_; }
  int trunc() const { return trunc_; }
  TruncPoly& at(int r, int c) { return entries_[static_cast<size_t>(r) * size_ + c]; }
  const TruncPoly& at(int r, int c) const { return entries_[static_cast<size_t>(r) * size_ + c]; }

  exactla::IntMatrix constant_part() const;
  TruncSeriesMatrix homogeneous_part(int d) const;
  bool is_zero() const;
  TruncSeriesMatrix with_trunc(int trunc) const;
  TruncSeriesMatrix collapse_variables() const;

  TruncSeriesMatrix operator+(const TruncSeriesMatrix& o) const;
  TruncSeriesMatrix operator-(const TruncSeriesMatrix& o) const;
  TruncSeriesMatrix operator*(const TruncSeriesMatrix& o) const;
  bool operator==(const TruncSeriesMatrix& o) const = default;

  /// Inverse within the truncation; the constant part must be unimodular.
  TruncSeriesMatrix inverse() const;

private:
  int size_, vars_, trunc_;
  std::vector<TruncPoly> entries_;
};

// ---------------------------------------------------------------------------
// Free-group words and Magnus expansion into the truncated tensor ring.

struct GroupLetter {
  int gen;  // 0-based generator index
  int exp;  // +1 or -1
  bool operator==(const GroupLetter&) const = default;
};
using GroupWord = std::vector<GroupLetter>;

GroupWord group_inverse(const GroupWord& w);
/// w1 w2 w1^-1 w2^-1, freely reduced.
GroupWord group_commutator(const GroupWord& w1, const GroupWord& w2);
GroupWord free_reduce(const GroupWord& w);

/// Element of the free associative ring on noncommuting X_1..X_k truncated
/// beyond word length trunc.
class TensorSeries {
public:
  TensorSeries(int vars, int trunc);
  static TensorSeries one(int vars, int trunc);
  static TensorSeries variable(int vars, int trunc, int index);

  int vars() const { return vars_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Int>& terms() const { return terms_; }
  Int coefficient(const std::vector<int>& word) const;

  void add_term(const std::vector<int>& word, const Int& c);
  TensorSeries homogeneous_part(int d) const;

  TensorSeries& operator+=(const TensorSeries& o);
  TensorSeries& operator-=(const TensorSeries& o);
  TensorSeries operator+(const TensorSeries& o) const;
  TensorSeries operator-(const TensorSeries& o) const;
  TensorSeries operator*(const TensorSeries& o) const;
  TensorSeries operator-() const;
  bool operator==(const TensorSeries& o) const = default;

  std::string to_string() const;

private:
  int vars_, trunc_;
  std::map<std::vector<int>, Int> terms_;
};

/// x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2 - ..., multiplied out.
TensorSeries magnus_expand(const GroupWord& w, int vars, int trunc);

/// Group-theoretic evaluation of a bracketing: nested group commutators,
/// Magnus-expanded, lowest-degree part extracted.  Independent route to the
/// value of freelie::normalize under the standard embedding.
TensorSeries magnus_bracket_oracle(const freelie::BracketTree& expr, int vars);

/// Standard embedding of a basis-form element into the tensor ring via
/// iterated commutators of the standard bracketings.
TensorSeries tensor_embedding(const freelie::FreeLieElement& x, int vars, int trunc);

// ---------------------------------------------------------------------------
// Braid words and the classical representations.

struct BraidLetter {
  int index;  // 1-based Artin generator index, 1..n-1
  int exp;    // +1 or -1
  bool operator==(const BraidLetter&) const = default;
};

struct BraidWord {
  int n = 2;
  std::vector<BraidLetter> letters;
};

BraidWord braid_concat(const BraidWord& a, const BraidWord& b);
BraidWord braid_inverse(const BraidWord& w);
/// strand_at[p-1] = strand occupying position p after the word is applied.
std::vector<int> underlying_permutation(const BraidWord& w);
bool is_pure(const BraidWord& w);
/// Signed crossings between each strand pair, halved; requires a pure word.
std::map<std::pair<int, int>, long long> linking_numbers(const BraidWord& w);

/// Conjugated square (s_{j-1}..s_{i+1}) s_i^2 (s_{i+1}^-1..s_{j-1}^-1): the
/// standard pure generator with linking number 1 on strands (i, j).
BraidWord pure_generator_word(int n, int i, int j);

/// Product of the per-component full twists; generates the center.  Its
/// degree-1 class is the sum of all degree-1 generators.
BraidWord center_word(int n);

enum class RepFamily { burau, gassner, custom };

std::string family_name(RepFamily f);

/// A braid representation presented in the congruence filtration: either one
/// of the two built-in families or explicit images of the pure generators.
struct RepresentationSpec {
  RepFamily family = RepFamily::burau;
  int n = 2;
  int size = 2;  // matrix dimension
  int vars = 1;  // number of deformation variables
  std::map<std::pair<int, int>, TruncSeriesMatrix> custom_images;

  static RepresentationSpec burau(int n);
  static RepresentationSpec gassner(int n);
  static RepresentationSpec custom(int n, int size, int vars,
                                   std::map<std::pair<int, int>, TruncSeriesMatrix> images);
};

/// Unreduced Burau image of the Artin generator, in the variable u = t - 1.
/// At u = 0 it degenerates to the transposition permutation matrix.
TruncSeriesMatrix burau_sigma(int n, int i, int trunc);

/// Image of a sigma-word; for gassner the variable used at each crossing is
/// the one attached to the strand passing over.  Built-in families only.
TruncSeriesMatrix rep_image(const RepresentationSpec& spec, const BraidWord& w, int trunc);

/// Degree-1 classes X(i,j) of the pure generators, one homogeneous matrix
/// each.  For custom specs these are read off the supplied images.
std::map<std::pair<int, int>, TruncSeriesMatrix> degree_one_images(
    const RepresentationSpec& spec, int trunc);

/// Necessary condition for the X(i,j) to define a map out of the graded Lie
/// ring: matrix-commutator versions of the defining relations.  Returns a
/// description of the first violation, if any.
std::optional<std::string> infinitesimal_relations_witness(
    const std::map<std::pair<int, int>, TruncSeriesMatrix>& images, int n);

/// Exponent vectors of total degree d over k variables, lexicographic.
std::vector<std::vector<int>> monomials_of_degree(int vars, int d);

/// Column vector of the degree-d homogeneous part: one entry per
/// (monomial, row, col), monomials ordered as above.
std::vector<Int> flatten_homogeneous(const TruncSeriesMatrix& m, int d);

/// Matrix of the induced degree-q map: columns indexed by basis(n, q), each
/// the flattened iterated matrix commutator of the X(i,j) along the standard
/// bracketing of the basis word.
exactla::IntMatrix induced_graded_map(const RepresentationSpec& spec, int n, int q,
                                      int degree_cap = braidlie::kDefaultDegreeCap);

/// Same class computed through the group: nested commutator of pure
/// generator words, evaluated by rep_image; parts below q must vanish.
/// Built-in families only; the independent check of induced_graded_map.
std::vector<Int> graded_class_via_group(const RepresentationSpec& spec,
                                        const braidlie::BasisEntry& entry, int q);

// ---------------------------------------------------------------------------
// Faithfulness criterion.

struct CriterionCheck {
  int q = 0;
  std::string name;  // delta-line | top-generators | combined-degree-1 | component-n
  bool injective = false;
  int domain_rank = 0;
  std::string witness;  // kernel element in canonical text, empty when injective
};

enum class CriterionConclusion { met_up_to_degree, failed_with_witness, inconclusive };

std::string conclusion_name(CriterionConclusion c);

struct CriterionReport {
  std::string family;
  int n = 0;
  int max_degree = 0;
  int trunc = 0;
  int size = 0;
  int vars = 0;
  std::vector<CriterionCheck> checks;  // sorted by (q, check kind)
  CriterionConclusion conclusion = CriterionConclusion::inconclusive;
  std::string note;
};

struct CriterionOptions {
  /// Permutation of the natural check schedule, for order-independence
  /// testing; empty means natural order.
  std::vector<int> schedule;
  central::AdMatrixSource* source = nullptr;  // basis provider, optional
  int degree_cap = braidlie::kDefaultDegreeCap;
};

/// Degree-1 injectivity on the diagonal line, on the span of the top-row
/// generators, and on their joint span; for 2 <= q <= max_degree injectivity
/// on the top-component slice.  Passing every check certifies the
/// homomorphism criterion through max_degree; any failure yields a witness.
CriterionReport criterion_test(const RepresentationSpec& spec, int n, int max_degree,
                               const CriterionOptions& options = {});

}  // namespace repmaps
