#pragma once

#include "braidlie/braidlie.hpp"
#include "braidlie/exactla.hpp"

#include <string>
#include <vector>

namespace central {

using Int = mpz_class;
using braidlie::kDefaultDegreeCap;

/// Provider of graded bases and per-generator adjoint matrices; lets callers
/// swap in a persistent cache without changing the algorithms.
class AdMatrixSource {
public:
  virtual ~AdMatrixSource() = default;
  virtual braidlie::GradedBasis graded_basis(int n, int q) = 0;
  /// Matrix of x -> [x, B(g)] from the degree-q slice to the degree-(q+1)
  /// slice, in the bases above.
  virtual exactla::IntMatrix ad_matrix(int n, int q, braidlie::Generator g) = 0;
};

/// Stateless source that computes everything on the fly.
class DirectSource : public AdMatrixSource {
public:
  explicit DirectSource(int degree_cap = kDefaultDegreeCap) : degree_cap_(degree_cap) {}
  braidlie::GradedBasis graded_basis(int n, int q) override;
  exactla::IntMatrix ad_matrix(int n, int q, braidlie::Generator g) override;

private:
  int degree_cap_;
};

/// Canonical basis of {x in degree q : [x, B(s,n)] = 0 for all s}; requires
/// n >= 3 and q + 1 within the cap.
std::vector<braidlie::PnLieElement> centralizer_of_top(int n, int q,
                                                       AdMatrixSource* source = nullptr,
                                                       int degree_cap = kDefaultDegreeCap);

/// Canonical basis of {x in degree q : [x, g] = 0 for every generator g}.
std::vector<braidlie::PnLieElement> adjoint_kernel(int n, int q,
                                                   AdMatrixSource* source = nullptr,
                                                   int degree_cap = kDefaultDegreeCap);

/// Canonical basis of {x in degree q : [x, z] = 0} for a fixed z, homogeneous
/// of degree 1.
std::vector<braidlie::PnLieElement> centralizer_of_element(
    int n, const braidlie::PnLieElement& z, int q, AdMatrixSource* source = nullptr,
    int degree_cap = kDefaultDegreeCap);

struct DegreeResult {
  int q = 0;
  int rank = 0;
  std::vector<braidlie::PnLieElement> basis;
  bool matches_prediction = false;
};

struct CentralizerReport {
  int n = 0;
  int max_degree = 0;
  std::vector<DegreeResult> degrees;
  bool passed = true;
  std::string witness;  // first mismatch, empty when passed
};

/// Degree-by-degree check that the centralizer of the top component is the
/// line through the diagonal element in degree 1 and vanishes beyond.
CentralizerReport verify_theorem(int n, int max_degree, AdMatrixSource* source = nullptr,
                                 int degree_cap = kDefaultDegreeCap);

}  // namespace central
