#include "braidlie/central.hpp"

#include <stdexcept>

namespace central {

using braidlie::Generator;
using braidlie::GradedBasis;
using braidlie::PnLieElement;
using exactla::IntMatrix;

braidlie::GradedBasis DirectSource::graded_basis(int n, int q) {
  return braidlie::basis(n, q, degree_cap_);
}

exactla::IntMatrix DirectSource::ad_matrix(int n, int q, braidlie::Generator g) {
  GradedBasis dom = graded_basis(n, q);
  GradedBasis cod = graded_basis(n, q + 1);
  IntMatrix m(cod.size(), dom.size());
  PnLieElement ge = PnLieElement::generator(n, g);
  for (int c = 0; c < dom.size(); ++c) {
    PnLieElement img = braidlie::bracket(dom.element(c), ge);
    std::vector<Int> coords = cod.coordinates(img);
    for (int r = 0; r < cod.size(); ++r)
      if (coords[r] != 0) m.at(r, c) = coords[r];
  }
  return m;
}

namespace {

void check_args(int n, int q, int degree_cap) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (q < 1) throw std::invalid_argument("degree must be positive");
  if (q + 1 > degree_cap) throw std::invalid_argument("degree + 1 exceeds degree cap");
}

// Kernel of the stacked adjoint matrices, pulled back to basis form.
std::vector<PnLieElement> common_kernel(int n, int q, const std::vector<Generator>& gens,
                                        AdMatrixSource& source) {
  GradedBasis dom = source.graded_basis(n, q);
  std::vector<IntMatrix> blocks;
  int total_rows = 0;
  for (const Generator& g : gens) {
    blocks.push_back(source.ad_matrix(n, q, g));
    total_rows += blocks.back().rows();
  }
  IntMatrix stacked(total_rows, dom.size());
  int r0 = 0;
  for (const IntMatrix& b : blocks) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c)
        if (b.at(r, c) != 0) stacked.at(r0 + r, c) = b.at(r, c);
    r0 += b.rows();
  }
  std::vector<PnLieElement> out;
  for (const auto& vec : exactla::kernel(stacked)) out.push_back(dom.combine(vec));
  return out;
}

}  // namespace

std::vector<PnLieElement> centralizer_of_top(int n, int q, AdMatrixSource* source,
                                             int degree_cap) {
  check_args(n, q, degree_cap);
  DirectSource direct(degree_cap);
  AdMatrixSource& src = source ? *source : direct;
  std::vector<Generator> gens;
  for (int s = 1; s < n; ++s) gens.emplace_back(s, n);
  return common_kernel(n, q, gens, src);
}

std::vector<PnLieElement> adjoint_kernel(int n, int q, AdMatrixSource* source, int degree_cap) {
  check_args(n, q, degree_cap);
  DirectSource direct(degree_cap);
  AdMatrixSource& src = source ? *source : direct;
  return common_kernel(n, q, braidlie::generators(n), src);
}

std::vector<PnLieElement> centralizer_of_element(int n, const PnLieElement& z, int q,
                                                 AdMatrixSource* source, int degree_cap) {
  check_args(n, q, degree_cap);
  if (z.n() != n) throw std::invalid_argument("strand count mismatch");
  if (z.is_zero() || !z.is_homogeneous() || z.degree() != 1)
    throw std::invalid_argument("centralizing element must be homogeneous of degree 1");
  DirectSource direct(degree_cap);
  AdMatrixSource& src = source ? *source : direct;
  GradedBasis dom = src.graded_basis(n, q);
  GradedBasis cod = src.graded_basis(n, q + 1);
  IntMatrix m(cod.size(), dom.size());
  for (int c = 0; c < dom.size(); ++c) {
    PnLieElement img = braidlie::bracket(dom.element(c), z);
    std::vector<Int> coords = cod.coordinates(img);
    for (int r = 0; r < cod.size(); ++r)
      if (coords[r] != 0) m.at(r, c) = coords[r];
  }
  std::vector<PnLieElement> out;
  for (const auto& vec : exactla::kernel(m)) out.push_back(dom.combine(vec));
  return out;
}

CentralizerReport verify_theorem(int n, int max_degree, AdMatrixSource* source, int degree_cap) {
  if (max_degree < 1) throw std::invalid_argument("max_degree must be positive");
  check_args(n, 1, degree_cap);
  if (max_degree + 1 > degree_cap)
    throw std::invalid_argument("max_degree + 1 exceeds degree cap");

  CentralizerReport report;
  report.n = n;
  report.max_degree = max_degree;
  PnLieElement diag = braidlie::delta(n);
  for (int q = 1; q <= max_degree; ++q) {
    DegreeResult res;
    res.q = q;
    res.basis = centralizer_of_top(n, q, source, degree_cap);
    res.rank = static_cast<int>(res.basis.size());
    if (q == 1) {
      res.matches_prediction =
          res.rank == 1 && (res.basis[0] == diag || res.basis[0] == -diag);
    } else {
      res.matches_prediction = res.rank == 0;
    }
    if (!res.matches_prediction && report.passed) {
      report.passed = false;
      report.witness = "degree " + std::to_string(q) + ": rank " + std::to_string(res.rank) +
                       (q == 1 ? ", expected the diagonal line" : ", expected 0");
      if (res.rank > 0) report.witness += "; first basis vector " + to_string(res.basis[0]);
    }
    report.degrees.push_back(std::move(res));
  }
  return report;
}

}  // namespace central
