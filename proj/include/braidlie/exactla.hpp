#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace exactla {

using Int = mpz_class;

/// Dense matrix over Z with arbitrary-precision entries, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& at(int r, int c) { return entries_[index(r, c)]; }
  const Int& at(int r, int c) const { return entries_[index(r, c)]; }

  std::vector<Int> row(int r) const;
  std::vector<Int> col(int c) const;
  IntMatrix transposed() const;
  bool is_zero() const;
  bool is_identity() const;

  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<Int> operator*(const std::vector<Int>& v) const;
  bool operator==(const IntMatrix& rhs) const = default;

  // Elementary operations; every mutation used by the normal forms below.
  void swap_rows(int a, int b);
  void negate_row(int r);
  void add_row_multiple(int dst, int src, const Int& factor);
  void swap_cols(int a, int b);
  void add_col_multiple(int dst, int src, const Int& factor);

  std::string to_string() const;

private:
  size_t index(int r, int c) const { return static_cast<size_t>(r) * cols_ + c; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> entries_;
};

/// h = u*a with u unimodular; h in row echelon form with positive pivots and
/// the entries above each pivot reduced into [0, pivot).
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
};
HnfResult hnf(const IntMatrix& a);

/// d = u*a*v with u, v unimodular; d diagonal, d_1 | d_2 | ..., all d_i >= 0.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};
SnfResult snf(const IntMatrix& a);

/// Canonical basis of the lattice {v : a*v = 0}.  Each returned vector is
/// primitive; the list is empty exactly when a is injective.  The basis is
/// normalized by HNF so equal kernels always produce identical output.
std::vector<std::vector<Int>> kernel(const IntMatrix& a);

struct InjectivityCertificate {
  bool injective = false;
  std::optional<std::vector<Int>> kernel_witness;  // nonzero vector if not injective
  std::optional<int> rank;                         // = cols if injective
};
InjectivityCertificate is_injective(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant; square matrices only.
Int determinant(const IntMatrix& a);

int rank(const IntMatrix& a);

/// Membership of v in the row lattice spanned by basis_rows.  The rows must
/// be an echelon basis as produced by kernel() or hnf().
bool lattice_contains(const std::vector<std::vector<Int>>& basis_rows,
                      const std::vector<Int>& v);

/// True when the row lattice of the given vectors is saturated in Z^len,
/// i.e. the quotient is torsion-free (every SNF diagonal entry is 0 or 1).
bool is_saturated(const std::vector<std::vector<Int>>& basis_rows, int len);

}  // namespace exactla
