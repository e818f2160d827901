#include "braidlie/exactla.hpp"

#include <sstream>
#include <stdexcept>

namespace exactla {

namespace {

// Floor quotient; remainder a - b*q lies in [0, |b|) for b > 0.
Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Quotient minimizing |a - q*b|; requires b > 0.  Keeps entries small during
// elimination without affecting exactness.
Int nearest_quotient(const Int& a, const Int& b) {
  Int half = b / 2;
  return floor_div(a + half, b);
}

bool abs_less(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
}

}  // namespace

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  entries_.assign(static_cast<size_t>(rows) * cols, Int(0));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Int> IntMatrix::row(int r) const {
  std::vector<Int> out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(r, j);
  return out;
}

std::vector<Int> IntMatrix::col(int c) const {
  std::vector<Int> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& e : entries_)
    if (e != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
  IntMatrix m(rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] + rhs.entries_[k];
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
  IntMatrix m(rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] - rhs.entries_[k];
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("shape mismatch");
  IntMatrix m(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) m.at(i, j) += a * rhs.at(k, j);
    }
  return m;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& v) const {
  if (cols_ != static_cast<int>(v.size())) throw std::invalid_argument("shape mismatch");
  std::vector<Int> out(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * v[j];
  return out;
}

void IntMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::negate_row(int r) {
  for (int j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
}

void IntMatrix::add_row_multiple(int dst, int src, const Int& factor) {
  if (factor == 0) return;
  for (int j = 0; j < cols_; ++j) at(dst, j) += factor * at(src, j);
}

void IntMatrix::swap_cols(int a, int b) {
  if (a == b) return;
  for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_col_multiple(int dst, int src, const Int& factor) {
  if (factor == 0) return;
  for (int i = 0; i < rows_; ++i) at(i, dst) += factor * at(i, src);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << '[';
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
    os << "]\n";
  }
  return os.str();
}

HnfResult hnf(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  int r = 0;
  for (int c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Repeatedly move the entry of least absolute value into the pivot slot
    // and reduce below it until the column is clear under row r.
    while (true) {
      int pick = -1;
      for (int i = r; i < h.rows(); ++i) {
        if (h.at(i, c) != 0 && (pick < 0 || abs_less(h.at(i, c), h.at(pick, c)))) pick = i;
      }
      if (pick < 0) break;
      if (pick != r) {
        h.swap_rows(r, pick);
        u.swap_rows(r, pick);
      }
      if (h.at(r, c) < 0) {
        h.negate_row(r);
        u.negate_row(r);
      }
      bool clear = true;
      for (int i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = nearest_quotient(h.at(i, c), h.at(r, c));
        if (q != 0) {
          h.add_row_multiple(i, r, -q);
          u.add_row_multiple(i, r, -q);
        }
        if (h.at(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (h.at(r, c) != 0) {
      for (int i = 0; i < r; ++i) {
        Int q = floor_div(h.at(i, c), h.at(r, c));
        if (q != 0) {
          h.add_row_multiple(i, r, -q);
          u.add_row_multiple(i, r, -q);
        }
      }
      ++r;
    }
  }
  return {std::move(h), std::move(u)};
}

SnfResult snf(const IntMatrix& a) {
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  IntMatrix v = IntMatrix::identity(a.cols());
  int limit = std::min(a.rows(), a.cols());

  for (int t = 0; t < limit; ++t) {
    // Least-absolute-value pivot from the trailing submatrix.
    int pi = -1, pj = -1;
    for (int i = t; i < d.rows(); ++i)
      for (int j = t; j < d.cols(); ++j)
        if (d.at(i, j) != 0 && (pi < 0 || abs_less(d.at(i, j), d.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }

    while (true) {
      // Clear column t.  A nonzero remainder is strictly smaller than the
      // pivot, so promoting it and restarting terminates.
      bool restart = false;
      for (int i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = nearest_quotient(d.at(i, t), d.at(t, t));
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d.at(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          if (d.at(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
          }
          restart = true;
          break;
        }
      }
      if (restart) continue;

      // Clear row t; column t stays clear because column operations touch
      // only columns > t.
      for (int j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = nearest_quotient(d.at(t, j), d.at(t, t));
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d.at(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          if (d.at(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
          }
          restart = true;
          break;
        }
      }
      if (restart) continue;

      // Enforce divisibility of the trailing submatrix by the pivot.
      bool fixed = true;
      for (int i = t + 1; i < d.rows() && fixed; ++i)
        for (int j = t + 1; j < d.cols() && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

std::vector<std::vector<Int>> kernel(const IntMatrix& a) {
  // Row-reduce the transpose: zero rows of H correspond to rows of U that
  // annihilate a, i.e. a kernel basis.
  HnfResult t = hnf(a.transposed());
  std::vector<std::vector<Int>> raw;
  for (int i = 0; i < t.h.rows(); ++i) {
    bool zero = true;
    for (int j = 0; j < t.h.cols(); ++j)
      if (t.h.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) raw.push_back(t.u.row(i));
  }
  if (raw.empty()) return {};
  // Canonicalize: the HNF basis of a lattice is unique.
  HnfResult k = hnf(IntMatrix::from_rows(raw));
  std::vector<std::vector<Int>> out;
  for (int i = 0; i < k.h.rows(); ++i) {
    std::vector<Int> row = k.h.row(i);
    bool zero = true;
    for (const Int& e : row)
      if (e != 0) {
        zero = false;
        break;
      }
    if (!zero) out.push_back(std::move(row));
  }
  return out;
}

InjectivityCertificate is_injective(const IntMatrix& a) {
  InjectivityCertificate cert;
  std::vector<std::vector<Int>> ker = kernel(a);
  if (ker.empty()) {
    cert.injective = true;
    SnfResult s = snf(a);
    int r = 0;
    for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
      if (s.d.at(i, i) != 0) ++r;
    cert.rank = r;
  } else {
    cert.injective = false;
    cert.kernel_witness = ker.front();
  }
  return cert;
}

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant requires a square matrix");
  int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m.at(k, k);
  }
  return sign < 0 ? Int(-m.at(n - 1, n - 1)) : m.at(n - 1, n - 1);
}

int rank(const IntMatrix& a) {
  HnfResult r = hnf(a);
  int count = 0;
  for (int i = 0; i < r.h.rows(); ++i)
    for (int j = 0; j < r.h.cols(); ++j)
      if (r.h.at(i, j) != 0) {
        ++count;
        break;
      }
  return count;
}

bool lattice_contains(const std::vector<std::vector<Int>>& basis_rows,
                      const std::vector<Int>& v) {
  std::vector<Int> rem = v;
  if (basis_rows.empty()) {
    for (const Int& e : rem)
      if (e != 0) return false;
    return true;
  }
  HnfResult h = hnf(IntMatrix::from_rows(basis_rows));
  int len = static_cast<int>(v.size());
  if (h.h.cols() != len) throw std::invalid_argument("vector length mismatch");
  for (int i = 0; i < h.h.rows(); ++i) {
    int p = -1;
    for (int j = 0; j < len; ++j)
      if (h.h.at(i, j) != 0) {
        p = j;
        break;
      }
    if (p < 0) break;
    if (rem[p] % h.h.at(i, p) != 0) return false;
    Int q = rem[p] / h.h.at(i, p);
    for (int j = 0; j < len; ++j) rem[j] -= q * h.h.at(i, j);
  }
  for (const Int& e : rem)
    if (e != 0) return false;
  return true;
}

bool is_saturated(const std::vector<std::vector<Int>>& basis_rows, int len) {
  if (basis_rows.empty()) return true;
  for (const auto& r : basis_rows)
    if (static_cast<int>(r.size()) != len) throw std::invalid_argument("vector length mismatch");
  SnfResult s = snf(IntMatrix::from_rows(basis_rows));
  for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
    if (s.d.at(i, i) != 0 && s.d.at(i, i) != 1) return false;
  return true;
}

}  // namespace exactla
