#include "braidlie/repmaps.hpp"

#include "braidlie/central.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace repmaps {

using braidlie::BasisEntry;
using braidlie::GradedBasis;
using exactla::IntMatrix;
using freelie::BracketTree;
using freelie::FreeLieElement;
using freelie::LyndonWord;

// ---------------------------------------------------------------------------
// TruncPoly

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

TruncPoly::TruncPoly(int vars, int trunc) : vars_(vars), trunc_(trunc) {
  if (vars < 1) throw std::invalid_argument("need at least one variable");
  if (trunc < 0) throw std::invalid_argument("truncation must be nonnegative");
}

TruncPoly TruncPoly::constant(int vars, int trunc, Int c) {
  TruncPoly p(vars, trunc);
  p.add_term(std::vector<int>(vars, 0), c);
  return p;
}

TruncPoly TruncPoly::variable(int vars, int trunc, int index) {
  if (index < 0 || index >= vars) throw std::invalid_argument("variable index out of range");
  TruncPoly p(vars, trunc);
  std::vector<int> e(vars, 0);
  e[index] = 1;
  p.add_term(e, Int(1));
  return p;
}

Int TruncPoly::coefficient(const std::vector<int>& expo) const {
  auto it = terms_.find(expo);
  return it == terms_.end() ? Int(0) : it->second;
}

Int TruncPoly::constant_term() const { return coefficient(std::vector<int>(vars_, 0)); }

void TruncPoly::add_term(const std::vector<int>& expo, const Int& c) {
  if (static_cast<int>(expo.size()) != vars_)
    throw std::invalid_argument("exponent vector length mismatch");
  if (c == 0) return;
  int total = std::accumulate(expo.begin(), expo.end(), 0);
  if (total > trunc_) return;
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    terms_.emplace(expo, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncPoly TruncPoly::homogeneous_part(int d) const {
  TruncPoly p(vars_, trunc_);
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == d) p.terms_.emplace(e, c);
  return p;
}

TruncPoly TruncPoly::with_trunc(int trunc) const {
  TruncPoly p(vars_, trunc);
  for (const auto& [e, c] : terms_) p.add_term(e, c);
  return p;
}

TruncPoly TruncPoly::collapse_variables() const {
  TruncPoly p(1, trunc_);
  for (const auto& [e, c] : terms_)
    p.add_term({std::accumulate(e.begin(), e.end(), 0)}, c);
  return p;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& o) {
  if (vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("polynomial shape mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& o) {
  if (vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("polynomial shape mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
  TruncPoly p = *this;
  p += o;
  return p;
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const {
  TruncPoly p = *this;
  p -= o;
  return p;
}

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
  if (vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("polynomial shape mismatch");
  TruncPoly p(vars_, trunc_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<int> e(vars_);
      for (int i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
      p.add_term(e, c1 * c2);
    }
  return p;
}

TruncPoly TruncPoly::operator-() const {
  TruncPoly p(vars_, trunc_);
  for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
  return p;
}

std::string TruncPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "u" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (c == 1 && !mono.empty()) {
      if (!first) os << '+';
    } else if (c == -1 && !mono.empty()) {
      os << '-';
    } else {
      if (!first && c > 0) os << '+';
      os << c;
      if (!mono.empty()) os << '*';
    }
    os << mono;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// TruncSeriesMatrix

TruncSeriesMatrix::TruncSeriesMatrix(int size, int vars, int trunc)
    : size_(size), vars_(vars), trunc_(trunc) {
  if (size < 1) throw std::invalid_argument("matrix size must be positive");
  entries_.assign(static_cast<size_t>(size) * size, TruncPoly(vars, trunc));
}

TruncSeriesMatrix TruncSeriesMatrix::identity(int size, int vars, int trunc) {
  TruncSeriesMatrix m(size, vars, trunc);
  for (int i = 0; i < size; ++i) m.at(i, i) = TruncPoly::constant(vars, trunc, Int(1));
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::from_int_matrix(const IntMatrix& m, int vars, int trunc) {
  if (!m.is_square()) throw std::invalid_argument("square matrix required");
  TruncSeriesMatrix out(m.rows(), vars, trunc);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) out.at(i, j) = TruncPoly::constant(vars, trunc, m.at(i, j));
  return out;
}

IntMatrix TruncSeriesMatrix::constant_part() const {
  IntMatrix m(size_, size_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m.at(i, j) = at(i, j).constant_term();
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::homogeneous_part(int d) const {
  TruncSeriesMatrix m(size_, vars_, trunc_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m.at(i, j) = at(i, j).homogeneous_part(d);
  return m;
}

bool TruncSeriesMatrix::is_zero() const {
  for (const TruncPoly& p : entries_)
    if (!p.is_zero()) return false;
  return true;
}

TruncSeriesMatrix TruncSeriesMatrix::with_trunc(int trunc) const {
  TruncSeriesMatrix m(size_, vars_, trunc);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m.at(i, j) = at(i, j).with_trunc(trunc);
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::collapse_variables() const {
  TruncSeriesMatrix m(size_, 1, trunc_);
  for (int i = 0; i < size_; ++i)
    for (int j = 0; j < size_; ++j) m.at(i, j) = at(i, j).collapse_variables();
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::operator+(const TruncSeriesMatrix& o) const {
  if (size_ != o.size_ || vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("matrix shape mismatch");
  TruncSeriesMatrix m = *this;
  for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] += o.entries_[k];
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::operator-(const TruncSeriesMatrix& o) const {
  if (size_ != o.size_ || vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("matrix shape mismatch");
  TruncSeriesMatrix m = *this;
  for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] -= o.entries_[k];
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::operator*(const TruncSeriesMatrix& o) const {
  if (size_ != o.size_ || vars_ != o.vars_ || trunc_ != o.trunc_)
    throw std::invalid_argument("matrix shape mismatch");
  TruncSeriesMatrix m(size_, vars_, trunc_);
  for (int i = 0; i < size_; ++i)
    for (int k = 0; k < size_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < size_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        m.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  return m;
}

TruncSeriesMatrix TruncSeriesMatrix::inverse() const {
  auto [h, u] = exactla::hnf(constant_part());
  if (!h.is_identity())
    throw std::invalid_argument("constant part is not unimodular; no inverse over Z[[u]]");
  TruncSeriesMatrix base_inv = from_int_matrix(u, vars_, trunc_);
  TruncSeriesMatrix rest = base_inv * (*this) - identity(size_, vars_, trunc_);
  // (I + Q)^-1 = sum (-Q)^j; Q has no constant term so the series stops.
  TruncSeriesMatrix acc = identity(size_, vars_, trunc_);
  TruncSeriesMatrix power = identity(size_, vars_, trunc_);
  for (int j = 1; j <= trunc_; ++j) {
    power = power * rest;
    if (power.is_zero()) break;
    if (j % 2) {
      acc = acc - power;
    } else {
      acc = acc + power;
    }
  }
  return acc * base_inv;
}

// ---------------------------------------------------------------------------
// Free-group words and Magnus expansion

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  for (const GroupLetter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

GroupWord group_inverse(const GroupWord& w) {
  GroupWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

GroupWord group_commutator(const GroupWord& w1, const GroupWord& w2) {
  GroupWord out = w1;
  out.insert(out.end(), w2.begin(), w2.end());
  GroupWord i1 = group_inverse(w1);
  out.insert(out.end(), i1.begin(), i1.end());
  GroupWord i2 = group_inverse(w2);
  out.insert(out.end(), i2.begin(), i2.end());
  return free_reduce(out);
}

TensorSeries::TensorSeries(int vars, int trunc) : vars_(vars), trunc_(trunc) {
  if (vars < 1) throw std::invalid_argument("need at least one variable");
  if (trunc < 0) throw std::invalid_argument("truncation must be nonnegative");
}

TensorSeries TensorSeries::one(int vars, int trunc) {
  TensorSeries s(vars, trunc);
  s.add_term({}, Int(1));
  return s;
}

TensorSeries TensorSeries::variable(int vars, int trunc, int index) {
  if (index < 0 || index >= vars) throw std::invalid_argument("variable index out of range");
  TensorSeries s(vars, trunc);
  s.add_term({index}, Int(1));
  return s;
}

Int TensorSeries::coefficient(const std::vector<int>& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? Int(0) : it->second;
}

void TensorSeries::add_term(const std::vector<int>& word, const Int& c) {
  if (c == 0 || static_cast<int>(word.size()) > trunc_) return;
  for (int l : word)
    if (l < 0 || l >= vars_) throw std::invalid_argument("letter out of range");
  auto it = terms_.find(word);
  if (it == terms_.end()) {
    terms_.emplace(word, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TensorSeries TensorSeries::homogeneous_part(int d) const {
  TensorSeries s(vars_, trunc_);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.size()) == d) s.terms_.emplace(w, c);
  return s;
}

TensorSeries& TensorSeries::operator+=(const TensorSeries& o) {
  if (vars_ != o.vars_ || trunc_ != o.trunc_) throw std::invalid_argument("series shape mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

TensorSeries& TensorSeries::operator-=(const TensorSeries& o) {
  if (vars_ != o.vars_ || trunc_ != o.trunc_) throw std::invalid_argument("series shape mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

TensorSeries TensorSeries::operator+(const TensorSeries& o) const {
  TensorSeries s = *this;
  s += o;
  return s;
}

TensorSeries TensorSeries::operator-(const TensorSeries& o) const {
  TensorSeries s = *this;
  s -= o;
  return s;
}

TensorSeries TensorSeries::operator*(const TensorSeries& o) const {
  if (vars_ != o.vars_ || trunc_ != o.trunc_) throw std::invalid_argument("series shape mismatch");
  TensorSeries s(vars_, trunc_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) {
      if (static_cast<int>(w1.size() + w2.size()) > trunc_) continue;
      std::vector<int> w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      s.add_term(w, c1 * c2);
    }
  return s;
}

TensorSeries TensorSeries::operator-() const {
  TensorSeries s(vars_, trunc_);
  for (const auto& [w, c] : terms_) s.terms_.emplace(w, -c);
  return s;
}

std::string TensorSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string mono;
    for (int l : w) mono += "X" + std::to_string(l + 1);
    if (mono.empty()) mono = "1";
    if (c == 1) {
      if (!first) os << '+';
    } else if (c == -1) {
      os << '-';
    } else {
      if (!first && c > 0) os << '+';
      os << c << '*';
    }
    os << mono;
    first = false;
  }
  return os.str();
}

TensorSeries magnus_expand(const GroupWord& w, int vars, int trunc) {
  TensorSeries acc = TensorSeries::one(vars, trunc);
  for (const GroupLetter& l : w) {
    if (l.gen < 0 || l.gen >= vars) throw std::invalid_argument("generator index out of range");
    if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("exponents must be +-1");
    TensorSeries factor = TensorSeries::one(vars, trunc);
    TensorSeries x = TensorSeries::variable(vars, trunc, l.gen);
    if (l.exp == 1) {
      factor += x;
    } else {
      // geometric series for (1 + X)^-1
      TensorSeries power = TensorSeries::one(vars, trunc);
      for (int d = 1; d <= trunc; ++d) {
        power = power * x;
        if (power.is_zero()) break;
        if (d % 2) {
          factor -= power;
        } else {
          factor += power;
        }
      }
    }
    acc = acc * factor;
  }
  return acc;
}

namespace {

GroupWord tree_group_word(const BracketTree& t) {
  if (t.is_leaf()) return {{t.value(), 1}};
  return group_commutator(tree_group_word(t.left()), tree_group_word(t.right()));
}

}  // namespace

TensorSeries magnus_bracket_oracle(const BracketTree& expr, int vars) {
  int deg = expr.degree();
  bool bad = false;
  expr.for_each_leaf([&](int l) {
    if (l < 0 || l >= vars) bad = true;
  });
  if (bad) throw std::invalid_argument("expression leaf outside variable range");
  TensorSeries full = magnus_expand(tree_group_word(expr), vars, deg);
  if (full.coefficient({}) != 1) throw std::logic_error("expansion lost its constant term");
  for (int d = 1; d < deg; ++d)
    if (!full.homogeneous_part(d).is_zero())
      throw std::logic_error("commutator word has unexpected low-degree terms");
  return full.homogeneous_part(deg);
}

namespace {

TensorSeries embed_tree(const BracketTree& t, int vars, int trunc) {
  if (t.is_leaf()) return TensorSeries::variable(vars, trunc, t.value());
  TensorSeries a = embed_tree(t.left(), vars, trunc);
  TensorSeries b = embed_tree(t.right(), vars, trunc);
  return a * b - b * a;
}

}  // namespace

TensorSeries tensor_embedding(const FreeLieElement& x, int vars, int trunc) {
  TensorSeries out(vars, trunc);
  for (const auto& [w, c] : x.terms()) {
    TensorSeries e = embed_tree(freelie::standard_bracketing(w), vars, trunc);
    for (const auto& [word, coeff] : e.terms()) out.add_term(word, c * coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Braid words

namespace {

void check_braid(const BraidWord& w) {
  if (w.n < 2) throw std::invalid_argument("braid needs at least 2 strands");
  for (const BraidLetter& l : w.letters) {
    if (l.index < 1 || l.index >= w.n) throw std::invalid_argument("letter index out of range");
    if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("letter exponent must be +-1");
  }
}

}  // namespace

BraidWord braid_concat(const BraidWord& a, const BraidWord& b) {
  if (a.n != b.n) throw std::invalid_argument("strand count mismatch");
  BraidWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

BraidWord braid_inverse(const BraidWord& w) {
  BraidWord out;
  out.n = w.n;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back({it->index, -it->exp});
  return out;
}

std::vector<int> underlying_permutation(const BraidWord& w) {
  check_braid(w);
  std::vector<int> strand_at(w.n);
  for (int p = 0; p < w.n; ++p) strand_at[p] = p + 1;
  for (const BraidLetter& l : w.letters) std::swap(strand_at[l.index - 1], strand_at[l.index]);
  return strand_at;
}

bool is_pure(const BraidWord& w) {
  std::vector<int> p = underlying_permutation(w);
  for (int k = 0; k < w.n; ++k)
    if (p[k] != k + 1) return false;
  return true;
}

std::map<std::pair<int, int>, long long> linking_numbers(const BraidWord& w) {
  check_braid(w);
  if (!is_pure(w)) throw std::invalid_argument("linking numbers require a pure word");
  std::vector<int> strand_at(w.n);
  for (int p = 0; p < w.n; ++p) strand_at[p] = p + 1;
  std::map<std::pair<int, int>, long long> sums;
  for (const BraidLetter& l : w.letters) {
    int a = strand_at[l.index - 1];
    int b = strand_at[l.index];
    sums[{std::min(a, b), std::max(a, b)}] += l.exp;
    std::swap(strand_at[l.index - 1], strand_at[l.index]);
  }
  std::map<std::pair<int, int>, long long> out;
  for (int i = 1; i <= w.n; ++i)
    for (int j = i + 1; j <= w.n; ++j) {
      long long s = sums.count({i, j}) ? sums[{i, j}] : 0;
      if (s % 2) throw std::logic_error("odd crossing sum on a pure word");
      out[{i, j}] = s / 2;
    }
  return out;
}

BraidWord pure_generator_word(int n, int i, int j) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (i < 1 || j < 1 || i == j) throw std::invalid_argument("invalid strand pair");
  if (i > j) std::swap(i, j);
  if (j > n) throw std::invalid_argument("strand index exceeds n");
  BraidWord w;
  w.n = n;
  for (int t = j - 1; t > i; --t) w.letters.push_back({t, 1});
  w.letters.push_back({i, 1});
  w.letters.push_back({i, 1});
  for (int t = i + 1; t <= j - 1; ++t) w.letters.push_back({t, -1});
  return w;
}

BraidWord center_word(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  BraidWord w;
  w.n = n;
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) w = braid_concat(w, pure_generator_word(n, i, j));
  return w;
}

// ---------------------------------------------------------------------------
// Representations

std::string family_name(RepFamily f) {
  switch (f) {
    case RepFamily::burau:
      return "burau";
    case RepFamily::gassner:
      return "gassner";
    case RepFamily::custom:
      return "custom";
  }
  return "unknown";
}

RepresentationSpec RepresentationSpec::burau(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  RepresentationSpec s;
  s.family = RepFamily::burau;
  s.n = n;
  s.size = n;
  s.vars = 1;
  return s;
}

RepresentationSpec RepresentationSpec::gassner(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  RepresentationSpec s;
  s.family = RepFamily::gassner;
  s.n = n;
  s.size = n;
  s.vars = n;
  return s;
}

RepresentationSpec RepresentationSpec::custom(
    int n, int size, int vars, std::map<std::pair<int, int>, TruncSeriesMatrix> images) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  RepresentationSpec s;
  s.family = RepFamily::custom;
  s.n = n;
  s.size = size;
  s.vars = vars;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto it = images.find({i, j});
      if (it == images.end())
        throw std::invalid_argument("missing generator image for B(" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      const TruncSeriesMatrix& m = it->second;
      if (m.size() != size || m.vars() != vars)
        throw std::invalid_argument("generator image shape mismatch");
      if (!m.constant_part().is_identity())
        throw std::invalid_argument(
            "generator images must be congruent to the identity (constant part I)");
    }
  s.custom_images = std::move(images);
  return s;
}

TruncSeriesMatrix burau_sigma(int n, int i, int trunc) {
  if (n < 2 || i < 1 || i >= n) throw std::invalid_argument("invalid generator index");
  TruncSeriesMatrix m = TruncSeriesMatrix::identity(n, 1, trunc);
  TruncPoly u = TruncPoly::variable(1, trunc, 0);
  TruncPoly one = TruncPoly::constant(1, trunc, Int(1));
  int p = i - 1;
  m.at(p, p) = -u;
  m.at(p, p + 1) = one + u;
  m.at(p + 1, p) = one;
  m.at(p + 1, p + 1) = TruncPoly(1, trunc);
  return m;
}

namespace {

// Positive-crossing block at position p (0-based) with the given variable.
TruncSeriesMatrix crossing_block(int n, int vars, int trunc, int p, int var) {
  TruncSeriesMatrix m = TruncSeriesMatrix::identity(n, vars, trunc);
  TruncPoly u = TruncPoly::variable(vars, trunc, var);
  TruncPoly one = TruncPoly::constant(vars, trunc, Int(1));
  m.at(p, p) = -u;
  m.at(p, p + 1) = one + u;
  m.at(p + 1, p) = one;
  m.at(p + 1, p + 1) = TruncPoly(vars, trunc);
  return m;
}

}  // namespace

TruncSeriesMatrix rep_image(const RepresentationSpec& spec, const BraidWord& w, int trunc) {
  if (w.n != spec.n) throw std::invalid_argument("strand count mismatch");
  check_braid(w);
  if (spec.family == RepFamily::custom)
    throw std::invalid_argument("sigma-word evaluation is defined for built-in families only");

  if (spec.family == RepFamily::gassner && !is_pure(w))
    throw std::invalid_argument("the colored family evaluates pure words only");

  int n = spec.n;
  int vars = spec.vars;
  std::map<std::tuple<int, int, int>, TruncSeriesMatrix> cache;  // (pos, var, exp)
  auto block = [&](int p, int var, int exp) -> const TruncSeriesMatrix& {
    auto key = std::make_tuple(p, var, exp);
    auto it = cache.find(key);
    if (it == cache.end()) {
      TruncSeriesMatrix b = crossing_block(n, vars, trunc, p, var);
      if (exp < 0) b = b.inverse();
      it = cache.emplace(key, std::move(b)).first;
    }
    return it->second;
  };

  TruncSeriesMatrix acc = TruncSeriesMatrix::identity(n, vars, trunc);
  std::vector<int> strand_at(n);
  for (int p = 0; p < n; ++p) strand_at[p] = p + 1;
  for (const BraidLetter& l : w.letters) {
    int p = l.index - 1;
    int var = 0;
    if (spec.family == RepFamily::gassner) {
      // The strand passing over carries the variable: the one at position
      // p+1 for a positive crossing, at p for a negative one.  With
      // left-to-right composition this is the choice under which the
      // degree-one classes satisfy the infinitesimal relations.
      int strand = l.exp > 0 ? strand_at[p + 1] : strand_at[p];
      var = strand - 1;
    }
    acc = acc * block(p, var, l.exp);
    std::swap(strand_at[p], strand_at[p + 1]);
  }
  return acc;
}

std::map<std::pair<int, int>, TruncSeriesMatrix> degree_one_images(
    const RepresentationSpec& spec, int trunc) {
  if (trunc < 1) throw std::invalid_argument("truncation must be at least 1");
  std::map<std::pair<int, int>, TruncSeriesMatrix> out;
  for (int i = 1; i < spec.n; ++i)
    for (int j = i + 1; j <= spec.n; ++j) {
      if (spec.family == RepFamily::custom) {
        const TruncSeriesMatrix& m = spec.custom_images.at({i, j});
        out.emplace(std::make_pair(i, j), m.homogeneous_part(1).with_trunc(trunc));
      } else {
        TruncSeriesMatrix m = rep_image(spec, pure_generator_word(spec.n, i, j), 1);
        out.emplace(std::make_pair(i, j), m.homogeneous_part(1).with_trunc(trunc));
      }
    }
  return out;
}

std::optional<std::string> infinitesimal_relations_witness(
    const std::map<std::pair<int, int>, TruncSeriesMatrix>& images, int n) {
  if (images.empty()) throw std::invalid_argument("no images supplied");
  int trunc = std::max(2, images.begin()->second.trunc());
  auto x = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return images.at({a, b}).with_trunc(trunc);
  };
  auto comm = [](const TruncSeriesMatrix& a, const TruncSeriesMatrix& b) {
    return a * b - b * a;
  };
  auto name = [](int a, int b, const char* inner) {
    return std::string("[X(") + std::to_string(a) + "," + std::to_string(b) + "), " + inner + "]";
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      for (int s = 1; s <= n; ++s)
        for (int t = s + 1; t <= n; ++t) {
          if (s == i || s == j || t == i || t == j) continue;
          if (!comm(x(i, j), x(s, t)).is_zero())
            return name(i, j, ("X(" + std::to_string(s) + "," + std::to_string(t) + ")").c_str()) +
                   " != 0";
        }
      for (int s = 1; s <= n; ++s) {
        if (s == i || s == j) continue;
        if (!comm(x(i, j), x(i, s) + x(s, j)).is_zero())
          return name(i, j,
                      ("X(" + std::to_string(i) + "," + std::to_string(s) + ")+X(" +
                       std::to_string(s) + "," + std::to_string(j) + ")")
                          .c_str()) +
                 " != 0";
      }
    }
  return std::nullopt;
}

std::vector<std::vector<int>> monomials_of_degree(int vars, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  struct Rec {
    static void run(int pos, int remaining, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
      if (pos + 1 == static_cast<int>(cur.size())) {
        cur[pos] = remaining;
        out.push_back(cur);
        return;
      }
      for (int e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        run(pos + 1, remaining - e, cur, out);
      }
    }
  };
  Rec::run(0, d, cur, out);
  return out;
}

std::vector<Int> flatten_homogeneous(const TruncSeriesMatrix& m, int d) {
  std::vector<std::vector<int>> monos = monomials_of_degree(m.vars(), d);
  std::vector<Int> out;
  out.reserve(monos.size() * m.size() * m.size());
  for (const auto& mono : monos)
    for (int r = 0; r < m.size(); ++r)
      for (int c = 0; c < m.size(); ++c) out.push_back(m.at(r, c).coefficient(mono));
  return out;
}

namespace {

TruncSeriesMatrix commutator_image(
    const std::map<std::pair<int, int>, TruncSeriesMatrix>& images, const BasisEntry& entry,
    const BracketTree& t) {
  if (t.is_leaf()) return images.at({t.value() + 1, entry.component});
  TruncSeriesMatrix a = commutator_image(images, entry, t.left());
  TruncSeriesMatrix b = commutator_image(images, entry, t.right());
  return a * b - b * a;
}

}  // namespace

exactla::IntMatrix induced_graded_map(const RepresentationSpec& spec, int n, int q,
                                      int degree_cap) {
  if (spec.n != n) throw std::invalid_argument("strand count mismatch");
  if (q < 1) throw std::invalid_argument("degree must be positive");
  auto images = degree_one_images(spec, q);
  GradedBasis dom = braidlie::basis(n, q, degree_cap);
  int block = spec.size * spec.size;
  int rows = static_cast<int>(monomials_of_degree(spec.vars, q).size()) * block;
  IntMatrix m(rows, dom.size());
  for (int c = 0; c < dom.size(); ++c) {
    const BasisEntry& entry = dom.entry(c);
    TruncSeriesMatrix img =
        commutator_image(images, entry, freelie::standard_bracketing(entry.word));
    std::vector<Int> col = flatten_homogeneous(img, q);
    for (int r = 0; r < rows; ++r)
      if (col[r] != 0) m.at(r, c) = col[r];
  }
  return m;
}

std::vector<Int> graded_class_via_group(const RepresentationSpec& spec, const BasisEntry& entry,
                                        int q) {
  if (spec.family == RepFamily::custom)
    throw std::invalid_argument("group-word path is defined for built-in families only");
  if (entry.word.degree() != q) throw std::invalid_argument("entry degree mismatch");
  struct Rec {
    static BraidWord run(const BracketTree& t, int n, int component) {
      if (t.is_leaf()) return pure_generator_word(n, t.value() + 1, component);
      BraidWord a = run(t.left(), n, component);
      BraidWord b = run(t.right(), n, component);
      return braid_concat(braid_concat(a, b),
                          braid_concat(braid_inverse(a), braid_inverse(b)));
    }
  };
  BraidWord w = Rec::run(freelie::standard_bracketing(entry.word), spec.n, entry.component);
  TruncSeriesMatrix img = rep_image(spec, w, q);
  TruncSeriesMatrix rest = img - TruncSeriesMatrix::identity(spec.size, spec.vars, q);
  for (int d = 1; d < q; ++d)
    if (!rest.homogeneous_part(d).is_zero())
      throw std::logic_error("group-word image has unexpected low-degree terms");
  return flatten_homogeneous(rest, q);
}

// ---------------------------------------------------------------------------
// Criterion

std::string conclusion_name(CriterionConclusion c) {
  switch (c) {
    case CriterionConclusion::met_up_to_degree:
      return "criterion-met-up-to-degree";
    case CriterionConclusion::failed_with_witness:
      return "criterion-failed-with-witness";
    case CriterionConclusion::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct LabeledColumn {
  std::string label;
  std::vector<Int> column;
};

std::string combo_text(const std::vector<LabeledColumn>& cols, const std::vector<Int>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < cols.size(); ++k) {
    const Int& c = coeffs[k];
    if (c == 0) continue;
    if (c == 1) {
      if (!first) os << '+';
    } else if (c == -1) {
      os << '-';
    } else {
      if (!first && c > 0) os << '+';
      os << c << '*';
    }
    os << cols[k].label;
    first = false;
  }
  return first ? "0" : os.str();
}

CriterionCheck run_check(int q, const std::string& name,
                         const std::vector<LabeledColumn>& cols) {
  CriterionCheck check;
  check.q = q;
  check.name = name;
  check.domain_rank = static_cast<int>(cols.size());
  int rows = cols.empty() ? 0 : static_cast<int>(cols[0].column.size());
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c)
    for (int r = 0; r < rows; ++r)
      if (cols[c].column[r] != 0) m.at(r, c) = cols[c].column[r];
  exactla::InjectivityCertificate cert = exactla::is_injective(m);
  check.injective = cert.injective;
  if (!cert.injective) check.witness = combo_text(cols, *cert.kernel_witness);
  return check;
}

int check_kind_rank(const std::string& name) {
  if (name == "delta-line") return 0;
  if (name == "top-generators") return 1;
  if (name == "combined-degree-1") return 2;
  return 3;
}

}  // namespace

CriterionReport criterion_test(const RepresentationSpec& spec, int n, int max_degree,
                               const CriterionOptions& options) {
  if (spec.n != n) throw std::invalid_argument("strand count mismatch");
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (max_degree < 1) throw std::invalid_argument("max_degree must be positive");
  if (max_degree > options.degree_cap)
    throw std::invalid_argument("max_degree exceeds degree cap");

  auto images = degree_one_images(spec, std::max(max_degree, 2));
  if (auto witness = infinitesimal_relations_witness(images, n))
    throw std::invalid_argument("generator images violate the defining relations: " + *witness);

  CriterionReport report;
  report.family = family_name(spec.family);
  report.n = n;
  report.max_degree = max_degree;
  report.trunc = max_degree;
  report.size = spec.size;
  report.vars = spec.vars;

  auto image_at = [&](int i, int j, int trunc) {
    return images.at({i, j}).with_trunc(trunc);
  };

  // Natural schedule: the three degree-1 checks, then one per degree >= 2.
  struct Planned {
    int q;
    std::string name;
  };
  std::vector<Planned> plan;
  plan.push_back({1, "delta-line"});
  plan.push_back({1, "top-generators"});
  plan.push_back({1, "combined-degree-1"});
  for (int q = 2; q <= max_degree; ++q) plan.push_back({q, "component-n"});

  std::vector<int> schedule(plan.size());
  if (options.schedule.empty()) {
    for (size_t k = 0; k < plan.size(); ++k) schedule[k] = static_cast<int>(k);
  } else {
    if (options.schedule.size() != plan.size())
      throw std::invalid_argument("schedule length mismatch");
    std::vector<bool> seen(plan.size(), false);
    for (int v : options.schedule) {
      if (v < 0 || v >= static_cast<int>(plan.size()) || seen[v])
        throw std::invalid_argument("schedule is not a permutation");
      seen[v] = true;
    }
    schedule = options.schedule;
  }

  central::DirectSource direct(options.degree_cap);
  central::AdMatrixSource& src = options.source ? *options.source : direct;

  for (int idx : schedule) {
    const Planned& p = plan[idx];
    std::vector<LabeledColumn> cols;
    if (p.name == "delta-line") {
      TruncSeriesMatrix sum(spec.size, spec.vars, 1);
      for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) sum = sum + image_at(i, j, 1);
      cols.push_back({"Delta(" + std::to_string(n) + ")", flatten_homogeneous(sum, 1)});
    } else if (p.name == "top-generators") {
      for (int s = 1; s < n; ++s)
        cols.push_back({braidlie::Generator(s, n).to_string(),
                        flatten_homogeneous(image_at(s, n, 1), 1)});
    } else if (p.name == "combined-degree-1") {
      TruncSeriesMatrix sum(spec.size, spec.vars, 1);
      for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) sum = sum + image_at(i, j, 1);
      cols.push_back({"Delta(" + std::to_string(n) + ")", flatten_homogeneous(sum, 1)});
      for (int s = 1; s < n; ++s)
        cols.push_back({braidlie::Generator(s, n).to_string(),
                        flatten_homogeneous(image_at(s, n, 1), 1)});
    } else {
      std::map<std::pair<int, int>, TruncSeriesMatrix> at_q;
      for (const auto& [key, m] : images) at_q.emplace(key, m.with_trunc(p.q));
      GradedBasis dom = src.graded_basis(n, p.q);
      for (int k = 0; k < dom.size(); ++k) {
        const BasisEntry& entry = dom.entry(k);
        if (entry.component != n) continue;
        TruncSeriesMatrix img =
            commutator_image(at_q, entry, freelie::standard_bracketing(entry.word));
        cols.push_back({braidlie::word_text(entry.component, entry.word),
                        flatten_homogeneous(img, p.q)});
      }
    }
    report.checks.push_back(run_check(p.q, p.name, cols));
  }

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CriterionCheck& a, const CriterionCheck& b) {
              if (a.q != b.q) return a.q < b.q;
              return check_kind_rank(a.name) < check_kind_rank(b.name);
            });

  bool all_pass = true;
  for (const CriterionCheck& c : report.checks)
    if (!c.injective) all_pass = false;
  report.conclusion = all_pass ? CriterionConclusion::met_up_to_degree
                               : CriterionConclusion::failed_with_witness;
  report.note =
      "All checks passing certifies the homomorphism criterion through degree " +
      std::to_string(max_degree) +
      "; higher degrees remain unexamined (inconclusive there). A failed check means this "
      "criterion does not certify the representation; it is not by itself a proof of "
      "unfaithfulness.";
  return report;
}

}  // namespace repmaps
