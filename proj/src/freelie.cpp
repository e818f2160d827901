#include "braidlie/freelie.hpp"

#include "braidlie/exactla.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace freelie {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw std::invalid_argument("alphabet labels must be nonempty");
    if (!seen.insert(s).second) throw std::invalid_argument("alphabet labels must be distinct");
  }
}

Alphabet Alphabet::latin(int k) {
  if (k < 1 || k > 26) throw std::invalid_argument("latin alphabet size must be in 1..26");
  std::vector<std::string> syms;
  for (int i = 0; i < k; ++i) syms.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(std::move(syms));
}

Alphabet Alphabet::numbered(int k) {
  if (k < 1) throw std::invalid_argument("alphabet size must be positive");
  std::vector<std::string> syms;
  for (int i = 1; i <= k; ++i) syms.push_back("x" + std::to_string(i));
  return Alphabet(std::move(syms));
}

const std::string& Alphabet::label(int index) const {
  if (index < 0 || index >= size()) throw std::out_of_range("letter index out of range");
  return symbols_[index];
}

std::optional<int> Alphabet::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (symbols_[i] == label) return i;
  return std::nullopt;
}

LyndonWord::LyndonWord(std::vector<int> letters) : letters_(std::move(letters)) {
  if (!is_lyndon(letters_)) throw std::invalid_argument("word is not Lyndon");
}

int LyndonWord::max_letter() const {
  int m = -1;
  for (int l : letters_) m = std::max(m, l);
  return m;
}

bool LyndonWord::is_lyndon(const std::vector<int>& w) {
  size_t n = w.size();
  if (n == 0) return false;
  for (int l : w)
    if (l < 0) return false;
  for (size_t r = 1; r < n; ++r) {
    // w must be strictly smaller than its rotation by r.
    bool smaller = false;
    for (size_t k = 0; k < n; ++k) {
      int a = w[k];
      int b = w[(k + r) % n];
      if (a != b) {
        smaller = a < b;
        break;
      }
    }
    if (!smaller) return false;
  }
  return true;
}

std::vector<LyndonWord> lyndon_words(const Alphabet& alphabet, int degree, int degree_cap) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  if (degree > degree_cap) throw std::invalid_argument("degree exceeds degree cap");
  int k = alphabet.size();
  std::vector<LyndonWord> out;
  // Duval's generation: lexicographic stream of all Lyndon words of length
  // <= degree; keep the ones of exact length.
  std::vector<int> w = {-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == degree) out.emplace_back(w);
    size_t m = w.size();
    while (static_cast<int>(w.size()) < degree) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

long long witt_dimension(int alphabet_size, int degree) {
  if (alphabet_size < 1 || degree < 1)
    throw std::invalid_argument("witt_dimension requires positive arguments");
  Int total = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(alphabet_size),
                  static_cast<unsigned long>(degree / d));
    total += mu * p;
  }
  Int q;
  Int deg(degree);
  mpz_divexact(q.get_mpz_t(), total.get_mpz_t(), deg.get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("witt dimension too large");
  return q.get_si();
}

std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w) {
  const std::vector<int>& l = w.letters();
  int n = w.degree();
  if (n < 2) throw std::invalid_argument("standard factorization requires degree >= 2");
  // Right factor: the longest proper suffix that is Lyndon.
  for (int start = 1; start < n; ++start) {
    std::vector<int> suffix(l.begin() + start, l.end());
    if (LyndonWord::is_lyndon(suffix)) {
      std::vector<int> prefix(l.begin(), l.begin() + start);
      return {LyndonWord(std::move(prefix)), LyndonWord(std::move(suffix))};
    }
  }
  throw std::logic_error("no Lyndon suffix found");  // unreachable for Lyndon input
}

FreeLieElement FreeLieElement::generator(int letter) {
  return from_word(LyndonWord({letter}));
}

FreeLieElement FreeLieElement::from_word(LyndonWord w, Int coeff) {
  FreeLieElement e;
  if (coeff != 0) e.terms_.emplace(std::move(w), std::move(coeff));
  return e;
}

int FreeLieElement::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

bool FreeLieElement::is_homogeneous() const {
  int d = -1;
  for (const auto& [w, c] : terms_) {
    if (d < 0) d = w.degree();
    if (w.degree() != d) return false;
  }
  return true;
}

int FreeLieElement::max_letter() const {
  int m = -1;
  for (const auto& [w, c] : terms_) m = std::max(m, w.max_letter());
  return m;
}

void FreeLieElement::add_term(const LyndonWord& w, const Int& c) {
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FreeLieElement& FreeLieElement::operator+=(const FreeLieElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreeLieElement& FreeLieElement::operator-=(const FreeLieElement& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FreeLieElement& FreeLieElement::operator*=(const Int& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

FreeLieElement FreeLieElement::operator+(const FreeLieElement& o) const {
  FreeLieElement r = *this;
  r += o;
  return r;
}

FreeLieElement FreeLieElement::operator-(const FreeLieElement& o) const {
  FreeLieElement r = *this;
  r -= o;
  return r;
}

FreeLieElement FreeLieElement::operator-() const {
  FreeLieElement r = *this;
  r *= Int(-1);
  return r;
}

FreeLieElement operator*(const Int& c, const FreeLieElement& x) {
  FreeLieElement r = x;
  r *= c;
  return r;
}

namespace {

using Memo = std::map<std::pair<std::vector<int>, std::vector<int>>, FreeLieElement>;

FreeLieElement bracket_ordered(const LyndonWord& u, const LyndonWord& v, Memo& memo);

// Bracket of two basis words with arbitrary relative order.
FreeLieElement bracket_words(const LyndonWord& u, const LyndonWord& v, Memo& memo) {
  auto cmp = u <=> v;
  if (cmp == std::strong_ordering::equal) return {};
  if (cmp == std::strong_ordering::greater) {
    FreeLieElement r = bracket_ordered(v, u, memo);
    r *= Int(-1);
    return r;
  }
  return bracket_ordered(u, v, memo);
}

// Requires u < v.  Either u.v is a standard pair, giving the basis word u.v
// directly, or u splits as (a, b) and the Jacobi rewrite
// [u, v] = [a, [b, v]] - [b, [a, v]] strictly reduces towards standard pairs.
FreeLieElement bracket_ordered(const LyndonWord& u, const LyndonWord& v, Memo& memo) {
  auto key = std::make_pair(u.letters(), v.letters());
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<int> joined = u.letters();
  joined.insert(joined.end(), v.letters().begin(), v.letters().end());
  LyndonWord w(std::move(joined));  // u < v Lyndon implies u.v Lyndon

  FreeLieElement out;
  if (standard_factorization(w).first == u) {
    out = FreeLieElement::from_word(std::move(w));
  } else {
    assert(u.degree() >= 2);  // degree-1 left factors always form standard pairs
    auto [a, b] = standard_factorization(u);
    const FreeLieElement bv = bracket_words(b, v, memo);
    for (const auto& [m, c] : bv.terms()) {
      const FreeLieElement am = bracket_words(a, m, memo);
      for (const auto& [m2, c2] : am.terms()) out.add_term(m2, c * c2);
    }
    const FreeLieElement av = bracket_words(a, v, memo);
    for (const auto& [m, c] : av.terms()) {
      const FreeLieElement bm = bracket_words(b, m, memo);
      for (const auto& [m2, c2] : bm.terms()) out.add_term(m2, -c * c2);
    }
  }
  memo.emplace(std::move(key), out);
  return out;
}

}  // namespace

FreeLieElement bracket(const FreeLieElement& x, const FreeLieElement& y) {
  Memo memo;
  FreeLieElement out;
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) {
      Int c = cu * cv;
      const FreeLieElement p = bracket_words(u, v, memo);
      for (const auto& [w, cw] : p.terms()) out.add_term(w, c * cw);
    }
  return out;
}

FreeLieElement normalize(const BracketTree& expr, const Alphabet& alphabet, int degree_cap) {
  if (expr.degree() > degree_cap) throw std::invalid_argument("expression exceeds degree cap");
  bool bad = false;
  expr.for_each_leaf([&](int letter) {
    if (letter < 0 || letter >= alphabet.size()) bad = true;
  });
  if (bad) throw std::invalid_argument("expression leaf outside alphabet");

  struct Eval {
    static FreeLieElement run(const BracketTree& t) {
      if (t.is_leaf()) return FreeLieElement::generator(t.value());
      return bracket(run(t.left()), run(t.right()));
    }
  };
  return Eval::run(expr);
}

BracketTree standard_bracketing(const LyndonWord& w) {
  if (w.degree() == 1) return BracketTree::leaf(w.letters()[0]);
  auto [u, v] = standard_factorization(w);
  return BracketTree::pair(standard_bracketing(u), standard_bracketing(v));
}

std::vector<FreeLieElement> free_centralizer_degree(const Alphabet& alphabet,
                                                    const FreeLieElement& z, int degree,
                                                    int degree_cap) {
  if (alphabet.size() < 2) throw std::invalid_argument("alphabet must have at least 2 letters");
  if (z.is_zero() || !z.is_homogeneous() || z.degree() != 1)
    throw std::invalid_argument("centralizing element must be homogeneous of degree 1");
  if (z.max_letter() >= alphabet.size())
    throw std::invalid_argument("element uses letters outside the alphabet");
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  if (degree + 1 > degree_cap)
    throw std::invalid_argument("degree + 1 exceeds degree cap");

  std::vector<LyndonWord> dom = lyndon_words(alphabet, degree, degree_cap);
  std::vector<LyndonWord> cod = lyndon_words(alphabet, degree + 1, degree_cap);
  auto cod_index = [&](const LyndonWord& w) {
    auto it = std::lower_bound(cod.begin(), cod.end(), w);
    assert(it != cod.end() && *it == w);
    return static_cast<int>(it - cod.begin());
  };

  exactla::IntMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  for (int c = 0; c < static_cast<int>(dom.size()); ++c) {
    FreeLieElement img = bracket(FreeLieElement::from_word(dom[c]), z);
    for (const auto& [w, coeff] : img.terms()) m.at(cod_index(w), c) = coeff;
  }

  std::vector<FreeLieElement> out;
  for (const auto& vec : exactla::kernel(m)) {
    FreeLieElement e;
    for (int c = 0; c < static_cast<int>(dom.size()); ++c) e.add_term(dom[c], vec[c]);
    out.push_back(std::move(e));
  }
  return out;
}

std::string to_string(const FreeLieElement& x, const Alphabet& alphabet) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    std::string word;
    for (int l : w.letters()) word += alphabet.label(l);
    if (c == 1) {
      if (!first) os << '+';
    } else if (c == -1) {
      os << '-';
    } else {
      if (!first && c > 0) os << '+';
      os << c << '*';
    }
    os << word;
    first = false;
  }
  return os.str();
}

}  // namespace freelie
