#include "braidlie/braidlie.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace braidlie {

using freelie::FreeLieElement;
using freelie::LyndonWord;

Generator::Generator(int i, int j) : i_(std::min(i, j)), j_(std::max(i, j)) {
  if (i < 1 || j < 1) throw std::invalid_argument("generator indices must be positive");
  if (i == j) throw std::invalid_argument("generator indices must be distinct");
}

void Generator::require_valid(int n) const {
  if (j_ > n) throw std::invalid_argument("generator " + to_string() + " needs n >= " +
                                          std::to_string(j_));
}

std::string Generator::to_string() const {
  return "B(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
}

std::vector<Generator> generators(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  std::vector<Generator> out;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  return out;
}

PnLieElement::PnLieElement(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
}

PnLieElement PnLieElement::generator(int n, Generator g) {
  g.require_valid(n);
  PnLieElement e(n);
  // Letter s-1 of component j stands for B(s,j).
  e.components_[g.component()] = FreeLieElement::generator(g.i() - 1);
  return e;
}

const FreeLieElement* PnLieElement::component(int m) const {
  auto it = components_.find(m);
  return it == components_.end() ? nullptr : &it->second;
}

void PnLieElement::set_component(int m, FreeLieElement e) {
  if (m < 2 || m > n_) throw std::invalid_argument("component index out of range");
  if (e.max_letter() >= m - 1)
    throw std::invalid_argument("component " + std::to_string(m) + " admits letters B(1.." +
                                std::to_string(m - 1) + "," + std::to_string(m) + ") only");
  if (e.is_zero())
    components_.erase(m);
  else
    components_[m] = std::move(e);
}

int PnLieElement::degree() const {
  int d = 0;
  for (const auto& [m, e] : components_) d = std::max(d, e.degree());
  return d;
}

bool PnLieElement::is_homogeneous() const {
  int d = -1;
  for (const auto& [m, e] : components_) {
    if (!e.is_homogeneous()) return false;
    if (d < 0) d = e.degree();
    if (e.degree() != d) return false;
  }
  return true;
}

PnLieElement& PnLieElement::operator+=(const PnLieElement& o) {
  if (n_ != o.n_) throw std::invalid_argument("strand count mismatch");
  for (const auto& [m, e] : o.components_) {
    auto it = components_.find(m);
    if (it == components_.end()) {
      components_[m] = e;
    } else {
      it->second += e;
      if (it->second.is_zero()) components_.erase(it);
    }
  }
  return *this;
}

PnLieElement& PnLieElement::operator-=(const PnLieElement& o) {
  PnLieElement neg = o;
  neg *= Int(-1);
  return *this += neg;
}

PnLieElement& PnLieElement::operator*=(const Int& c) {
  if (c == 0) {
    components_.clear();
    return *this;
  }
  for (auto& [m, e] : components_) e *= c;
  return *this;
}

PnLieElement PnLieElement::operator+(const PnLieElement& o) const {
  PnLieElement r = *this;
  r += o;
  return r;
}

PnLieElement PnLieElement::operator-(const PnLieElement& o) const {
  PnLieElement r = *this;
  r -= o;
  return r;
}

PnLieElement PnLieElement::operator-() const {
  PnLieElement r = *this;
  r *= Int(-1);
  return r;
}

PnLieElement operator*(const Int& c, const PnLieElement& x) {
  PnLieElement r = x;
  r *= c;
  return r;
}

GradedBasis::GradedBasis(int n, int degree, std::vector<BasisEntry> entries)
    : n_(n), degree_(degree), entries_(std::move(entries)) {
  for (int k = 0; k < static_cast<int>(entries_.size()); ++k)
    index_[{entries_[k].component, entries_[k].word.letters()}] = k;
}

std::optional<int> GradedBasis::index_of(int component, const LyndonWord& w) const {
  auto it = index_.find({component, w.letters()});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PnLieElement GradedBasis::element(int index) const {
  const BasisEntry& e = entries_.at(index);
  PnLieElement x(n_);
  x.set_component(e.component, FreeLieElement::from_word(e.word));
  return x;
}

std::vector<Int> GradedBasis::coordinates(const PnLieElement& x) const {
  std::vector<Int> coords(entries_.size(), Int(0));
  if (x.n() != n_) throw std::invalid_argument("strand count mismatch");
  for (const auto& [m, e] : x.components())
    for (const auto& [w, c] : e.terms()) {
      auto idx = index_of(m, w);
      if (!idx)
        throw std::invalid_argument("element does not lie in the degree-" +
                                    std::to_string(degree_) + " slice");
      coords[*idx] = c;
    }
  return coords;
}

PnLieElement GradedBasis::combine(const std::vector<Int>& coords) const {
  if (static_cast<int>(coords.size()) != size())
    throw std::invalid_argument("coordinate length mismatch");
  PnLieElement x(n_);
  std::map<int, FreeLieElement> acc;
  for (int k = 0; k < size(); ++k)
    if (coords[k] != 0) acc[entries_[k].component].add_term(entries_[k].word, coords[k]);
  for (auto& [m, e] : acc) x.set_component(m, std::move(e));
  return x;
}

GradedBasis basis(int n, int q, int degree_cap) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (q < 1) throw std::invalid_argument("degree must be positive");
  if (q > degree_cap) throw std::invalid_argument("degree exceeds degree cap");
  std::vector<BasisEntry> entries;
  for (int m = 2; m <= n; ++m) {
    freelie::Alphabet alpha = freelie::Alphabet::numbered(m - 1);
    for (const auto& w : freelie::lyndon_words(alpha, q, degree_cap))
      entries.push_back({m, w});
  }
  return GradedBasis(n, q, std::move(entries));
}

namespace {

// [B(i,j), B(s,b)] for j < b, expressed inside component b.  Zero unless s
// meets {i, j}; the nonzero values are the two sides of the defining
// relations, with opposite signs.
FreeLieElement generator_action(const Generator& g, int s, int b) {
  assert(g.component() < b);
  if (s != g.i() && s != g.j()) return {};
  FreeLieElement e = freelie::bracket(FreeLieElement::generator(g.i() - 1),
                                      FreeLieElement::generator(g.j() - 1));
  if (s == g.j()) e *= Int(-1);
  return e;
}

// Derivation of generator g on a component-b element, extended from letters
// by the Leibniz rule along standard factorizations.
FreeLieElement derive_word(const Generator& g, const LyndonWord& w, int b);

FreeLieElement derive(const Generator& g, const FreeLieElement& y, int b) {
  FreeLieElement out;
  for (const auto& [w, c] : y.terms()) {
    FreeLieElement d = derive_word(g, w, b);
    d *= c;
    out += d;
  }
  return out;
}

FreeLieElement derive_word(const Generator& g, const LyndonWord& w, int b) {
  if (w.degree() == 1) return generator_action(g, w.letters()[0] + 1, b);
  auto [w1, w2] = freelie::standard_factorization(w);
  FreeLieElement lhs = freelie::bracket(derive_word(g, w1, b), FreeLieElement::from_word(w2));
  FreeLieElement rhs = freelie::bracket(FreeLieElement::from_word(w1), derive_word(g, w2, b));
  return lhs + rhs;
}

// ad of the component-a basis word u applied to a component-b element,
// with a < b; the bracketing of u unfolds through standard factorization.
FreeLieElement word_action(const LyndonWord& u, int a, const FreeLieElement& y, int b) {
  if (u.degree() == 1) return derive(Generator(u.letters()[0] + 1, a), y, b);
  auto [u1, u2] = freelie::standard_factorization(u);
  FreeLieElement lhs = word_action(u1, a, word_action(u2, a, y, b), b);
  FreeLieElement rhs = word_action(u2, a, word_action(u1, a, y, b), b);
  return lhs - rhs;
}

FreeLieElement mixed_bracket(const FreeLieElement& xa, int a, const FreeLieElement& yb, int b) {
  FreeLieElement out;
  for (const auto& [u, c] : xa.terms()) {
    FreeLieElement d = word_action(u, a, yb, b);
    d *= c;
    out += d;
  }
  return out;
}

}  // namespace

PnLieElement bracket(const PnLieElement& x, const PnLieElement& y) {
  if (x.n() != y.n()) throw std::invalid_argument("strand count mismatch");
  PnLieElement out(x.n());
  std::map<int, FreeLieElement> acc;
  for (const auto& [a, xa] : x.components())
    for (const auto& [b, yb] : y.components()) {
      if (a == b) {
        acc[a] += freelie::bracket(xa, yb);
      } else if (a < b) {
        acc[b] += mixed_bracket(xa, a, yb, b);
      } else {
        FreeLieElement r = mixed_bracket(yb, b, xa, a);
        r *= Int(-1);
        acc[a] += r;
      }
    }
  for (auto& [m, e] : acc)
    if (!e.is_zero()) out.set_component(m, std::move(e));
  return out;
}

PnLieElement eval_expression(const GenTree& expr, int n, int degree_cap) {
  if (expr.degree() > degree_cap) throw std::invalid_argument("expression exceeds degree cap");
  expr.for_each_leaf([&](const Generator& g) { g.require_valid(n); });
  struct Eval {
    static PnLieElement run(const GenTree& t, int n) {
      if (t.is_leaf()) return PnLieElement::generator(n, t.value());
      return bracket(run(t.left(), n), run(t.right(), n));
    }
  };
  return Eval::run(expr, n);
}

PnLieElement delta(int n) {
  PnLieElement e(n);
  for (const Generator& g : generators(n)) e += PnLieElement::generator(n, g);
  return e;
}

PnLieElement bn_element(int n) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  PnLieElement e(n);
  for (int s = 1; s < n; ++s) e += PnLieElement::generator(n, Generator(s, n));
  return e;
}

PnLieElement symmetric_action(const std::vector<int>& sigma, const PnLieElement& x) {
  int n = x.n();
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permutation length must equal n");
  std::vector<bool> seen(n + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = true;
  }

  PnLieElement out(n);
  for (const auto& [m, e] : x.components())
    for (const auto& [w, c] : e.terms()) {
      // Relabel the leaves of the standard bracketing and re-evaluate; the
      // relabeling is an automorphism, so this is the image of the term.
      freelie::BracketTree t = freelie::standard_bracketing(w);
      struct Relabel {
        static GenTree run(const freelie::BracketTree& t, int m, const std::vector<int>& sigma) {
          if (t.is_leaf()) {
            int s = t.value() + 1;
            return GenTree::leaf(Generator(sigma[s - 1], sigma[m - 1]));
          }
          return GenTree::pair(run(t.left(), m, sigma), run(t.right(), m, sigma));
        }
      };
      PnLieElement img = eval_expression(Relabel::run(t, m, sigma), n, w.degree());
      img *= c;
      out += img;
    }
  return out;
}

PnLieElement project_delete_strand(const PnLieElement& x) {
  int n = x.n();
  if (n < 3) throw std::invalid_argument("deleting a strand requires n >= 3");
  PnLieElement out(n - 1);
  for (const auto& [m, e] : x.components())
    if (m < n) out.set_component(m, e);
  return out;
}

namespace {

std::string entry_text(const BasisEntry& e) { return word_text(e.component, e.word); }

RelationReport check_relations(int n, int max_degree, const BracketFn& br, int degree_cap) {
  RelationReport report;
  auto gen = [&](int i, int j) { return PnLieElement::generator(n, Generator(i, j)); };
  auto fail = [&](std::string witness) {
    if (report.passed) {
      report.passed = false;
      report.witness = std::move(witness);
    }
  };

  // Defining relations.  (a) disjoint index pairs commute; (b) for i < j and
  // s outside {i,j}, B(i,j) commutes with each of B(i,s)+B(s,j),
  // B(i,t)+B(j,t), and the relabelings thereof.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      for (int s = 1; s <= n; ++s)
        for (int t = s + 1; t <= n; ++t) {
          if (s == i || s == j || t == i || t == j) continue;
          ++report.relation_instances;
          if (!br(gen(i, j), gen(s, t)).is_zero())
            fail("[B(" + std::to_string(i) + "," + std::to_string(j) + "), B(" +
                 std::to_string(s) + "," + std::to_string(t) + ")] != 0");
        }
      for (int s = 1; s <= n; ++s) {
        if (s == i || s == j) continue;
        ++report.relation_instances;
        if (!br(gen(i, j), gen(i, s) + gen(s, j)).is_zero())
          fail("[B(" + std::to_string(i) + "," + std::to_string(j) + "), B(" +
               std::to_string(i) + "," + std::to_string(s) + ")+B(" + std::to_string(s) + "," +
               std::to_string(j) + ")] != 0");
        ++report.relation_instances;
        if (!br(gen(i, j), gen(i, s) + gen(j, s)).is_zero())
          fail("[B(" + std::to_string(i) + "," + std::to_string(j) + "), B(" +
               std::to_string(i) + "," + std::to_string(s) + ")+B(" + std::to_string(j) + "," +
               std::to_string(s) + ")] != 0");
      }
    }

  // Basis slices up to the requested total degree.
  std::vector<GradedBasis> slices;
  for (int q = 1; q <= std::max(1, max_degree - 1); ++q) slices.push_back(basis(n, q, degree_cap));
  struct Item {
    PnLieElement el;
    std::string name;
    int degree;
  };
  std::vector<Item> items;
  for (const auto& s : slices)
    for (int k = 0; k < s.size(); ++k)
      items.push_back({s.element(k), entry_text(s.entry(k)), s.degree()});

  for (size_t a = 0; a < items.size(); ++a) {
    if (2 * items[a].degree <= max_degree) {
      ++report.antisymmetry_pairs;
      if (!br(items[a].el, items[a].el).is_zero()) fail("[x,x] != 0 at x = " + items[a].name);
    }
    for (size_t b = a + 1; b < items.size(); ++b) {
      if (items[a].degree + items[b].degree > max_degree) continue;
      ++report.antisymmetry_pairs;
      if (!(br(items[a].el, items[b].el) + br(items[b].el, items[a].el)).is_zero())
        fail("antisymmetry fails at (" + items[a].name + ", " + items[b].name + ")");
    }
  }

  for (size_t a = 0; a < items.size(); ++a)
    for (size_t b = a; b < items.size(); ++b)
      for (size_t c = b; c < items.size(); ++c) {
        if (items[a].degree + items[b].degree + items[c].degree > max_degree) continue;
        ++report.jacobi_triples;
        PnLieElement jac = br(items[a].el, br(items[b].el, items[c].el)) +
                           br(items[b].el, br(items[c].el, items[a].el)) +
                           br(items[c].el, br(items[a].el, items[b].el));
        if (!jac.is_zero())
          fail("Jacobi fails at (" + items[a].name + ", " + items[b].name + ", " +
               items[c].name + ")");
      }

  return report;
}

}  // namespace

RelationReport verify_relations(int n, int max_degree, int degree_cap) {
  return verify_relations_with(
      n, max_degree, [](const PnLieElement& a, const PnLieElement& b) { return bracket(a, b); },
      degree_cap);
}

RelationReport verify_relations_with(int n, int max_degree, const BracketFn& br,
                                     int degree_cap) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (max_degree < 2) throw std::invalid_argument("max_degree must be at least 2");
  return check_relations(n, max_degree, br, degree_cap);
}

std::string word_text(int component, const LyndonWord& w) {
  std::string out;
  for (int l : w.letters())
    out += "B(" + std::to_string(l + 1) + "," + std::to_string(component) + ")";
  return out;
}

std::string to_string(const PnLieElement& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, e] : x.components())
    for (const auto& [w, c] : e.terms()) {
      if (c == 1) {
        if (!first) os << '+';
      } else if (c == -1) {
        os << '-';
      } else {
        if (!first && c > 0) os << '+';
        os << c << '*';
      }
      os << word_text(m, w);
      first = false;
    }
  return os.str();
}

}  // namespace braidlie
