#include "braidlie/parse.hpp"

#include <cctype>

namespace cli {

using braidlie::Generator;
using braidlie::PnLieElement;

namespace {

class Parser {
public:
  Parser(const std::string& text, int n, int degree_cap)
      : text_(text), n_(n), degree_cap_(degree_cap) {}

  PnLieElement run() {
    PnLieElement e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      throw ParseError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError(start, "expected an integer");
    return mpz_class(text_.substr(start, pos_ - start));
  }

  int small_int() {
    mpz_class v = integer();
    if (!v.fits_sint_p()) throw ParseError(pos_, "index out of range");
    return static_cast<int>(v.get_si());
  }

  PnLieElement expr() {
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    PnLieElement acc = term();
    if (negate) acc *= mpz_class(-1);
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        PnLieElement t = term();
        if (c == '-') t *= mpz_class(-1);
        acc += t;
      } else {
        break;
      }
    }
    return acc;
  }

  PnLieElement term() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '0') {
      size_t save = pos_;
      mpz_class coeff = integer();
      if (peek() == '*') {
        ++pos_;
        PnLieElement a = atom();
        a *= coeff;
        return a;
      }
      if (coeff == 0) return PnLieElement(n_);  // the zero element literal
      throw ParseError(save, "a bare integer is not an element; write c*expr");
    }
    return atom();
  }

  PnLieElement atom() {
    char c = peek();
    if (c == '[') {
      size_t open = pos_;
      ++pos_;
      PnLieElement left = expr();
      expect(',');
      PnLieElement right = expr();
      expect(']');
      PnLieElement out = braidlie::bracket(left, right);
      if (out.degree() > degree_cap_) throw ParseError(open, "bracket exceeds degree cap");
      return out;
    }
    if (c == '(') {
      ++pos_;
      PnLieElement e = expr();
      expect(')');
      return e;
    }
    if (c == 'B') return genword();
    throw ParseError(pos_, "expected '[', '(', 'B', or an integer coefficient");
  }

  Generator gen() {
    size_t start = pos_;
    expect('B');
    expect('(');
    int i = small_int();
    expect(',');
    int j = small_int();
    expect(')');
    if (i < 1 || j < 1 || i == j) throw ParseError(start, "invalid generator indices");
    Generator g(i, j);
    if (g.j() > n_)
      throw ParseError(start, "generator " + g.to_string() + " needs n >= " +
                                  std::to_string(g.j()));
    return g;
  }

  // One or more juxtaposed generators forming a basis word of one component.
  PnLieElement genword() {
    size_t start = pos_;
    std::vector<Generator> gens;
    gens.push_back(gen());
    while (peek() == 'B') gens.push_back(gen());
    if (gens.size() == 1) return PnLieElement::generator(n_, gens[0]);

    int component = gens[0].component();
    std::vector<int> letters;
    for (const Generator& g : gens) {
      if (g.component() != component)
        throw ParseError(start, "letters of a basis word must share a component");
      letters.push_back(g.i() - 1);
    }
    if (static_cast<int>(letters.size()) > degree_cap_)
      throw ParseError(start, "word exceeds degree cap");
    if (!freelie::LyndonWord::is_lyndon(letters))
      throw ParseError(start, "juxtaposed generators must form a basis word (Lyndon)");
    PnLieElement e(n_);
    e.set_component(component, freelie::FreeLieElement::from_word(freelie::LyndonWord(letters)));
    return e;
  }

  const std::string& text_;
  int n_;
  int degree_cap_;
  size_t pos_ = 0;
};

}  // namespace

PnLieElement parse_element(const std::string& text, int n, int degree_cap) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  return Parser(text, n, degree_cap).run();
}

}  // namespace cli
