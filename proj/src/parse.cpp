#include "keypoly/parse.hpp"

#include <cctype>

namespace keypoly {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const FieldDescriptor& field) : text_(text), field_(field) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_factor() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 't' || c == '(';
  }

  Poly expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Poly d = factor();
        if (d.degree() > 0) fail("division by a non-constant");
        if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "literal divides by zero");
        acc = acc.scaled(d.coeffs()[0].inverse());
      } else if (starts_factor()) {
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    try {
      return std::stoll(text_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer literal out of range");
    }
  }

  Rational exponent() {
    bool paren = accept('(');
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    std::int64_t n = integer();
    std::int64_t d = 1;
    // Greedy: `t^-1/2` is t^(-1/2).
    if (peek() == '/' && pos_ + 1 < text_.size()) {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        d = integer();
      } else {
        pos_ = save;
      }
    }
    if (paren && !accept(')')) fail("expected ')'");
    Rational e(n, d);
    return neg ? -e : e;
  }

  Poly factor() {
    char c = peek();
    Poly base(field_);
    bool is_t = false;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      base = Poly::constant(FieldElem::from_int(field_, integer()));
    } else if (c == 'x') {
      ++pos_;
      base = Poly::x(field_);
    } else if (c == 't') {
      ++pos_;
      is_t = true;
    } else if (accept('(')) {
      base = expr();
      if (!accept(')')) fail("expected ')'");
    } else {
      fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
    }
    std::optional<Rational> e;
    if (accept('^')) e = exponent();
    if (is_t) return Poly::constant(FieldElem::t_power(field_, e.value_or(Rational(1))));
    if (!e) return base;
    if (!e->is_integer()) fail("fractional exponent on a non-t base");
    std::int64_t k = e->num();
    if (k >= 0) return base.pow(static_cast<unsigned>(k));
    if (base.degree() != 0) fail("negative exponent on a non-constant");
    return Poly::constant(base.coeffs()[0].inverse().pow(static_cast<unsigned>(-k)));
  }

  const std::string& text_;
  FieldDescriptor field_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const FieldDescriptor& field) { return Parser(text, field).run(); }

FieldElem parse_field_elem(const std::string& text, const FieldDescriptor& field) {
  Poly p = parse_poly(text, field);
  if (p.degree() > 0) throw Error(ErrorKind::Parse, "expected a constant, got '" + text + "'");
  return p.coeff(0);
}

}  // namespace keypoly
