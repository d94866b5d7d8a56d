#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/generator_form.hpp"

namespace nsq {

/// Syntax error or index error, with the byte offset into the source.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Generator {
  enum class Kind { qh, pih, rh };
  Kind kind = Kind::rh;
  int i = 0;
  int j = 0;  // only for qh
  bool operator==(const Generator&) const = default;
};

struct Expr;

/// A generator or a parenthesized expression (stored as a one-element group).
struct Factor {
  std::optional<Generator> generator;
  std::vector<Expr> group;
};

struct Term {
  Rational coeff = 1;
  std::vector<Factor> factors;  // joined by the symmetric product
};

/// Sum of terms; no terms means zero.
struct Expr {
  std::vector<Term> terms;
};

inline bool operator==(const Expr& a, const Expr& b);
inline bool operator==(const Factor& a, const Factor& b) { return a.generator == b.generator && a.group == b.group; }
inline bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && a.factors == b.factors; }
inline bool operator==(const Expr& a, const Expr& b) { return a.terms == b.terms; }

namespace detail {

class Parser {
 public:
  Parser(const std::string& src, Dimension n) : src_(src), n_(n) {}

  Expr parse() {
    skip();
    if (peek() == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == src_.size()) return {};
      pos_ = save;
    }
    Expr e = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Expr expr() {
    Expr e;
    bool negate = false;
    skip();
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    while (true) {
      Term t = term();
      if (negate) t.coeff = -t.coeff;
      e.terms.push_back(std::move(t));
      skip();
      if (peek() == '+') {
        negate = false;
      } else if (peek() == '-') {
        negate = true;
      } else {
        break;
      }
      ++pos_;
    }
    return e;
  }

  Term term() {
    Term t;
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) t.coeff = rational();
    t.factors.push_back(factor());
    while (true) {
      skip();
      if (peek() != '*') break;
      ++pos_;
      t.factors.push_back(factor());
    }
    return t;
  }

  Rational rational() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string text = src_.substr(start, pos_ - start);
    if (peek() == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (dstart == pos_) fail("expected denominator");
      std::string den = src_.substr(dstart, pos_ - dstart);
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = dstart;
        fail("zero denominator");
      }
      text += "/" + den;
    }
    return parse_rational(text);
  }

  int index() {
    skip();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected index");
    std::string digits = src_.substr(start, pos_ - start);
    int v = digits.size() > 4 ? 100000 : std::stoi(digits);
    if (!n_.contains(v)) {
      pos_ = start;
      fail("index " + digits + " outside 1.." + std::to_string(n_.value()));
    }
    return v;
  }

  Factor factor() {
    skip();
    Factor f;
    if (peek() == '(') {
      ++pos_;
      f.group.push_back(expr());
      expect(')');
      return f;
    }
    auto starts = [&](const char* word) { return src_.compare(pos_, std::char_traits<char>::length(word), word) == 0; };
    Generator g;
    if (starts("qh(")) {
      pos_ += 3;
      g.kind = Generator::Kind::qh;
      g.i = index();
      expect(',');
      g.j = index();
    } else if (starts("pih(")) {
      pos_ += 4;
      g.kind = Generator::Kind::pih;
      g.i = index();
    } else if (starts("rh(")) {
      pos_ += 3;
      g.kind = Generator::Kind::rh;
      g.i = index();
    } else {
      fail("expected qh, pih, rh or '('");
    }
    expect(')');
    f.generator = g;
    return f;
  }

  const std::string& src_;
  Dimension n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(const std::string& src, Dimension n) { return detail::Parser(src, n).parse(); }

inline std::string print(const Expr& e);

inline std::string print(const Factor& f) {
  if (!f.generator) return "(" + print(f.group.at(0)) + ")";
  const Generator& g = *f.generator;
  switch (g.kind) {
    case Generator::Kind::qh: return "qh(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
    case Generator::Kind::pih: return "pih(" + std::to_string(g.i) + ")";
    case Generator::Kind::rh: return "rh(" + std::to_string(g.i) + ")";
  }
  return "";
}

inline std::string print(const Expr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (const Term& t : e.terms) {
    bool negative = t.coeff < 0;
    Rational mag = negative ? Rational(-t.coeff) : t.coeff;
    std::string body;
    for (const Factor& f : t.factors) body += (body.empty() ? "" : "*") + print(f);
    if (mag != 1) body = format(mag) + " " + body;
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

inline Observable evaluate(const Expr& e, Dimension n);

inline Observable evaluate(const Factor& f, Dimension n) {
  if (!f.generator) return evaluate(f.group.at(0), n);
  const Generator& g = *f.generator;
  switch (g.kind) {
    case Generator::Kind::qh: return make_qhat(n, g.i, g.j);
    case Generator::Kind::pih: return make_pihat(n, g.i);
    case Generator::Kind::rh: return make_rhat(n, g.i);
  }
  return Observable(n);
}

/// The observable denoted by an expression; '*' is the symmetric product.
inline Observable evaluate(const Expr& e, Dimension n) {
  Observable out(n);
  for (const Term& t : e.terms) {
    Observable prod = evaluate(t.factors.at(0), n);
    for (std::size_t k = 1; k < t.factors.size(); ++k) prod = sym_mul(prod, evaluate(t.factors[k], n));
    out += prod * PolyFn(Scalar(t.coeff));
  }
  return out;
}

inline Observable parse_observable(const std::string& src, Dimension n) { return evaluate(parse(src, n), n); }

/// Canonical expression of a generator polynomial: one term per monomial,
/// with positions paired to the smallest slots as in format(GenMonomial).
inline Expr to_expr(const GenPoly& p) {
  Expr e;
  for (const auto& [m, c] : p) {
    if (!c.is_constant()) throw std::invalid_argument("coefficient is not rational");
    Term t;
    t.coeff = c.constant_term();
    std::size_t k = 0;
    for (int i : m.positions) t.factors.push_back({Generator{Generator::Kind::qh, i, m.slots[k++]}, {}});
    for (int j : m.momenta) t.factors.push_back({Generator{Generator::Kind::pih, j, 0}, {}});
    for (; k < m.slots.rank(); ++k) t.factors.push_back({Generator{Generator::Kind::rh, m.slots[k], 0}, {}});
    e.terms.push_back(std::move(t));
  }
  return e;
}

}  // namespace nsq
