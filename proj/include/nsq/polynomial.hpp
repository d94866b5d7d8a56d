#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nsq/rational.hpp"

namespace nsq {

/// A product of variables with positive exponents, kept sorted by variable so
/// that structural comparison is equality of monomials.
template <class Var>
class Monomial {
 public:
  using Factor = std::pair<Var, unsigned>;

  Monomial() = default;
  explicit Monomial(Var v, unsigned e = 1) {
    if (e != 0) factors_.emplace_back(v, e);
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
  }

  unsigned exponent(const Var& v) const {
    for (const auto& [w, e] : factors_) {
      if (w == v) return e;
    }
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
      if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
        out.factors_.push_back(*i++);
      } else if (i == a.factors_.end() || j->first < i->first) {
        out.factors_.push_back(*j++);
      } else {
        out.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    return out;
  }

  /// Returns (e, m) with d/dv of this monomial equal to e * m.
  std::pair<unsigned, Monomial> differentiate(const Var& v) const {
    Monomial out;
    unsigned e = 0;
    for (const auto& f : factors_) {
      if (f.first == v) {
        e = f.second;
        if (f.second > 1) out.factors_.emplace_back(f.first, f.second - 1);
      } else {
        out.factors_.push_back(f);
      }
    }
    return {e, e == 0 ? Monomial{} : out};
  }

  bool divisible_by(const Monomial& d) const {
    for (const auto& [v, e] : d.factors_) {
      if (exponent(v) < e) return false;
    }
    return true;
  }

  Monomial divided_by(const Monomial& d) const {
    Monomial out;
    for (const auto& [v, e] : factors_) {
      unsigned rest = e - d.exponent(v);
      if (rest != 0) out.factors_.emplace_back(v, rest);
    }
    return out;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

template <class Var, class Coeff>
class SparsePoly;

template <class V, class C>
bool is_zero(const SparsePoly<V, C>& p);

/// Sparse multivariate polynomial: a map from monomial to nonzero coefficient.
/// Zero coefficients are never stored, so equality is structural.
template <class Var, class Coeff>
class SparsePoly {
 public:
  using Mono = Monomial<Var>;
  using TermMap = std::map<Mono, Coeff>;

  SparsePoly() = default;
  SparsePoly(const Coeff& c) {  // NOLINT(google-explicit-constructor)
    if (!nsq_is_zero(c)) terms_.emplace(Mono{}, c);
  }
  SparsePoly(int c) : SparsePoly(Coeff(c)) {}  // NOLINT(google-explicit-constructor)

  static SparsePoly variable(const Var& v, unsigned e = 1) { return term(Mono(v, e), Coeff(1)); }

  static SparsePoly term(const Mono& m, const Coeff& c) {
    SparsePoly p;
    p.add_term(m, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  Coeff coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff constant_term() const { return coefficient(Mono{}); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Mono& m, const Coeff& c) {
    if (nsq_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (nsq_is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a) {
    SparsePoly out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  SparsePoly pow(unsigned e) const {
    SparsePoly out(1);
    for (unsigned k = 0; k < e; ++k) out = out * *this;
    return out;
  }

  SparsePoly derivative(const Var& v) const {
    SparsePoly out;
    for (const auto& [m, c] : terms_) {
      auto [e, rest] = m.differentiate(v);
      if (e != 0) out.add_term(rest, c * Coeff(static_cast<int>(e)));
    }
    return out;
  }

  bool depends_on(const Var& v) const {
    for (const auto& [m, c] : terms_) {
      if (m.exponent(v) != 0) return true;
    }
    return false;
  }

  /// Replaces every variable v by image(v), a polynomial over the same
  /// coefficient ring but possibly in a different variable type.
  template <class Image>
  auto substitute(Image&& image) const {
    using Out = std::decay_t<decltype(image(std::declval<Var>()))>;
    Out out;
    for (const auto& [m, c] : terms_) {
      Out t = Out(c);
      for (const auto& [v, e] : m.factors()) t = t * image(v).pow(e);
      out += t;
    }
    return out;
  }

  template <class F>
  SparsePoly map_coefficients(F&& f) const {
    SparsePoly out;
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Renders terms as "c*v1^2*v2 + ...", using print_var for variables and
  /// print_coeff for coefficients (which must return a string for one term).
  template <class PrintVar, class PrintCoeff>
  std::string to_string(PrintVar&& print_var, PrintCoeff&& print_coeff) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string mono;
      for (const auto& [v, e] : m.factors()) {
        if (!mono.empty()) mono += "*";
        mono += print_var(v);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string coeff = print_coeff(c);
      bool coeff_is_sum = coeff.find(" + ") != std::string::npos || coeff.find(" - ") != std::string::npos;
      if (coeff_is_sum) coeff = "(" + coeff + ")";
      bool negative = !coeff.empty() && coeff[0] == '-';
      std::string body = negative ? coeff.substr(1) : coeff;
      if (!mono.empty()) {
        if (body == "1") {
          body = mono;
        } else {
          body += "*" + mono;
        }
      }
      if (first) {
        out = negative ? "-" + body : body;
      } else {
        out += negative ? " - " : " + ";
        out += body;
      }
      first = false;
    }
    return out;
  }

 private:
  static bool nsq_is_zero(const Coeff& c) { return nsq::is_zero(c); }

  TermMap terms_;
};

template <class V, class C>
bool is_zero(const SparsePoly<V, C>& p) {
  return p.is_zero();
}

}  // namespace nsq
