#pragma once

#include <map>
#include <string>

#include "nsq/coords.hpp"

namespace nsq {

/// Differential operator sum c_a(q, P) d^a with polynomial coefficients on
/// the left and derivatives in the position variables on the right. The
/// derivative multi-degree is stored as a monomial in the position coordinates.
/// P variables, when present, act by multiplication and commute with d/dq.
class DiffOperator {
 public:
  using Derivative = CoordMonomial;
  using Terms = std::map<Derivative, PolyFn>;

  DiffOperator() = default;
  DiffOperator(const PolyFn& multiplier) { add(Derivative{}, multiplier); }  // NOLINT(google-explicit-constructor)

  static DiffOperator identity() { return DiffOperator(PolyFn(1)); }

  /// d/dc, c a position coordinate (q^i or Q^i).
  static DiffOperator partial(const Coord& c, const PolyFn& coeff = PolyFn(1)) {
    DiffOperator out;
    out.add(Derivative(c), coeff);
    return out;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True for multiplication by a constant.
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_constant());
  }

  void add(const Derivative& a, const PolyFn& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOperator& operator+=(const DiffOperator& o) {
    for (const auto& [a, c] : o.terms_) add(a, c);
    return *this;
  }
  DiffOperator& operator-=(const DiffOperator& o) {
    for (const auto& [a, c] : o.terms_) add(a, -c);
    return *this;
  }
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator-(const DiffOperator& a) { return PolyFn(-1) * a; }
  friend DiffOperator operator*(const PolyFn& s, const DiffOperator& a) {
    DiffOperator out;
    for (const auto& [d, c] : a.terms_) out.add(d, s * c);
    return out;
  }
  friend bool operator==(const DiffOperator&, const DiffOperator&) = default;

  /// Applies the operator to a function.
  PolyFn apply(const PolyFn& f) const {
    PolyFn out;
    for (const auto& [a, c] : terms_) {
      PolyFn g = f;
      for (const auto& [v, e] : a.factors()) {
        for (unsigned k = 0; k < e; ++k) g = g.derivative(v);
      }
      out += c * g;
    }
    return out;
  }

  template <class F>
  DiffOperator map_coefficients(F&& f) const {
    DiffOperator out;
    for (const auto& [a, c] : terms_) out.add(a, f(c));
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [a, c] : terms_) {
      std::string coeff = format(c);
      bool negative = c.size() == 1 && coeff[0] == '-';
      if (negative) coeff = coeff.substr(1);
      std::string derivs;
      for (const auto& [v, e] : a.factors()) {
        for (unsigned k = 0; k < e; ++k) derivs += (derivs.empty() ? "" : " ") + std::string("d/d") + format(v);
      }
      std::string term;
      if (derivs.empty()) {
        term = coeff;
      } else if (coeff == "1") {
        term = derivs;
      } else {
        term = (c.size() > 1 ? "(" + coeff + ")" : coeff) + " " + derivs;
      }
      if (out.empty()) {
        out = negative ? "-" + term : term;
      } else {
        out += (negative ? " - " : " + ") + term;
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Normal-ordered composition a o b, using
/// (c d^a)(e d^b) = sum_g prod_v C(a_v, g_v) c (d^g e) d^{a-g+b}.
inline DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator out;
  for (const auto& [da, ca] : a.terms()) {
    // Enumerate sub-multi-degrees g <= da.
    std::vector<std::pair<Coord, unsigned>> factors = da.factors();
    std::vector<unsigned> g(factors.size(), 0);
    while (true) {
      Rational weight = 1;
      CoordMonomial taken;
      CoordMonomial left;
      for (std::size_t t = 0; t < factors.size(); ++t) {
        weight *= binomial(static_cast<int>(factors[t].second), static_cast<int>(g[t]));
        if (g[t]) taken = taken * CoordMonomial(factors[t].first, g[t]);
        if (factors[t].second - g[t]) left = left * CoordMonomial(factors[t].first, factors[t].second - g[t]);
      }
      for (const auto& [db, cb] : b.terms()) {
        PolyFn e = cb;
        for (const auto& [v, k] : taken.factors()) {
          for (unsigned s = 0; s < k; ++s) e = e.derivative(v);
        }
        if (e.is_zero()) continue;
        out.add(left * db, ca * e * PolyFn(Scalar(weight)));
      }
      std::size_t t = 0;
      while (t < g.size() && g[t] == factors[t].second) g[t++] = 0;
      if (t == g.size()) break;
      ++g[t];
    }
  }
  return out;
}

inline DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) {
  return op_compose(a, b) - op_compose(b, a);
}

/// Complex conjugation of coefficients: i*hbar -> -i*hbar.
inline PolyFn conjugate(const PolyFn& f) {
  return f.map_coefficients([](const Scalar& s) { return conjugate(s); });
}

/// Formal adjoint for the flat density: (c d^a)^+ = (-1)^|a| d^a o conj(c).
inline DiffOperator formal_adjoint(const DiffOperator& a) {
  DiffOperator out;
  for (const auto& [d, c] : a.terms()) {
    DiffOperator deriv;
    deriv.add(d, PolyFn(d.degree() % 2 == 0 ? 1 : -1));
    out += op_compose(deriv, DiffOperator(conjugate(c)));
  }
  return out;
}

}  // namespace nsq
