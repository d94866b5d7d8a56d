#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "nsq/vector_field.hpp"

namespace nsq {

/// One-form sum_c w_c dc with polynomial coefficients.
class OneForm {
 public:
  using Coefficients = std::map<Coord, PolyFn>;

  OneForm() = default;

  static OneForm basis(const Coord& c, const PolyFn& coeff = PolyFn(1)) {
    OneForm out;
    out.add(c, coeff);
    return out;
  }

  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  PolyFn coefficient(const Coord& c) const {
    auto it = coeffs_.find(c);
    return it == coeffs_.end() ? PolyFn{} : it->second;
  }

  void add(const Coord& c, const PolyFn& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  PolyFn apply(const VectorField& x) const {
    PolyFn out;
    for (const auto& [c, v] : coeffs_) out += v * x.coefficient(c);
    return out;
  }

  OneForm& operator+=(const OneForm& o) {
    for (const auto& [c, v] : o.coeffs_) add(c, v);
    return *this;
  }
  OneForm& operator-=(const OneForm& o) {
    for (const auto& [c, v] : o.coeffs_) add(c, -v);
    return *this;
  }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const PolyFn& s, const OneForm& w) {
    OneForm out;
    for (const auto& [c, v] : w.coeffs_) out.add(c, s * v);
    return out;
  }
  friend bool operator==(const OneForm&, const OneForm&) = default;

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [c, v] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + format(v) + ")d" + format(c);
    }
    return out;
  }

 private:
  Coefficients coeffs_;
};

/// Two-form over the basis da^db with a < b in coordinate order.
class TwoForm {
 public:
  using Key = std::pair<Coord, Coord>;
  using Coefficients = std::map<Key, PolyFn>;

  TwoForm() = default;

  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds v da^db, reordering to the canonical basis.
  void add(const Coord& a, const Coord& b, const PolyFn& v) {
    if (a == b || v.is_zero()) return;
    if (b < a) {
      add(b, a, -v);
      return;
    }
    auto [it, inserted] = coeffs_.try_emplace(Key{a, b}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  PolyFn coefficient(const Coord& a, const Coord& b) const {
    if (b < a) return -coefficient(b, a);
    auto it = coeffs_.find(Key{a, b});
    return it == coeffs_.end() ? PolyFn{} : it->second;
  }

  /// w(X, Y) with (da^db)(X, Y) = X^a Y^b - X^b Y^a.
  PolyFn apply(const VectorField& x, const VectorField& y) const {
    PolyFn out;
    for (const auto& [k, v] : coeffs_) {
      out += v * (x.coefficient(k.first) * y.coefficient(k.second) -
                  x.coefficient(k.second) * y.coefficient(k.first));
    }
    return out;
  }

  TwoForm& operator+=(const TwoForm& o) {
    for (const auto& [k, v] : o.coeffs_) add(k.first, k.second, v);
    return *this;
  }
  friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
  friend TwoForm operator*(const PolyFn& s, const TwoForm& w) {
    TwoForm out;
    for (const auto& [k, v] : w.coeffs_) out.add(k.first, k.second, s * v);
    return out;
  }
  friend bool operator==(const TwoForm&, const TwoForm&) = default;

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : coeffs_) {
      if (!out.empty()) out += " + ";
      std::string c = format(v);
      out += (c == "1" ? "" : "(" + c + ")") + "d" + format(k.first) + "^d" + format(k.second);
    }
    return out;
  }

 private:
  Coefficients coeffs_;
};

inline TwoForm wedge(const OneForm& a, const OneForm& b) {
  TwoForm out;
  for (const auto& [ca, va] : a.coefficients()) {
    for (const auto& [cb, vb] : b.coefficients()) out.add(ca, cb, va * vb);
  }
  return out;
}

/// Exterior derivative of a function: the coefficient of dc is df/dc.
inline OneForm d(const PolyFn& f) {
  OneForm out;
  std::set<Coord> vars;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) vars.insert(v);
  }
  for (const Coord& v : vars) out.add(v, f.derivative(v));
  return out;
}

inline TwoForm d(const OneForm& w) {
  TwoForm out;
  for (const auto& [c, v] : w.coefficients()) out += wedge(d(v), OneForm::basis(c));
  return out;
}

/// Interior product X _| w, with X _| (a^b) = a(X) b - b(X) a.
inline OneForm interior(const VectorField& x, const TwoForm& w) {
  OneForm out;
  for (const auto& [k, v] : w.coefficients()) {
    PolyFn xa = x.coefficient(k.first);
    PolyFn xb = x.coefficient(k.second);
    if (!xa.is_zero()) out.add(k.second, v * xa);
    if (!xb.is_zero()) out.add(k.first, -(v * xb));
  }
  return out;
}

/// R^n-valued two-form: one TwoForm per outer index 1..n.
using VectorTwoForm = std::map<int, TwoForm>;

/// d(theta)^i = d(pi^i_j) ^ d(q^j).
inline VectorTwoForm soldering_dtheta(Dimension n) {
  VectorTwoForm out;
  for (int i = 1; i <= n.value(); ++i) {
    TwoForm w;
    for (int j = 1; j <= n.value(); ++j) w.add(pi_coord(i, j), q_coord(j), PolyFn(1));
    out[i] = w;
  }
  return out;
}

/// Pullback of a two-form along a chart map given as coordinate images.
template <class Image>
TwoForm pullback(const TwoForm& w, Image&& image) {
  TwoForm out;
  auto pull_fn = [&](const PolyFn& f) { return f.substitute(image); };
  for (const auto& [k, v] : w.coefficients()) {
    out += pull_fn(v) * wedge(d(image(k.first)), d(image(k.second)));
  }
  return out;
}

}  // namespace nsq
