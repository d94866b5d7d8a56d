#pragma once

#include <map>
#include <set>
#include <string>

#include "nsq/coords.hpp"
#include "nsq/multi_index.hpp"

namespace nsq {

/// A vector field with polynomial coefficients: coefficient of d/dc for each
/// coordinate c. Works on any coordinate chart (frame bundle, subbundle,
/// cotangent bundle).
class VectorField {
 public:
  using Coefficients = std::map<Coord, PolyFn>;

  VectorField() = default;
  explicit VectorField(const Coefficients& coeffs) {
    for (const auto& [c, v] : coeffs) add(c, v);
  }

  static VectorField partial(const Coord& c, const PolyFn& coeff = PolyFn(1)) {
    VectorField out;
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

  /// X(f) = sum_c X^c df/dc.
  PolyFn apply(const PolyFn& f) const {
    PolyFn out;
    for (const auto& [c, v] : coeffs_) {
      PolyFn df = f.derivative(c);
      if (!df.is_zero()) out += v * df;
    }
    return out;
  }

  bool has_constant_coefficients() const {
    for (const auto& [c, v] : coeffs_) {
      if (!v.is_constant()) return false;
    }
    return true;
  }

  VectorField& operator+=(const VectorField& o) {
    for (const auto& [c, v] : o.coeffs_) add(c, v);
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    for (const auto& [c, v] : o.coeffs_) add(c, -v);
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const PolyFn& s, const VectorField& x) {
    VectorField out;
    for (const auto& [c, v] : x.coeffs_) out.add(c, s * v);
    return out;
  }
  friend bool operator==(const VectorField&, const VectorField&) = default;

  template <class F>
  VectorField map_coefficients(F&& f) const {
    VectorField out;
    for (const auto& [c, v] : coeffs_) out.add(c, f(v));
    return out;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [c, v] : coeffs_) {
      std::string coeff = format(v);
      bool negative = v.size() == 1 && coeff[0] == '-';
      if (negative) coeff = coeff.substr(1);
      if (v.size() > 1) coeff = "(" + coeff + ")";
      if (out.empty()) {
        out = negative ? "-" : "";
      } else {
        out += negative ? " - " : " + ";
      }
      out += (coeff == "1" ? "" : coeff + "*") + "d/d" + format(c);
    }
    return out;
  }

 private:
  Coefficients coeffs_;
};

/// Coordinate Lie bracket [X, Y].
inline VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  VectorField out;
  for (const auto& [c, v] : y.coefficients()) out.add(c, x.apply(v));
  for (const auto& [c, v] : x.coefficients()) out.add(c, -y.apply(v));
  return out;
}

/// Symmetric-tensor-valued vector field: one vector field per canonical
/// multi-index. A field for a rank-p observable has components of rank p-1;
/// a graded field may mix several ranks.
class HamVF {
 public:
  using Components = std::map<MultiIndex, VectorField>;

  explicit HamVF(Dimension n) : n_(n) {}

  Dimension dim() const { return n_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  VectorField component(const MultiIndex& k) const {
    auto it = comps_.find(k);
    return it == comps_.end() ? VectorField{} : it->second;
  }

  void add(const MultiIndex& k, const VectorField& x) {
    for (int idx : k) n_.check(idx);
    if (x.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(k, x);
    if (!inserted) {
      it->second += x;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  /// Components whose multi-index has the given rank.
  HamVF grade(std::size_t rank) const {
    HamVF out(n_);
    for (const auto& [k, x] : comps_) {
      if (k.rank() == rank) out.comps_.emplace(k, x);
    }
    return out;
  }

  HamVF& operator+=(const HamVF& o) {
    for (const auto& [k, x] : o.comps_) add(k, x);
    return *this;
  }
  HamVF& operator-=(const HamVF& o) {
    for (const auto& [k, x] : o.comps_) add(k, PolyFn(-1) * x);
    return *this;
  }
  friend HamVF operator+(HamVF a, const HamVF& b) { return a += b; }
  friend HamVF operator-(HamVF a, const HamVF& b) { return a -= b; }
  friend HamVF operator*(const PolyFn& s, const HamVF& x) {
    HamVF out(x.n_);
    for (const auto& [k, v] : x.comps_) out.add(k, s * v);
    return out;
  }
  friend bool operator==(const HamVF& a, const HamVF& b) { return a.n_ == b.n_ && a.comps_ == b.comps_; }

  template <class F>
  HamVF map_fields(F&& f) const {
    HamVF out(n_);
    for (const auto& [k, v] : comps_) out.add(k, f(v));
    return out;
  }

  std::string to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [k, x] : comps_) {
      if (!out.empty()) out += "\n";
      out += "X" + k.to_string() + " = " + x.to_string();
    }
    return out;
  }

 private:
  Dimension n_;
  Components comps_;
};

/// Componentwise Lie bracket followed by normalized symmetrization over the
/// combined upper indices.
inline HamVF vf_bracket(const HamVF& x, const HamVF& y) {
  HamVF out(x.dim());
  std::set<std::size_t> xr;
  std::set<std::size_t> yr;
  for (const auto& [k, v] : x.components()) xr.insert(k.rank());
  for (const auto& [k, v] : y.components()) yr.insert(k.rank());
  for (std::size_t a : xr) {
    for (std::size_t b : yr) {
      for (const auto& key : all_multi_indices(x.dim(), a + b)) {
        VectorField acc;
        for (const auto& s : splits(key, a)) {
          auto xi = x.components().find(s.first);
          if (xi == x.components().end()) continue;
          auto yj = y.components().find(s.second);
          if (yj == y.components().end()) continue;
          acc += PolyFn(Scalar(s.weight)) * lie_bracket(xi->second, yj->second);
        }
        out.add(key, acc);
      }
    }
  }
  return out;
}

}  // namespace nsq
