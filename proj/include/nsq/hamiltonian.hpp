#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsq/forms.hpp"
#include "nsq/generator_form.hpp"

namespace nsq {

namespace detail {

inline std::vector<std::pair<int, int>> value_counts(const MultiIndex& m) {
  std::vector<std::pair<int, int>> out;
  for (int v : m) {
    if (!out.empty() && out.back().first == v) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

}  // namespace detail

/// Hamiltonian field of q^a Sym(pi-hat_K (x) r-hat_L), rank p = |K| + |L|.
///
/// Horizontal: (1/p!) sum_t q^a Sym(pi-hat_{K-k_t} (x) r-hat_L) d/dq^{k_t}.
/// Vertical:   -(1/(p! l)) sum_i sum_j d_i(q^a) Sym(pi-hat_K (x) r-hat_{L-L_j}) d/dpi^{L_j}_i,
/// averaging over which slot each q factor occupies.
inline HamVF ham_vf(const GenMonomial& g, Dimension n) {
  if (!g.valid()) throw std::invalid_argument("generator monomial has more positions than slots");
  HamVF out(n);
  Rational inv = Rational(1) / factorial(g.rank());
  PolyFn qa = position_monomial(g.positions);
  for (auto [k, mult] : detail::value_counts(g.momenta)) {
    PolyFn scale = qa * PolyFn(Scalar(inv * mult));
    for (const auto& [idx, v] : sym_generator_product(n, g.momenta.without(k), g.slots)) {
      out.add(idx, VectorField::partial(q_coord(k), scale * v));
    }
  }
  if (g.positions.empty()) return out;
  Rational l = static_cast<int>(g.slots.rank());
  for (auto [i, unused] : detail::value_counts(g.positions)) {
    PolyFn dq = qa.derivative(q_coord(i));
    for (auto [s, mult] : detail::value_counts(g.slots)) {
      PolyFn scale = dq * PolyFn(Scalar(-inv * mult / l));
      for (const auto& [idx, v] : sym_generator_product(n, g.momenta, g.slots.without(s))) {
        out.add(idx, VectorField::partial(pi_coord(s, i), scale * v));
      }
    }
  }
  return out;
}

inline HamVF ham_vf(const GenPoly& p, Dimension n) {
  HamVF out(n);
  for (const auto& [m, c] : p) out += PolyFn(c) * ham_vf(m, n);
  return out;
}

/// Canonical Hamiltonian field. Throws NotInGeneratorAlgebra outside the
/// generator algebra.
inline HamVF ham_vf(const Observable& f) { return ham_vf(decompose(f), f.dim()); }

/// Representative with vertical part -(1/p!) d f^{I c}/dq^b d/dpi^c_b and the
/// canonical horizontal part.
inline HamVF zero_gauge_ham_vf(const Observable& f) {
  HamVF canonical = ham_vf(f);
  HamVF out(f.dim());
  for (const auto& [idx, x] : canonical.components()) {
    VectorField horizontal;
    for (const auto& [c, v] : x.coefficients()) {
      if (c.kind == Coord::Kind::q) horizontal.add(c, v);
    }
    out.add(idx, horizontal);
  }
  int n = f.dim().value();
  for (const auto& [key, comp] : f.components()) {
    Rational inv = Rational(1) / factorial(static_cast<int>(key.rank()));
    for (auto [c, unused] : detail::value_counts(key)) {
      MultiIndex rest = key.without(c);
      for (int b = 1; b <= n; ++b) {
        PolyFn db = comp.derivative(q_coord(b));
        if (db.is_zero()) continue;
        out.add(rest, VectorField::partial(pi_coord(c, b), db * PolyFn(Scalar(-inv))));
      }
    }
  }
  return out;
}

/// Checks df^M = -p! Sym_s (X^{M - m_s} _| dtheta^{m_s}) for every rank-p M.
inline bool structure_eq_check(const Observable& f, const HamVF& x, const VectorTwoForm& dtheta, int p) {
  if (p < 1) throw std::invalid_argument("structure equation needs rank >= 1");
  for (const auto& [k, v] : f.components()) {
    if (static_cast<int>(k.rank()) != p) throw std::invalid_argument("observable is not of the stated rank");
  }
  for (const auto& [k, v] : x.components()) {
    if (static_cast<int>(k.rank()) != p - 1) throw std::invalid_argument("field rank does not match observable rank");
  }
  PolyFn scale(Scalar(-factorial(p) / p));
  for (const auto& key : all_multi_indices(f.dim(), p)) {
    OneForm rhs;
    for (int s : key) {
      auto form = dtheta.find(s);
      if (form == dtheta.end()) continue;
      rhs += interior(x.component(key.without(s)), form->second);
    }
    if (!(d(f.component(key)) == scale * rhs)) return false;
  }
  return true;
}

inline bool structure_eq_check(const Observable& f, const HamVF& x) {
  auto p = f.homogeneous_rank();
  if (!p) {
    std::optional<std::size_t> fr;
    for (const auto& [k, v] : x.components()) fr = k.rank() + 1;
    if (!f.is_zero() || !fr) throw std::invalid_argument("structure equation needs a homogeneous observable");
    p = static_cast<int>(*fr);
  }
  return structure_eq_check(f, x, soldering_dtheta(f.dim()), *p);
}

/// Thrown when a gauge term has a nonvanishing symmetrized part.
class GaugeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// True iff t is purely vertical and sum_s t^{M - m_s}(d/dpi^{m_s}_b) = 0 for
/// every M and b.
inline bool is_pure_gauge(const HamVF& t) {
  std::set<std::size_t> ranks;
  for (const auto& [k, x] : t.components()) {
    ranks.insert(k.rank());
    for (const auto& [c, v] : x.coefficients()) {
      if (c.kind != Coord::Kind::pi) return false;
    }
  }
  int n = t.dim().value();
  for (std::size_t r : ranks) {
    for (const auto& key : all_multi_indices(t.dim(), r + 1)) {
      for (int b = 1; b <= n; ++b) {
        PolyFn acc;
        for (int s : key) acc += t.component(key.without(s)).coefficient(pi_coord(s, b));
        if (!acc.is_zero()) return false;
      }
    }
  }
  return true;
}

inline HamVF add_gauge(const HamVF& x, const HamVF& t) {
  if (!(x.dim() == t.dim())) throw std::invalid_argument("dimension mismatch in add_gauge");
  if (!is_pure_gauge(t)) throw GaugeError("gauge term has a nonvanishing symmetrized part");
  return x + t;
}

/// Symmetrized d(X^{(J} _| dtheta^{i)}) vanishes for every index combination.
inline bool lie_preserves_form(const HamVF& x, const VectorTwoForm& dtheta) {
  std::set<std::size_t> ranks;
  for (const auto& [k, v] : x.components()) ranks.insert(k.rank());
  for (std::size_t r : ranks) {
    for (const auto& key : all_multi_indices(x.dim(), r + 1)) {
      OneForm acc;
      for (int s : key) {
        auto form = dtheta.find(s);
        if (form == dtheta.end()) continue;
        acc += interior(x.component(key.without(s)), form->second);
      }
      if (!d(acc).is_zero()) return false;
    }
  }
  return true;
}

inline bool lie_preserves_form(const HamVF& x) { return lie_preserves_form(x, soldering_dtheta(x.dim())); }

}  // namespace nsq
