#pragma once

#include <optional>
#include <set>
#include <stdexcept>

#include "nsq/hamiltonian.hpp"

namespace nsq {

/// {f, g} computed from a given representative x of the field of f:
/// -p! Sym_{I,J} X^I(g^J), summed over the grades of x and g.
inline Observable bracket_with(const HamVF& x, const Observable& g) {
  if (!(x.dim() == g.dim())) throw std::invalid_argument("dimension mismatch in bracket");
  Observable out(g.dim());
  std::set<std::size_t> xr;
  for (const auto& [k, v] : x.components()) xr.insert(k.rank());
  for (std::size_t a : xr) {
    int p = static_cast<int>(a) + 1;
    PolyFn scale(Scalar(-factorial(p)));
    for (int q : g.ranks()) {
      for (const auto& key : all_multi_indices(g.dim(), a + q)) {
        PolyFn acc;
        for (const auto& s : splits(key, a)) {
          auto xi = x.components().find(s.first);
          if (xi == x.components().end()) continue;
          auto gj = g.components().find(s.second);
          if (gj == g.components().end()) continue;
          acc += xi->second.apply(gj->second) * PolyFn(Scalar(s.weight));
        }
        out.add(key, scale * acc);
      }
    }
  }
  return out;
}

/// The Poisson bracket, sign chosen so that {q-hat^i_j, pi-hat_k} = delta^i_k r-hat_j.
inline Observable bracket(const Observable& f, const Observable& g) {
  f.require_same_dim(g);
  return bracket_with(ham_vf(f), g);
}

inline Observable jacobi_residual(const Observable& f, const Observable& g, const Observable& h) {
  return bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
}

/// C = (p+q-1)! / (p! q!).
inline Rational theorem1_constant(int p, int q) {
  return factorial(p + q - 1) / (factorial(p) * factorial(q));
}

/// The field bracket of X_f and X_g, scaled by -1/C, is a Hamiltonian field
/// for {f, g}.
inline bool theorem1_check(const Observable& f, const Observable& g) {
  auto p = f.homogeneous_rank();
  auto q = g.homogeneous_rank();
  if (!p || !q) throw std::invalid_argument("theorem1_check needs homogeneous observables");
  HamVF field = vf_bracket(ham_vf(f), ham_vf(g));
  Rational c = theorem1_constant(*p, *q);
  HamVF scaled = PolyFn(Scalar(Rational(-1) / c)) * field;
  return structure_eq_check(bracket(f, g), scaled, soldering_dtheta(f.dim()), *p + *q - 1);
}

/// True iff {f, g} is zero or homogeneous of rank p + q - 1.
inline bool grade_of_bracket(const Observable& f, const Observable& g) {
  auto p = f.homogeneous_rank();
  auto q = g.homogeneous_rank();
  if (!p || !q) throw std::invalid_argument("grade_of_bracket needs homogeneous observables");
  Observable b = bracket(f, g);
  return b.is_zero() || b.homogeneous_rank() == *p + *q - 1;
}

inline Observable times_r1_power(const Observable& f, int k) {
  Observable out = f;
  for (int e = 0; e < k; ++e) out = sym_mul(out, make_rhat(f.dim(), 1));
  return out;
}

/// {f r1^k, g r1^l} = {f, g} r1^(k+l).
inline bool tensor_extension_identity_check(const Observable& f, const Observable& g, int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("negative power of r-hat_1");
  Observable lhs = bracket(times_r1_power(f, k), times_r1_power(g, l));
  return lhs == times_r1_power(bracket(f, g), k + l);
}

/// Smallest nonempty grade of f in P(b_1); nullopt for the zero observable.
inline std::optional<int> min_rank(const Observable& f) {
  if (f.is_zero()) return std::nullopt;
  if (!in_b1_algebra(f)) throw NotInGeneratorAlgebra("observable is outside P(b_1)");
  return *f.ranks().begin();
}

/// f lies in the ideal P^k. Zero lies in every P^k.
inline bool is_in_Pk(const Observable& f, int k) {
  auto r = min_rank(f);
  return !r || *r >= k;
}

}  // namespace nsq
