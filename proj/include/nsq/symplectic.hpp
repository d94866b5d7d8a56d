#pragma once

#include <algorithm>
#include <vector>

#include "nsq/diff_operator.hpp"

namespace nsq {

/// Polynomial on T*R^n in the coordinates q^i, p_k.
using SymplecticPoly = PolyFn;

inline SymplecticPoly sq(int i) { return var(q_coord(i)); }
inline SymplecticPoly sp(int k) { return var(p_coord(k)); }

inline int symplectic_dimension(const SymplecticPoly& f) {
  int n = 0;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) n = std::max<int>(n, v.kind == Coord::Kind::p ? v.lower : v.upper);
  }
  return n;
}

/// {f, g} = sum_k df/dq^k dg/dp_k - df/dp_k dg/dq^k.
inline SymplecticPoly classical_bracket(const SymplecticPoly& f, const SymplecticPoly& g) {
  int n = std::max(symplectic_dimension(f), symplectic_dimension(g));
  SymplecticPoly out;
  for (int k = 1; k <= n; ++k) {
    out += f.derivative(q_coord(k)) * g.derivative(p_coord(k));
    out -= f.derivative(p_coord(k)) * g.derivative(q_coord(k));
  }
  return out;
}

/// Weyl ordering: each monomial becomes the average over all distinct
/// orderings of its factors, with q^i acting by multiplication and p_k as
/// -i*hbar d/dq^k.
inline DiffOperator weyl_quantize(const SymplecticPoly& f) {
  DiffOperator out;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Coord> letters;
    for (const auto& [v, e] : m.factors()) {
      if (v.kind != Coord::Kind::q && v.kind != Coord::Kind::p) {
        throw std::invalid_argument("not a phase-space coordinate: " + format(v));
      }
      for (unsigned k = 0; k < e; ++k) letters.push_back(v);
    }
    std::sort(letters.begin(), letters.end());
    DiffOperator sum;
    int count = 0;
    do {
      DiffOperator word = DiffOperator::identity();
      for (const Coord& v : letters) {
        DiffOperator factor = v.kind == Coord::Kind::q ? DiffOperator(var(v))
                                                       : DiffOperator::partial(q_coord(v.lower), PolyFn(-ihbar()));
        word = op_compose(word, factor);
      }
      sum += word;
      ++count;
    } while (std::next_permutation(letters.begin(), letters.end()));
    out += PolyFn(c * Scalar(Rational(1, count))) * sum;
  }
  return out;
}

/// Difference of the two Weyl quantizations of 3 q^2 p^2 obtained from
/// {q^3, p^3} = 9 q^2 p^2 and {q^2 p, q p^2} = 3 q^2 p^2 (n = 1):
/// (1/(9 i hbar)) [W(q^3), W(p^3)] - (1/(3 i hbar)) [W(q^2 p), W(q p^2)].
/// Dividing by i*hbar is exact because every commutator carries that factor.
inline DiffOperator groenewold_witness() {
  Monomial<Symbol> ih(Symbol{Symbol::Kind::IHbar, 0});
  auto over_ihbar = [&](const DiffOperator& op) {
    return op.map_coefficients([&](const PolyFn& c) {
      return c.map_coefficients([&](const Scalar& s) { return divide_exact(s, ih); });
    });
  };
  SymplecticPoly q = sq(1);
  SymplecticPoly p = sp(1);
  DiffOperator a = commutator(weyl_quantize(q.pow(3)), weyl_quantize(p.pow(3)));
  DiffOperator b = commutator(weyl_quantize(q.pow(2) * p), weyl_quantize(q * p.pow(2)));
  return PolyFn(Scalar(Rational(1, 9))) * over_ihbar(a) - PolyFn(Scalar(Rational(1, 3))) * over_ihbar(b);
}

/// Highest power of i*hbar among the coefficients of an operator.
inline unsigned hbar_degree(const DiffOperator& op) {
  unsigned d = 0;
  for (const auto& [a, c] : op.terms()) {
    for (const auto& [m, s] : c.terms()) d = std::max(d, hbar_degree(s));
  }
  return d;
}

}  // namespace nsq
