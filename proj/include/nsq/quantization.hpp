#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsq/diff_operator.hpp"
#include "nsq/report.hpp"
#include "nsq/subbundle.hpp"

namespace nsq {

/// A quantization of P(b_1): Q1 is the Schroedinger map, killing rank >= 2;
/// Q2 also assigns multiplication operators to the rank-2 monomials and kills
/// rank >= 3. Overrides replace the image of individual generator monomials.
struct QuantizationMap {
  enum class Label { Q1, Q2 };
  Label label = Label::Q1;
  std::map<GenMonomial, DiffOperator> overrides;

  int kill_rank() const { return label == Label::Q1 ? 2 : 3; }
  std::string name() const { return label == Label::Q1 ? "Q1" : "Q2"; }
};

inline QuantizationMap q1_map() { return {QuantizationMap::Label::Q1, {}}; }
inline QuantizationMap q2_map() { return {QuantizationMap::Label::Q2, {}}; }

inline DiffOperator momentum_operator(int k) { return DiffOperator::partial(q_coord(k), PolyFn(-ihbar())); }

/// Image of one monomial q^a Sym(pi-hat_K r-hat_1^l) of P(b_1).
inline DiffOperator quantize(const QuantizationMap& map, const GenMonomial& g) {
  if (!g.in_b1() || !g.valid()) throw NotInGeneratorAlgebra("monomial is outside P(b_1)");
  if (auto it = map.overrides.find(g); it != map.overrides.end()) return it->second;
  int rank = g.rank();
  if (rank >= map.kill_rank()) return {};
  std::size_t a = g.positions.rank();
  std::size_t k = g.momenta.rank();
  if (rank == 1) {
    if (a == 1) return DiffOperator(var(q_coord(g.positions[0])));
    if (k == 1) return momentum_operator(g.momenta[0]);
    return DiffOperator::identity();
  }
  // rank 2 under Q2
  if (a == 2) return DiffOperator(PolyFn(amplitude(g.positions[0]) * amplitude(g.positions[1])));
  if (a == 1 && k == 1) return DiffOperator(PolyFn(amplitude(g.positions[0])) * var(P_coord(g.momenta[0])));
  if (k == 2) return DiffOperator(var(P_coord(g.momenta[0])) * var(P_coord(g.momenta[1])));
  return {};
}

inline DiffOperator quantize(const QuantizationMap& map, const GenPoly& p) {
  DiffOperator out;
  for (const auto& [m, c] : p) out += PolyFn(c) * quantize(map, m);
  return out;
}

/// Accepts an observable of P(b_1) or its reduction to B_1.
inline DiffOperator quantize(const QuantizationMap& map, const Observable& f) {
  for (const auto& [k, v] : f.components()) {
    for (const auto& [m, c] : v.terms()) {
      for (const auto& [x, e] : m.factors()) {
        if (x.kind == Coord::Kind::Q || x.kind == Coord::Kind::P) return quantize(map, decompose_reduced(f));
      }
    }
  }
  return quantize(map, decompose_b1(f));
}

struct DiracComparison {
  DiffOperator lhs;  // i*hbar Q({f, g})
  DiffOperator rhs;  // [Q(f), Q(g)]
  bool holds() const { return lhs == rhs; }
};

/// Dirac condition in the form i*hbar Q({f, g}) = [Q(f), Q(g)].
inline DiracComparison dirac_compare(const QuantizationMap& map, const Observable& f, const Observable& g) {
  return {PolyFn(ihbar()) * quantize(map, bracket(f, g)), commutator(quantize(map, f), quantize(map, g))};
}

inline bool dirac_check(const QuantizationMap& map, const Observable& f, const Observable& g) {
  return dirac_compare(map, f, g).holds();
}

/// All monomials of P(b_1) of degree 1..max_degree in the generators
/// q-hat^i_1, pi-hat_k, r-hat_1 over indices 1..n. The degree equals the rank.
inline std::vector<GenMonomial> b1_monomials(Dimension n, int max_degree) {
  std::vector<GenMonomial> out;
  for (int deg = 1; deg <= max_degree; ++deg) {
    for (int l = 0; l <= deg; ++l) {
      int k = deg - l;
      for (int a = 0; a <= l; ++a) {
        for (const auto& pos : all_multi_indices(n, a)) {
          for (const auto& mom : all_multi_indices(n, k)) {
            out.push_back({pos, mom, MultiIndex(std::vector<int>(l, 1))});
          }
        }
      }
    }
  }
  return out;
}

/// Operators as vectors over (derivative, coordinate monomial, symbol monomial).
inline std::size_t operator_rank(const std::vector<DiffOperator>& ops) {
  using Key = std::tuple<CoordMonomial, CoordMonomial, Monomial<Symbol>>;
  std::map<Key, std::size_t> basis;
  for (const auto& op : ops) {
    for (const auto& [d, c] : op.terms()) {
      for (const auto& [m, s] : c.terms()) {
        for (const auto& [sm, r] : s.terms()) basis.try_emplace(Key{d, m, sm}, basis.size());
      }
    }
  }
  Matrix m(ops.size(), basis.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (const auto& [d, c] : ops[i].terms()) {
      for (const auto& [mono, s] : c.terms()) {
        for (const auto& [sm, r] : s.terms()) m(i, basis.at(Key{d, mono, sm})) = r;
      }
    }
  }
  return m.rank();
}

/// Algebraically decidable quantization axioms.
inline VerificationReport axiom_report(const QuantizationMap& map, Dimension n, int degree_cap) {
  return timed_report("axioms " + map.name(), n.value(), 0, [&](VerificationReport& r) {
    auto monos = b1_monomials(n, degree_cap);
    std::vector<Observable> obs;
    for (const auto& m : monos) obs.push_back(to_observable(m, n));

    // Linearity on a fixed combination of consecutive monomials.
    for (std::size_t i = 0; i + 1 < obs.size(); i += 7) {
      Observable comb = obs[i] * PolyFn(Scalar(Rational(3, 2))) - obs[i + 1] * PolyFn(2);
      DiffOperator lhs = quantize(map, comb);
      DiffOperator rhs = PolyFn(Scalar(Rational(3, 2))) * quantize(map, obs[i]) - PolyFn(2) * quantize(map, obs[i + 1]);
      r.record("linearity " + format(monos[i]) + ", " + format(monos[i + 1]), lhs == rhs, rhs.to_string(), lhs.to_string());
    }

    for (std::size_t i = 0; i < obs.size(); ++i) {
      for (std::size_t j = 0; j < obs.size(); ++j) {
        auto cmp = dirac_compare(map, obs[i], obs[j]);
        r.record("dirac {" + format(monos[i]) + ", " + format(monos[j]) + "}", cmp.holds(), cmp.rhs.to_string(),
                 cmp.lhs.to_string());
      }
    }

    DiffOperator r1 = quantize(map, make_rhat(n, 1));
    r.record("r-hat_1 maps to a constant", r1.is_constant() && !r1.is_zero(), "nonzero constant", r1.to_string());

    std::vector<DiffOperator> images;
    std::vector<std::string> names;
    for (int i = 1; i <= n.value(); ++i) {
      images.push_back(quantize(map, make_qhat(n, i, 1)));
      names.push_back("qh(" + std::to_string(i) + ",1)");
    }
    for (int k = 1; k <= n.value(); ++k) {
      images.push_back(quantize(map, make_pihat(n, k)));
      names.push_back("pih(" + std::to_string(k) + ")");
    }
    images.push_back(r1);
    names.push_back("rh(1)");
    std::size_t rank = operator_rank(images);
    r.record("faithful on b_1", rank == images.size(), "rank " + std::to_string(images.size()),
             "rank " + std::to_string(rank));

    std::vector<GenMonomial> symmetric_targets;
    for (const auto& m : monos) {
      if (m.rank() < map.kill_rank()) symmetric_targets.push_back(m);
    }
    for (const auto& m : symmetric_targets) {
      DiffOperator op = quantize(map, m);
      r.record("formally symmetric " + format(m), formal_adjoint(op) == op, op.to_string(), formal_adjoint(op).to_string());
    }

    r.notes.push_back("finitely generated: P(b_1) is generated by the " + std::to_string(2 * n.value() + 1) +
                      " elements of b_1");
    r.notes.push_back("transitivity and separation are checked by the basic-sets suite");
    r.notes.push_back("self-adjointness, irreducibility and analytic vectors are out of computational scope");
  });
}

}  // namespace nsq
