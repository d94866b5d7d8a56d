#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsq/report.hpp"
#include "nsq/subbundle.hpp"

namespace nsq {

/// Element of the Lie algebra h(LR^n), written in the basis
/// {q-hat^i_j, pi-hat_k, r-hat_k}: coefficients q(i-1, j-1), pi[k-1], center[k-1].
/// Its field part is the matching combination of Hamiltonian fields.
struct HLElement {
  Matrix q;
  std::vector<Rational> pi;
  std::vector<Rational> center;

  explicit HLElement(Dimension n)
      : q(n.value(), n.value()), pi(n.value()), center(n.value()) {}

  Dimension dim() const { return Dimension(static_cast<int>(pi.size())); }

  VectorField field() const {
    VectorField x;
    int n = static_cast<int>(pi.size());
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (q(i - 1, j - 1) != 0) x.add(pi_coord(j, i), PolyFn(Scalar(-q(i - 1, j - 1))));
      }
      if (pi[i - 1] != 0) x.add(q_coord(i), PolyFn(Scalar(pi[i - 1])));
    }
    return x;
  }

  bool operator==(const HLElement&) const = default;
};

inline HLElement hl_qhat(Dimension n, int i, int j) {
  HLElement x(n);
  x.q(i - 1, j - 1) = 1;
  return x;
}
inline HLElement hl_pihat(Dimension n, int k) {
  HLElement x(n);
  x.pi[k - 1] = 1;
  return x;
}
inline HLElement hl_rhat(Dimension n, int k) {
  HLElement x(n);
  x.center[k - 1] = 1;
  return x;
}

/// [(u1, v), (u2, w)] = (0, d theta^i(u1, u2) r-hat_i). The fields are constant,
/// so the value at the identity frame is the value everywhere.
inline HLElement hl_bracket(const HLElement& x, const HLElement& y) {
  Dimension n = x.dim();
  HLElement out(n);
  auto dtheta = soldering_dtheta(n);
  VectorField u1 = x.field();
  VectorField u2 = y.field();
  for (int i = 1; i <= n.value(); ++i) out.center[i - 1] = dtheta[i].apply(u1, u2).constant_term().constant_term();
  return out;
}

/// xi_{LR^n}(m) = (xi^b_a m^a - m^b_l xi^l) r-hat_b, with xi^b_a the
/// coefficient of q-hat^a_b and xi^l the coefficient of pi-hat_l.
inline std::vector<Rational> adjoint_generator(const HLElement& xi, const HLElement& m) {
  std::size_t n = xi.pi.size();
  std::vector<Rational> out(n);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) out[b] += xi.q(a, b) * m.pi[a] - m.q(a, b) * xi.pi[a];
  }
  return out;
}

struct MomentumComponents {
  std::vector<Observable> position;  // q-hat^a_b, a-major
  std::vector<Observable> momentum;  // pi-hat_k
  std::vector<Observable> center;    // r-hat_j
};

inline MomentumComponents momentum_components(Dimension n) {
  MomentumComponents out;
  for (int a = 1; a <= n.value(); ++a) {
    for (int b = 1; b <= n.value(); ++b) out.position.push_back(make_qhat(n, a, b));
  }
  for (int k = 1; k <= n.value(); ++k) {
    out.momentum.push_back(make_pihat(n, k));
    out.center.push_back(make_rhat(n, k));
  }
  return out;
}

/// J(xi) for xi in h(LR^n): the same linear combination of the momentum components.
inline Observable momentum_of(const HLElement& xi) {
  Dimension n = xi.dim();
  Observable out(n);
  for (int i = 1; i <= n.value(); ++i) {
    for (int j = 1; j <= n.value(); ++j) {
      if (xi.q(i - 1, j - 1) != 0) out += make_qhat(n, i, j) * PolyFn(Scalar(xi.q(i - 1, j - 1)));
    }
    if (xi.pi[i - 1] != 0) out += make_pihat(n, i) * PolyFn(Scalar(xi.pi[i - 1]));
    if (xi.center[i - 1] != 0) out += make_rhat(n, i) * PolyFn(Scalar(xi.center[i - 1]));
  }
  return out;
}

/// dJ(xi)^i = -(xi_{LR^n} _| d theta^i) for every outer index i.
inline bool momentum_map_check(const HLElement& xi) {
  Dimension n = xi.dim();
  Observable j = momentum_of(xi);
  VectorField field = xi.field();
  for (const auto& [i, w] : soldering_dtheta(n)) {
    if (!(d(j.component(MultiIndex{i})) == PolyFn(-1) * interior(field, w))) return false;
  }
  return true;
}

struct BasicSet {
  enum class Label { bL, b1, b1_reduced };
  Label label;
  Dimension n;
  std::vector<std::pair<std::string, Observable>> generators;
};

inline std::string label_name(BasicSet::Label l) {
  switch (l) {
    case BasicSet::Label::bL: return "b_L";
    case BasicSet::Label::b1: return "b_1";
    case BasicSet::Label::b1_reduced: return "b_1_reduced";
  }
  return "?";
}

inline BasicSet make_bL(Dimension n) {
  BasicSet s{BasicSet::Label::bL, n, {}};
  for (int i = 1; i <= n.value(); ++i) {
    for (int j = 1; j <= n.value(); ++j) {
      s.generators.emplace_back("qh(" + std::to_string(i) + "," + std::to_string(j) + ")", make_qhat(n, i, j));
    }
  }
  for (int k = 1; k <= n.value(); ++k) s.generators.emplace_back("pih(" + std::to_string(k) + ")", make_pihat(n, k));
  for (int k = 1; k <= n.value(); ++k) s.generators.emplace_back("rh(" + std::to_string(k) + ")", make_rhat(n, k));
  return s;
}

inline BasicSet make_b1(Dimension n) {
  BasicSet s{BasicSet::Label::b1, n, {}};
  for (int i = 1; i <= n.value(); ++i) s.generators.emplace_back("qh(" + std::to_string(i) + ",1)", make_qhat(n, i, 1));
  for (int k = 1; k <= n.value(); ++k) s.generators.emplace_back("pih(" + std::to_string(k) + ")", make_pihat(n, k));
  s.generators.emplace_back("rh(1)", make_rhat(n, 1));
  return s;
}

/// b_1 restricted to B_1, in coordinates (Q, P).
inline BasicSet make_b1_reduced(Dimension n) {
  BasicSet s{BasicSet::Label::b1_reduced, n, {}};
  for (int i = 1; i <= n.value(); ++i) s.generators.emplace_back("Qh(" + std::to_string(i) + ")", reduced_qhat(n, i));
  for (int k = 1; k <= n.value(); ++k) s.generators.emplace_back("Pih(" + std::to_string(k) + ")", reduced_pihat(n, k));
  s.generators.emplace_back("rh(1)", reduced_rhat(n));
  return s;
}

inline VectorField generator_field(const BasicSet& s, const Observable& g) {
  HamVF x = s.label == BasicSet::Label::b1_reduced ? reduced_ham_vf(g) : ham_vf(g);
  return x.component(MultiIndex{});
}

inline Rational value_at(const PolyFn& f, const FramePoint& u) {
  Scalar v = evaluate(f, u);
  if (!v.is_constant()) throw std::domain_error("field coefficient carries formal symbols");
  return v.constant_term();
}

/// Exact rank of the generator fields at each point: n + n^2 on LR^n, 2n on B_1.
inline VerificationReport verify_transitive(const BasicSet& s, const std::vector<FramePoint>& points, bool on_B1) {
  return timed_report("transitive " + label_name(s.label), s.n.value(), 0, [&](VerificationReport& r) {
    int n = s.n.value();
    std::vector<Coord> coords;
    for (int i = 1; i <= n; ++i) coords.push_back(on_B1 ? Q_coord(i) : q_coord(i));
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        if (!on_B1) coords.push_back(pi_coord(a, b));
      }
      if (on_B1) coords.push_back(P_coord(a));
    }
    std::vector<VectorField> fields;
    for (const auto& [name, g] : s.generators) {
      VectorField x = generator_field(s, g);
      if (on_B1 && s.label != BasicSet::Label::b1_reduced) {
        HamVF tangent = gauge_fix_for_B1(g);
        if (!tangency_check(tangent)) throw std::invalid_argument(name + " is not tangent to B_1");
        VectorField restricted;
        VectorField base = tangent.component(MultiIndex{});
        for (const auto& [c, v] : base.coefficients()) {
          PolyFn rv = restrict_to_slice(v);
          if (c.kind == Coord::Kind::q) restricted.add(Q_coord(c.upper), rv);
          if (c.kind == Coord::Kind::pi && c.upper == 1) restricted.add(P_coord(c.lower), rv);
        }
        x = restricted;
      }
      fields.push_back(x);
    }
    std::size_t target = on_B1 ? 2 * n : n + n * n;
    int idx = 0;
    for (const auto& u : points) {
      if (!(u.dim() == s.n)) throw std::invalid_argument("point dimension mismatch");
      if (on_B1 && !slice_check(u)) throw std::invalid_argument("point is not on B_1");
      Matrix m(fields.size(), coords.size());
      for (std::size_t a = 0; a < fields.size(); ++a) {
        for (std::size_t c = 0; c < coords.size(); ++c) m(a, c) = value_at(fields[a].coefficient(coords[c]), u);
      }
      std::size_t rank = m.rank();
      r.record("point " + std::to_string(idx++), rank == target, "rank " + std::to_string(target),
               "rank " + std::to_string(rank));
    }
  });
}

/// Some generator takes different values at the two points of each pair.
inline VerificationReport verify_separating(const BasicSet& s,
                                            const std::vector<std::pair<FramePoint, FramePoint>>& pairs) {
  for (const auto& [a, b] : pairs) {
    if (a == b) throw std::invalid_argument("separation needs distinct points");
  }
  return timed_report("separating " + label_name(s.label), s.n.value(), 0, [&](VerificationReport& r) {
    int idx = 0;
    for (const auto& [a, b] : pairs) {
      std::string witness;
      for (const auto& [name, g] : s.generators) {
        if (evaluate(g, a) != evaluate(g, b)) {
          witness = name;
          break;
        }
      }
      r.record("pair " + std::to_string(idx++), !witness.empty(), "some generator differs",
               witness.empty() ? "no generator differs" : "separated by " + witness);
    }
  });
}

/// Constant-coefficient fields have complete linear flows; other fields are
/// reported as undetermined.
inline VerificationReport verify_complete(const BasicSet& s) {
  return timed_report("complete " + label_name(s.label), s.n.value(), 0, [&](VerificationReport& r) {
    for (const auto& [name, g] : s.generators) {
      HamVF x = s.label == BasicSet::Label::b1_reduced ? reduced_ham_vf(g) : ham_vf(g);
      bool constant = true;
      for (const auto& [k, v] : x.components()) constant = constant && v.has_constant_coefficients();
      if (constant) {
        r.record(name, true);
      } else {
        r.undetermined.push_back(name + ": not decidable by the constant-coefficient criterion");
      }
    }
  });
}

}  // namespace nsq
