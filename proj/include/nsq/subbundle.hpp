#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "nsq/poisson.hpp"

namespace nsq {

/// pi^A_j = delta^A_j for every row A other than the slice index s.
inline bool slice_check(const FramePoint& u, int s = 1) {
  std::size_t n = u.q().size();
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<int>(a) + 1 == s) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (u.pi()(a, j) != (a == j ? 1 : 0)) return false;
    }
  }
  return true;
}

/// Point of B_s: base point q and the frame e_s = alpha d/du^s,
/// e_A = d/du^A + mu_A d/du^s (mu listed for A != s in increasing order).
struct SubbundlePoint {
  std::vector<Rational> q;
  Rational alpha = 1;
  std::vector<Rational> mu;
};

/// The coframe is the inverse of the frame matrix: row s is
/// (1/alpha, -mu_A/alpha), the other rows are those of the identity, det = 1/alpha.
inline FramePoint frame_from_params(const SubbundlePoint& p, int s = 1) {
  std::size_t n = p.q.size();
  if (n == 0) throw std::invalid_argument("empty subbundle point");
  if (s < 1 || s > static_cast<int>(n)) throw std::out_of_range("slice index out of range");
  if (p.alpha == 0) throw std::domain_error("alpha must be nonzero");
  if (p.mu.size() != n - 1) throw std::invalid_argument("mu must have n-1 entries");
  Matrix frame = Matrix::identity(n);
  frame(s - 1, s - 1) = p.alpha;
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<int>(a) + 1 == s) continue;
    frame(s - 1, a) = p.mu[k++];
  }
  return FramePoint(p.q, frame.inverse());
}

/// Element (a, b) of the structure group R* x| R^{n-1}.
struct G1Element {
  Rational a = 1;
  std::vector<Rational> b;
  bool operator==(const G1Element&) const = default;
};

inline G1Element g1_identity(Dimension n) { return {1, std::vector<Rational>(n.value() - 1)}; }

/// (a1, b1)(a2, b2) = (a1 a2, a1 b2 + b1).
inline G1Element g1_mul(const G1Element& x, const G1Element& y) {
  if (x.b.size() != y.b.size()) throw std::invalid_argument("G1 dimension mismatch");
  if (x.a == 0 || y.a == 0) throw std::domain_error("G1 element with a = 0");
  G1Element out{x.a * y.a, x.b};
  for (std::size_t k = 0; k < x.b.size(); ++k) out.b[k] = x.a * y.b[k] + x.b[k];
  return out;
}

inline G1Element g1_inv(const G1Element& x) {
  if (x.a == 0) throw std::domain_error("G1 element with a = 0");
  G1Element out{Rational(1) / x.a, x.b};
  for (auto& v : out.b) v = -v / x.a;
  return out;
}

/// n x n matrix of a G1 element: row s is (a, b), the others are identity rows.
inline Matrix g1_matrix(const G1Element& g, int s = 1) {
  std::size_t n = g.b.size() + 1;
  Matrix m = Matrix::identity(n);
  m(s - 1, s - 1) = g.a;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (static_cast<int>(c) + 1 == s) continue;
    m(s - 1, c) = g.b[k++];
  }
  return m;
}

/// pi(u g) = g^{-1} pi(u), q unchanged.
inline FramePoint right_action(const FramePoint& u, const Matrix& g) {
  if (g.rows() != u.q().size() || g.cols() != u.q().size()) throw std::invalid_argument("shape mismatch in right_action");
  if (g.determinant() == 0) throw std::domain_error("right action by a singular matrix");
  return FramePoint(u.q(), g.inverse() * u.pi());
}

/// Inclusion of B_s in coordinates: q^i -> Q^i, pi^s_j -> P_j, pi^A_j -> delta^A_j.
inline PolyFn slice_image(const Coord& c, int s = 1) {
  switch (c.kind) {
    case Coord::Kind::q: return var(Q_coord(c.upper));
    case Coord::Kind::pi: return c.upper == s ? var(P_coord(c.lower)) : delta(c.upper, c.lower);
    default: return var(c);
  }
}

inline PolyFn restrict_to_slice(const PolyFn& f, int s = 1) {
  return f.substitute([s](const Coord& c) { return slice_image(c, s); });
}

/// i*(d theta) on B_s: component s is dP_j ^ dQ^j, the others vanish.
inline VectorTwoForm pullback_two_form(Dimension n, int s = 1) {
  n.check(s);
  VectorTwoForm out;
  for (const auto& [i, w] : soldering_dtheta(n)) {
    out[i] = pullback(w, [s](const Coord& c) { return slice_image(c, s); });
  }
  return out;
}

/// Vertical coefficients on d/dpi^A_b (A != s) vanish on the slice.
inline bool tangency_check(const HamVF& x, int s = 1) {
  for (const auto& [k, field] : x.components()) {
    for (const auto& [c, v] : field.coefficients()) {
      if (c.kind != Coord::Kind::pi || c.upper == s) continue;
      if (!restrict_to_slice(v, s).is_zero()) return false;
    }
  }
  return true;
}

/// Gauge term that turns the zero-gauge representative of
/// q^a Sym(pi-hat_K (x) r-hat_1^l) into one tangent to B_1:
/// T^{I,c}_b = -(1/p!) d_b(q^a) [Sym(pi-hat_K r-hat_1^{l-1})^I delta^c_1 - Sym(pi-hat_K r-hat_1^l)^{Ic}].
inline HamVF b1_gauge_term(const GenMonomial& g, Dimension n) {
  if (!g.in_b1()) throw NotInGeneratorAlgebra("monomial is outside P(b_1)");
  HamVF out(n);
  if (g.positions.empty()) return out;
  Rational inv = Rational(1) / factorial(g.rank());
  PolyFn qa = position_monomial(g.positions);
  const auto& shorter = sym_generator_product(n, g.momenta, g.slots.without(1));
  const auto& full = sym_generator_product(n, g.momenta, g.slots);
  for (int b = 1; b <= n.value(); ++b) {
    PolyFn db = qa.derivative(q_coord(b));
    if (db.is_zero()) continue;
    PolyFn scale = db * PolyFn(Scalar(-inv));
    for (const auto& idx : all_multi_indices(n, g.rank() - 1)) {
      VectorField t;
      auto it = shorter.find(idx);
      if (it != shorter.end()) t.add(pi_coord(1, b), scale * it->second);
      for (int c = 1; c <= n.value(); ++c) {
        auto jt = full.find(idx.with(c));
        if (jt != full.end()) t.add(pi_coord(c, b), -(scale * jt->second));
      }
      out.add(idx, t);
    }
  }
  return out;
}

/// Representative of the field of f in P(b_1) tangent to B_1: the zero-gauge
/// representative plus the gauge terms above.
inline HamVF gauge_fix_for_B1(const Observable& f) {
  GenPoly parts = decompose_b1(f);
  HamVF gauge(f.dim());
  for (const auto& [m, c] : parts) gauge += PolyFn(c) * b1_gauge_term(m, f.dim());
  return add_gauge(zero_gauge_ham_vf(f), gauge);
}

/// Reduced generators on B_1 in coordinates (Q, P).
inline Observable reduced_qhat(Dimension n, int i) {
  n.check(i);
  Observable out(n);
  out.add(MultiIndex{1}, var(Q_coord(i)));
  return out;
}

/// pi-hat_k restricted to B_1: P_k at index 1 and the constant delta^A_k at A >= 2.
inline Observable reduced_pihat(Dimension n, int k) {
  n.check(k);
  Observable out(n);
  out.add(MultiIndex{1}, var(P_coord(k)));
  for (int a = 2; a <= n.value(); ++a) out.add(MultiIndex{a}, delta(a, k));
  return out;
}

inline Observable reduced_rhat(Dimension n) { return make_rhat(n, 1); }

/// Restricts the components of f in P(b_1) to B_1.
inline Observable reduce_observable(const Observable& f) {
  if (!in_b1_algebra(f)) throw NotInGeneratorAlgebra("observable is outside P(b_1)");
  return f.map_components([](const PolyFn& v) { return restrict_to_slice(v); });
}

/// Components of Sym(Pi-hat_K (x) r-hat_1^l), built from the reduced generators.
inline const TensorComponents& reduced_generator_product(Dimension n, const MultiIndex& momenta, int l) {
  using Key = std::tuple<int, MultiIndex, int>;
  static std::mutex mu;
  static std::map<Key, TensorComponents> cache;
  Key key{n.value(), momenta, l};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TensorComponents comps;
  if (momenta.empty() && l == 0) {
    comps.emplace(MultiIndex{}, PolyFn(1));
  } else {
    std::optional<Observable> acc;
    auto fold = [&](const Observable& f) { acc = acc ? sym_mul(*acc, f) : f; };
    for (int k : momenta) fold(reduced_pihat(n, k));
    for (int t = 0; t < l; ++t) fold(reduced_rhat(n));
    comps = acc->components();
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(comps)).first->second;
}

inline Observable reduced_to_observable(const GenMonomial& g, Dimension n) {
  if (!g.valid() || !g.in_b1()) throw std::invalid_argument("not a monomial of the reduced algebra");
  PolyFn qa(1);
  for (int i : g.positions) qa = qa * var(Q_coord(i));
  return Observable(n, reduced_generator_product(n, g.momenta, static_cast<int>(g.slots.rank()))) * qa;
}

inline Observable reduced_to_observable(const GenPoly& p, Dimension n) {
  Observable out(n);
  for (const auto& [m, c] : p) out += reduced_to_observable(m, n) * PolyFn(c);
  return out;
}

/// Writes a reduced observable in the reduced generators. The (1,...,1)
/// component of Q^a Sym(Pi-hat_K r-hat_1^l) is Q^a P_K, which determines the
/// monomial within each rank; the result is re-expanded and compared.
inline GenPoly decompose_reduced(const Observable& f) {
  GenPoly out;
  for (int p : f.ranks()) {
    MultiIndex ones(std::vector<int>(p, 1));
    PolyFn top = f.component(ones);
    for (const auto& [mono, coeff] : top.terms()) {
      std::vector<int> positions;
      std::vector<int> momenta;
      for (const auto& [c, e] : mono.factors()) {
        for (unsigned t = 0; t < e; ++t) {
          if (c.kind == Coord::Kind::Q) {
            positions.push_back(c.upper);
          } else if (c.kind == Coord::Kind::P) {
            momenta.push_back(c.lower);
          } else {
            throw NotInGeneratorAlgebra("reduced component depends on " + format(c));
          }
        }
      }
      int l = p - static_cast<int>(momenta.size());
      GenMonomial g{MultiIndex(positions), MultiIndex(momenta), MultiIndex(std::vector<int>(std::max(l, 0), 1))};
      if (l < 0 || !g.valid()) throw NotInGeneratorAlgebra("term does not fit the reduced algebra");
      add_term(out, g, coeff);
    }
  }
  if (!(reduced_to_observable(out, f.dim()) == f)) {
    throw NotInGeneratorAlgebra("observable is not in the reduced algebra");
  }
  return out;
}

/// Hamiltonian field on B_1 from the reduced generator fields
/// X(Q-hat^i) = -d/dP_i, X(Pi-hat_k) = d/dQ^k, X(r-hat_1) = 0.
inline HamVF reduced_ham_vf(const GenMonomial& g, Dimension n) {
  HamVF out(n);
  Rational inv = Rational(1) / factorial(g.rank());
  int l = static_cast<int>(g.slots.rank());
  PolyFn qa(1);
  for (int i : g.positions) qa = qa * var(Q_coord(i));
  for (auto [k, mult] : detail::value_counts(g.momenta)) {
    PolyFn scale = qa * PolyFn(Scalar(inv * mult));
    for (const auto& [idx, v] : reduced_generator_product(n, g.momenta.without(k), l)) {
      out.add(idx, VectorField::partial(Q_coord(k), scale * v));
    }
  }
  if (g.positions.empty()) return out;
  for (auto [i, unused] : detail::value_counts(g.positions)) {
    PolyFn scale = qa.derivative(Q_coord(i)) * PolyFn(Scalar(-inv));
    for (const auto& [idx, v] : reduced_generator_product(n, g.momenta, l - 1)) {
      out.add(idx, VectorField::partial(P_coord(i), scale * v));
    }
  }
  return out;
}

inline HamVF reduced_ham_vf(const Observable& f) {
  HamVF out(f.dim());
  for (const auto& [m, c] : decompose_reduced(f)) out += PolyFn(c) * reduced_ham_vf(m, f.dim());
  return out;
}

/// Bracket on B_1 computed from reduced fields and reduced components only.
inline Observable reduced_bracket(const Observable& f, const Observable& g) {
  f.require_same_dim(g);
  return bracket_with(reduced_ham_vf(f), g);
}

}  // namespace nsq
