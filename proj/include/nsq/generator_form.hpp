#pragma once

#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <stdexcept>
#include <string>

#include "nsq/observable.hpp"

namespace nsq {

/// Thrown when an observable is not a polynomial in the generators
/// q-hat^i_j, pi-hat_k, r-hat_k.
class NotInGeneratorAlgebra : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A monomial in the generators, in canonical form
///
///   q^{positions} * Sym(pi-hat_{momenta} (x) r-hat_{slots})
///
/// Since q-hat^i_j = q^i r-hat_j, a product of q-hats only records which
/// coordinates appear and which r-hat slots they occupy; the pairing between
/// them is invisible in the observable. So the canonical form keeps the
/// multiset of q indices and the multiset of slots, with |positions| <= |slots|.
struct GenMonomial {
  MultiIndex positions;
  MultiIndex momenta;
  MultiIndex slots;

  int rank() const { return static_cast<int>(momenta.rank() + slots.rank()); }
  bool valid() const { return positions.rank() <= slots.rank() && rank() >= 1; }

  /// True for monomials of P(b_1): every slot is r-hat_1.
  bool in_b1() const {
    for (int s : slots) {
      if (s != 1) return false;
    }
    return true;
  }

  friend GenMonomial operator*(const GenMonomial& a, const GenMonomial& b) {
    return {a.positions + b.positions, a.momenta + b.momenta, a.slots + b.slots};
  }

  auto operator<=>(const GenMonomial&) const = default;
  bool operator==(const GenMonomial&) const = default;
};

inline GenMonomial gen_qhat(int i, int j) { return {MultiIndex{i}, {}, MultiIndex{j}}; }
inline GenMonomial gen_pihat(int k) { return {{}, MultiIndex{k}, {}}; }
inline GenMonomial gen_rhat(int k) { return {{}, {}, MultiIndex{k}}; }

using GenPoly = std::map<GenMonomial, Scalar>;

inline void add_term(GenPoly& p, const GenMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

inline PolyFn position_monomial(const MultiIndex& positions) {
  PolyFn out(1);
  for (int i : positions) out = out * var(q_coord(i));
  return out;
}

/// Components of a symmetric tensor that may have rank 0 (a plain function).
using TensorComponents = std::map<MultiIndex, PolyFn>;

/// Components of Sym(pi-hat_K (x) r-hat_L); the empty product is the constant 1
/// at the empty multi-index. Memoized, since every field and bracket of a
/// generator monomial needs these.
inline const TensorComponents& sym_generator_product(Dimension n, const MultiIndex& momenta,
                                                     const MultiIndex& slots) {
  using Key = std::tuple<int, MultiIndex, MultiIndex>;
  static std::mutex mu;
  static std::map<Key, TensorComponents> cache;
  Key key{n.value(), momenta, slots};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TensorComponents comps;
  if (momenta.empty() && slots.empty()) {
    comps.emplace(MultiIndex{}, PolyFn(1));
  } else {
    std::optional<Observable> acc;
    auto fold = [&](const Observable& f) { acc = acc ? sym_mul(*acc, f) : f; };
    for (int k : momenta) fold(make_pihat(n, k));
    for (int l : slots) fold(make_rhat(n, l));
    comps = acc->components();
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(comps)).first->second;
}

inline Observable to_observable(const GenMonomial& m, Dimension n) {
  if (!m.valid()) throw std::invalid_argument("generator monomial has more positions than slots");
  return Observable(n, sym_generator_product(n, m.momenta, m.slots)) * position_monomial(m.positions);
}

inline Observable to_observable(const GenPoly& p, Dimension n) {
  Observable out(n);
  for (const auto& [m, c] : p) out += to_observable(m, n) * PolyFn(c);
  return out;
}

/// Writes an observable as a polynomial in the generators.
///
/// Each term c q^a pi^{x1}_{k1}...pi^{xm}_{km} of a component at M belongs to
/// exactly one generator monomial: positions a, momenta {k}, slots M - {x}.
/// Reading one term per signature fixes every coefficient; the result is
/// re-expanded and compared against f, so anything outside the algebra throws.
inline GenPoly decompose(const Observable& f) {
  GenPoly out;
  std::set<GenMonomial> seen;
  for (const auto& [key, poly] : f.components()) {
    for (const auto& [mono, coeff] : poly.terms()) {
      std::vector<int> positions;
      std::vector<int> uppers;
      std::vector<int> lowers;
      for (const auto& [c, e] : mono.factors()) {
        for (unsigned t = 0; t < e; ++t) {
          if (c.kind == Coord::Kind::q) {
            positions.push_back(c.upper);
          } else if (c.kind == Coord::Kind::pi) {
            uppers.push_back(c.upper);
            lowers.push_back(c.lower);
          } else {
            throw NotInGeneratorAlgebra("component depends on " + format(c));
          }
        }
      }
      MultiIndex upper_set(uppers);
      if (!key.contains_multiset(upper_set)) {
        throw NotInGeneratorAlgebra("momentum indices do not fit component " + key.to_string());
      }
      GenMonomial g{MultiIndex(positions), MultiIndex(lowers), key.minus(upper_set)};
      if (!g.valid()) {
        throw NotInGeneratorAlgebra("too many position factors in component " + key.to_string());
      }
      if (!seen.insert(g).second) continue;
      Scalar image_coeff = to_observable(g, f.dim()).component(key).coefficient(mono);
      Rational scale = image_coeff.constant_term();
      add_term(out, g, coeff * Scalar(Rational(1) / scale));
    }
  }
  if (!(to_observable(out, f.dim()) == f)) {
    throw NotInGeneratorAlgebra("observable is not a polynomial in q-hat, pi-hat, r-hat");
  }
  return out;
}

/// True iff f lies in P(b_1), the algebra generated by q-hat^i_1, pi-hat_k, r-hat_1.
inline bool in_b1_algebra(const Observable& f) {
  try {
    for (const auto& [m, c] : decompose(f)) {
      if (!m.in_b1()) return false;
    }
    return true;
  } catch (const NotInGeneratorAlgebra&) {
    return false;
  }
}

inline GenPoly decompose_b1(const Observable& f) {
  GenPoly p = decompose(f);
  for (const auto& [m, c] : p) {
    if (!m.in_b1()) throw NotInGeneratorAlgebra("observable is outside P(b_1)");
  }
  return p;
}

/// Surface syntax for a generator monomial: "qh(i,j)*pih(k)*rh(l)". Sorted
/// positions are paired with the smallest slots. The reduced spelling on B_1
/// is "Qh(i)*Pih(k)*rh(1)".
inline std::string format(const GenMonomial& m, bool reduced = false) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  std::size_t k = 0;
  for (int i : m.positions) {
    int slot = m.slots[k++];
    append(reduced ? "Qh(" + std::to_string(i) + ")"
                   : "qh(" + std::to_string(i) + "," + std::to_string(slot) + ")");
  }
  for (int j : m.momenta) append((reduced ? "Pih(" : "pih(") + std::to_string(j) + ")");
  for (; k < m.slots.rank(); ++k) append("rh(" + std::to_string(m.slots[k]) + ")");
  return out;
}

inline std::string format(const GenPoly& p, bool reduced = false) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : p) {
    std::string coeff = format(c);
    bool negative = coeff[0] == '-';
    if (negative) coeff = coeff.substr(1);
    if (!c.is_constant()) coeff = "(" + coeff + ")";
    std::string term = coeff == "1" ? format(m, reduced) : coeff + " " + format(m, reduced);
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace nsq
