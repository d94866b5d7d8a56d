#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/coords.hpp"
#include "nsq/matrix.hpp"
#include "nsq/multi_index.hpp"

namespace nsq {

/// A symmetric-tensor-valued polynomial observable on the frame bundle.
///
/// Components are stored at canonical (sorted) multi-indices only, so the
/// symmetry of f^{I} under index permutation holds by construction. The rank
/// of a component is the length of its key; an absent key is a zero
/// component. Rank 0 is not an observable and is rejected.
class Observable {
 public:
  using Components = std::map<MultiIndex, PolyFn>;

  explicit Observable(Dimension n) : n_(n) {}
  Observable(Dimension n, const Components& comps) : n_(n) {
    for (const auto& [k, v] : comps) add(k, v);
  }

  Dimension dim() const { return n_; }
  const Components& components() const { return comps_; }

  PolyFn component(const MultiIndex& k) const {
    auto it = comps_.find(k);
    return it == comps_.end() ? PolyFn{} : it->second;
  }

  /// Accumulates into a component. Construction helper; operations below
  /// never mutate their arguments.
  void add(const MultiIndex& k, const PolyFn& v) {
    if (k.empty()) throw std::invalid_argument("observables have rank >= 1");
    for (int idx : k) n_.check(idx);
    if (v.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  bool is_zero() const { return comps_.empty(); }

  std::set<int> ranks() const {
    std::set<int> out;
    for (const auto& [k, v] : comps_) out.insert(static_cast<int>(k.rank()));
    return out;
  }

  /// The rank if exactly one grade is present.
  std::optional<int> homogeneous_rank() const {
    auto r = ranks();
    if (r.size() != 1) return std::nullopt;
    return *r.begin();
  }

  Observable grade(int p) const {
    Observable out(n_);
    for (const auto& [k, v] : comps_) {
      if (static_cast<int>(k.rank()) == p) out.comps_.emplace(k, v);
    }
    return out;
  }

  Observable& operator+=(const Observable& o) {
    require_same_dim(o);
    for (const auto& [k, v] : o.comps_) add(k, v);
    return *this;
  }
  Observable& operator-=(const Observable& o) {
    require_same_dim(o);
    for (const auto& [k, v] : o.comps_) add(k, -v);
    return *this;
  }
  friend Observable operator+(Observable a, const Observable& b) { return a += b; }
  friend Observable operator-(Observable a, const Observable& b) { return a -= b; }
  friend Observable operator-(const Observable& a) { return a * PolyFn(-1); }

  /// Pointwise multiplication of every component by a polynomial function.
  friend Observable operator*(const Observable& a, const PolyFn& s) {
    Observable out(a.n_);
    for (const auto& [k, v] : a.comps_) out.add(k, v * s);
    return out;
  }
  friend Observable operator*(const PolyFn& s, const Observable& a) { return a * s; }

  friend bool operator==(const Observable& a, const Observable& b) {
    return a.n_ == b.n_ && a.comps_ == b.comps_;
  }

  /// Applies f to every component.
  template <class F>
  Observable map_components(F&& f) const {
    Observable out(n_);
    for (const auto& [k, v] : comps_) out.add(k, f(v));
    return out;
  }

  std::string debug_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : comps_) {
      if (!out.empty()) out += "; ";
      out += k.to_string() + ": " + format(v);
    }
    return out;
  }

  void require_same_dim(const Observable& o) const {
    if (!(o.n_ == n_)) throw std::invalid_argument("dimension mismatch between observables");
  }

 private:
  Dimension n_;
  Components comps_;
};

/// Symmetric tensor product, normalized: the component at K of rank p+q is the
/// average over all placements of K's positions between f (p) and g (q).
inline Observable sym_mul(const Observable& f, const Observable& g) {
  f.require_same_dim(g);
  Observable out(f.dim());
  if (f.is_zero() || g.is_zero()) return out;
  for (int p : f.ranks()) {
    for (int q : g.ranks()) {
      for (const auto& key : all_multi_indices(f.dim(), p + q)) {
        PolyFn acc;
        for (const auto& s : splits(key, p)) {
          PolyFn a = f.component(s.first);
          if (a.is_zero()) continue;
          PolyFn b = g.component(s.second);
          if (b.is_zero()) continue;
          acc += a * b * PolyFn(Scalar(s.weight));
        }
        out.add(key, acc);
      }
    }
  }
  return out;
}

inline Observable sym_pow(const Observable& f, int k) {
  if (k < 1) throw std::invalid_argument("symmetric power must be >= 1");
  Observable out = f;
  for (int e = 1; e < k; ++e) out = sym_mul(out, f);
  return out;
}

/// q-hat^i_j = q^i r-hat_j.
inline Observable make_qhat(Dimension n, int i, int j) {
  n.check(i);
  n.check(j);
  Observable out(n);
  out.add(MultiIndex{j}, var(q_coord(i)));
  return out;
}

/// pi-hat_k = pi^l_k r-hat_l.
inline Observable make_pihat(Dimension n, int k) {
  n.check(k);
  Observable out(n);
  for (int l = 1; l <= n.value(); ++l) out.add(MultiIndex{l}, var(pi_coord(l, k)));
  return out;
}

/// Constant basis vector r-hat_k.
inline Observable make_rhat(Dimension n, int k) {
  n.check(k);
  Observable out(n);
  out.add(MultiIndex{k}, PolyFn(1));
  return out;
}

/// A point of the frame bundle: base point q and invertible coframe matrix pi,
/// with pi(a-1, b-1) = pi^a_b.
class FramePoint {
 public:
  FramePoint(std::vector<Rational> q, Matrix pi) : q_(std::move(q)), pi_(std::move(pi)) {
    if (pi_.rows() != q_.size() || pi_.cols() != q_.size()) {
      throw std::invalid_argument("frame point shape mismatch");
    }
    if (q_.empty()) throw std::invalid_argument("empty frame point");
    if (pi_.determinant() == 0) throw std::domain_error("frame matrix is singular");
  }

  Dimension dim() const { return Dimension(static_cast<int>(q_.size())); }
  const std::vector<Rational>& q() const { return q_; }
  const Matrix& pi() const { return pi_; }

  /// Value of a coordinate at this point. The subbundle coordinates read
  /// Q^i = q^i and P_k = pi^1_k, which is their meaning on B_1.
  Rational coordinate(const Coord& c) const {
    switch (c.kind) {
      case Coord::Kind::q:
      case Coord::Kind::Q: return q_.at(c.upper - 1);
      case Coord::Kind::pi: return pi_(c.upper - 1, c.lower - 1);
      case Coord::Kind::P: return pi_(0, c.lower - 1);
      default: throw std::invalid_argument("not a frame-bundle coordinate: " + format(c));
    }
  }

  bool operator==(const FramePoint&) const = default;

 private:
  std::vector<Rational> q_;
  Matrix pi_;
};

inline Scalar evaluate(const PolyFn& f, const FramePoint& u) {
  Scalar out;
  for (const auto& [m, c] : f.terms()) {
    Rational v = 1;
    for (const auto& [x, e] : m.factors()) {
      Rational base = u.coordinate(x);
      for (unsigned k = 0; k < e; ++k) v *= base;
    }
    out += c * Scalar(v);
  }
  return out;
}

/// Substitutes the coordinates of u into every component.
inline std::map<MultiIndex, Scalar> evaluate(const Observable& f, const FramePoint& u) {
  if (!(f.dim() == u.dim())) throw std::invalid_argument("dimension mismatch in evaluate");
  std::map<MultiIndex, Scalar> out;
  for (const auto& [k, v] : f.components()) {
    Scalar s = evaluate(v, u);
    if (!s.is_zero()) out.emplace(k, s);
  }
  return out;
}

}  // namespace nsq
