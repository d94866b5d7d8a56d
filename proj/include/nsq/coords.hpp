#pragma once

#include <cstdint>
#include <string>

#include "nsq/polynomial.hpp"
#include "nsq/scalar.hpp"

namespace nsq {

/// A coordinate function. On the frame bundle: q^i and pi^a_b. On the
/// subbundle: Q^i and P_k. On the symplectic reference phase space: q^i, p_k.
struct Coord {
  enum class Kind : std::uint8_t { q, pi, Q, P, p };
  Kind kind = Kind::q;
  std::uint8_t upper = 0;
  std::uint8_t lower = 0;

  auto operator<=>(const Coord&) const = default;
  bool operator==(const Coord&) const = default;
};

inline Coord q_coord(int i) { return {Coord::Kind::q, static_cast<std::uint8_t>(i), 0}; }
inline Coord pi_coord(int a, int b) {
  return {Coord::Kind::pi, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
}
inline Coord Q_coord(int i) { return {Coord::Kind::Q, static_cast<std::uint8_t>(i), 0}; }
inline Coord P_coord(int k) { return {Coord::Kind::P, 0, static_cast<std::uint8_t>(k)}; }
inline Coord p_coord(int k) { return {Coord::Kind::p, 0, static_cast<std::uint8_t>(k)}; }

inline std::string format(const Coord& c) {
  switch (c.kind) {
    case Coord::Kind::q: return "q" + std::to_string(c.upper);
    case Coord::Kind::pi: return "pi" + std::to_string(c.upper) + "_" + std::to_string(c.lower);
    case Coord::Kind::Q: return "Q" + std::to_string(c.upper);
    case Coord::Kind::P: return "P" + std::to_string(c.lower);
    case Coord::Kind::p: return "p" + std::to_string(c.lower);
  }
  return "?";
}

/// Polynomial function of coordinates with Scalar (rational + symbol) coefficients.
using PolyFn = SparsePoly<Coord, Scalar>;
using CoordMonomial = Monomial<Coord>;

inline PolyFn var(const Coord& c) { return PolyFn::variable(c); }
inline PolyFn constant(const Scalar& s) { return PolyFn(s); }

inline std::string format(const PolyFn& f) {
  return f.to_string([](const Coord& c) { return format(c); },
                     [](const Scalar& s) { return format(s); });
}

inline PolyFn delta(int a, int b) { return PolyFn(a == b ? 1 : 0); }

}  // namespace nsq
