#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nsq/polynomial.hpp"
#include "nsq/rational.hpp"

namespace nsq {

/// Formal commuting symbols that may appear in coefficients. The imaginary
/// unit only ever enters through the product i*hbar, so that product is a
/// single symbol and all arithmetic stays rational.
struct Symbol {
  enum class Kind : std::uint8_t { IHbar, A };
  Kind kind = Kind::IHbar;
  std::uint8_t index = 0;

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;
};

using Scalar = SparsePoly<Symbol, Rational>;

inline Scalar ihbar() { return Scalar::variable(Symbol{Symbol::Kind::IHbar, 0}); }
inline Scalar amplitude(int i) {
  return Scalar::variable(Symbol{Symbol::Kind::A, static_cast<std::uint8_t>(i)});
}

inline std::string format(const Symbol& s) {
  return s.kind == Symbol::Kind::IHbar ? "i*hbar" : "A" + std::to_string(s.index);
}

inline std::string format(const Scalar& s) {
  return s.to_string([](const Symbol& v) { return format(v); },
                     [](const Rational& c) { return format(c); });
}

/// Degree in i*hbar of the highest term; 0 for symbol-free scalars.
inline unsigned hbar_degree(const Scalar& s) {
  unsigned d = 0;
  for (const auto& [m, c] : s.terms()) {
    d = std::max(d, m.exponent(Symbol{Symbol::Kind::IHbar, 0}));
  }
  return d;
}

/// Complex conjugation: i*hbar -> -i*hbar, the amplitudes A^i are real.
inline Scalar conjugate(const Scalar& s) {
  return s.substitute([](const Symbol& v) {
    return v.kind == Symbol::Kind::IHbar ? -ihbar() : Scalar::variable(v);
  });
}

/// Exact division by a symbol monomial; throws if some term is not divisible.
inline Scalar divide_exact(const Scalar& s, const Monomial<Symbol>& d) {
  Scalar out;
  for (const auto& [m, c] : s.terms()) {
    if (!m.divisible_by(d)) throw std::domain_error("scalar not divisible by symbol monomial");
    out.add_term(m.divided_by(d), c);
  }
  return out;
}

inline bool is_rational(const Scalar& s) { return s.is_constant(); }

}  // namespace nsq
