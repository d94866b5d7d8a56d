#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsq/basic_sets.hpp"
#include "nsq/quantization.hpp"
#include "nsq/symplectic.hpp"

namespace nsq {

inline constexpr std::uint64_t default_seed = 20080501;

struct SuiteOptions {
  Dimension n{2};
  std::uint64_t seed = default_seed;
  bool gauge = false;  // add a random pure-gauge term to every field used in a bracket
};

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seeded randomness plus the bracket and field used by every suite.
class SuiteContext {
 public:
  explicit SuiteContext(const SuiteOptions& o) : opts(o), rng(o.seed) {}

  SuiteOptions opts;
  std::mt19937_64 rng;

  int pick(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

  Rational small_rational() {
    int num = pick(-4, 4);
    if (num == 0) num = 1;
    return Rational(num, pick(1, 3));
  }

  /// Monomial of P(b_L) (or of P(b_1)) of degree 1..max_degree.
  GenMonomial random_monomial(Dimension n, int max_degree, bool b1) { return random_monomial_of_rank(n, pick(1, max_degree), b1); }

  GenMonomial random_monomial_of_rank(Dimension n, int rank, bool b1) {
    int l = pick(0, rank);
    int a = pick(0, l);
    auto indices = [&](int count, bool ones) {
      std::vector<int> v;
      for (int c = 0; c < count; ++c) v.push_back(ones ? 1 : pick(1, n.value()));
      return canonicalize(v, n);
    };
    return {indices(a, false), indices(rank - l, false), indices(l, b1)};
  }

  /// One or two monomials of the same rank with small rational coefficients.
  Observable random_homogeneous(Dimension n, int rank, bool b1) {
    GenPoly p;
    int terms = pick(1, 2);
    for (int t = 0; t < terms; ++t) add_term(p, random_monomial_of_rank(n, rank, b1), Scalar(small_rational()));
    return to_observable(p, n);
  }

  PolyFn random_coefficient(Dimension n) {
    PolyFn c{Scalar(small_rational())};
    switch (pick(0, 2)) {
      case 1: return c * var(q_coord(pick(1, n.value())));
      case 2: return c * var(pi_coord(pick(1, n.value()), pick(1, n.value())));
      default: return c;
    }
  }

  /// T = W - Sym(W) for a sparse random vertical W of the given field rank, so
  /// that sum_s T^{M - m_s} (d/dpi^{m_s}_b) = 0 for every M and b.
  HamVF random_gauge(Dimension n, int field_rank) {
    HamVF w(n);
    if (field_rank < 1) return w;
    int entries = pick(1, 3);
    for (int e = 0; e < entries; ++e) {
      std::vector<int> raw;
      for (int k = 0; k < field_rank; ++k) raw.push_back(pick(1, n.value()));
      VectorField x;
      x.add(pi_coord(pick(1, n.value()), pick(1, n.value())), random_coefficient(n));
      w.add(canonicalize(raw, n), x);
    }
    std::map<std::pair<MultiIndex, int>, PolyFn> sym;
    for (const auto& [j, x] : w.components()) {
      for (const auto& [c, v] : x.coefficients()) {
        sym.try_emplace({j + MultiIndex{c.upper}, c.lower});
      }
    }
    HamVF t = w;
    for (auto& [key, value] : sym) {
      const auto& [m, b] = key;
      for (int s : m) value += w.component(m.without(s)).coefficient(pi_coord(s, b));
      value = PolyFn(Scalar(Rational(1, static_cast<int>(m.rank())))) * value;
      std::vector<int> seen;
      for (int s : m) {
        if (!seen.empty() && seen.back() == s) continue;
        seen.push_back(s);
        VectorField x;
        x.add(pi_coord(s, b), PolyFn(-1) * value);
        t.add(m.without(s), x);
      }
    }
    if (!is_pure_gauge(t)) throw std::logic_error("random gauge projection failed");
    return t;
  }

  /// Hamiltonian field of f, shifted by a random gauge term when enabled.
  HamVF field(const Observable& f) {
    HamVF x = ham_vf(f);
    if (!opts.gauge) return x;
    for (int p : f.ranks()) x = add_gauge(x, random_gauge(f.dim(), p - 1));
    return x;
  }

  Observable bracket(const Observable& f, const Observable& g) {
    f.require_same_dim(g);
    return bracket_with(field(f), g);
  }
};

namespace detail {

inline std::string show(const Observable& f) { return format(decompose(f)); }

inline Observable qh(Dimension n, int i) { return make_qhat(n, i, 1); }
inline Observable ph(Dimension n, int k) { return make_pihat(n, k); }
inline Observable r1(Dimension n) { return make_rhat(n, 1); }
inline Observable scaled(const Observable& f, const Rational& c) { return f * PolyFn(Scalar(c)); }
inline int kd(int a, int b) { return a == b ? 1 : 0; }
/// Runs check(label) over every instantiation of `arity` indices in 1..n and
/// records a single case that passes iff all instantiations pass.
template <class Check>
void record_all(VerificationReport& r, const std::string& name, int n, int arity, Check&& check) {
  std::vector<int> v(arity, 1);
  std::string first_fail_expected, first_fail_actual, where;
  bool ok = true;
  while (true) {
    auto [pass, expected, actual] = check(v);
    if (!pass && ok) {
      ok = false;
      first_fail_expected = expected;
      first_fail_actual = actual;
      where = " at ";
      for (int x : v) where += std::to_string(x) + " ";
    }
    int pos = arity - 1;
    while (pos >= 0 && v[pos] == n) v[pos--] = 1;
    if (pos < 0) break;
    ++v[pos];
  }
  r.record(name + (ok ? "" : where), ok, first_fail_expected, first_fail_actual);
}

struct Outcome {
  bool pass;
  std::string expected;
  std::string actual;
};

inline Outcome compare(const Observable& expected, const Observable& actual) {
  bool ok = expected == actual;
  return {ok, ok ? "" : show(expected), ok ? "" : show(actual)};
}

}  // namespace detail

/// The six symplectic brackets on T*R^n, with the cubic mixed bracket taken
/// at coinciding indices.
inline VerificationReport suite_eq13(const SuiteOptions& o) {
  return timed_report("eq13", o.n.value(), o.seed, [&](VerificationReport& r) {
    using detail::Outcome;
    int n = o.n.value();
    auto cmp = [](const SymplecticPoly& e, const SymplecticPoly& a) {
      bool ok = e == a;
      return Outcome{ok, ok ? "" : format(e), ok ? "" : format(a)};
    };
    detail::record_all(r, "{q^i, p_j} = delta", n, 2, [&](const std::vector<int>& v) {
      return cmp(SymplecticPoly(detail::kd(v[0], v[1])), classical_bracket(sq(v[0]), sp(v[1])));
    });
    detail::record_all(r, "{(q^i)^a, (q^j)^b} = 0", n, 2, [&](const std::vector<int>& v) {
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          auto out = cmp({}, classical_bracket(sq(v[0]).pow(a), sq(v[1]).pow(b)));
          if (!out.pass) return out;
        }
      }
      return Outcome{true, "", ""};
    });
    detail::record_all(r, "{(p_i)^a, (p_j)^b} = 0", n, 2, [&](const std::vector<int>& v) {
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          auto out = cmp({}, classical_bracket(sp(v[0]).pow(a), sp(v[1]).pow(b)));
          if (!out.pass) return out;
        }
      }
      return Outcome{true, "", ""};
    });
    detail::record_all(r, "{(q^i)^2, (p_j)^2} = 4 delta q^i p_j", n, 2, [&](const std::vector<int>& v) {
      SymplecticPoly e = PolyFn(4 * detail::kd(v[0], v[1])) * sq(v[0]) * sp(v[1]);
      return cmp(e, classical_bracket(sq(v[0]).pow(2), sp(v[1]).pow(2)));
    });
    detail::record_all(r, "{(q^i)^3, (p_j)^3} = 9 delta (q^i)^2 (p_j)^2", n, 2, [&](const std::vector<int>& v) {
      SymplecticPoly e = PolyFn(9 * detail::kd(v[0], v[1])) * sq(v[0]).pow(2) * sp(v[1]).pow(2);
      return cmp(e, classical_bracket(sq(v[0]).pow(3), sp(v[1]).pow(3)));
    });
    detail::record_all(r, "{(q^i)^2 p_i, q^i (p_i)^2} = 3 (q^i)^2 (p_i)^2", n, 1, [&](const std::vector<int>& v) {
      int i = v[0];
      SymplecticPoly e = PolyFn(3) * sq(i).pow(2) * sp(i).pow(2);
      return cmp(e, classical_bracket(sq(i).pow(2) * sp(i), sq(i) * sp(i).pow(2)));
    });
  });
}

/// The eight brackets of P(b_1) with their trailing r-hat_1 factors.
inline VerificationReport suite_eq14(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("eq14", o.n.value(), o.seed, [&](VerificationReport& r) {
    using namespace detail;
    Dimension dn = o.n;
    int n = dn.value();
    auto br = [&](const Observable& f, const Observable& g) { return ctx.bracket(f, g); };
    record_all(r, "{qh(i,1), pih(j)} = delta rh(1)", n, 2, [&](const std::vector<int>& v) {
      return compare(scaled(r1(dn), kd(v[0], v[1])), br(qh(dn, v[0]), ph(dn, v[1])));
    });
    record_all(r, "{qh(i,1), pih(j)*pih(k)}", n, 3, [&](const std::vector<int>& v) {
      Observable e = scaled(sym_mul(ph(dn, v[2]), r1(dn)), kd(v[0], v[1])) +
                     scaled(sym_mul(ph(dn, v[1]), r1(dn)), kd(v[0], v[2]));
      return compare(e, br(qh(dn, v[0]), sym_mul(ph(dn, v[1]), ph(dn, v[2]))));
    });
    record_all(r, "{qh(i,1)*qh(j,1), pih(k)}", n, 3, [&](const std::vector<int>& v) {
      Observable e(dn);
      PolyFn c = var(q_coord(v[0])) * delta(v[1], v[2]) + var(q_coord(v[1])) * delta(v[0], v[2]);
      e.add(MultiIndex{1, 1}, c);
      return compare(e, br(sym_mul(qh(dn, v[0]), qh(dn, v[1])), ph(dn, v[2])));
    });
    record_all(r, "{qh(i,1)^a, qh(j,1)^b} = 0", n, 2, [&](const std::vector<int>& v) {
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          auto out = compare(Observable(dn), br(sym_pow(qh(dn, v[0]), a), sym_pow(qh(dn, v[1]), b)));
          if (!out.pass) return out;
        }
      }
      return Outcome{true, "", ""};
    });
    record_all(r, "{pih(i)^a, pih(j)^b} = 0", n, 2, [&](const std::vector<int>& v) {
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          auto out = compare(Observable(dn), br(sym_pow(ph(dn, v[0]), a), sym_pow(ph(dn, v[1]), b)));
          if (!out.pass) return out;
        }
      }
      return Outcome{true, "", ""};
    });
    record_all(r, "{qh(i,1)^2, pih(j)^2} = 4 delta qh(i,1)*pih(j)*rh(1)", n, 2, [&](const std::vector<int>& v) {
      Observable e = scaled(sym_mul(sym_mul(qh(dn, v[0]), ph(dn, v[1])), r1(dn)), 4 * kd(v[0], v[1]));
      return compare(e, br(sym_pow(qh(dn, v[0]), 2), sym_pow(ph(dn, v[1]), 2)));
    });
    record_all(r, "{qh(i,1)^3, pih(j)^3} = 9 delta qh(i,1)^2*pih(j)^2*rh(1)", n, 2, [&](const std::vector<int>& v) {
      Observable e = scaled(sym_mul(sym_mul(sym_pow(qh(dn, v[0]), 2), sym_pow(ph(dn, v[1]), 2)), r1(dn)),
                            9 * kd(v[0], v[1]));
      return compare(e, br(sym_pow(qh(dn, v[0]), 3), sym_pow(ph(dn, v[1]), 3)));
    });
    record_all(r, "{qh(i,1)^2*pih(i), qh(i,1)*pih(i)^2} = 3 qh(i,1)^2*pih(i)^2*rh(1)", n, 1,
               [&](const std::vector<int>& v) {
                 int i = v[0];
                 Observable e = scaled(sym_mul(sym_mul(sym_pow(qh(dn, i), 2), sym_pow(ph(dn, i), 2)), r1(dn)), 3);
                 return compare(e, br(sym_mul(sym_pow(qh(dn, i), 2), ph(dn, i)), sym_mul(qh(dn, i), sym_pow(ph(dn, i), 2))));
               });
  });
}

/// Hand-written fields for the nine tabulated observables, indexed by (i, j, k).
struct TableRow {
  std::string name;
  std::function<Observable(Dimension, int, int, int)> observable;
  std::function<HamVF(Dimension, int, int, int)> field;
};

inline std::vector<TableRow> table1_rows() {
  using detail::qh;
  using detail::ph;
  using detail::r1;
  auto dpi = [](int i) { return pi_coord(1, i); };
  auto c = [](Rational x) { return PolyFn(Scalar(x)); };
  auto q = [](int i) { return var(q_coord(i)); };
  auto vf = [](std::initializer_list<std::pair<Coord, PolyFn>> terms) {
    VectorField x;
    for (const auto& [coord, v] : terms) x.add(coord, v);
    return x;
  };
  auto single = [](Dimension n, MultiIndex key, const VectorField& x) {
    HamVF out(n);
    out.add(key, x);
    return out;
  };
  std::vector<TableRow> rows;
  rows.push_back({"qh(i,1)", [](Dimension n, int i, int, int) { return qh(n, i); },
                  [=](Dimension n, int i, int, int) { return single(n, {}, vf({{dpi(i), c(-1)}})); }});
  rows.push_back({"qh(i,1)*rh(1)", [](Dimension n, int i, int, int) { return sym_mul(qh(n, i), r1(n)); },
                  [=](Dimension n, int i, int, int) { return single(n, {1}, vf({{dpi(i), c(Rational(-1, 2))}})); }});
  rows.push_back({"pih(k)", [](Dimension n, int, int, int k) { return ph(n, k); },
                  [=](Dimension n, int, int, int k) { return single(n, {}, vf({{q_coord(k), c(1)}})); }});
  rows.push_back({"pih(k)*rh(1)", [](Dimension n, int, int, int k) { return sym_mul(ph(n, k), r1(n)); },
                  [=](Dimension n, int, int, int k) { return single(n, {1}, vf({{q_coord(k), c(Rational(1, 2))}})); }});
  rows.push_back({"qh(i,1)*qh(j,1)", [](Dimension n, int i, int j, int) { return sym_mul(qh(n, i), qh(n, j)); },
                  [=](Dimension n, int i, int j, int) {
                    VectorField x;
                    x.add(dpi(j), c(Rational(-1, 2)) * q(i));
                    x.add(dpi(i), c(Rational(-1, 2)) * q(j));
                    return single(n, {1}, x);
                  }});
  rows.push_back({"pih(j)*pih(k)", [](Dimension n, int, int j, int k) { return sym_mul(ph(n, j), ph(n, k)); },
                  [=](Dimension n, int, int j, int k) {
                    HamVF out(n);
                    for (int a = 1; a <= n.value(); ++a) {
                      VectorField x;
                      x.add(q_coord(k), c(Rational(1, 2)) * var(pi_coord(a, j)));
                      x.add(q_coord(j), c(Rational(1, 2)) * var(pi_coord(a, k)));
                      out.add(MultiIndex{a}, x);
                    }
                    return out;
                  }});
  rows.push_back({"qh(i,1)*pih(k)", [](Dimension n, int i, int, int k) { return sym_mul(qh(n, i), ph(n, k)); },
                  [=](Dimension n, int i, int, int k) {
                    HamVF out(n);
                    for (int a = 1; a <= n.value(); ++a) {
                      VectorField x;
                      if (a == 1) x.add(q_coord(k), c(Rational(1, 2)) * q(i));
                      x.add(dpi(i), c(Rational(-1, 2)) * var(pi_coord(a, k)));
                      out.add(MultiIndex{a}, x);
                    }
                    return out;
                  }});
  rows.push_back({"qh(i,1)*qh(j,1)*qh(k,1)",
                  [](Dimension n, int i, int j, int k) { return sym_mul(sym_mul(qh(n, i), qh(n, j)), qh(n, k)); },
                  [=](Dimension n, int i, int j, int k) {
                    VectorField x;
                    Rational s(-1, 6);
                    x.add(dpi(j), c(s) * q(i) * q(k));
                    x.add(dpi(i), c(s) * q(j) * q(k));
                    x.add(dpi(k), c(s) * q(i) * q(j));
                    return single(n, {1, 1}, x);
                  }});
  rows.push_back({"qh(i,1)*qh(j,1)*pih(k)",
                  [](Dimension n, int i, int j, int k) { return sym_mul(sym_mul(qh(n, i), qh(n, j)), ph(n, k)); },
                  [=](Dimension n, int i, int j, int k) {
                    HamVF out(n);
                    Rational s(1, 6);
                    for (const auto& key : all_multi_indices(n, 2)) {
                      int a = key[0];
                      int b = key[1];
                      // delta_1^(a pi_k^b), normalized
                      PolyFn mixed = c(Rational(1, 2)) * (delta(a, 1) * var(pi_coord(b, k)) + delta(b, 1) * var(pi_coord(a, k)));
                      VectorField x;
                      x.add(q_coord(k), c(s) * q(i) * q(j) * delta(a, 1) * delta(b, 1));
                      x.add(dpi(i), c(-s) * mixed * q(j));
                      x.add(dpi(j), c(-s) * mixed * q(i));
                      out.add(key, x);
                    }
                    return out;
                  }});
  return rows;
}

/// Each tabulated field equals ham_vf exactly; with gauge injection the
/// difference must be pure gauge.
inline VerificationReport suite_table1(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("table1", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (const auto& row : table1_rows()) {
      detail::record_all(r, row.name, o.n.value(), 3, [&](const std::vector<int>& v) {
        Observable f = row.observable(o.n, v[0], v[1], v[2]);
        HamVF expected = row.field(o.n, v[0], v[1], v[2]);
        HamVF actual = ctx.field(f);
        bool ok = o.gauge ? is_pure_gauge(actual - expected) : actual == expected;
        return detail::Outcome{ok, ok ? "" : expected.to_string(), ok ? "" : actual.to_string()};
      });
    }
  });
}

/// All monomials of P(b_L) of degree 1..max_degree over indices 1..n.
inline std::vector<GenMonomial> bl_monomials(Dimension n, int max_degree) {
  std::vector<GenMonomial> out;
  for (int deg = 1; deg <= max_degree; ++deg) {
    for (int l = 0; l <= deg; ++l) {
      for (int a = 0; a <= l; ++a) {
        for (const auto& pos : all_multi_indices(n, a)) {
          for (const auto& mom : all_multi_indices(n, deg - l)) {
            for (const auto& slots : all_multi_indices(n, l)) out.push_back({pos, mom, slots});
          }
        }
      }
    }
  }
  return out;
}

/// Structure equation for every monomial of degree <= 3 (exhaustive for
/// n <= 2, 200 random monomials otherwise).
inline VerificationReport suite_structure_eq(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("structure-eq", o.n.value(), o.seed, [&](VerificationReport& r) {
    std::vector<GenMonomial> monos;
    if (o.n.value() <= 2) {
      monos = bl_monomials(o.n, 3);
    } else {
      for (int t = 0; t < 200; ++t) monos.push_back(ctx.random_monomial(o.n, 3, false));
    }
    for (const auto& m : monos) {
      Observable f = to_observable(m, o.n);
      r.record(format(m), structure_eq_check(f, ctx.field(f)), "df = -(p!/p) Sym X _| dtheta", "mismatch");
    }
  });
}

inline VerificationReport suite_jacobi(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("jacobi", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (int t = 0; t < 200; ++t) {
      GenMonomial a = ctx.random_monomial(o.n, 3, false);
      GenMonomial b = ctx.random_monomial(o.n, 3, false);
      GenMonomial c = ctx.random_monomial(o.n, 3, false);
      Observable f = to_observable(a, o.n), g = to_observable(b, o.n), h = to_observable(c, o.n);
      Observable res = ctx.bracket(f, ctx.bracket(g, h)) + ctx.bracket(g, ctx.bracket(h, f)) + ctx.bracket(h, ctx.bracket(f, g));
      r.record(format(a) + ", " + format(b) + ", " + format(c), res.is_zero(), "0", res.debug_string());
    }
  });
}

inline VerificationReport suite_thm1(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("thm1", o.n.value(), o.seed, [&](VerificationReport& r) {
    std::vector<std::pair<int, int>> grades = {{1, 1}, {2, 1}, {2, 2}, {3, 1}};
    for (int t = 0; t < 100; ++t) {
      auto [p, q] = t < static_cast<int>(grades.size()) * 5 ? grades[t % grades.size()]
                                                               : std::pair<int, int>{ctx.pick(1, 3), ctx.pick(1, 3)};
      Observable f = ctx.random_homogeneous(o.n, p, false);
      Observable g = ctx.random_homogeneous(o.n, q, false);
      HamVF scaled = PolyFn(Scalar(Rational(-1) / theorem1_constant(p, q))) * vf_bracket(ctx.field(f), ctx.field(g));
      bool ok = structure_eq_check(ctx.bracket(f, g), scaled, soldering_dtheta(o.n), p + q - 1);
      r.record("(" + std::to_string(p) + "," + std::to_string(q) + ") " + detail::show(f) + ", " + detail::show(g), ok,
               "-(1/C)[X_f, X_g] is a field of {f, g}", "structure equation fails");
    }
  });
}

inline VerificationReport suite_lemma1(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("lemma1", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (const auto& row : table1_rows()) {
      detail::record_all(r, row.name, o.n.value(), 3, [&](const std::vector<int>& v) {
        bool ok = lie_preserves_form(ctx.field(row.observable(o.n, v[0], v[1], v[2])));
        return detail::Outcome{ok, "L_X dtheta symmetrized = 0", ok ? "" : "nonzero"};
      });
    }
  });
}

/// The gauge-fixed field of random P(b_1) monomials is tangent to B_1 and
/// differs from the canonical field by a pure gauge term.
inline VerificationReport suite_lemma2(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("lemma2-tangency", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (int t = 0; t < 100; ++t) {
      GenMonomial m = ctx.random_monomial(o.n, 3, true);
      Observable f = to_observable(m, o.n);
      HamVF fixed = gauge_fix_for_B1(f);
      if (o.gauge) fixed = add_gauge(fixed, ctx.random_gauge(o.n, m.rank() - 1));
      bool tangent = tangency_check(gauge_fix_for_B1(f));
      bool same_class = is_pure_gauge(fixed - ham_vf(f));
      r.record(format(m), tangent && same_class, "tangent and gauge equivalent",
               std::string(tangent ? "" : "not tangent ") + (same_class ? "" : "not gauge equivalent"));
    }
  });
}

inline VerificationReport suite_pullback(const SuiteOptions& o) {
  return timed_report("pullback-eq12", o.n.value(), o.seed, [&](VerificationReport& r) {
    VectorTwoForm pulled = pullback_two_form(o.n);
    for (int i = 1; i <= o.n.value(); ++i) {
      TwoForm expected;
      if (i == 1) {
        for (int j = 1; j <= o.n.value(); ++j) expected += wedge(OneForm::basis(P_coord(j)), OneForm::basis(Q_coord(j)));
      }
      auto it = pulled.find(i);
      TwoForm actual = it == pulled.end() ? TwoForm{} : it->second;
      r.record("component " + std::to_string(i), actual == expected, expected.to_string(), actual.to_string());
    }
  });
}

inline VerificationReport suite_reduction(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("reduction-homomorphism", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (int t = 0; t < 100; ++t) {
      GenMonomial a = ctx.random_monomial(o.n, 3, true);
      GenMonomial b = ctx.random_monomial(o.n, 3, true);
      Observable f = to_observable(a, o.n), g = to_observable(b, o.n);
      Observable lhs = reduce_observable(ctx.bracket(f, g));
      Observable rhs = reduced_bracket(reduce_observable(f), reduce_observable(g));
      r.record(format(a) + ", " + format(b), lhs == rhs, rhs.debug_string(), lhs.debug_string());
    }
  });
}

namespace detail {

inline FramePoint random_frame(SuiteContext& ctx, Dimension n) {
  while (true) {
    std::vector<Rational> q;
    Matrix pi(n.value(), n.value());
    for (int i = 0; i < n.value(); ++i) {
      q.push_back(ctx.small_rational());
      for (int j = 0; j < n.value(); ++j) pi(i, j) = ctx.pick(-3, 3);
    }
    if (pi.determinant() != 0) return FramePoint(q, pi);
  }
}

inline FramePoint random_slice_point(SuiteContext& ctx, Dimension n) {
  SubbundlePoint p;
  for (int i = 0; i < n.value(); ++i) p.q.push_back(ctx.small_rational());
  p.alpha = ctx.small_rational();
  for (int i = 1; i < n.value(); ++i) p.mu.push_back(ctx.small_rational());
  return frame_from_params(p);
}

}  // namespace detail

/// Transitivity, separation and completeness of b_L and reduced b_1, and the
/// Heisenberg relations of the b_L brackets.
inline VerificationReport suite_basic_sets(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("basic-sets", o.n.value(), o.seed, [&](VerificationReport& r) {
    Dimension n = o.n;
    BasicSet bl = make_bL(n);
    BasicSet b1r = make_b1_reduced(n);
    std::vector<FramePoint> frames, slice;
    std::vector<std::pair<FramePoint, FramePoint>> frame_pairs, slice_pairs;
    for (int t = 0; t < 10; ++t) {
      frames.push_back(detail::random_frame(ctx, n));
      slice.push_back(detail::random_slice_point(ctx, n));
    }
    for (int t = 0; t < 10; ++t) {
      FramePoint a = frames[t];
      FramePoint b = frames[(t + 1) % 10];
      frame_pairs.emplace_back(a, b);
      slice_pairs.emplace_back(slice[t], slice[(t + 1) % 10]);
    }
    r.merge(verify_transitive(bl, frames, false));
    r.merge(verify_transitive(b1r, slice, true));
    r.merge(verify_separating(bl, frame_pairs));
    r.merge(verify_separating(b1r, slice_pairs));
    r.merge(verify_complete(bl));
    r.merge(verify_complete(b1r));

    // {X, Y} for generators of b_L against the h(LR^n) bracket with r-hat -> -r-hat.
    std::vector<HLElement> basis;
    for (int i = 1; i <= n.value(); ++i) {
      for (int j = 1; j <= n.value(); ++j) basis.push_back(hl_qhat(n, i, j));
    }
    for (int k = 1; k <= n.value(); ++k) basis.push_back(hl_pihat(n, k));
    for (int k = 1; k <= n.value(); ++k) basis.push_back(hl_rhat(n, k));
    bool iso = true;
    std::string where;
    for (const auto& x : basis) {
      for (const auto& y : basis) {
        HLElement h = hl_bracket(x, y);
        HLElement flipped(n);
        for (int k = 0; k < n.value(); ++k) flipped.center[k] = -h.center[k];
        Observable poisson = ctx.bracket(momentum_of(x), momentum_of(y));
        if (!(poisson == momentum_of(flipped))) {
          iso = false;
          where = detail::show(momentum_of(x)) + ", " + detail::show(momentum_of(y));
        }
      }
    }
    r.record("b_L brackets match h(LR^n) under r-hat -> -r-hat", iso, "isomorphic", where);
    bool heis = true;
    for (int i = 1; i <= n.value(); ++i) {
      for (int k = 1; k <= n.value(); ++k) {
        heis = heis && ctx.bracket(detail::qh(n, i), detail::ph(n, k)) == detail::scaled(detail::r1(n), detail::kd(i, k));
        heis = heis && ctx.bracket(detail::qh(n, i), detail::qh(n, k)).is_zero();
        heis = heis && ctx.bracket(detail::ph(n, i), detail::ph(n, k)).is_zero();
      }
      heis = heis && ctx.bracket(detail::qh(n, i), detail::r1(n)).is_zero();
      heis = heis && ctx.bracket(detail::ph(n, i), detail::r1(n)).is_zero();
    }
    r.record("b_1 brackets are the Heisenberg relations of h(2n)", heis, "{qh(i,1), pih(k)} = delta rh(1), others 0",
             heis ? "" : "mismatch");
    bool mm = true;
    for (const auto& x : basis) mm = mm && momentum_map_check(x);
    r.record("momentum map dJ = -(xi _| dtheta)", mm);
  });
}

namespace detail {

inline DiracComparison dirac_with(SuiteContext& ctx, const QuantizationMap& map, const Observable& f, const Observable& g) {
  return {PolyFn(ihbar()) * quantize(map, ctx.bracket(f, g)), commutator(quantize(map, f), quantize(map, g))};
}

}  // namespace detail

/// i*hbar Q1({f, g}) = [Q1 f, Q1 g] for all pairs of P(b_1) monomials of degree <= 3.
inline VerificationReport suite_dirac_q1(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("dirac-q1", o.n.value(), o.seed, [&](VerificationReport& r) {
    QuantizationMap map = q1_map();
    auto monos = b1_monomials(o.n, 3);
    std::vector<Observable> obs;
    for (const auto& m : monos) obs.push_back(to_observable(m, o.n));
    for (std::size_t i = 0; i < obs.size(); ++i) {
      for (std::size_t j = 0; j < obs.size(); ++j) {
        auto cmp = detail::dirac_with(ctx, map, obs[i], obs[j]);
        r.record("{" + format(monos[i]) + ", " + format(monos[j]) + "}", cmp.holds(), cmp.rhs.to_string(), cmp.lhs.to_string());
      }
    }
  });
}

/// The monomials listed for Q2, at every index instantiation.
inline std::vector<GenMonomial> q2_generator_list(Dimension n) {
  std::vector<GenMonomial> out;
  MultiIndex one{1};
  MultiIndex two{1, 1};
  out.push_back({{}, {}, one});
  out.push_back({{}, {}, two});
  for (int i = 1; i <= n.value(); ++i) {
    out.push_back({MultiIndex{i}, {}, one});
    out.push_back({{}, MultiIndex{i}, {}});
    out.push_back({{}, MultiIndex{i}, one});
    out.push_back({MultiIndex{i}, {}, two});
    for (int j = 1; j <= n.value(); ++j) {
      if (i <= j) out.push_back({MultiIndex{i, j}, {}, two});
      if (i <= j) out.push_back({{}, MultiIndex{i, j}, {}});
      out.push_back({MultiIndex{i}, MultiIndex{j}, one});
    }
  }
  return out;
}

inline VerificationReport suite_dirac_q2(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("dirac-q2", o.n.value(), o.seed, [&](VerificationReport& r) {
    QuantizationMap map = q2_map();
    auto gens = q2_generator_list(o.n);
    auto check = [&](const GenMonomial& a, const GenMonomial& b) {
      auto cmp = detail::dirac_with(ctx, map, to_observable(a, o.n), to_observable(b, o.n));
      r.record("{" + format(a) + ", " + format(b) + "}", cmp.holds(), cmp.rhs.to_string(), cmp.lhs.to_string());
    };
    for (const auto& a : gens) {
      for (const auto& b : gens) check(a, b);
    }
    for (int t = 0; t < 100; ++t) {
      GenMonomial a = ctx.random_monomial(o.n, 3, true);
      GenMonomial b = ctx.random_monomial(o.n, 3, true);
      check(a, b);
    }
  });
}

/// Golden value of the symplectic witness, frozen from an independent
/// normal-ordering computation: (1/3)(i hbar)^2 times the identity.
inline DiffOperator groenewold_golden() { return DiffOperator(PolyFn(Scalar(Rational(1, 3)) * ihbar() * ihbar())); }

inline VerificationReport suite_groenewold(const SuiteOptions& o) {
  SuiteContext ctx(o);
  return timed_report("groenewold", o.n.value(), o.seed, [&](VerificationReport& r) {
    DiffOperator w = groenewold_witness();
    r.record("witness is nonzero", !w.is_zero(), "nonzero", w.to_string());
    r.record("witness has hbar-degree 2", hbar_degree(w) == 2, "2", std::to_string(hbar_degree(w)));
    r.record("witness matches golden value", w == groenewold_golden(), groenewold_golden().to_string(), w.to_string());

    Dimension n = o.n;
    QuantizationMap map = q1_map();
    Observable q = detail::qh(n, 1), p = detail::ph(n, 1);
    auto a = detail::dirac_with(ctx, map, sym_pow(q, 3), sym_pow(p, 3));
    auto b = detail::dirac_with(ctx, map, sym_mul(sym_pow(q, 2), p), sym_mul(q, sym_pow(p, 2)));
    r.record("Q1 on {qh^3, pih^3}: both sides zero", a.lhs.is_zero() && a.rhs.is_zero(), "0 = 0",
             a.lhs.to_string() + " = " + a.rhs.to_string());
    r.record("Q1 on {qh^2 pih, qh pih^2}: both sides zero", b.lhs.is_zero() && b.rhs.is_zero(), "0 = 0",
             b.lhs.to_string() + " = " + b.rhs.to_string());
    Observable x = ctx.bracket(sym_pow(q, 3), sym_pow(p, 3)) * PolyFn(Scalar(Rational(1, 9)));
    Observable y = ctx.bracket(sym_mul(sym_pow(q, 2), p), sym_mul(q, sym_pow(p, 2))) * PolyFn(Scalar(Rational(1, 3)));
    DiffOperator diff = quantize(map, x) - quantize(map, y);
    r.record("both expressions of qh^2 pih^2 rh quantize consistently", diff.is_zero(), "0", diff.to_string());
  });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "eq13",         "eq14",         "table1",   "structure-eq", "jacobi",     "thm1",
      "lemma1",       "lemma2-tangency", "basic-sets", "pullback-eq12", "dirac-q1", "dirac-q2",
      "groenewold",   "reduction-homomorphism", "gauge-invariance"};
  return names;
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& o);

/// Every other suite run twice, without and with random gauge terms; both
/// runs must pass and agree case for case.
inline VerificationReport suite_gauge_invariance(const SuiteOptions& o) {
  return timed_report("gauge-invariance", o.n.value(), o.seed, [&](VerificationReport& r) {
    for (const auto& name : suite_names()) {
      if (name == "gauge-invariance") continue;
      SuiteOptions plain = o;
      plain.gauge = false;
      SuiteOptions gauged = o;
      gauged.gauge = true;
      VerificationReport a = run_suite(name, plain);
      VerificationReport b;
      std::string error;
      try {
        b = run_suite(name, gauged);
      } catch (const std::exception& e) {
        error = e.what();
      }
      bool same = error.empty() && a.cases == b.cases && a.passed == b.passed && a.failed == b.failed;
      for (std::size_t k = 0; same && k < a.failures.size(); ++k) same = a.failures[k].case_name == b.failures[k].case_name;
      r.record(name, same && a.ok(), std::to_string(a.cases) + "/" + std::to_string(a.cases),
               error.empty() ? std::to_string(b.passed) + "/" + std::to_string(b.cases) : error);
    }
  });
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& o) {
  static const std::map<std::string, VerificationReport (*)(const SuiteOptions&)> table = {
      {"eq13", suite_eq13},
      {"eq14", suite_eq14},
      {"table1", suite_table1},
      {"structure-eq", suite_structure_eq},
      {"jacobi", suite_jacobi},
      {"thm1", suite_thm1},
      {"lemma1", suite_lemma1},
      {"lemma2-tangency", suite_lemma2},
      {"basic-sets", suite_basic_sets},
      {"pullback-eq12", suite_pullback},
      {"dirac-q1", suite_dirac_q1},
      {"dirac-q2", suite_dirac_q2},
      {"groenewold", suite_groenewold},
      {"reduction-homomorphism", suite_reduction},
      {"gauge-invariance", suite_gauge_invariance},
  };
  auto it = table.find(name);
  if (it == table.end()) throw UnknownSuite("unknown suite: " + name);
  return it->second(o);
}

}  // namespace nsq
