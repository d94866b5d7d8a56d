#include <gtest/gtest.h>

#include "nsq/suites.hpp"

using namespace nsq;

namespace {

const Dimension two{2};

PolyFn q(int i) { return var(q_coord(i)); }
PolyFn pi(int a, int b) { return var(pi_coord(a, b)); }
PolyFn c(Rational r) { return PolyFn(Scalar(r)); }

HamVF single(Dimension n, const MultiIndex& k, const VectorField& x) {
  HamVF out(n);
  out.add(k, x);
  return out;
}

VectorField along(const Coord& coord, const PolyFn& v) {
  VectorField x;
  x.add(coord, v);
  return x;
}

// Generator fields and the product rule
// X^I = w sum_m Sym(prod_{l != m} u_l)^I X_{u_m}, written independently of ham_vf.
// Table 1 row 8 fixes w = 1/r!.
struct Factor {
  Observable value;
  VectorField field;
};

std::vector<Factor> factors_of(const GenMonomial& m, Dimension n) {
  std::vector<Factor> out;
  std::size_t k = 0;
  for (int i : m.positions) {
    int slot = m.slots[k++];
    out.push_back({make_qhat(n, i, slot), along(pi_coord(slot, i), PolyFn(-1))});
  }
  for (int j : m.momenta) out.push_back({make_pihat(n, j), along(q_coord(j), PolyFn(1))});
  for (; k < m.slots.rank(); ++k) out.push_back({make_rhat(n, m.slots[k]), VectorField{}});
  return out;
}

HamVF factor_rule(const GenMonomial& m, Dimension n, bool table_weight = true) {
  auto fs = factors_of(m, n);
  int r = static_cast<int>(fs.size());
  Rational w(1, r);
  if (table_weight)
    for (int k = 2; k < r; ++k) w /= k;
  HamVF out(n);
  for (int a = 0; a < r; ++a) {
    if (r == 1) {
      out.add({}, fs[a].field);
      continue;
    }
    Observable rest(n);
    bool first = true;
    for (int b = 0; b < r; ++b) {
      if (b == a) continue;
      rest = first ? fs[b].value : sym_mul(rest, fs[b].value);
      first = false;
    }
    for (const auto& [key, v] : rest.components()) out.add(key, c(w) * v * fs[a].field);
  }
  return out;
}

}  // namespace

TEST(SolderingTest, Components) {
  auto one = soldering_dtheta(Dimension(1));
  EXPECT_EQ(one.at(1), wedge(OneForm::basis(pi_coord(1, 1)), OneForm::basis(q_coord(1))));
  auto w = soldering_dtheta(two);
  TwoForm e1 = wedge(OneForm::basis(pi_coord(1, 1)), OneForm::basis(q_coord(1))) +
               wedge(OneForm::basis(pi_coord(1, 2)), OneForm::basis(q_coord(2)));
  TwoForm e2 = wedge(OneForm::basis(pi_coord(2, 1)), OneForm::basis(q_coord(1))) +
               wedge(OneForm::basis(pi_coord(2, 2)), OneForm::basis(q_coord(2)));
  EXPECT_EQ(w.at(1), e1);
  EXPECT_EQ(w.at(2), e2);
}

TEST(FormsTest, ExteriorDerivativeSquaresToZero) {
  PolyFn f = q(1) * q(1) * pi(2, 1) + c(3) * pi(1, 2) * q(2);
  EXPECT_TRUE(d(d(f)).is_zero());
  EXPECT_EQ(d(q(1)), OneForm::basis(q_coord(1)));
}

TEST(HamVFTest, TableExamples) {
  for (int j = 1; j <= 2; ++j) {
    for (int k = 1; k <= 2; ++k) {
      HamVF expected(two);
      for (int a = 1; a <= 2; ++a) {
        VectorField x;
        x.add(q_coord(k), c(Rational(1, 2)) * pi(a, j));
        x.add(q_coord(j), c(Rational(1, 2)) * pi(a, k));
        expected.add(MultiIndex{a}, x);
      }
      EXPECT_EQ(ham_vf(sym_mul(make_pihat(two, j), make_pihat(two, k))), expected);
    }
  }
  for (int i = 1; i <= 2; ++i) {
    EXPECT_EQ(ham_vf(sym_mul(make_qhat(two, i, 1), make_rhat(two, 1))),
              single(two, {1}, along(pi_coord(1, i), c(Rational(-1, 2)))));
  }
  EXPECT_TRUE(ham_vf(make_rhat(two, 2)).is_zero());
}

TEST(HamVFTest, GeneratorFieldsRowNine) {
  Dimension n(3);
  Observable f = sym_mul(sym_mul(make_qhat(n, 1, 1), make_qhat(n, 2, 1)), make_pihat(n, 3));
  HamVF x = ham_vf(f);
  // component (1,1): (1/6) q1 q2 d/dq3 - (1/6) pi^1_3 (q2 d/dpi^1_1 + q1 d/dpi^1_2)
  VectorField x11;
  x11.add(q_coord(3), c(Rational(1, 6)) * q(1) * q(2));
  x11.add(pi_coord(1, 1), c(Rational(-1, 6)) * pi(1, 3) * q(2));
  x11.add(pi_coord(1, 2), c(Rational(-1, 6)) * pi(1, 3) * q(1));
  EXPECT_EQ(x.component(MultiIndex{1, 1}), x11);
  // component (1,2): -(1/12) pi^2_3 (q2 d/dpi^1_1 + q1 d/dpi^1_2)
  VectorField x12;
  x12.add(pi_coord(1, 1), c(Rational(-1, 12)) * pi(2, 3) * q(2));
  x12.add(pi_coord(1, 2), c(Rational(-1, 12)) * pi(2, 3) * q(1));
  EXPECT_EQ(x.component(MultiIndex{1, 2}), x12);
  EXPECT_TRUE(x.component(MultiIndex{2, 2}).is_zero());
}

TEST(HamVFTest, AgreesWithFactorRule) {
  for (const auto& m : bl_monomials(two, 3)) {
    HamVF oracle = factor_rule(m, two);
    HamVF actual = ham_vf(to_observable(m, two));
    if (m.in_b1()) {
      EXPECT_EQ(actual, oracle) << format(m);
    } else {
      EXPECT_TRUE(is_pure_gauge(actual - oracle)) << format(m);
    }
  }
}

TEST(HamVFTest, OneOverRWeightFailsAtRankThree) {
  // 1/r and 1/r! agree up to rank 2
  Observable two_pi = sym_mul(make_pihat(two, 1), make_pihat(two, 2));
  EXPECT_TRUE(structure_eq_check(two_pi, factor_rule(decompose(two_pi).begin()->first, two, false)));
  Observable three_pi = sym_mul(two_pi, make_pihat(two, 1));
  GenMonomial m = decompose(three_pi).begin()->first;
  EXPECT_FALSE(structure_eq_check(three_pi, factor_rule(m, two, false)));
  EXPECT_TRUE(structure_eq_check(three_pi, factor_rule(m, two)));
}

TEST(HamVFTest, RejectsObservableOutsideGeneratorAlgebra) {
  Observable f(two);
  f.add(MultiIndex{1}, q(1) * q(2));
  EXPECT_THROW(ham_vf(f), NotInGeneratorAlgebra);
}

TEST(StructureEquationTest, Examples) {
  for (int k = 1; k <= 2; ++k) EXPECT_TRUE(structure_eq_check(make_pihat(two, k), single(two, {}, along(q_coord(k), PolyFn(1)))));
  EXPECT_FALSE(structure_eq_check(make_qhat(two, 1, 1), single(two, {}, along(pi_coord(1, 1), PolyFn(1)))));
  EXPECT_TRUE(structure_eq_check(make_qhat(two, 1, 1), single(two, {}, along(pi_coord(1, 1), PolyFn(-1)))));
  Observable row6 = sym_mul(make_pihat(two, 1), make_pihat(two, 2));
  HamVF x(two);
  for (int a = 1; a <= 2; ++a) {
    VectorField v;
    v.add(q_coord(2), c(Rational(1, 2)) * pi(a, 1));
    v.add(q_coord(1), c(Rational(1, 2)) * pi(a, 2));
    x.add(MultiIndex{a}, v);
  }
  EXPECT_TRUE(structure_eq_check(row6, x));
}

TEST(StructureEquationTest, RankMismatchThrows) {
  EXPECT_THROW(structure_eq_check(make_pihat(two, 1), single(two, {1}, along(q_coord(1), PolyFn(1)))),
               std::invalid_argument);
}

TEST(StructureEquationTest, AllLowDegreeMonomials) {
  for (const auto& m : bl_monomials(two, 3)) {
    Observable f = to_observable(m, two);
    EXPECT_TRUE(structure_eq_check(f, ham_vf(f))) << format(m);
  }
}

TEST(GaugeTest, ZeroGaugeIsIdentity) {
  HamVF x = ham_vf(sym_mul(make_pihat(two, 1), make_pihat(two, 2)));
  EXPECT_EQ(add_gauge(x, HamVF(two)), x);
}

TEST(GaugeTest, AntisymmetricTermKeepsStructureEquation) {
  Observable f = sym_mul(make_pihat(two, 1), make_pihat(two, 2));
  HamVF t(two);
  t.add(MultiIndex{1}, along(pi_coord(2, 1), q(1)));
  t.add(MultiIndex{2}, along(pi_coord(1, 1), PolyFn(-1) * q(1)));
  HamVF shifted = add_gauge(ham_vf(f), t);
  EXPECT_NE(shifted, ham_vf(f));
  EXPECT_TRUE(structure_eq_check(f, shifted));
  EXPECT_EQ(bracket_with(shifted, make_qhat(two, 1, 2)), bracket(f, make_qhat(two, 1, 2)));
}

TEST(GaugeTest, SymmetricTermRejected) {
  HamVF t(two);
  t.add(MultiIndex{1}, along(pi_coord(2, 1), PolyFn(1)));
  t.add(MultiIndex{2}, along(pi_coord(1, 1), PolyFn(1)));
  EXPECT_THROW(add_gauge(ham_vf(sym_mul(make_pihat(two, 1), make_pihat(two, 2))), t), GaugeError);
  HamVF horizontal = single(two, {1}, along(q_coord(1), PolyFn(1)));
  EXPECT_FALSE(is_pure_gauge(horizontal));
}

TEST(GaugeTest, RandomGaugeKeepsStructureEquation) {
  SuiteOptions o;
  o.gauge = true;
  SuiteContext ctx(o);
  int nontrivial = 0;
  for (int t = 0; t < 60; ++t) {
    GenMonomial m = ctx.random_monomial(two, 3, false);
    Observable f = to_observable(m, two);
    HamVF shifted = ctx.field(f);
    if (!(shifted == ham_vf(f))) ++nontrivial;
    EXPECT_TRUE(structure_eq_check(f, shifted)) << format(m);
  }
  EXPECT_GT(nontrivial, 20);
}

TEST(GaugeTest, UnprojectedVerticalTermIsDetected) {
  // W without its symmetric part removed must break the structure equation.
  Observable f = sym_mul(make_pihat(two, 1), make_pihat(two, 2));
  HamVF w = single(two, {1}, along(pi_coord(1, 2), q(2)));
  EXPECT_FALSE(structure_eq_check(f, ham_vf(f) + w));
}

TEST(VectorFieldBracketTest, Examples) {
  EXPECT_TRUE(vf_bracket(ham_vf(make_qhat(two, 1, 1)), ham_vf(make_pihat(two, 1))).is_zero());
  for (int l = 1; l <= 2; ++l) {
    EXPECT_TRUE(vf_bracket(ham_vf(sym_mul(make_pihat(two, 1), make_pihat(two, 2))), ham_vf(make_pihat(two, l))).is_zero());
  }
  Observable f = sym_mul(make_qhat(two, 1, 1), make_pihat(two, 2));
  Observable g = make_pihat(two, 1);
  HamVF y = vf_bracket(ham_vf(f), ham_vf(g));
  EXPECT_FALSE(y.is_zero());
  // C = 2!/(2! 1!) = 1
  EXPECT_TRUE(structure_eq_check(bracket(f, g), PolyFn(-1) * y, soldering_dtheta(two), 2));
}

TEST(LemmaOneTest, HamiltonianFieldsPreserveForm) {
  for (int k = 1; k <= 2; ++k) EXPECT_TRUE(lie_preserves_form(ham_vf(make_pihat(two, k))));
  EXPECT_TRUE(lie_preserves_form(ham_vf(sym_mul(make_qhat(two, 1, 1), make_qhat(two, 2, 1)))));
  for (const auto& m : bl_monomials(two, 3)) EXPECT_TRUE(lie_preserves_form(ham_vf(to_observable(m, two)))) << format(m);
}

TEST(LemmaOneTest, EulerFieldDoesNotPreserveForm) {
  Dimension one(1);
  EXPECT_FALSE(lie_preserves_form(single(one, {}, along(q_coord(1), q(1)))));
}
