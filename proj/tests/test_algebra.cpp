#include <gtest/gtest.h>

#include <random>

#include "nsq/generator_form.hpp"
#include "nsq/suites.hpp"

using namespace nsq;

namespace {

const Dimension two{2};

PolyFn q(int i) { return var(q_coord(i)); }
PolyFn pi(int a, int b) { return var(pi_coord(a, b)); }
PolyFn c(Rational r) { return PolyFn(Scalar(r)); }

FramePoint identity_at(std::vector<Rational> qv) { return FramePoint(qv, Matrix::identity(qv.size())); }

}  // namespace

TEST(MultiIndexTest, CanonicalizeSorts) {
  Dimension n(3);
  EXPECT_EQ(canonicalize({3, 1, 2}, n), (MultiIndex{1, 2, 3}));
  EXPECT_EQ(canonicalize({}, n), MultiIndex{});
  EXPECT_EQ(canonicalize({2, 2, 1}, n), (MultiIndex{1, 2, 2}));
  MultiIndex once = canonicalize({2, 3, 1}, n);
  EXPECT_EQ(canonicalize(std::vector<int>(once.begin(), once.end()), n), once);
}

TEST(MultiIndexTest, OutOfRangeIndexThrows) {
  EXPECT_THROW(canonicalize({1, 3}, two), std::out_of_range);
  EXPECT_THROW(canonicalize({0}, two), std::out_of_range);
  EXPECT_THROW(Dimension(0), std::invalid_argument);
}

TEST(MultiIndexTest, EnumeratesSymmetricKeys) {
  EXPECT_EQ(all_multi_indices(two, 2).size(), 3u);
  EXPECT_EQ(all_multi_indices(Dimension(3), 3).size(), 10u);
  EXPECT_EQ(all_multi_indices(two, 0).size(), 1u);
}

TEST(PolyFnTest, RingLaws) {
  std::mt19937_64 rng(11);
  auto random_poly = [&] {
    PolyFn p;
    for (int t = 0; t < 3; ++t) {
      PolyFn m(Scalar(Rational(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3))));
      if (rng() % 2) m = m * q(1 + static_cast<int>(rng() % 2));
      if (rng() % 2) m = m * pi(1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2));
      p += m;
    }
    return p;
  };
  for (int t = 0; t < 50; ++t) {
    PolyFn a = random_poly(), b = random_poly(), d = random_poly();
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * PolyFn(1), a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyFnTest, SymbolsStayFormal) {
  Scalar s = ihbar() * amplitude(1) + Scalar(Rational(1, 2));
  EXPECT_EQ(format(s * Scalar(2)), format(Scalar(2) * ihbar() * amplitude(1) + Scalar(1)));
  EXPECT_FALSE(s.is_constant());
  EXPECT_EQ(hbar_degree(ihbar() * ihbar()), 2u);
}

TEST(ObservableTest, BasicObservables) {
  Observable qh12 = make_qhat(two, 1, 2);
  EXPECT_TRUE(qh12.component(MultiIndex{1}).is_zero());
  EXPECT_EQ(qh12.component(MultiIndex{2}), q(1));
  Observable ph1 = make_pihat(two, 1);
  EXPECT_EQ(ph1.component(MultiIndex{1}), pi(1, 1));
  EXPECT_EQ(ph1.component(MultiIndex{2}), pi(2, 1));
  Observable r2 = make_rhat(two, 2);
  EXPECT_TRUE(r2.component(MultiIndex{1}).is_zero());
  EXPECT_EQ(r2.component(MultiIndex{2}), PolyFn(1));
  EXPECT_THROW(make_qhat(two, 3, 1), std::out_of_range);
}

TEST(ObservableTest, SymMulExample) {
  Observable f = sym_mul(make_qhat(two, 1, 1), make_pihat(two, 1));
  EXPECT_EQ(f.homogeneous_rank(), 2);
  EXPECT_EQ(f.component(MultiIndex{1, 1}), q(1) * pi(1, 1));
  EXPECT_EQ(f.component(MultiIndex{1, 2}), c(Rational(1, 2)) * q(1) * pi(2, 1));
  EXPECT_TRUE(f.component(MultiIndex{2, 2}).is_zero());
  EXPECT_TRUE(sym_mul(f, Observable(two)).is_zero());
  Observable rr = sym_mul(make_rhat(two, 1), make_rhat(two, 1));
  EXPECT_EQ(rr.components().size(), 1u);
  EXPECT_EQ(rr.component(MultiIndex{1, 1}), PolyFn(1));
}

TEST(ObservableTest, SymMulCommutativeAssociative) {
  for (int n : {2, 3}) {
    SuiteOptions o;
    o.n = Dimension(n);
    SuiteContext ctx(o);
    for (int t = 0; t < 30; ++t) {
      Observable a = to_observable(ctx.random_monomial(o.n, 3, false), o.n);
      Observable b = to_observable(ctx.random_monomial(o.n, 3, false), o.n);
      Observable d = to_observable(ctx.random_monomial(o.n, 3, false), o.n);
      EXPECT_EQ(sym_mul(a, b), sym_mul(b, a));
      EXPECT_EQ(sym_mul(sym_mul(a, b), d), sym_mul(a, sym_mul(b, d)));
    }
  }
}

TEST(ObservableTest, EvaluateExamples) {
  auto v = evaluate(make_qhat(two, 1, 1), identity_at({2, 0}));
  EXPECT_EQ(v.at(MultiIndex{1}), Scalar(2));
  EXPECT_EQ(v.count(MultiIndex{2}), 0u);
  auto w = evaluate(make_pihat(two, 1), identity_at({0, 0}));
  EXPECT_EQ(w.at(MultiIndex{1}), Scalar(1));
  EXPECT_EQ(w.count(MultiIndex{2}), 0u);
  auto s = evaluate(sym_mul(make_qhat(two, 1, 1), make_pihat(two, 1)), identity_at({1, 0}));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.at(MultiIndex{1, 1}), Scalar(1));
}

TEST(ObservableTest, SingularFrameRejected) {
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  EXPECT_THROW(FramePoint({0, 0}, m), std::domain_error);
}

TEST(ObservableTest, EvaluateIsHomomorphism) {
  SuiteOptions o;
  SuiteContext ctx(o);
  auto constant_observable = [](const std::map<MultiIndex, Scalar>& values) {
    Observable out(two);
    for (const auto& [k, s] : values) out.add(k, PolyFn(s));
    return out;
  };
  Matrix pi_m(2, 2);
  pi_m(0, 0) = 2;
  pi_m(0, 1) = Rational(1, 3);
  pi_m(1, 0) = -1;
  pi_m(1, 1) = 5;
  FramePoint u({Rational(3, 2), -2}, pi_m);
  for (int t = 0; t < 30; ++t) {
    Observable f = to_observable(ctx.random_monomial(two, 2, false), two);
    Observable g = to_observable(ctx.random_monomial(two, 2, false), two);
    EXPECT_EQ(constant_observable(evaluate(sym_mul(f, g), u)),
              sym_mul(constant_observable(evaluate(f, u)), constant_observable(evaluate(g, u))));
  }
}

TEST(GeneratorFormTest, DecomposeRoundTrip) {
  for (const auto& m : bl_monomials(two, 3)) {
    Observable f = to_observable(m, two);
    GenPoly p = decompose(f);
    ASSERT_EQ(p.size(), 1u) << format(m);
    EXPECT_EQ(p.begin()->first, m);
    EXPECT_EQ(to_observable(p, two), f);
  }
}

TEST(GeneratorFormTest, RejectsNonGeneratorObservable) {
  Observable f(two);
  f.add(MultiIndex{1}, q(1) * q(1));
  EXPECT_THROW(decompose(f), NotInGeneratorAlgebra);
  Observable g(two);
  g.add(MultiIndex{2}, pi(1, 1));
  EXPECT_THROW(decompose(g), NotInGeneratorAlgebra);
}

TEST(GeneratorFormTest, Formatting) {
  Observable f = sym_mul(make_qhat(two, 1, 1), make_pihat(two, 2));
  EXPECT_EQ(format(decompose(f)), "qh(1,1)*pih(2)");
  EXPECT_EQ(format(decompose(f * c(Rational(-1, 2)))), "-1/2 qh(1,1)*pih(2)");
  EXPECT_EQ(format(GenPoly{}), "0");
}
