#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>

#include "nsq/suites.hpp"

using namespace nsq;

namespace {

SymplecticPoly q(int i) { return sq(i); }
SymplecticPoly p(int k) { return sp(k); }
SymplecticPoly num(Rational r) { return PolyFn(Scalar(r)); }

// Functions of one variable with coefficients polynomial in h = i*hbar,
// keyed by (power of q, power of h).
using Wave = std::map<std::pair<int, int>, Rational>;

void add(Wave& w, std::pair<int, int> key, const Rational& c) {
  if ((w[key] += c) == 0) w.erase(key);
}

Wave act(char letter, const Wave& w) {
  Wave out;
  for (const auto& [key, c] : w) {
    auto [m, h] = key;
    if (letter == 'q') {
      add(out, {m + 1, h}, c);
    } else if (m > 0) {
      add(out, {m - 1, h + 1}, -c * m);  // -h d/dq
    }
  }
  return out;
}

// word "qqp" means q o q o p: the last letter acts first
Wave act_word(const std::string& word, Wave w) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = act(*it, w);
  return w;
}

Wave weyl(const std::vector<std::string>& words, const Wave& w) {
  Wave out;
  for (const auto& word : words) {
    for (const auto& [key, c] : act_word(word, w)) add(out, key, c / static_cast<int>(words.size()));
  }
  return out;
}

Wave combine(const Wave& a, const Rational& x, const Wave& b, const Rational& y) {
  Wave out;
  for (const auto& [k, c] : a) add(out, k, x * c);
  for (const auto& [k, c] : b) add(out, k, y * c);
  return out;
}

Wave lower_h(const Wave& w) {
  Wave out;
  for (const auto& [key, c] : w) {
    EXPECT_GE(key.second, 1);
    add(out, {key.first, key.second - 1}, c);
  }
  return out;
}

const std::vector<std::string> q3{"qqq"}, p3{"ppp"};
const std::vector<std::string> q2p{"qqp", "qpq", "pqq"}, qp2{"qpp", "pqp", "ppq"};

// (1/(9h)) [W(q^3), W(p^3)] - (1/(3h)) [W(q^2 p), W(q p^2)] applied to psi
Wave witness_by_hand(const Wave& psi) {
  Wave a = combine(weyl(q3, weyl(p3, psi)), 1, weyl(p3, weyl(q3, psi)), -1);
  Wave b = combine(weyl(q2p, weyl(qp2, psi)), 1, weyl(qp2, weyl(q2p, psi)), -1);
  return combine(lower_h(a), Rational(1, 9), lower_h(b), Rational(-1, 3));
}

Wave from_poly(const PolyFn& f) {
  Wave out;
  for (const auto& [m, c] : f.terms()) {
    int deg = 0;
    for (const auto& [v, e] : m.factors()) deg += static_cast<int>(e);
    for (const auto& [sm, r] : c.terms()) {
      int h = 0;
      for (const auto& [s, e] : sm.factors()) h += static_cast<int>(e);
      add(out, {deg, h}, r);
    }
  }
  return out;
}

Wave power(int m) { return {{{m, 0}, Rational(1)}}; }

// q^i -> qh(i,1), p_k -> pih(k), padded with rh(1) up to the given rank
Observable to_b1(const SymplecticPoly& f, int rank, Dimension n) {
  Observable out(n);
  for (const auto& [m, c] : f.terms()) {
    std::vector<Observable> factors;
    for (const auto& [v, e] : m.factors()) {
      for (unsigned k = 0; k < e; ++k) factors.push_back(v.kind == Coord::Kind::q ? make_qhat(n, v.upper, 1) : make_pihat(n, v.lower));
    }
    while (static_cast<int>(factors.size()) < rank) factors.push_back(make_rhat(n, 1));
    Observable term = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) term = sym_mul(term, factors[k]);
    out += term * PolyFn(c);
  }
  return out;
}

}  // namespace

TEST(ClassicalBracketTest, TableLines) {
  EXPECT_EQ(classical_bracket(q(1), p(1)), PolyFn(1));
  EXPECT_TRUE(classical_bracket(q(1), p(2)).is_zero());
  EXPECT_TRUE(classical_bracket(q(1).pow(2), q(2).pow(3)).is_zero());
  EXPECT_TRUE(classical_bracket(p(1).pow(3), p(2)).is_zero());
  EXPECT_EQ(classical_bracket(q(1).pow(2), p(1).pow(2)), num(4) * q(1) * p(1));
  EXPECT_EQ(classical_bracket(q(2).pow(3), p(2).pow(3)), num(9) * q(2).pow(2) * p(2).pow(2));
  EXPECT_EQ(classical_bracket(q(1).pow(2) * p(1), q(1) * p(1).pow(2)), num(3) * q(1).pow(2) * p(1).pow(2));
}

TEST(ClassicalBracketTest, MixedIndicesAwayFromCoincidence) {
  // {(q^i)^2 p_b, q^a (p_j)^2} with i = j = 1, a = b = 2
  SymplecticPoly v = classical_bracket(q(1).pow(2) * p(2), q(2) * p(1).pow(2));
  EXPECT_EQ(v, num(4) * q(1) * q(2) * p(2) * p(1) - q(1).pow(2) * p(1).pow(2));
}

TEST(ClassicalBracketTest, AntisymmetryAndJacobi) {
  std::mt19937_64 rng(5);
  auto random_poly = [&] {
    SymplecticPoly f;
    for (int t = 0; t < 2; ++t) {
      SymplecticPoly m = num(Rational(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 2)));
      int deg = 1 + static_cast<int>(rng() % 3);
      for (int e = 0; e < deg; ++e) m = m * (rng() % 2 ? q(1 + static_cast<int>(rng() % 2)) : p(1 + static_cast<int>(rng() % 2)));
      f += m;
    }
    return f;
  };
  for (int t = 0; t < 40; ++t) {
    SymplecticPoly f = random_poly(), g = random_poly(), h = random_poly();
    EXPECT_EQ(classical_bracket(f, g), PolyFn(-1) * classical_bracket(g, f));
    SymplecticPoly jac = classical_bracket(f, classical_bracket(g, h)) + classical_bracket(g, classical_bracket(h, f)) +
                         classical_bracket(h, classical_bracket(f, g));
    EXPECT_TRUE(jac.is_zero());
  }
}

TEST(WeylTest, Examples) {
  DiffOperator pm = DiffOperator::partial(q_coord(1), PolyFn(-ihbar()));
  EXPECT_EQ(weyl_quantize(q(1)), DiffOperator(var(q_coord(1))));
  EXPECT_EQ(weyl_quantize(p(1)), pm);
  DiffOperator qm(var(q_coord(1)));
  EXPECT_EQ(weyl_quantize(q(1) * p(1)), PolyFn(Scalar(Rational(1, 2))) * (op_compose(qm, pm) + op_compose(pm, qm)));
  EXPECT_THROW(weyl_quantize(var(pi_coord(1, 1))), std::invalid_argument);
}

TEST(WeylTest, AgreesWithHandOrderedWords) {
  for (int m = 0; m <= 5; ++m) {
    PolyFn psi = q(1).pow(m);
    EXPECT_EQ(from_poly(weyl_quantize(q(1).pow(2) * p(1)).apply(psi)), weyl(q2p, power(m)));
    EXPECT_EQ(from_poly(weyl_quantize(q(1) * p(1).pow(2)).apply(psi)), weyl(qp2, power(m)));
  }
}

TEST(GroenewoldTest, WitnessMatchesHandComputation) {
  DiffOperator w = groenewold_witness();
  EXPECT_FALSE(w.is_zero());
  EXPECT_EQ(hbar_degree(w), 2u);
  Wave third_h2{{{0, 2}, Rational(1, 3)}};
  for (int m = 0; m <= 6; ++m) {
    Wave by_hand = witness_by_hand(power(m));
    Wave expected;
    for (const auto& [k, c] : third_h2) add(expected, {k.first + m, k.second}, c);
    EXPECT_EQ(by_hand, expected) << "psi = q^" << m;
    EXPECT_EQ(from_poly(w.apply(q(1).pow(m))), by_hand) << "psi = q^" << m;
  }
  EXPECT_EQ(w, groenewold_golden());
}

TEST(GroenewoldTest, NSymplecticAnalogueHasNoObstruction) {
  Dimension one(1);
  Observable qh = make_qhat(one, 1, 1), ph = make_pihat(one, 1);
  auto a = dirac_compare(q1_map(), sym_pow(qh, 3), sym_pow(ph, 3));
  auto b = dirac_compare(q1_map(), sym_mul(sym_pow(qh, 2), ph), sym_mul(qh, sym_pow(ph, 2)));
  EXPECT_TRUE(a.lhs.is_zero() && a.rhs.is_zero());
  EXPECT_TRUE(b.lhs.is_zero() && b.rhs.is_zero());
  Observable x = bracket(sym_pow(qh, 3), sym_pow(ph, 3)) * PolyFn(Scalar(Rational(1, 9)));
  Observable y = bracket(sym_mul(sym_pow(qh, 2), ph), sym_mul(qh, sym_pow(ph, 2))) * PolyFn(Scalar(Rational(1, 3)));
  EXPECT_EQ(x, y);
}

TEST(CorrespondenceTest, BracketTablesMatchUpToRhFactors) {
  Dimension n(2);
  std::vector<std::pair<SymplecticPoly, SymplecticPoly>> lines{
      {q(1), p(1)},           {q(2), p(1)},           {q(1), p(1) * p(2)},     {q(1) * q(2), p(2)},
      {q(1).pow(2), q(2)},    {p(1).pow(2), p(2)},    {q(1).pow(2), p(1).pow(2)}, {q(2).pow(3), p(2).pow(3)},
      {q(1).pow(2) * p(1), q(1) * p(1).pow(2)}};
  auto degree = [](const SymplecticPoly& f) {
    int d = 0;
    for (const auto& [v, e] : f.terms().begin()->first.factors()) d += static_cast<int>(e);
    return d;
  };
  for (const auto& [f, g] : lines) {
    int rf = degree(f), rg = degree(g);
    Observable lhs = bracket(to_b1(f, rf, n), to_b1(g, rg, n));
    SymplecticPoly c = classical_bracket(f, g);
    Observable rhs = c.is_zero() ? Observable(n) : to_b1(c, rf + rg - 1, n);
    EXPECT_EQ(lhs, rhs) << format(f) << " , " << format(g);
  }
  EXPECT_EQ(to_b1(q(1), 1, n), make_qhat(n, 1, 1));
  EXPECT_EQ(to_b1(PolyFn(1), 1, n), make_rhat(n, 1));
}

TEST(CorrespondenceTest, RandomMonomials) {
  Dimension n(2);
  std::mt19937_64 rng(17);
  auto mono = [&](int deg) {
    SymplecticPoly m(1);
    for (int e = 0; e < deg; ++e) m = m * (rng() % 2 ? q(1 + static_cast<int>(rng() % 2)) : p(1 + static_cast<int>(rng() % 2)));
    return m;
  };
  for (int t = 0; t < 40; ++t) {
    int df = 1 + static_cast<int>(rng() % 3), dg = 1 + static_cast<int>(rng() % 3);
    SymplecticPoly f = mono(df), g = mono(dg);
    SymplecticPoly c = classical_bracket(f, g);
    Observable rhs = c.is_zero() ? Observable(n) : to_b1(c, df + dg - 1, n);
    EXPECT_EQ(bracket(to_b1(f, df, n), to_b1(g, dg, n)), rhs) << format(f) << " , " << format(g);
  }
}
