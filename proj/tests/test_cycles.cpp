#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

GraphCycle cycle(const std::vector<std::string>& entries, std::size_t r, std::size_t M, std::size_t m) {
  return GraphCycle(Ss(entries, r, M), m);
}

PolySystem system_of(const std::vector<std::string>& equations, std::size_t yvars, std::size_t r,
                     std::size_t M) {
  PolySystem s{yvars, {}};
  for (const auto& e : equations) s.equations.push_back(eval_system_poly(*parse(e), yvars, r, M));
  return s;
}

}  // namespace

TEST(Cycles, RegulatorExamples) {
  EXPECT_EQ(regulator(cycle({"1+x1*t"}, 1, 2, 2), 1), KForm::scalar(F("x1", 1)));
  EXPECT_TRUE(regulator(cycle({"x1", "x2"}, 2, 3, 2), 1).is_zero());
  KForm w = regulator(cycle({"exp(x1*x2*t^2)", "x2"}, 2, 5, 3), 2);
  EXPECT_EQ(w, KForm::basis(2, dx({2}), F("2*x1", 2)));
  EXPECT_EQ(w.to_string(), "2*x1 dx2");
}

TEST(Cycles, RegulatorPreconditions) {
  GraphCycle g = cycle({"1+t"}, 0, 3, 3);
  EXPECT_THROW(regulator(g, 0), PreconditionError);
  EXPECT_THROW(regulator(g, 3), PreconditionError);
  EXPECT_THROW(cycle({"t"}, 0, 3, 3), PreconditionError);
  EXPECT_THROW(cycle({"1+t"}, 0, 2, 3), PreconditionError);
}

TEST(Cycles, RegulatorOfOneEntryIsLogDerivativeCoefficient) {
  // n = 1: the residue of t^{-i} (a'/a) dt is the t^{i-1} coefficient of a'/a
  for (std::uint64_t k = 0; k < 50; ++k) {
    Rng rng(trial_seed(51, k));
    std::size_t r = 1 + k % 3, m = 2 + k % 3, M = m + 1;
    Series a = random_unit(rng, r, M);
    Series ratio = a.derivative_t() * a.inverse();
    for (std::size_t i = 1; i < m; ++i)
      EXPECT_EQ(regulator(GraphCycle({a}, m), i), KForm::scalar(ratio.coeff(i - 1)));
  }
}

TEST(Cycles, CompositeFormula) {
  for (std::uint64_t k = 0; k < 54; ++k) {
    Rng rng(trial_seed(52, k));
    std::size_t r = 1 + k % 3, n = 1 + (k / 3) % 3, m = 2 + (k / 9) % 3;
    auto mono = random_monomial(rng, r, n);
    KForm form = monomial_form(mono);
    for (std::size_t i = 1; i < m; ++i) {
      MilnorChain c = psi_slot(i, {mono}, r, n, m);
      GraphCycle g = GraphCycle::of(c.terms().front().symbol, m + 2);
      EXPECT_EQ(regulator(g, i), form * Rational(static_cast<long>(i)));
    }
  }
}

TEST(Cycles, Orthogonality) {
  for (std::uint64_t k = 0; k < 27; ++k) {
    Rng rng(trial_seed(53, k));
    std::size_t r = 1 + k % 3, n = 1 + (k / 3) % 3, m = 2 + (k / 9) % 3;
    auto mono = random_monomial(rng, r, n);
    KForm form = monomial_form(mono);
    for (std::size_t j = 1; j < m; ++j) {
      GraphCycle g = GraphCycle::of(psi_slot(j, {mono}, r, n, m).terms().front().symbol, m);
      for (std::size_t i = 1; i < m; ++i) {
        KForm expected = i == j ? form * Rational(static_cast<long>(i)) : KForm(r, n - 1);
        EXPECT_EQ(regulator(g, i), expected) << "i=" << i << " j=" << j;
      }
    }
  }
}

TEST(Cycles, ModTmEqualExamples) {
  EXPECT_TRUE(mod_tm_equal(cycle({"1+t"}, 0, 4, 2), cycle({"1+t+t^3"}, 0, 4, 2)));
  EXPECT_FALSE(mod_tm_equal(cycle({"1+t"}, 0, 4, 2), cycle({"1+2*t"}, 0, 4, 2)));
  GraphCycle g = cycle({"x1+t", "1/(1-x2*t)"}, 2, 4, 3);
  EXPECT_TRUE(mod_tm_equal(g, g));
  EXPECT_THROW(mod_tm_equal(cycle({"1+t"}, 0, 4, 2), cycle({"1+t"}, 0, 4, 3)), PreconditionError);
}

TEST(Cycles, ModTmInvariance) {
  for (std::uint64_t k = 0; k < 60; ++k) {
    Rng rng(trial_seed(54, k));
    std::size_t r = 2, n = 1 + k % 3, m = 2 + (k / 3) % 3, M = m + 2;
    std::vector<Series> a, b;
    for (std::size_t j = 0; j < n; ++j) {
      a.push_back(random_unit(rng, r, M));
      b.push_back(a.back() + random_series(rng, r, M) *
                                 Series::monomial(RationalFunction::constant(r, 1), m, M));
    }
    GraphCycle g1(a, m), g2(b, m);
    ASSERT_TRUE(mod_tm_equal(g1, g2));
    for (std::size_t i = 1; i < m; ++i) EXPECT_EQ(regulator(g1, i), regulator(g2, i));
  }
}

TEST(Cycles, SwappingEntriesNegatesRegulator) {
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rng rng(trial_seed(55, k));
    std::size_t r = 1 + k % 3, m = 2 + k % 3, M = m + 1;
    std::vector<Series> a{random_unit(rng, r, M), random_unit(rng, r, M)};
    std::vector<Series> b{a[1], a[0]};
    for (std::size_t i = 1; i < m; ++i)
      EXPECT_EQ(regulator(GraphCycle(b, m), i), -regulator(GraphCycle(a, m), i));
  }
}

TEST(Cycles, SteinbergExamples) {
  EXPECT_TRUE(check_steinberg(S("x1+t", 1, 3), {}, 1, 2).is_zero());
  EXPECT_TRUE(check_steinberg(S("1/2+t", 2, 3), {S("x2", 2, 3)}, 1, 2).is_zero());
  EXPECT_THROW(check_steinberg(S("1+t", 1, 3), {}, 1, 2), PreconditionError);
  EXPECT_THROW(check_steinberg(S("t", 1, 3), {}, 1, 2), PreconditionError);
}

TEST(Cycles, MultiplicativityExamples) {
  EXPECT_TRUE(check_multiplicativity(S("1+t", 2, 4), S("1+x1*t", 2, 4), {S("x2", 2, 4)}, 1, 3).is_zero());
  EXPECT_TRUE(check_multiplicativity(S("1+t", 0, 3), S("1+t", 0, 3), {}, 1, 2).is_zero());
}

TEST(Cycles, SteinbergAndMultiplicativityOnRandomInputs) {
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rng rng(trial_seed(56, k));
    std::size_t r = 1 + k % 2, m = 2 + k % 2, M = m + 1, n = 2 + k % 2;
    Series a = random_steinberg_unit(rng, r, M);
    std::vector<Series> tail;
    for (std::size_t j = 2; j < n; ++j) tail.push_back(random_unit(rng, r, M));
    Series b = random_unit(rng, r, M);
    for (std::size_t i = 1; i < m; ++i) {
      EXPECT_TRUE(check_steinberg(a, tail, i, m).is_zero());
      EXPECT_TRUE(check_multiplicativity(a, b, tail, i, m).is_zero());
    }
  }
}

TEST(Cycles, GraphMove) {
  GraphCycle g = cycle({"exp(t)"}, 0, 4, 2);
  GraphCycle moved = graph_move(g);
  EXPECT_EQ(moved.entries().front(), S("1+t", 0, 4));
  EXPECT_TRUE(mod_tm_equal(g, moved));
  EXPECT_EQ(regulator(g, 1), regulator(moved, 1));
  GraphCycle constant = cycle({"x1", "x2+1"}, 2, 3, 2);
  EXPECT_EQ(graph_move(constant).entries(), constant.entries());
}

TEST(Cycles, GraphMoveOnRandomCycles) {
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rng rng(trial_seed(57, k));
    std::size_t r = 1 + k % 2, n = 1 + k % 3, m = 2 + k % 3, M = m + 2;
    std::vector<Series> a;
    for (std::size_t j = 0; j < n; ++j) a.push_back(random_unit(rng, r, M));
    GraphCycle g(a, m), moved = graph_move(g);
    EXPECT_TRUE(mod_tm_equal(g, moved));
    for (const auto& e : moved.entries()) {
      EXPECT_TRUE(e.is_unit());
      for (std::size_t d = m; d < M; ++d) EXPECT_TRUE(e.coeff(d).is_zero());
    }
    for (std::size_t i = 1; i < m; ++i) EXPECT_EQ(regulator(g, i), regulator(moved, i));
  }
}

TEST(Cycles, ValidateTriangularExamples) {
  auto graph = graph_system(cycle({"x1+t", "1-t"}, 1, 3, 2));
  EXPECT_TRUE(validate_triangular(graph).valid);

  auto d = validate_triangular(system_of({"y1"}, 1, 0, 2));
  EXPECT_FALSE(d.valid);
  EXPECT_EQ(d.condition, 3);
  EXPECT_EQ(d.equation, 1u);

  auto e = validate_triangular(system_of({"y2+1", "y2+1"}, 2, 0, 2));
  EXPECT_FALSE(e.valid);
  EXPECT_EQ(e.condition, 0);
  EXPECT_EQ(e.message, "f1 involves y2");

  auto f = validate_triangular(system_of({"y1+1", "y1+1"}, 2, 0, 2));
  EXPECT_EQ(f.condition, 1);
  EXPECT_EQ(f.equation, 2u);

  auto g = validate_triangular(system_of({"y1+1", "y1*y2+1"}, 2, 0, 2));
  EXPECT_EQ(g.condition, 2);
}

TEST(Cycles, GraphSystemsAreTriangular) {
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rng rng(trial_seed(58, k));
    std::size_t r = 1 + k % 3, n = 1 + k % 3, M = 2 + k % 3;
    std::vector<Series> a;
    for (std::size_t j = 0; j < n; ++j) a.push_back(random_unit(rng, r, M));
    PolySystem s = graph_system(GraphCycle(a, M));
    EXPECT_TRUE(validate_triangular(s).valid) << validate_triangular(s).message;
    // the root y_j = a_j satisfies 1 - a_j^{-1} y_j = 0
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      EXPECT_EQ(s.equations[j].terms().at(e) * a[j], -Series::one(r, M));
    }
  }
}

TEST(Cycles, PerturbWorkedExample) {
  PolySystem s = system_of({"3*y1*y2^2 + y1 + 2*y2 + 1", "-y1^2*y2 - 5*y1 + 3"}, 2, 0, 1);
  PerturbedFamily f = perturb(s);
  EXPECT_EQ(f.to_string(), "{x_1 y_1 y_2^2 + x_2 y_1 + x_3 y_2 + x_4, x_5 y_1^2 y_2 + x_6 y_1 + x_7}");
  std::vector<std::string> alpha;
  for (const auto& a : f.alpha0) alpha.push_back(a.to_string());
  EXPECT_EQ(alpha, (std::vector<std::string>{"3", "1", "2", "1", "-1", "-5", "3"}));
  EXPECT_EQ(specialize(f, f.alpha0), s);
  EXPECT_FALSE(validate_triangular(s).valid);
}

TEST(Cycles, PerturbAndSpecializeSmallExamples) {
  PolySystem s = system_of({"y1+1"}, 1, 0, 2);
  PerturbedFamily f = perturb(s);
  EXPECT_EQ(f.to_string(), "{x_1 y_1 + x_2}");
  EXPECT_EQ(f.alpha0, Ss({"1", "1"}, 0, 2));
  EXPECT_EQ(specialize(f, Ss({"1", "1+t"}, 0, 2)), system_of({"y1+1+t"}, 1, 0, 2));
  EXPECT_EQ(specialize(f, Ss({"0", "1"}, 0, 2)), system_of({"1"}, 1, 0, 2));
  EXPECT_THROW(specialize(f, Ss({"1"}, 0, 2)), PreconditionError);
  EXPECT_EQ(f.slot_table(), "x_1  f1  y1  1\nx_2  f1  1  1\n");
}

TEST(Cycles, PerturbRoundTripOnGraphSystems) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    Rng rng(trial_seed(59, k));
    std::size_t r = 1 + k % 2, n = 1 + k % 3, M = 2 + k % 3;
    std::vector<Series> a;
    for (std::size_t j = 0; j < n; ++j) a.push_back(random_unit(rng, r, M));
    PolySystem s = graph_system(GraphCycle(a, M));
    PerturbedFamily f = perturb(s);
    EXPECT_EQ(f.slots.size(), 2 * n);
    EXPECT_EQ(specialize(f, f.alpha0), s);
  }
}

TEST(Cycles, BallMembership) {
  auto a0 = Ss({"1+t", "x1"}, 1, 4);
  EXPECT_TRUE(ball_member(a0, a0, 4));
  auto a = Ss({"1+t+t^2", "x1"}, 1, 4);
  EXPECT_TRUE(ball_member(a0, a, 2));
  EXPECT_FALSE(ball_member(a0, a, 3));
  auto bad = Ss({"1+t", "x1+t"}, 1, 4);
  EXPECT_TRUE(ball_member(a0, bad, 1));
  EXPECT_FALSE(ball_member(a0, bad, 2));
  EXPECT_TRUE(ball_member(a0, Ss({"1+t+t^3", "x1+t^2"}, 1, 4), 2));
  EXPECT_THROW(ball_member(a0, a0, 5), PreconditionError);
}

TEST(Cycles, ApproximatePolynomial) {
  auto p = approximate_polynomial(Ss({"1/(1-t)"}, 0, 5), 3);
  EXPECT_EQ(p.front(), S("1+t+t^2", 0, 5));
  EXPECT_EQ(p.front().to_string(), "1+t+t^2");
  // geometric oracle: the inverse of 1 - t has all coefficients 1
  for (std::size_t d = 0; d < 5; ++d) EXPECT_TRUE(S("1/(1-t)", 0, 5).coeff(d).is_one());
  EXPECT_EQ(approximate_polynomial(Ss({"exp(t)"}, 0, 4), 2).front(), S("1+t", 0, 4));
  EXPECT_THROW(approximate_polynomial(Ss({"exp(t)"}, 0, 4), 5), PreconditionError);
}

TEST(Cycles, ApproximationsStayInBallAndCongruent) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    Rng rng(trial_seed(60, k));
    std::size_t r = 1 + k % 2, n = 1 + k % 2, m = 2 + k % 3, M = m + 2;
    std::vector<Series> a;
    for (std::size_t j = 0; j < n; ++j) a.push_back(random_unit(rng, r, M));
    PolySystem s = graph_system(GraphCycle(a, m));
    PerturbedFamily f = perturb(s);
    auto alpha = approximate_polynomial(f.alpha0, m);
    EXPECT_TRUE(ball_member(f.alpha0, alpha, m));
    EXPECT_TRUE(systems_congruent(specialize(f, alpha), s, m));
  }
}

TEST(Cycles, SystemsCongruence) {
  auto a = system_of({"y1+1+t^2"}, 1, 0, 3), b = system_of({"y1+1"}, 1, 0, 3);
  EXPECT_TRUE(systems_congruent(a, b, 2));
  EXPECT_FALSE(systems_congruent(a, b, 3));
  EXPECT_FALSE(systems_congruent(a, system_of({"y1"}, 1, 0, 3), 1));
}
