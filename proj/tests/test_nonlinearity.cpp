#include <gtest/gtest.h>

#include <cmath>

#include "fracvar/nonlinearity.hpp"
#include "oracles.hpp"

using namespace fracvar;

TEST(FEval, Examples) {
  EXPECT_NEAR(F_eval(NonlinearitySpec::pure_power(1.0), 0.0, 1.0), 1.0 / 3.0, 1e-15);
  for (const auto& spec : {NonlinearitySpec::pure_power(2.0), NonlinearitySpec::weighted_power(1.0, 2.0, 0.5),
                           NonlinearitySpec::zero()})
    EXPECT_EQ(F_eval(spec, 1.0, 0.0), 0.0);
  EXPECT_NEAR(F_eval(NonlinearitySpec::weighted_power(0.0, 1.0, 1.0), 1.0, 2.0), 4.0 * std::exp(-1.0) / 2.0, 1e-15);
  EXPECT_THROW(F_eval(NonlinearitySpec::pure_power(1.0), -1.0, 1.0), DomainError);
}

TEST(FEval, Evenness) {
  for (const auto& spec : {NonlinearitySpec::pure_power(1.5), NonlinearitySpec::weighted_power(2.0, 1.0, 1.0)})
    for (double t : {0.1, 1.0, 3.7})
      for (double r : {0.0, 2.0}) EXPECT_EQ(F_eval(spec, r, t), F_eval(spec, r, -t));
}

TEST(fEval, Examples) {
  EXPECT_NEAR(f_eval(NonlinearitySpec::pure_power(2.0), 0.0, 2.0), 8.0, 1e-14);
  EXPECT_EQ(f_eval(NonlinearitySpec::pure_power(2.0), 3.0, 0.0), 0.0);
  EXPECT_EQ(f_eval(NonlinearitySpec::zero(), 3.0, 2.0), 0.0);
  const auto w = NonlinearitySpec::weighted_power(1.0, 1.0, 1.0);
  EXPECT_EQ(f_eval(w, 0.0, 1.3), f_eval(NonlinearitySpec::pure_power(1.0), 0.0, 1.3));
}

TEST(fEval, IntegratesToF) {
  for (const auto& spec : {NonlinearitySpec::pure_power(1.0), NonlinearitySpec::pure_power(2.5, 2.0),
                           NonlinearitySpec::weighted_power(0.5, 1.0, 1.0)})
    for (double t : {0.3, 1.0, 2.5, -1.7}) {
      const double r = 0.8;
      const double integral = oracle::simpson([&](double p) { return f_eval(spec, r, p); }, 0.0, t, 10000);
      const double F = F_eval(spec, r, t);
      EXPECT_NEAR(integral, F, 1e-8 * F);
    }
}

TEST(PotentialEnergy, Examples) {
  const GridSpec unit(1, 64, 1.0);
  const Field one = Field::sample(unit, [](double) { return 1.0; });
  EXPECT_EQ(potential_energy(one, NonlinearitySpec::zero()), 0.0);
  EXPECT_NEAR(potential_energy(one, NonlinearitySpec::pure_power(1.0)), 1.0 / 3.0, 1e-14);
}

TEST(PotentialEnergy, GridRefinement) {
  const auto spec = NonlinearitySpec::pure_power(2.0);
  auto g = [](double x) { return std::exp(-x * x / 2.0); };
  const double coarse = potential_energy(Field::sample(GridSpec(1, 512, 40.0), g), spec);
  const double fine = potential_energy(Field::sample(GridSpec(1, 1024, 40.0), g), spec);
  EXPECT_NEAR(coarse, fine, 1e-8);
  EXPECT_NEAR(fine, std::sqrt(M_PI / 2.0) / 4.0, 1e-12);
}

TEST(Growth, Examples) {
  const std::vector<double> ts{0.0, 0.1, 1.0, 10.0};
  auto pure = NonlinearitySpec::pure_power(1.0);
  pure.K = 1.0;
  EXPECT_TRUE(check_growth(pure, ts).pass);

  const auto bad = check_growth([](double, double t) { return std::pow(t, 6.0); }, 1.0, 1.0, {0.5, 10.0});
  ASSERT_FALSE(bad.pass);
  EXPECT_EQ(bad.witness->t, 10.0);

  auto zero = NonlinearitySpec::zero();
  zero.K = 0.0;
  EXPECT_TRUE(check_growth(zero, ts).pass);
  EXPECT_THROW(check_growth(pure, {}), DomainError);
}

TEST(Vanishing, Examples) {
  const auto w = check_vanishing(NonlinearitySpec::pure_power(1.0), 0.1);
  ASSERT_TRUE(w);
  EXPECT_NEAR(w->t0, 0.3, 1e-15);
  EXPECT_EQ(w->R0, 0.0);

  EXPECT_FALSE(check_vanishing([](double, double t) { return t * t; }, 0.1));

  const auto spec = NonlinearitySpec::weighted_power(1.0, 1.0, 1.0);
  const auto v = check_vanishing(spec, 0.05);
  ASSERT_TRUE(v);
  for (double r : {v->R0, v->R0 + 3.0})
    for (double t : {v->t0, 0.5 * v->t0, 1e-3 * v->t0}) EXPECT_LE(F_eval(spec, r, t), 0.05 * t * t * (1.0 + 1e-12));
  EXPECT_THROW(check_vanishing(spec, 0.0), DomainError);
}

TEST(Supermodular, Examples) {
  const auto quads = canonical_quadruples();
  EXPECT_TRUE(check_supermodular(NonlinearitySpec::pure_power(2.0), quads).pass);
  EXPECT_FALSE(check_supermodular(NonlinearitySpec::pure_power(2.0), quads, true).pass);

  const auto spec = NonlinearitySpec::weighted_power(0.0, 1.0, 1.0);
  const std::vector<Quadruple> q{{0.0, 1.0, 1.0, 2.0}};
  const auto strict = check_supermodular(spec, q, true);
  EXPECT_TRUE(strict.pass);
  const double lhs = F_eval(spec, 0.0, 2.0) + F_eval(spec, 1.0, 1.0);
  const double rhs = F_eval(spec, 0.0, 1.0) + F_eval(spec, 1.0, 2.0);
  EXPECT_NEAR(lhs, 2.0 + std::exp(-1.0) / 2.0, 1e-14);
  EXPECT_NEAR(rhs, 0.5 + 2.0 * std::exp(-1.0), 1e-14);

  const auto adv = check_supermodular([](double r, double t) { return std::exp(r) * t * t / 2.0; }, q);
  ASSERT_FALSE(adv.pass);
  EXPECT_LT(adv.lhs, adv.rhs);

  EXPECT_THROW(check_supermodular(spec, {{1.0, 0.5, 0.0, 1.0}}), DomainError);
}

TEST(Supermodular, WeightedIsMonotoneInRadius) {
  const auto spec = NonlinearitySpec::weighted_power(1.5, 2.0, 0.7);
  for (double t : {0.5, 1.0, 3.0}) {
    double prev = F_eval(spec, 0.0, t);
    for (double r = 0.25; r < 10.0; r += 0.25) {
      const double v = F_eval(spec, r, t);
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
  EXPECT_TRUE(check_supermodular(spec, canonical_quadruples()).pass);
}

TEST(Spec, Validation) {
  EXPECT_THROW(NonlinearitySpec::pure_power(-1.0), DomainError);
  EXPECT_THROW(NonlinearitySpec::pure_power(1.0, 0.0), DomainError);
  EXPECT_THROW(NonlinearitySpec::weighted_power(1.0, 1.0, -0.1), DomainError);
  EXPECT_EQ(parse_nonlinearity_kind("weighted_power"), NonlinearityKind::weighted_power);
  EXPECT_THROW(parse_nonlinearity_kind("cubic"), DomainError);
}
