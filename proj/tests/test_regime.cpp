#include <gtest/gtest.h>

#include <cmath>

#include "fracvar/regime.hpp"

using namespace fracvar;

TEST(Regime, ThreeExamples) {
  EXPECT_EQ(classify_regime(1.0, 0.5, 1).regime, Regime::subcritical);
  EXPECT_EQ(classify_regime(2.0, 0.5, 1).regime, Regime::critical);
  EXPECT_EQ(classify_regime(3.0, 0.5, 1).regime, Regime::supercritical);
  EXPECT_EQ(classify_regime(2.0, 0.5, 1).threshold_ell, 2.0);
}

TEST(Regime, ExactRationalGrid) {
  const char* ells[] = {"1", "2", "3"};
  const char* orders[] = {"1/4", "1/2", "3/4"};
  for (const char* e : ells)
    for (const char* s : orders) {
      const Rational ell = Rational::parse(e), so = Rational::parse(s);
      const auto r = classify_regime(ell, so, 1);
      // l vs 4s with integers: l * den vs 4 * num
      const long long lhs = ell.num * so.den, rhs = 4 * so.num;
      const Regime want = lhs < rhs ? Regime::subcritical : lhs == rhs ? Regime::critical : Regime::supercritical;
      EXPECT_EQ(r.regime, want) << e << " " << s;
      EXPECT_EQ(r.alpha_max_corrected, 4.0 * so.value());
    }
  EXPECT_EQ(classify_regime(Rational::parse("1"), Rational::parse("1/4"), 1).regime, Regime::critical);
  EXPECT_EQ(classify_regime(Rational::parse("3"), Rational::parse("3/4"), 1).regime, Regime::critical);
  EXPECT_EQ(classify_regime(Rational::parse("3/2"), Rational::parse("0.75"), 2).regime, Regime::critical);
}

TEST(Regime, RationalParsing) {
  EXPECT_EQ(Rational::parse("0.25").value(), 0.25);
  EXPECT_EQ(Rational::parse("6/8").value(), 0.75);
  EXPECT_THROW(Rational::parse("1/0"), DomainError);
  EXPECT_THROW(Rational::parse("abc"), DomainError);
  EXPECT_THROW(classify_regime(1.0, 1.0, 1), DomainError);
  EXPECT_THROW(classify_regime(1.0, 0.5, 3), DomainError);
}

TEST(AlphaMax, Examples) {
  EXPECT_DOUBLE_EQ(alpha_max_frank_lenzmann(0.25), 2.0);
  EXPECT_TRUE(std::isinf(alpha_max_frank_lenzmann(0.75)));
  EXPECT_TRUE(std::isinf(alpha_max_frank_lenzmann(0.5)));
  EXPECT_DOUBLE_EQ(alpha_max_corrected(0.25), 1.0);
  EXPECT_THROW(alpha_max_frank_lenzmann(1.0), DomainError);
}

TEST(GnTheta, Example) { EXPECT_DOUBLE_EQ(gn_theta(1, 0.5, 1.0), 1.0 / 3.0); }

TEST(Coercivity, Examples) {
  const auto cp = CoercivityParams::make(1.0, 1.0, 1.0, 0.5, 1, 1.0);
  EXPECT_EQ(cp.p, 2.0);
  EXPECT_EQ(cp.q, 2.0);
  for (double D : {0.0, 1.0, 37.5}) EXPECT_NEAR(coercivity_lower_bound(cp, 1.0, D), -1.5, 1e-15);

  const auto small = CoercivityParams::make(1.0, 1.0, 1.0, 0.5, 1, 0.1);
  EXPECT_GT(small.kinetic_coefficient(0.0), 0.0);
  EXPECT_NEAR(coercivity_lower_bound(small, 0.0, 2.0), small.kinetic_coefficient(0.0) * 2.0, 1e-15);
  EXPECT_GE(coercivity_lower_bound(small, 0.0, 2.0), 0.0);

  const auto none = CoercivityParams::make(0.0, 1.0, 1.0, 0.5, 1, 1.0);
  EXPECT_DOUBLE_EQ(coercivity_lower_bound(none, 1.3, 4.0), 2.0);
  EXPECT_THROW(CoercivityParams::make(1.0, 1.0, 3.0, 0.5, 1), DomainError);
}

TEST(Coercivity, OptimalEpsilonMaximizesBound) {
  auto cp = CoercivityParams::make(0.25, 1.1, 1.0, 0.5, 1);
  const double c = 1.5, D = 0.8;
  const double eps = optimal_epsilon(cp, c, D);
  EXPECT_GT(eps, 0.0);
  EXPECT_LE(eps, cp.epsilon_max() * (1 + 1e-12));
  cp.epsilon = eps;
  const double best = coercivity_lower_bound(cp, c, D);
  for (double f : {0.5, 0.9, 0.99, 1.01, 1.1}) {
    auto other = cp;
    other.epsilon = std::min(eps * f, cp.epsilon_max());
    EXPECT_LE(coercivity_lower_bound(other, c, D), best + 1e-12);
  }
}

TEST(CriticalMass, Examples) {
  EXPECT_NEAR(critical_mass_bound(0.5, 0.5, 1, 1.0), std::pow(2.0, 0.25), 1e-15);
  EXPECT_NEAR(critical_mass_bound(1.0, 1.0, 2, 1.0), std::sqrt(0.5), 1e-15);
  const double K = 0.3, C = 0.7;
  const double cstar = critical_mass_bound(K, C, 1, 0.5);
  const auto cp = CoercivityParams::make(K, std::pow(C, 0.25), 2.0, 0.5, 1);
  ASSERT_TRUE(cp.critical());
  EXPECT_NEAR(cp.kinetic_coefficient(cstar), 0.0, 1e-15);
  EXPECT_NEAR(critical_mass_literal(0.5, 0.5, 1), 16.0, 1e-12);
  EXPECT_THROW(critical_mass_bound(0.0, 1.0, 1, 0.5), DomainError);
}
