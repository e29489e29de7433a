#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fracvar/rearrange.hpp"
#include "fracvar/suites.hpp"
#include "fracvar/variational.hpp"

using namespace fracvar;

namespace {

const GridSpec kGrid(1, 256, 20.0);

Field two_bumps(const GridSpec& g) {
  return Field::sample(g, [](double x) { return std::exp(-(x - 3.0) * (x - 3.0)) + std::exp(-(x + 3.0) * (x + 3.0)); });
}

std::vector<double> sorted_abs(const Field& u) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = std::abs(u[i]);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Schwarz, TieBreakExample) {
  // Values [0,3,1,2] at offsets -2..1 from the origin; every other site is zero.
  const GridSpec g(1, 16, 16.0);
  const std::size_t o = g.origin();
  Field u(g);
  u[o - 1] = 3.0;
  u[o] = 1.0;
  u[o + 1] = 2.0;
  const Field star = schwarz_symmetrize(u);
  EXPECT_EQ(star[o - 2], 0.0);
  EXPECT_EQ(star[o - 1], 2.0);
  EXPECT_EQ(star[o], 3.0);
  EXPECT_EQ(star[o + 1], 1.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i + 2 < o || i > o + 1) {
      EXPECT_EQ(star[i], 0.0);
    }
}

TEST(Schwarz, FixedPointIdempotenceEquimeasurability) {
  const Field bump = Field::sample(kGrid, [](double x) { return std::exp(-x * x); });
  const Field sym = schwarz_symmetrize(bump);
  // A sampled symmetric bump need not follow the tie-break; its symmetrization must.
  EXPECT_TRUE(is_symmetric_decreasing(sym));
  const Field again = schwarz_symmetrize(sym);
  for (std::size_t i = 0; i < sym.size(); ++i) EXPECT_EQ(sym[i], again[i]);

  for (int dim : {1, 2}) {
    const GridSpec g(dim, dim == 1 ? 256 : 32, 10.0);
    SplitMix64 rng(99 + dim);
    Field u(g);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = rng.uniform(-1.0, 1.0);
    const Field star = schwarz_symmetrize(u);
    EXPECT_EQ(sorted_abs(u), sorted_abs(star));
    EXPECT_TRUE(is_symmetric_decreasing(star));
    const Field twice = schwarz_symmetrize(star);
    for (std::size_t i = 0; i < star.size(); ++i) EXPECT_EQ(star[i], twice[i]);
  }
}

TEST(Schwarz, MassAndLpInvariance) {
  SplitMix64 rng(1);
  Field u = random_nonnegative_field(kGrid, rng);
  for (std::size_t i = 0; i < u.size(); i += 3) u[i] = -u[i];
  EXPECT_TRUE(check_mass_invariance(u).pass);
  EXPECT_TRUE(check_mass_invariance(Field(kGrid)).pass);
  const Field star = schwarz_symmetrize(u);
  for (double p : {2.0, 3.0, 4.5}) EXPECT_NEAR(lp_norm(star, p), lp_norm(u, p), 1e-12 * lp_norm(u, p));
}

TEST(Schwarz, HardyLittlewood) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed);
    const Field u = random_nonnegative_field(kGrid, rng), v = random_nonnegative_field(kGrid, rng);
    const double lhs = inner(schwarz_symmetrize(u), schwarz_symmetrize(v));
    EXPECT_GE(lhs * (1.0 + 1e-14), inner(u, v));
  }
}

TEST(PolyaSzego, SymmetricFieldIsEquality) {
  const Field u = schwarz_symmetrize(Field::sample(kGrid, [](double x) { return 1.0 / std::cosh(x); }));
  const auto r = check_polya_szego(u, 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.spectral_star, r.spectral_u, 1e-12 * r.spectral_u);
  EXPECT_NEAR(r.gagliardo_star, r.gagliardo_u, 1e-12 * r.gagliardo_u);
}

TEST(PolyaSzego, TwoBumpsStrictDecrease) {
  const auto r = check_polya_szego(two_bumps(kGrid), 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.spectral_star, r.spectral_u * 0.99);
  EXPECT_LT(r.gagliardo_star, r.gagliardo_u * 0.99);
}

TEST(PolyaSzego, TwoDimensionalSpectralForm) {
  const GridSpec g(2, 64, 20.0);
  const Field u = Field::sample(g, [](double x, double y) {
    return std::exp(-(x - 3) * (x - 3) - y * y) + 0.5 * std::exp(-(x + 2) * (x + 2) - (y - 2) * (y - 2));
  });
  const auto r = check_polya_szego(u, 0.5);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(std::isnan(r.gagliardo_u));
}

TEST(PolyaSzego, SeededRandomFields) {
  const auto v = verify_polya_szego(200, 42);
  EXPECT_TRUE(v.pass()) << to_json(v).dump();
}

TEST(Riesz, Examples) {
  SplitMix64 rng(4);
  const Field u = random_nonnegative_field(kGrid, rng);
  const auto pure = check_riesz_F(u, NonlinearitySpec::pure_power(1.0));
  EXPECT_TRUE(pure.pass);
  EXPECT_NEAR(pure.potential_star, pure.potential_abs, 1e-12 * pure.potential_abs);

  const auto weighted = check_riesz_F(two_bumps(kGrid), NonlinearitySpec::weighted_power(1.0, 1.0, 1.0));
  EXPECT_TRUE(weighted.pass);
  EXPECT_GT(weighted.potential_star, weighted.potential_abs * 1.5);

  const auto zero = check_riesz_F(Field(kGrid), NonlinearitySpec::weighted_power(1.0, 1.0, 1.0));
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.potential_abs, 0.0);
}

TEST(AbsoluteValue, EnergyDoesNotIncrease) {
  const auto spec = NonlinearitySpec::pure_power(1.0);
  const Field signed_u = Field::sample(kGrid, [](double x) { return std::sin(2.0 * x) * std::exp(-x * x / 4.0); });
  EXPECT_LE(energy(abs_field(signed_u), 0.5, spec).total, energy(signed_u, 0.5, spec).total);
  const Field pos = two_bumps(kGrid);
  EXPECT_EQ(energy(abs_field(pos), 0.5, spec).total, energy(pos, 0.5, spec).total);
  EXPECT_EQ(potential_energy(abs_field(signed_u), spec), potential_energy(signed_u, spec));
}

TEST(RadialDecay, Examples) {
  SplitMix64 rng(8);
  const double c = 1.7;
  EXPECT_TRUE(check_radial_decay(project_to_sphere(schwarz_symmetrize(random_nonnegative_field(kGrid, rng)), c), c).pass);

  Field spike(kGrid);
  spike[kGrid.origin()] = c / std::sqrt(kGrid.spacing());
  EXPECT_TRUE(check_radial_decay(spike, c).pass);

  // Plateau out to |x| = L/4, raised to twice the bound there.
  const double edge = kGrid.box_length() / 4.0;
  const double level = 2.0 * c / std::sqrt(2.0 * edge);
  Field raised = Field::sample(kGrid, [&](double x) { return std::abs(x) <= edge + 1e-12 ? level : 0.0; });
  const auto r = check_radial_decay(raised, c);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(kGrid.radius(r.worst_site), edge, 1e-12);

  EXPECT_THROW(check_radial_decay(two_bumps(kGrid), c), DomainError);
}
