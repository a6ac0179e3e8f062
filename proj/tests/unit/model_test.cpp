#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "xyrevival/error.hpp"
#include "xyrevival/model.hpp"

using namespace xyrevival;

namespace {

std::vector<double> ks(const MomentumGrid& g, const std::vector<std::size_t>& idx) {
  std::vector<double> out;
  for (auto i : idx) out.push_back(g.modes[i].k);
  return out;
}

}  // namespace

TEST(MomentumGrid, FourSitesPeriodicSector) {
  const auto g = momentum_grid({4, 1.0, 0.5, 0});
  ASSERT_EQ(g.modes.size(), 4u);
  const double expect[] = {kPi / 4, 3 * kPi / 4, -3 * kPi / 4, -kPi / 4};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(g.modes[n].k, expect[n], 1e-15);
  EXPECT_TRUE(g.unpaired.empty());
  const auto paired = ks(g, g.paired);
  ASSERT_EQ(paired.size(), 2u);
  EXPECT_NEAR(paired[0], kPi / 4, 1e-15);
  EXPECT_NEAR(paired[1], 3 * kPi / 4, 1e-15);
}

TEST(MomentumGrid, FourSitesAntiperiodicSector) {
  const auto g = momentum_grid({4, 1.0, 0.5, 1});
  const double expect[] = {0.0, kPi / 2, kPi, -kPi / 2};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(g.modes[n].k, expect[n], 1e-15);
  ASSERT_EQ(g.paired.size(), 1u);
  EXPECT_NEAR(g.modes[g.paired[0]].k, kPi / 2, 1e-15);
  auto unpaired = ks(g, g.unpaired);
  std::sort(unpaired.begin(), unpaired.end());
  ASSERT_EQ(unpaired.size(), 2u);
  EXPECT_EQ(unpaired[0], 0.0);
  EXPECT_EQ(unpaired[1], kPi);
}

TEST(MomentumGrid, PairedCountAndReflectionSymmetry) {
  for (int n = 2; n <= 13; ++n)
    for (int q = 0; q <= 1; ++q) {
      const auto g = momentum_grid({n, 1.5, 0.3, q});
      const std::size_t u = g.unpaired.size();
      EXPECT_EQ(g.paired.size(), (n - u) / 2) << n << " " << q;
      for (const auto& m : g.modes) {
        if (!m.paired) continue;
        const bool partner = std::any_of(g.modes.begin(), g.modes.end(),
                                         [&](const MomentumMode& o) { return std::abs(o.k + m.k) < 1e-12; });
        EXPECT_TRUE(partner);
      }
    }
}

TEST(MomentumGrid, InvariantUnderShiftByN) {
  for (int n : {3, 8, 17})
    for (int q = 0; q <= 1; ++q)
      for (long long i = -3 * n; i < 3 * n; ++i) {
        EXPECT_DOUBLE_EQ(momentum(i, n, q), momentum(i + n, n, q));
        EXPECT_EQ(is_unpaired(i, n, q), is_unpaired(i + n, n, q));
        const double k = momentum(i, n, q);
        EXPECT_GT(k, -kPi);
        EXPECT_LE(k, kPi);
      }
}

TEST(ModelParams, Validation) {
  EXPECT_THROW((ModelParams{1, 1.0, 0.0, 0}.validate()), InvalidArgument);
  EXPECT_THROW((ModelParams{4, 1.0, 0.0, 2}.validate()), InvalidArgument);
  EXPECT_NO_THROW((ModelParams{2, 1.0, 0.0, 1}.validate()));
}

TEST(Dispersion, IsotropicLimit) {
  for (double k = -3.0; k < 3.1; k += 0.37) {
    const auto d = dispersion(k, 0.0, 0.7);
    EXPECT_NEAR(d.lambda, std::abs(0.7 - std::cos(k)), 1e-15);
  }
}

TEST(Dispersion, ZeroMomentumAboveField) {
  const auto d = dispersion(0.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(d.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(d.lambda, 1.0);
  EXPECT_DOUBLE_EQ(d.theta, 0.0);
}

TEST(Dispersion, HandEvaluatedQuarterTurn) {
  const auto d = dispersion(kPi / 2, 2.0, 0.5);
  EXPECT_NEAR(d.epsilon, 0.5, 1e-15);
  EXPECT_NEAR(d.lambda, std::sqrt(4.25), 1e-14);
  EXPECT_NEAR(d.lambda, 2.06155, 1e-5);
}

TEST(Dispersion, UnpairedAnglesFollowSignOfEpsilon) {
  EXPECT_DOUBLE_EQ(dispersion_from_trig(0.0, 1.0, 2.0, 0.5).theta, kPi / 2);   // eps = -0.5
  EXPECT_DOUBLE_EQ(dispersion_from_trig(0.0, -1.0, 2.0, 0.5).theta, 0.0);      // eps = 1.5
  EXPECT_DOUBLE_EQ(dispersion_from_trig(0.0, 1.0, 2.0, 1.0).theta, 0.0);       // eps = 0
}

TEST(DispersionProperty, LambdaIdentityAndAngleFormula) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> K(-kPi, kPi), E(-3, 3), H(-3, 3);
  for (int i = 0; i < 20000; ++i) {
    const double k = K(rng), eta = E(rng), h = H(rng);
    const auto d = dispersion(k, eta, h);
    const double s = std::sin(k);
    EXPECT_GE(d.lambda, 0.0);
    EXPECT_LT(std::abs(d.lambda * d.lambda - d.epsilon * d.epsilon - eta * eta * s * s),
              1e-12 * std::max(1.0, d.lambda * d.lambda));
    if (d.epsilon + d.lambda > 1e-6)
      EXPECT_NEAR(d.theta, std::atan(eta * s / (d.epsilon + d.lambda)), 1e-12);
  }
}

TEST(GroupVelocityProperty, MatchesCentralDifference) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> K(-kPi, kPi), E(-3, 3), H(-3, 3);
  const double step = 1e-6;
  int checked = 0;
  while (checked < 1000) {
    const double k = K(rng), eta = E(rng), h = H(rng);
    if (dispersion(k, eta, h).lambda <= 1e-3) continue;
    // Keep the whole stencil away from a gapless point.
    if (dispersion(k - step, eta, h).lambda <= 1e-3 || dispersion(k + step, eta, h).lambda <= 1e-3) continue;
    const double fd =
        (dispersion(k + step, eta, h).lambda - dispersion(k - step, eta, h).lambda) / (2 * step);
    EXPECT_NEAR(group_velocity(k, eta, h), std::abs(fd), 1e-6) << k << " " << eta << " " << h;
    ++checked;
  }
}

TEST(VelocityProfile, IsingClosedForm) {
  for (double h : {0.1, 0.5, 0.9}) EXPECT_NEAR(max_group_velocity(1.0, h), h, 1e-8) << h;
  for (double h : {1.0, 1.5, 100.0}) EXPECT_NEAR(max_group_velocity(1.0, h), 1.0, 1e-8) << h;
}

TEST(VelocityProfile, FigureValues) {
  EXPECT_NEAR(max_group_velocity(1.0, 0.5), 0.5, 1e-8);
  EXPECT_NEAR(max_group_velocity(1.0, 2.0), 1.0, 1e-8);
  EXPECT_NEAR(max_group_velocity(2.0, 1.0), 2.0, 1e-6);
  EXPECT_NEAR(max_group_velocity(2.0, 0.8), 1.77, 5e-3);
}

TEST(VelocityProfile, MaximumIsSupremumOfSamples) {
  const auto p = group_velocity_profile(1.7, 0.4, 2000);
  ASSERT_EQ(p.k.size(), p.v_of_k.size());
  const double sampled = *std::max_element(p.v_of_k.begin(), p.v_of_k.end());
  EXPECT_GE(p.v_max, sampled - 1e-12);
  EXPECT_NEAR(p.v_max, group_velocity(p.k_star, 1.7, 0.4), 1e-10);
  EXPECT_FALSE(p.stationary_points.empty());
  EXPECT_THROW(group_velocity_profile(1.0, 0.5, 50), InvalidArgument);
}

TEST(RevivalTimeEstimate, Examples) {
  EXPECT_DOUBLE_EQ(revival_time_estimate(400, 2.0), 100.0);
  EXPECT_NEAR(revival_time_estimate(400, 1.77), 113.0, 0.1);
  EXPECT_DOUBLE_EQ(revival_time_estimate(13, 0.8), 8.125);
  EXPECT_THROW(revival_time_estimate(10, 0.0), InvalidArgument);
}
