#include <gtest/gtest.h>

#include <cmath>

#include "xyrevival/ed/dynamics.hpp"
#include "xyrevival/error.hpp"
#include "xyrevival/model.hpp"

using namespace xyrevival;
using namespace xyrevival::ed;

namespace {

EdQuenchSpec xz_quench(int n, double g, std::optional<int> m = std::nullopt) {
  EdQuenchSpec s;
  s.n_sites = n;
  s.initial = {1.0, 10.0, 0.0, 0.0};
  s.quench = {1.0, 4.0, g, 0.0};
  s.parity = Parity::even;
  s.max_flips = m;
  s.max_dimension = std::size_t{1} << 20;
  return s;
}

}  // namespace

TEST(EvolutionProperty, UnitaryAndEnergyConservingOnDensePath) {
  const auto pq = prepare_quench(xz_quench(10, 0.4));
  ASSERT_TRUE(pq.evolver.uses_dense_path());
  const auto& h2 = pq.evolver.hamiltonian();
  const double e0 = energy_expectation(h2, pq.evolver.state_at(0.0));
  for (double t = 0.0; t <= 30.0; t += 1.5) {
    const auto psi = pq.evolver.state_at(t);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
    EXPECT_NEAR(energy_expectation(h2, psi), e0, 1e-9);
  }
}

TEST(EvolutionProperty, UnitaryAndEnergyConservingOnPropagatorPath) {
  EvolutionOptions opt;
  opt.dense_cap = 16;
  const auto pq = prepare_quench(xz_quench(10, 0.4), opt);
  ASSERT_FALSE(pq.evolver.uses_dense_path());
  const auto& h2 = pq.evolver.hamiltonian();
  const double e0 = energy_expectation(h2, pq.evolver.state_at(0.0));
  for (double t = 0.0; t <= 30.0; t += 1.5) {
    const auto psi = pq.evolver.state_at(t);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
    EXPECT_NEAR(energy_expectation(h2, psi), e0, 1e-6);
  }
}

TEST(Evolution, PathsAgree) {
  const auto dense = prepare_quench(xz_quench(10, 0.3));
  EvolutionOptions opt;
  opt.dense_cap = 16;
  const auto cheb = prepare_quench(xz_quench(10, 0.3), opt);
  const auto times = TimeGrid{20.0, 81}.points();
  const Observable obs[] = {Observable::loschmidt_echo, Observable::magnetization, Observable::entropy};
  const auto a = dense.evolver.evolve_series(times, obs);
  const auto b = cheb.evolver.evolve_series(times, obs);
  ASSERT_EQ(a.size(), 3u);
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR(a[k].values[i], b[k].values[i], 1e-9);
}

TEST(Observables, ProductStateHasNoEntropy) {
  const SpinBasis b(6);
  ComplexVector up = ComplexVector::Zero(b.size());
  up(0) = 1.0;
  EXPECT_EQ(magnetization(b, up), 0.0);
  EXPECT_NEAR(single_spin_entropy(b, up), 0.0, 1e-15);
  ComplexVector mixed = ComplexVector::Zero(b.size());
  mixed(0) = std::sqrt(0.5);
  mixed(b.size() - 1) = std::sqrt(0.5);
  EXPECT_NEAR(magnetization(b, mixed), 0.5, 1e-15);
  EXPECT_NEAR(site_entropy(b, mixed, 3), std::log(2.0), 1e-14);
  EXPECT_THROW(site_entropy(b, mixed, 6), InvalidArgument);
}

TEST(PrepareQuench, DefaultSectorHoldsTheLowerGroundState) {
  EdQuenchSpec s;
  s.n_sites = 8;
  s.initial = {2.0, 0.5, 0.0, 0.0};
  s.quench = {2.0, 1.0, 0.0, 0.0};
  const auto pq = prepare_quench(s);
  ASSERT_TRUE(pq.sector.parity.has_value());
  EXPECT_EQ(*pq.sector.parity, Parity::even);
  EXPECT_NEAR(pq.initial.energy, -6.390696503502276, 1e-9);
}

TEST(PrepareQuench, Validation) {
  EdQuenchSpec s;
  s.n_sites = 0;
  EXPECT_THROW(prepare_quench(s), InvalidArgument);
  s = xz_quench(8, 0.0);
  s.quench.epsilon = -1.0;
  EXPECT_THROW(prepare_quench(s), InvalidArgument);
  s = xz_quench(20, 0.0);
  s.max_dimension = 1000;
  EXPECT_THROW(prepare_quench(s), CapacityError);
}

TEST(TruncationConvergence, ReportsFirstConvergedCutoff) {
  const int n = 12;
  const double t_rev = revival_time_estimate(n, max_group_velocity(1.0, 4.0));
  const auto times = TimeGrid{2 * t_rev, 241}.points();
  const auto r = truncation_convergence(xz_quench(n, 0.3), times, 2, n);
  ASSERT_TRUE(r.converged_max_flips.has_value());
  ASSERT_GE(r.steps.size(), 2u);
  EXPECT_FALSE(r.steps.front().change.has_value());
  for (std::size_t i = 1; i + 1 < r.steps.size(); ++i) EXPECT_GE(*r.steps[i].change, 1e-2);
  EXPECT_LT(*r.steps.back().change, 1e-2);
  EXPECT_EQ(*r.converged_max_flips, r.steps.back().max_flips - 2);
  for (std::size_t i = 1; i < r.steps.size(); ++i) EXPECT_GT(r.steps[i].dimension, r.steps[i - 1].dimension);

  // The converged cutoff reproduces the full even sector to the same tolerance.
  const Observable le[] = {Observable::loschmidt_echo};
  const auto full = prepare_quench(xz_quench(n, 0.3)).evolver.evolve_series(times, le).front();
  const auto cut =
      prepare_quench(xz_quench(n, 0.3, *r.converged_max_flips)).evolver.evolve_series(times, le).front();
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR(cut.values[i], full.values[i], 2e-2);
}
