#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "xyrevival/ed/dynamics.hpp"
#include "xyrevival/ed/eigensolver.hpp"
#include "xyrevival/error.hpp"

using namespace xyrevival;
using namespace xyrevival::ed;

namespace {

SpinHamiltonian ising(int n, double h, Boundary b, Sector s = {}) {
  return build_xy_hamiltonian(n, 1.0, std::vector<double>(n, h), b, s);
}

ComplexVector as_complex(const RealVector& v) { return v.cast<std::complex<double>>(); }

}  // namespace

TEST(GroundState, StrongFieldTwoSites) {
  const auto gs = ground_state(ising(2, 10.0, Boundary::open));
  // Frozen from the Kronecker-product oracle.
  EXPECT_NEAR(gs.energy, -10.012492197250388, 1e-12);
  EXPECT_NEAR(gs.vector(0) * gs.vector(0), 0.999376169438922, 1e-12);
  EXPECT_GT(gs.vector(0) * gs.vector(0), 1.0 - 1e-2);
  EXPECT_FALSE(gs.degenerate);
}

TEST(GroundState, ResidualOnRandomChains) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + trial % 4;
    std::vector<double> f(n);
    for (auto& x : f) x = U(rng);
    const auto h = build_xy_hamiltonian(n, U(rng), f, Boundary::periodic);
    const auto gs = ground_state(h);
    const RealVector r = h.matrix * gs.vector - gs.energy * gs.vector;
    EXPECT_LT(r.norm(), 1e-9);
    EXPECT_NEAR(gs.vector.norm(), 1.0, 1e-12);
  }
}

TEST(GroundState, FerromagnetWithoutFieldIsDegenerate) {
  const auto gs = ground_state(ising(6, 0.0, Boundary::periodic));
  EXPECT_TRUE(gs.degenerate);
  EXPECT_LT(gs.gap, 1e-10);
  // The level is spanned by the two x-polarized states. Projecting the lowest
  // label (all up) onto it gives the even-parity cat state.
  EXPECT_NEAR(gs.vector.norm(), 1.0, 1e-12);
  for (Eigen::Index i = 0; i < gs.vector.size(); ++i)
    EXPECT_NEAR(gs.vector(i), std::popcount(static_cast<unsigned>(i)) % 2 ? 0.0 : 1.0 / std::sqrt(32.0), 1e-10);
}

TEST(GroundState, SmallFieldSplittingIsNotATie) {
  const auto gs = ground_state(ising(8, 0.3, Boundary::periodic));
  EXPECT_FALSE(gs.degenerate);
  EXPECT_GT(gs.gap, 1e-10);
}

TEST(GroundState, LanczosAgreesWithDense) {
  const auto h = build_xz_hamiltonian(12, 0.4, 1.2, Boundary::periodic, 12, Parity::even);
  const auto dense = ground_state(h);
  GroundStateOptions opt;
  opt.dense_cap = 64;
  const auto lanczos = ground_state(h, opt);
  EXPECT_NEAR(lanczos.energy, dense.energy, 1e-10);
  EXPECT_NEAR(lanczos.gap, dense.gap, 1e-8);
  EXPECT_NEAR(std::abs(lanczos.vector.dot(dense.vector)), 1.0, 1e-10);
  EXPECT_LT(lanczos.residual, 1e-9);
}

TEST(Diagonalize, OrthonormalAscendingAndComplete) {
  const auto h = build_xy_hamiltonian(7, 1.7, {0.1, 0.5, -0.3, 0.9, 0.2, 0.0, 1.1}, Boundary::periodic);
  const auto eig = diagonalize(h);
  for (Eigen::Index i = 1; i < eig.energies.size(); ++i) EXPECT_LE(eig.energies(i - 1), eig.energies(i));
  const auto n = eig.vectors.rows();
  EXPECT_LT((eig.vectors.transpose() * eig.vectors - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  const RealMatrix rebuilt = eig.vectors * eig.energies.asDiagonal() * eig.vectors.transpose();
  EXPECT_LT((rebuilt - h.dense()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(diagonalize(h, 64), CapacityError);
}

TEST(SpectralDecomposition, EigenstateHasSinglePopulation) {
  const auto h = ising(6, 0.7, Boundary::periodic);
  const auto gs = ground_state(h);
  const auto d = spectral_decomposition(h, as_complex(gs.vector));
  EXPECT_NEAR(d.populations.front(), 1.0, 1e-12);
  EXPECT_NEAR(d.average_echo(), 1.0, 1e-12);
  for (double t : {0.0, 1.0, 123.4}) EXPECT_NEAR(loschmidt_echo_ed(d, t), 1.0, 1e-12);
}

TEST(SpectralDecompositionProperty, PopulationsSumToOne) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + trial % 3;
    const auto h1 = build_xy_hamiltonian(n, U(rng), std::vector<double>(n, U(rng)), Boundary::periodic);
    const auto h2 = build_xy_hamiltonian(n, U(rng), std::vector<double>(n, U(rng)), Boundary::periodic);
    const auto d = spectral_decomposition(h2, as_complex(ground_state(h1).vector));
    EXPECT_NEAR(d.total_population(), 1.0, 1e-10);
    EXPECT_NEAR(loschmidt_echo_ed(d, 0.0), 1.0, 1e-12);
    for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(d.energies.size()); ++i)
      EXPECT_LE(d.energies[i - 1], d.energies[i]);
  }
}

TEST(SpectralDecomposition, AverageEchoIsLongTimeMean) {
  EdQuenchSpec s;
  s.n_sites = 8;
  s.initial = {1.0, 10.0, 0.0, 0.0};
  s.quench = {1.0, 4.0, 0.0, 0.0};
  s.parity = Parity::even;
  const auto pq = prepare_quench(s);
  const auto* d = pq.evolver.decomposition();
  ASSERT_NE(d, nullptr);
  // Frozen from the Kronecker-product oracle.
  EXPECT_NEAR(d->average_echo(), 0.977079861993919, 1e-10);
  double mean = 0.0;
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) mean += loschmidt_echo_ed(*d, 1e4 * (i + 0.5) / samples);
  EXPECT_NEAR(mean / samples, d->average_echo(), 1e-3);
}

TEST(SpectralDecomposition, RejectsMismatchedState) {
  const auto h = ising(4, 1.0, Boundary::periodic);
  EXPECT_THROW(spectral_decomposition(h, ComplexVector::Ones(3)), InvalidArgument);
}
