#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "kron_oracle.hpp"
#include "xyrevival/ed/hamiltonian.hpp"
#include "xyrevival/error.hpp"

using namespace xyrevival;
using namespace xyrevival::ed;

namespace {

oracle::Bc to_oracle(Boundary b) {
  switch (b) {
    case Boundary::periodic: return oracle::Bc::periodic;
    case Boundary::antiperiodic: return oracle::Bc::antiperiodic;
    default: return oracle::Bc::open;
  }
}

}  // namespace

TEST(Hamiltonian, SingleSiteField) {
  const auto h = build_xy_hamiltonian(1, 1.0, {2.0}, Boundary::open);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h.dense());
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-15);
  EXPECT_NEAR(es.eigenvalues()(1), 1.0, 1e-15);
}

TEST(Hamiltonian, MatchesKroneckerOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  for (auto bc : {Boundary::periodic, Boundary::antiperiodic, Boundary::open})
    for (int trial = 0; trial < 4; ++trial) {
      const int n = 5;
      CouplingSet c{U(rng), U(rng), U(rng), {}, bc};
      for (int l = 0; l < n; ++l) c.fields.push_back(U(rng));
      const auto ref = oracle::chain(n, c.jx, c.jy, c.g, c.fields, to_oracle(bc));
      ASSERT_LT(ref.imag().cwiseAbs().maxCoeff(), 1e-15);
      const auto h = build_hamiltonian(c, SpinBasis(n));
      EXPECT_LT((h.dense() - ref.real()).cwiseAbs().maxCoeff(), 1e-14);

      const auto odd = build_hamiltonian(c, SpinBasis(n, {Parity::odd, std::nullopt}));
      EXPECT_LT((odd.dense() - oracle::restrict(ref, oracle::parity_labels(n, 1))).cwiseAbs().maxCoeff(),
                1e-14);
    }
}

TEST(HamiltonianProperty, Hermitian) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 6;
    std::vector<double> f(n);
    for (auto& x : f) x = U(rng);
    const auto h = build_xy_hamiltonian(n, U(rng), f, static_cast<Boundary>(trial % 3));
    EXPECT_LT(hermiticity_defect(h), 1e-12);
    const auto z = build_xz_hamiltonian(n, U(rng), U(rng), Boundary::periodic, 1 + trial % 4,
                                        trial % 2 ? Parity::odd : Parity::even);
    EXPECT_LT(hermiticity_defect(z), 1e-12);
  }
}

TEST(HamiltonianProperty, ParityBlocksDecoupleExactly) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 8;
    CouplingSet c{U(rng), U(rng), U(rng), std::vector<double>(n, U(rng)),
                  static_cast<Boundary>(trial % 3)};
    const auto h = build_hamiltonian(c, SpinBasis(n));
    for (int k = 0; k < h.matrix.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(h.matrix, k); it; ++it)
        if (flip_parity(it.row()) != flip_parity(it.col())) EXPECT_EQ(it.value(), 0.0);
  }
}

TEST(XzChain, ReducesToIsingWithoutTruncation) {
  const int n = 6;
  const auto xz = build_xz_hamiltonian(n, 0.0, 1.3, Boundary::periodic, n, Parity::even);
  const auto xy = build_xy_hamiltonian(n, 1.0, std::vector<double>(n, 1.3), Boundary::periodic,
                                       {Parity::even, std::nullopt});
  EXPECT_TRUE(xz.truncation_warning);
  ASSERT_EQ(xz.dimension(), xy.dimension());
  EXPECT_EQ((xz.dense() - xy.dense()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(XzChain, TruncatedDimensionAndAllUpDiagonal) {
  const auto h = build_xz_hamiltonian(40, 0.3, 4.0, Boundary::periodic, 2, Parity::even);
  EXPECT_EQ(h.dimension(), 781u);
  EXPECT_FALSE(h.truncation_warning);
  for (double g : {0.0, 0.3, -0.7})
    for (double field : {4.0, 10.0}) {
      const CouplingSet c{1.0, 0.0, g, std::vector<double>(40, field), Boundary::periodic};
      EXPECT_NEAR(diagonal_element(c, 40, 0), -20.0 * (g + field), 1e-12);
    }
  EXPECT_NEAR(h.dense()(0, 0), -20.0 * 4.3, 1e-12);
}

TEST(Hamiltonian, CapacityLimit) {
  EXPECT_THROW(build_xy_hamiltonian(15, 1.0, std::vector<double>(15, 1.0), Boundary::periodic),
               CapacityError);
  EXPECT_NO_THROW(build_xy_hamiltonian(15, 1.0, std::vector<double>(15, 1.0), Boundary::periodic,
                                       {Parity::even, std::nullopt}));
  EXPECT_THROW(build_xy_hamiltonian(4, 1.0, {1.0, 2.0}, Boundary::periodic), InvalidArgument);
}

TEST(Hamiltonian, ApplyMatchesDenseProduct) {
  const auto h = build_xy_hamiltonian(7, 1.4, std::vector<double>(7, 0.3), Boundary::antiperiodic);
  ComplexVector x = ComplexVector::Random(h.dimension()), y;
  apply(h, x, y);
  EXPECT_LT((y - h.dense().cast<std::complex<double>>() * x).norm(), 1e-12);
  const double e = energy_expectation(h, x);
  EXPECT_NEAR(e, (x.dot(h.dense().cast<std::complex<double>>() * x)).real() / x.squaredNorm(), 1e-12);
}
