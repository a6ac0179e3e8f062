#include <gtest/gtest.h>

#include <cmath>

#include "xyrevival/ed/dynamics.hpp"
#include "xyrevival/ed/propagator.hpp"

using namespace xyrevival;
using namespace xyrevival::ed;

TEST(Bessel, MatchesStandardLibrary) {
  for (double x : {0.0, 0.3, 1.0, 7.5, 42.0, 180.0}) {
    const auto j = bessel_j_sequence(x, 260);
    for (int n = 0; n <= 260; n += 7) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      EXPECT_NEAR(j[n], ref, 1e-12 * std::max(1.0, std::abs(ref))) << n << " " << x;
    }
  }
}

TEST(Gershgorin, EnclosesSpectrum) {
  const auto h = build_xz_hamiltonian(9, 0.6, 1.4, Boundary::periodic, 9, Parity::odd);
  const auto b = gershgorin_bounds(h.matrix);
  const auto eig = diagonalize(h);
  EXPECT_LE(b.lower, eig.energies.minCoeff());
  EXPECT_GE(b.upper, eig.energies.maxCoeff());
}

TEST(Chebyshev, StepMatchesSpectralEvolution) {
  const auto h = build_xy_hamiltonian(9, 1.6, std::vector<double>(9, 0.7), Boundary::antiperiodic);
  ComplexVector psi = ComplexVector::Random(h.dimension());
  psi.normalize();
  const ChebyshevPropagator prop(h);
  for (double t : {0.1, 2.0, 17.0}) {
    const auto a = prop.step(psi, t);
    const auto b = evolve_state(h, psi, t);
    EXPECT_LT((a - b).norm(), 1e-10) << t;
    EXPECT_NEAR(a.norm(), 1.0, 1e-10);
  }
}

TEST(Chebyshev, ReturnAmplitudesMatchDenseEcho) {
  const auto h1 = build_xz_hamiltonian(10, 0.0, 3.0, Boundary::periodic, 10, Parity::even);
  const auto h2 = build_xz_hamiltonian(10, 0.3, 1.5, Boundary::periodic, 10, Parity::even);
  const RealVector psi0 = ground_state(h1).vector;
  const auto d = spectral_decomposition(h2, psi0.cast<std::complex<double>>());
  const auto times = TimeGrid{40.0, 201}.points();
  const auto amps = ChebyshevPropagator(h2).return_amplitudes(psi0, times);
  for (std::size_t i = 0; i < times.size(); ++i)
    EXPECT_NEAR(std::norm(amps[i]), loschmidt_echo_ed(d, times[i]), 1e-10) << times[i];
}

TEST(Chebyshev, OrderGrowsWithStep) {
  const auto h = build_xy_hamiltonian(8, 1.0, std::vector<double>(8, 1.0), Boundary::periodic);
  const ChebyshevPropagator prop(h);
  EXPECT_LT(prop.order_for(0.1), prop.order_for(1.0));
  EXPECT_LT(prop.order_for(1.0), prop.order_for(10.0));
  EXPECT_GE(prop.order_for(10.0), static_cast<int>(prop.half_width() * 10.0));
}
