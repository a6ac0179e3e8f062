#include "xyrevival/ed/fermion_sector.hpp"

namespace xyrevival::ed {

MatchedSector matched_spin_sector(const ModelParams& initial) {
  initial.validate();
  const MomentumGrid grid = momentum_grid(initial);
  int filled = 0;
  for (std::size_t i : grid.unpaired)
    if (grid.modes[i].disp.epsilon < 0.0) ++filled;
  MatchedSector m;
  m.parity = filled % 2 == 0 ? Parity::even : Parity::odd;
  const bool periodic = (m.parity == Parity::even) == (initial.q == 0);
  m.boundary = periodic ? Boundary::periodic : Boundary::antiperiodic;
  return m;
}

}  // namespace xyrevival::ed
