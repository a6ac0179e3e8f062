#pragma once

#include "xyrevival/ed/basis.hpp"
#include "xyrevival/model.hpp"

namespace xyrevival::ed {

/// Spin boundary condition and flip-parity sector whose dynamics coincide with
/// the free-fermion quench on the momentum grid of `initial`.
///
/// The parity P is that of the number of unpaired modes (k = 0 or pi) that
/// are occupied in the initial fermion vacuum, i.e. those with h - cos k < 0.
/// The spin chain is periodic when (-1)^P (-1)^q = +1, antiperiodic otherwise.
struct MatchedSector {
  Boundary boundary = Boundary::periodic;
  Parity parity = Parity::even;
};

MatchedSector matched_spin_sector(const ModelParams& initial);

}  // namespace xyrevival::ed
