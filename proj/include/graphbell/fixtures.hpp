#pragma once

#include "graphbell/bell.hpp"
#include "graphbell/states.hpp"

#include <array>

namespace graphbell {

/// Published optimized Pauli-24 inequality: settings 0..11 are the rays with
/// one or four nonzero entries, 12..23 those with two. Within-block joints
/// are 0, cross-block joints come from the 12x12 block below, every marginal is -6.
struct OptimizedPauli24 {
  VectorSet rays;  // in the inequality's setting order
  BellFunctional functional;
};

/// Rows as printed; 5 marks non-orthogonal pairs, -4 orthogonal ones.
extern const std::array<std::array<int, 12>, 12> kPauli24CrossBlock;

/// Builds the fixture and checks that the printed block agrees with the
/// orthogonality pattern of the reordered rays. Local bound left unset.
OptimizedPauli24 optimized_pauli24();

/// 13 Yu-Oh rays in dimension 3; weight 2 on the four (+-1,+-1,1) rays, 3 elsewhere.
WeightedGraph yu_oh_weighted();

}  // namespace graphbell
