// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmh {

/// @brief A normalized probability distribution over a finite state space.
struct Distribution {
  Eigen::VectorXd probs;  ///< entries >= 0, summing to 1 within 1e-12
  double Z = 1.0;         ///< normalizer (partition function when Gibbs-derived)

  int size() const { return static_cast<int>(probs.size()); }
};

/// @brief A finite sampling problem: states, energies, proposal graph, target
/// Gibbs distribution.
///
/// States are indexed by integers via a binary register encoding:
///  - grid: state = i + side*j where i = i0 + 2*i1, j = j0 + 2*j1 are the
///    little-endian coordinate bits;
///  - spin chain: bit k of the state is 0 for spin up (+1) and 1 for spin
///    down (-1), spin 0 in the least significant bit.
struct ProblemInstance {
  enum class Kind { DoubleWell, Ising };

  Kind kind = Kind::DoubleWell;
  int state_count = 0;             ///< |E|, a power of two
  int state_bits = 0;              ///< log2(state_count)
  std::vector<double> energy;      ///< U(i,j) or H(sigma), indexed by state
  double beta = 1.0;               ///< inverse temperature
  std::vector<std::vector<int>> neighbors;  ///< ordered proposal lists
  double proposal_prob = 0.0;      ///< uniform probability per listed neighbor
  std::vector<int> minima;         ///< energy minima (basin metrics)

  // Instance-specific parameters (informational).
  int grid_side = 0;               ///< grid instances: side length
  int n_spins = 0;                 ///< spin instances: chain length
  double coupling_J = 0.0;         ///< spin instances: nearest-neighbor coupling
  double field_h = 0.0;            ///< spin instances: longitudinal field

  /// @brief True when x and y are proposal neighbors.
  bool is_neighbor(int x, int y) const;

  /// @brief Proposal probability T(x,y); zero for non-neighbors.
  double proposal(int x, int y) const;

  /// @brief Short human-readable tag ("doublewell-4" / "ising-4").
  std::string tag() const;
};

/// @brief Builds the double-well grid instance.
///
/// The potential U(i,j) = min(i^2 + (j-1)^2, (i-3)^2 + (j-3)^2) is evaluated
/// on the fundamental cell (deliberately non-periodic), while the proposal
/// moves one coordinate by +-1 with periodic wraparound, uniformly over the
/// distinct torus neighbors.
///
/// @param grid_side side length, a power of two >= 2 (default 4)
/// @param temperature temperature T > 0; beta = 1/T
/// @throws std::invalid_argument for non-power-of-two side or T <= 0
ProblemInstance build_double_well(int grid_side = 4, double temperature = 1.0);

/// @brief Builds the open-boundary spin-chain instance with
/// H(sigma) = -J * sum_i sigma_i sigma_{i+1} - h * sum_i sigma_i.
///
/// Proposal: flip exactly one spin, probability 1/n_spins each.
///
/// @throws std::invalid_argument when n_spins < 2 or beta <= 0
ProblemInstance build_ising(int n_spins = 4, double coupling_J = 1.0,
                            double field_h = 0.0, double beta = 1.0);

/// @brief Gibbs distribution pi(x) = exp(-beta*E(x)) / Z.
///
/// Energies are shifted by their minimum before exponentiation so the result
/// is overflow-safe and invariant under constant energy shifts.
Distribution gibbs_distribution(const ProblemInstance& inst);

} // namespace qmh
