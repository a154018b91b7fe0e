// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qmh/instance.hpp"

namespace qmh {

/// @brief Classical fidelity (sum_x sqrt(p(x) q(x)))^2; 1 iff p = q.
/// @throws std::invalid_argument on length mismatch
double fidelity(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// @brief Total variation distance (1/2) sum_x |p(x) - q(x)|.
/// @throws std::invalid_argument on length mismatch
double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// @brief Probability mass in the L-infinity balls of radius r around the
/// instance's energy minima, on grid coordinates without wraparound (the
/// energy landscape is non-periodic, so basins do not wrap).
/// @throws std::invalid_argument for non-grid instances
double basin_mass(const Eigen::VectorXd& p, const ProblemInstance& inst,
                  int r = 1);

/// @brief Expectation sum_x p(x) * observable(x).
double expectation(const Eigen::VectorXd& p, const Eigen::VectorXd& observable);

/// @brief Per-state spin-chain observables.
struct IsingObservables {
  Eigen::VectorXd energy;         ///< H(sigma)
  Eigen::VectorXd magnetization;  ///< sum_i sigma_i (unnormalized)
  Eigen::VectorXd domain_walls;   ///< #{i : sigma_i != sigma_{i+1}}
};

/// @brief Computes energy, magnetization and domain-wall count for every
/// configuration of a spin-chain instance.
/// @throws std::invalid_argument for non-spin instances
IsingObservables observables_ising(const ProblemInstance& inst);

/// @brief Groups probability mass by energy level (ascending level order).
/// @throws std::invalid_argument for non-spin instances
std::map<double, double> energy_sector_mass(const Eigen::VectorXd& p,
                                            const ProblemInstance& inst);

} // namespace qmh
