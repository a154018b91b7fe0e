// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmh/instance.hpp"

namespace qmh {

/// @brief A labeled kernel matrix over a finite state space (or its edge
/// space). Stochastic labels have rows summing to 1; the discriminant label
/// "D" is symmetric instead.
struct StochasticKernel {
  Eigen::MatrixXd M;
  std::string label;
};

/// @brief Spectral quantities of a reversible kernel.
struct SpectralGap {
  double delta;    ///< 1 - max{|lambda| : lambda in spectrum, top removed}
  double lambda2;  ///< the (signed) eigenvalue attaining that maximum modulus
};

/// @brief Metropolis acceptance min(1, exp(-beta*(E(y)-E(x)))) for a
/// proposal neighbor y of x.
/// @throws std::invalid_argument when y is not a neighbor of x
double mh_acceptance(const ProblemInstance& inst, int x, int y);

/// @brief Metropolis-Hastings kernel P(x,y) = T(x,y)A(x,y) off-diagonal,
/// with the rejected mass on the diagonal. Satisfies detailed balance with
/// the Gibbs distribution.
StochasticKernel mh_kernel(const ProblemInstance& inst);

/// @brief Spectral gap of a kernel reversible w.r.t. pi, computed through a
/// dense symmetric eigensolve of the discriminant.
/// @throws std::invalid_argument when the kernel is not reversible w.r.t. pi
SpectralGap spectral_gap(const StochasticKernel& kernel,
                         const Distribution& pi);

/// @brief Discriminant D = diag(pi)^{1/2} P diag(pi)^{-1/2}; symmetric for
/// reversible P and sharing its spectrum.
/// @throws std::invalid_argument when pi has a zero entry
StochasticKernel discriminant(const StochasticKernel& kernel,
                              const Distribution& pi);

/// @brief The dual (edge-space) kernels on ordered state pairs.
///
/// Pairs (x,y) are indexed as x*|E| + y. The proposal-update kernel keeps the
/// tail and redraws the head: T_dual((x,y),(x,t)) = T(x,t). The acceptance
/// kernel swaps the pair with probability A(x,y) (extended to all ordered
/// pairs by the Metropolis formula; A(x,x) = 1). The dual chain is their
/// composition P_dual = T_dual * A_dual.
struct DualKernels {
  StochasticKernel T;  ///< label "Tdual"
  StochasticKernel A;  ///< label "Adual"
  StochasticKernel P;  ///< label "Pdual"
};
DualKernels dual_kernels(const ProblemInstance& inst);

/// @brief Dual stationary distribution nu(x,y) = pi(x) T(x,y) over ordered
/// pairs, indexed like dual_kernels.
Distribution dual_stationary(const ProblemInstance& inst,
                             const Distribution& pi);

/// @brief The list of directed proposal edges (x,y), sorted by (x,y).
std::vector<std::pair<int, int>> directed_edges(const ProblemInstance& inst);

/// @brief Samples a Markov chain trajectory of the given length.
///
/// Deterministic for a fixed seed: uniforms are drawn as
/// (mt19937_64() >> 11) * 2^-53 and inverted through the row's cumulative
/// distribution, so the trajectory is reproducible across platforms.
std::vector<int> classical_chain_sample(const StochasticKernel& kernel, int x0,
                                        std::int64_t steps, std::uint64_t seed);

} // namespace qmh
