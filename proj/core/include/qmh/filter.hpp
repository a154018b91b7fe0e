// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmh/instance.hpp"

namespace qmh {

/// @brief How the spectral filter is realized. All three produce identical
/// postselected output states and success probabilities.
enum class FilterMode { Coherent, Semiclassical, PowerSumOracle };

std::string to_string(FilterMode mode);
FilterMode filter_mode_from_string(const std::string& name);

/// @brief Filter parameters: precision qubits, penalty phase, realization.
struct FilterSpec {
  int m = 4;
  double varphi = 1.0472;
  FilterMode mode = FilterMode::Coherent;
};

/// @brief Resource limits for pipeline runs.
struct PipelineCaps {
  int sim_qubits = 28;                 ///< densest statevector allowed
  std::uint64_t dense_dim = 1u << 14;  ///< densest operator matrix allowed
  std::uint64_t support_cap = 1u << 20;  ///< invariant-support size guard
};

/// @brief Output of one sampling-pipeline run.
struct PipelineResult {
  std::string instance;  ///< instance tag
  FilterMode mode = FilterMode::Coherent;
  int m = 0;
  double varphi = 0.0;
  bool penalised = true;
  double success_probability = 0.0;  ///< exact postselection branch weight
  Eigen::VectorXd p_x;               ///< decoded register-x distribution
  std::vector<double> round_probs;   ///< semiclassical per-round survival
};

/// @brief QPE amplitude response sin(2^{m-1} phi) / (2^m sin(phi/2)), with
/// the removable singularity at phi = 0 evaluating to 1.
double dirichlet_weight(double phi, int m);

/// @brief Survival weight of an eigencomponent under the zero-postselected
/// filter: alpha^2 sin^2(2^{m-1} phi) / (2^{2m} sin^2(phi/2)).
double survival_probability(double alpha, double phi, int m);

/// @brief Smallest m with 2*pi/2^m <= sqrt(delta).
/// @throws std::invalid_argument for delta outside (0, 1]
int required_precision(double delta);

/// @brief Normalized average of the first 2^m operator powers applied to
/// psi0, with its squared norm (the filter's success probability).
/// @throws EmptyBranchError when the average vanishes
std::pair<Eigen::VectorXcd, double> power_sum_filter(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
    const Eigen::VectorXcd& psi0, int m);

/// @brief Full sampling pipeline: seed state, spectral filter in the chosen
/// mode, postselection on the phase register, decoding circuit, register-x
/// marginal.
///
/// @param penalised when false the penalty sub-circuit is bypassed (the
/// filtered operator is the plain walk); seed and decoding are unchanged
/// @throws CapacityError when the mode is unavailable at the requested size
/// @throws EmptyBranchError when postselection has zero weight
PipelineResult run_pipeline(const ProblemInstance& inst, const FilterSpec& spec,
                            bool penalised = true,
                            const PipelineCaps& caps = {});

/// @brief Power-sum-oracle pipeline evaluated at every precision in m_list
/// with one shared accumulation pass (2^max(m_list) - 1 walk applications in
/// total instead of one pass per m). Results are returned in m_list order and
/// are identical to separate run_pipeline calls in PowerSumOracle mode.
///
/// @throws EmptyBranchError when a filtered state has vanishing norm
std::vector<PipelineResult> run_oracle_sweep(const ProblemInstance& inst,
                                             const std::vector<int>& m_list,
                                             double varphi = 1.0472,
                                             bool penalised = true,
                                             const PipelineCaps& caps = {});

} // namespace qmh
