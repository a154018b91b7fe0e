// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qmh {

namespace {

// Metropolis ratio for an arbitrary ordered pair (used by the dual kernels,
// where the acceptance extends off the proposal graph).
double metropolis(const ProblemInstance& inst, int x, int y) {
  if (x == y) return 1.0;
  const double dE = inst.energy[static_cast<size_t>(y)] -
                    inst.energy[static_cast<size_t>(x)];
  return std::min(1.0, std::exp(-inst.beta * dE));
}

} // namespace

double mh_acceptance(const ProblemInstance& inst, int x, int y) {
  if (!inst.is_neighbor(x, y))
    throw std::invalid_argument("mh_acceptance: y is not a proposal neighbor of x");
  return metropolis(inst, x, y);
}

StochasticKernel mh_kernel(const ProblemInstance& inst) {
  const int n = inst.state_count;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    double stay = 1.0;
    for (int y : inst.neighbors[static_cast<size_t>(x)]) {
      const double p = inst.proposal(x, y) * metropolis(inst, x, y);
      P(x, y) = p;
      stay -= p;
    }
    P(x, x) = stay;
  }
  return {P, "P"};
}

StochasticKernel discriminant(const StochasticKernel& kernel,
                              const Distribution& pi) {
  const auto n = kernel.M.rows();
  if (pi.probs.minCoeff() <= 0.0)
    throw std::invalid_argument("discriminant: pi must be strictly positive");
  Eigen::VectorXd s = pi.probs.cwiseSqrt();
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      D(x, y) = s[x] * kernel.M(x, y) / s[y];
  return {D, "D"};
}

SpectralGap spectral_gap(const StochasticKernel& kernel,
                         const Distribution& pi) {
  const auto n = kernel.M.rows();
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      if (std::abs(pi.probs[x] * kernel.M(x, y) - pi.probs[y] * kernel.M(y, x)) >
          1e-10)
        throw std::invalid_argument("spectral_gap: kernel not reversible w.r.t. pi");

  const StochasticKernel D = discriminant(kernel, pi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D.M);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending

  // Remove one copy of the top (Perron) eigenvalue, then take the largest
  // remaining modulus.
  double best = 0.0;
  double signed_best = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(ev[i]) > best) {
      best = std::abs(ev[i]);
      signed_best = ev[i];
    }
  }
  return {1.0 - best, signed_best};
}

DualKernels dual_kernels(const ProblemInstance& inst) {
  const int n = inst.state_count;
  const int m = n * n;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int e = x * n + y;
      for (int t : inst.neighbors[static_cast<size_t>(x)])
        T(e, x * n + t) = inst.proposal(x, t);
      const double a = metropolis(inst, x, y);
      A(e, y * n + x) += a;
      A(e, e) += 1.0 - a;
    }
  }
  Eigen::MatrixXd P = T * A;
  return {{T, "Tdual"}, {A, "Adual"}, {P, "Pdual"}};
}

Distribution dual_stationary(const ProblemInstance& inst,
                             const Distribution& pi) {
  const int n = inst.state_count;
  Distribution nu;
  nu.probs = Eigen::VectorXd::Zero(n * n);
  for (int x = 0; x < n; ++x)
    for (int y : inst.neighbors[static_cast<size_t>(x)])
      nu.probs[x * n + y] = pi.probs[x] * inst.proposal(x, y);
  return nu;
}

std::vector<std::pair<int, int>> directed_edges(const ProblemInstance& inst) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < inst.state_count; ++x) {
    auto nb = inst.neighbors[static_cast<size_t>(x)];
    std::sort(nb.begin(), nb.end());
    for (int y : nb) edges.emplace_back(x, y);
  }
  return edges;
}

std::vector<int> classical_chain_sample(const StochasticKernel& kernel, int x0,
                                        std::int64_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> traj;
  traj.reserve(static_cast<size_t>(steps) + 1);
  traj.push_back(x0);
  const auto n = kernel.M.rows();
  int x = x0;
  for (std::int64_t s = 0; s < steps; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cum = 0.0;
    int next = static_cast<int>(n) - 1;
    for (Eigen::Index y = 0; y < n; ++y) {
      cum += kernel.M(x, y);
      if (u < cum) {
        next = static_cast<int>(y);
        break;
      }
    }
    x = next;
    traj.push_back(x);
  }
  return traj;
}

} // namespace qmh
