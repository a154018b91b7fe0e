// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmh {

namespace {

bool is_power_of_two(int v) { return v >= 1 && (v & (v - 1)) == 0; }

int int_log2(int v) {
  int b = 0;
  while ((1 << b) < v) ++b;
  return b;
}

} // namespace

bool ProblemInstance::is_neighbor(int x, int y) const {
  const auto& nb = neighbors.at(static_cast<size_t>(x));
  return std::find(nb.begin(), nb.end(), y) != nb.end();
}

double ProblemInstance::proposal(int x, int y) const {
  return is_neighbor(x, y) ? proposal_prob : 0.0;
}

std::string ProblemInstance::tag() const {
  if (kind == Kind::DoubleWell) return "doublewell-" + std::to_string(grid_side);
  return "ising-" + std::to_string(n_spins);
}

ProblemInstance build_double_well(int grid_side, double temperature) {
  if (!is_power_of_two(grid_side) || grid_side < 2)
    throw std::invalid_argument("grid side must be a power of two >= 2");
  if (temperature <= 0.0)
    throw std::invalid_argument("temperature must be positive");

  const int L = grid_side;
  ProblemInstance inst;
  inst.kind = ProblemInstance::Kind::DoubleWell;
  inst.state_count = L * L;
  inst.state_bits = 2 * int_log2(L);
  inst.beta = 1.0 / temperature;
  inst.grid_side = L;
  inst.energy.resize(static_cast<size_t>(inst.state_count));
  inst.neighbors.resize(static_cast<size_t>(inst.state_count));

  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      const double well_a = double(i) * i + double(j - 1) * (j - 1);
      const double well_b = double(i - 3) * (i - 3) + double(j - 3) * (j - 3);
      inst.energy[static_cast<size_t>(i + L * j)] = std::min(well_a, well_b);
    }
  }

  // Four torus moves per state; on small sides distinct moves can land on the
  // same neighbor, so collect distinct targets and weight them uniformly by
  // move count (each move has probability 1/4; for L=2 two moves coincide).
  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      const int x = i + L * j;
      const int moves[4] = {((i + 1) % L) + L * j, ((i - 1 + L) % L) + L * j,
                            i + L * ((j + 1) % L), i + L * ((j - 1 + L) % L)};
      auto& nb = inst.neighbors[static_cast<size_t>(x)];
      for (int y : moves)
        if (std::find(nb.begin(), nb.end(), y) == nb.end()) nb.push_back(y);
    }
  }
  inst.proposal_prob = (L == 2) ? 0.5 : 0.25;

  if (L == 4)
    inst.minima = {0 + L * 1, 3 + L * 3};
  else
    inst.minima = {static_cast<int>(std::min_element(inst.energy.begin(),
                                                     inst.energy.end()) -
                                    inst.energy.begin())};
  return inst;
}

ProblemInstance build_ising(int n_spins, double coupling_J, double field_h,
                            double beta) {
  if (n_spins < 2) throw std::invalid_argument("need at least two spins");
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");

  ProblemInstance inst;
  inst.kind = ProblemInstance::Kind::Ising;
  inst.state_count = 1 << n_spins;
  inst.state_bits = n_spins;
  inst.beta = beta;
  inst.n_spins = n_spins;
  inst.coupling_J = coupling_J;
  inst.field_h = field_h;
  inst.energy.resize(static_cast<size_t>(inst.state_count));
  inst.neighbors.resize(static_cast<size_t>(inst.state_count));

  for (int s = 0; s < inst.state_count; ++s) {
    double H = 0.0;
    for (int k = 0; k + 1 < n_spins; ++k) {
      const int sk = ((s >> k) & 1) ? -1 : +1;
      const int sk1 = ((s >> (k + 1)) & 1) ? -1 : +1;
      H -= coupling_J * sk * sk1;
    }
    for (int k = 0; k < n_spins; ++k) H -= field_h * (((s >> k) & 1) ? -1 : +1);
    inst.energy[static_cast<size_t>(s)] = H;

    for (int k = 0; k < n_spins; ++k)
      inst.neighbors[static_cast<size_t>(s)].push_back(s ^ (1 << k));
  }
  inst.proposal_prob = 1.0 / n_spins;
  inst.minima = {0, inst.state_count - 1};
  return inst;
}

Distribution gibbs_distribution(const ProblemInstance& inst) {
  const double emin = *std::min_element(inst.energy.begin(), inst.energy.end());
  Eigen::VectorXd w(inst.state_count);
  for (int x = 0; x < inst.state_count; ++x)
    w[x] = std::exp(-inst.beta * (inst.energy[static_cast<size_t>(x)] - emin));
  Distribution d;
  const double shifted_sum = w.sum();
  d.probs = w / shifted_sum;
  d.Z = shifted_sum * std::exp(-inst.beta * emin);
  return d;
}

} // namespace qmh
