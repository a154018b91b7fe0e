// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qmh {

namespace {

void check_same_length(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distributions have different lengths");
}

} // namespace

double fidelity(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  check_same_length(p, q);
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return s * s;
}

double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  check_same_length(p, q);
  return 0.5 * (p - q).cwiseAbs().sum();
}

double basin_mass(const Eigen::VectorXd& p, const ProblemInstance& inst,
                  int r) {
  if (inst.kind != ProblemInstance::Kind::DoubleWell)
    throw std::invalid_argument("basin_mass: grid instances only");
  const int L = inst.grid_side;
  double total = 0.0;
  for (int j = 0; j < L; ++j) {
    for (int i = 0; i < L; ++i) {
      bool inside = false;
      for (int m : inst.minima) {
        const int mi = m % L, mj = m / L;
        if (std::abs(i - mi) <= r && std::abs(j - mj) <= r) inside = true;
      }
      if (inside) total += p[i + L * j];
    }
  }
  return total;
}

double expectation(const Eigen::VectorXd& p, const Eigen::VectorXd& observable) {
  check_same_length(p, observable);
  return p.dot(observable);
}

IsingObservables observables_ising(const ProblemInstance& inst) {
  if (inst.kind != ProblemInstance::Kind::Ising)
    throw std::invalid_argument("observables_ising: spin instances only");
  const int n = inst.state_count;
  IsingObservables obs;
  obs.energy.resize(n);
  obs.magnetization.resize(n);
  obs.domain_walls.resize(n);
  for (int s = 0; s < n; ++s) {
    obs.energy[s] = inst.energy[static_cast<size_t>(s)];
    int mag = 0, walls = 0;
    for (int k = 0; k < inst.n_spins; ++k) {
      mag += ((s >> k) & 1) ? -1 : +1;
      if (k + 1 < inst.n_spins && (((s >> k) ^ (s >> (k + 1))) & 1)) ++walls;
    }
    obs.magnetization[s] = mag;
    obs.domain_walls[s] = walls;
  }
  return obs;
}

std::map<double, double> energy_sector_mass(const Eigen::VectorXd& p,
                                            const ProblemInstance& inst) {
  if (inst.kind != ProblemInstance::Kind::Ising)
    throw std::invalid_argument("energy_sector_mass: spin instances only");
  std::map<double, double> mass;
  for (int s = 0; s < inst.state_count; ++s)
    mass[inst.energy[static_cast<size_t>(s)]] += p[s];
  return mass;
}

} // namespace qmh
