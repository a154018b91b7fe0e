// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/layout.hpp"

#include <stdexcept>

namespace qmh {

namespace {

std::vector<int> take(int& next, int width) {
  std::vector<int> qs(width);
  for (int k = 0; k < width; ++k) qs[k] = next++;
  return qs;
}

} // namespace

RegisterLayout RegisterLayout::make(const ProblemInstance& inst, int phase_bits) {
  if (phase_bits < 0) throw std::invalid_argument("negative phase register width");
  int coin = 0;
  int scratch = 0;
  if (inst.kind == ProblemInstance::Kind::DoubleWell) {
    if (inst.grid_side == 4) {
      coin = 2;
      scratch = 2;
    } else if (inst.grid_side == 2) {
      coin = 1;
      scratch = 1;
    } else {
      throw std::invalid_argument("grid proposal circuits support sides 2 and 4");
    }
  } else {
    const int n = inst.n_spins;
    if (n < 2 || (n & (n - 1)) != 0) {
      throw std::invalid_argument(
          "spin-chain proposal coin requires a power-of-two chain length");
    }
    while ((1 << coin) < n) ++coin;
  }
  RegisterLayout lay;
  lay.state_bits = inst.state_bits;
  int next = 0;
  lay.x = take(next, inst.state_bits);
  lay.y = take(next, inst.state_bits);
  lay.z = take(next, inst.state_bits);
  lay.xc = take(next, inst.state_bits);
  lay.b = next++;
  lay.a = next++;
  lay.c = take(next, coin);
  lay.d = take(next, scratch);
  lay.flag = next++;
  lay.p = take(next, phase_bits);
  lay.total = next;
  return lay;
}

std::vector<int> RegisterLayout::reflection_test_qubits() const {
  std::vector<int> qs;
  qs.insert(qs.end(), z.begin(), z.end());
  qs.insert(qs.end(), xc.begin(), xc.end());
  qs.push_back(a);
  return qs;
}

std::vector<int> RegisterLayout::membership_test_qubits() const {
  std::vector<int> qs = reflection_test_qubits();
  qs.insert(qs.end(), c.begin(), c.end());
  qs.insert(qs.end(), d.begin(), d.end());
  return qs;
}

std::uint64_t RegisterLayout::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(state_bits));
  mix(static_cast<std::uint64_t>(c.size()));
  mix(static_cast<std::uint64_t>(d.size()));
  mix(static_cast<std::uint64_t>(p.size()));
  mix(static_cast<std::uint64_t>(total));
  return h;
}

} // namespace qmh
