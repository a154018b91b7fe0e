// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "qmh/instance.hpp"

namespace qmh {

/// @brief Named multi-register qubit layout for the walk circuits.
///
/// Canonical qubit order (least significant first): x, y, z, xc, b, a,
/// coin c, scratch d, penalty flag, phase register p. Amplitude index bit q
/// corresponds to qubit q.
///
/// Register roles: x/y hold the directed edge (tail, head); z/xc are the
/// encoding ancillas of the projected unitary encodings; b selects the
/// encoding branch; a is the acceptance ancilla; c is the proposal coin;
/// d is the proposal scratch (grid instances only); the flag qubit mediates
/// the reflection and penalty phase blocks; p is the phase-estimation
/// register (width 0 when unused).
struct RegisterLayout {
  std::vector<int> x, y, z, xc;  ///< state-width registers
  int b = -1;                    ///< encoding-branch qubit
  int a = -1;                    ///< acceptance ancilla
  std::vector<int> c;            ///< proposal coin
  std::vector<int> d;            ///< proposal scratch (may be empty)
  int flag = -1;                 ///< penalty/reflection flag qubit
  std::vector<int> p;            ///< phase register (may be empty)

  int state_bits = 0;
  int total = 0;                 ///< total qubit count

  /// @brief Builds the layout for an instance with an optional phase register.
  ///
  /// Grid side 4: coin 2, scratch 2. Grid side 2: coin 1, scratch 1 (the +-1
  /// increments coincide mod 2, so one coin bit spans the two axes). Spin
  /// chains: coin log2(n_spins), no scratch.
  ///
  /// @throws std::invalid_argument when n_spins is not a power of two (the
  /// uniform coin is prepared with Hadamards) or the grid side is unsupported
  static RegisterLayout make(const ProblemInstance& inst, int phase_bits = 0);

  /// @brief Qubits tested by the walk reflection's zero test: z, xc, a.
  std::vector<int> reflection_test_qubits() const;

  /// @brief Qubits tested by the penalty membership test: z, xc, a, c, d.
  std::vector<int> membership_test_qubits() const;

  /// @brief FNV-1a hash of the register structure (for statevector dumps).
  std::uint64_t hash() const;
};

} // namespace qmh
