// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace qmh {

using cplx = std::complex<double>;

/// @brief Gate vocabulary of the circuit layer.
///
/// Every gate is a single-target (or two-target swap) primitive with an
/// arbitrary list of polarity-annotated controls, which is enough to express
/// the walk constructions exactly while keeping the simulator kernels simple.
enum class GateKind : std::uint8_t { X, H, Phase, Ry, Swap };

/// @brief One control qubit with its required value (0 = open, 1 = filled).
struct ControlBit {
  int qubit = -1;
  int value = 1;
};

/// @brief A primitive gate: kind, target(s), controls, optional angle.
///
/// Conventions: Ry(theta) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
/// Phase(theta) multiplies the |1> component of the target by exp(i*theta).
struct Gate {
  GateKind kind = GateKind::X;
  int target = -1;
  int target2 = -1;  ///< second target, swap only
  std::vector<ControlBit> controls;
  double angle = 0.0;  ///< Phase and Ry only
};

using Circuit = std::vector<Gate>;

Gate gate_x(int target, std::vector<ControlBit> controls = {});
Gate gate_h(int target, std::vector<ControlBit> controls = {});
Gate gate_phase(int target, double angle, std::vector<ControlBit> controls = {});
Gate gate_ry(int target, double angle, std::vector<ControlBit> controls = {});
Gate gate_swap(int target, int target2, std::vector<ControlBit> controls = {});

/// @brief Inverse of a single gate (angles negate; X/H/Swap are involutions).
Gate inverse(const Gate& g);

/// @brief Inverse circuit: reversed order, each gate inverted.
Circuit inverse(const Circuit& circ);

/// @brief Copy of a circuit with an extra control added to every gate.
Circuit controlled(const Circuit& circ, ControlBit ctrl);

/// @brief Dense statevector simulator.
///
/// Qubit q is bit q of the amplitude index (qubit 0 is least significant).
/// All gate applications are performed in place; the only allocation is the
/// amplitude array itself.
class Statevector {
 public:
  /// @brief All-zeros computational basis state on @p num_qubits qubits.
  explicit Statevector(int num_qubits);

  /// @brief Basis state |index> on @p num_qubits qubits.
  static Statevector basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return nq_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << nq_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

  void apply(const Gate& g);
  void apply(const Circuit& circ);

  /// @brief Squared norm of the state.
  double norm2() const;

  /// @brief Projects onto qubit == value and renormalises.
  /// @return the probability of the retained branch (0 if it was empty, in
  /// which case the state is left as the zero vector).
  double postselect(int qubit, int value);

  /// @brief Probability of each joint assignment of @p qubits.
  ///
  /// Entry v corresponds to qubits[k] holding bit k of v (LSB-first), summed
  /// over all other qubits.
  std::vector<double> marginal(const std::vector<int>& qubits) const;

  cplx overlap(const Statevector& other) const;

 private:
  int nq_;
  std::vector<cplx> amp_;
};

/// @brief Sparse statevector on an ordered index map.
///
/// Used for support discovery and for extracting matrix columns of circuit
/// unitaries without materialising a dense register. The ordered map keeps
/// iteration deterministic.
class SparseState {
 public:
  explicit SparseState(int num_qubits) : nq_(num_qubits) {}
  static SparseState basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return nq_; }
  const std::map<std::uint64_t, cplx>& amplitudes() const { return amp_; }
  std::map<std::uint64_t, cplx>& amplitudes() { return amp_; }

  void apply(const Gate& g);
  void apply(const Circuit& circ);

  /// @brief Removes entries with |amplitude| <= eps.
  void prune(double eps = 1e-14);

  double norm2() const;

 private:
  int nq_;
  std::map<std::uint64_t, cplx> amp_;
};

/// @brief Smallest circuit-invariant index set containing @p seeds.
///
/// Breadth-first closure: repeatedly applies @p step to basis states of new
/// indices and unions the supports until a fixed point. Amplitudes below
/// 1e-14 are treated as zero. Returns the sorted support.
/// @throws std::runtime_error if the closure exceeds @p max_size.
std::vector<std::uint64_t> invariant_support(const Circuit& step,
                                             const std::vector<std::uint64_t>& seeds,
                                             int num_qubits,
                                             std::size_t max_size);

} // namespace qmh
