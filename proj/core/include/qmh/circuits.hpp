// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <vector>

#include "qmh/instance.hpp"
#include "qmh/layout.hpp"
#include "qmh/statevector.hpp"

namespace qmh {

/// @brief Proposal oracle O_T: on |x>|0>|0...0> produces the uniform
/// superposition sum_y sqrt(T(x,y)) |x>|y> with coin and scratch restored
/// to |0>. Dispatches on the instance kind.
Circuit build_ot(const ProblemInstance& inst, const RegisterLayout& lay,
                 const std::vector<int>& tail, const std::vector<int>& head);

/// @brief Grid proposal oracle: copy tail->head, uniform coin, coin-driven
/// +-1 (mod side) increments of one head coordinate, then the coin is
/// cancelled against a recomputed direction/axis scratch register.
/// @throws std::invalid_argument for non-grid instances or missing scratch
Circuit build_ot_grid(const ProblemInstance& inst, const RegisterLayout& lay,
                      const std::vector<int>& tail, const std::vector<int>& head);

/// @brief Spin-chain proposal oracle: copy tail->head, uniform coin over
/// log2(n) qubits, pattern-controlled X on head spin k, coin uncomputed by
/// accumulating the parities tail_j xor head_j.
/// @throws std::invalid_argument when the coin width is not log2(n_spins)
Circuit build_ot_ising(const ProblemInstance& inst, const RegisterLayout& lay,
                       const std::vector<int>& tail, const std::vector<int>& head);

/// @brief Acceptance oracle: one multi-controlled Ry on ancilla a per
/// directed edge (u,t), angle 2*asin(sqrt(A(u,t))), guarded by an equality
/// condition between two tail-valued registers.
///
/// Unstarred form (inside the box circuit): pattern registers z (tail) and
/// xc (head), guard x = z. Starred form (inside the box-star circuit):
/// pattern registers x (tail) and y (head), guard z = x.
Circuit build_acceptance(const ProblemInstance& inst, const RegisterLayout& lay,
                         bool starred);

/// @brief The box encoding circuit: copy x->z, proposal oracle z->xc,
/// acceptance rotations, then a-controlled swaps of (z, xc).
Circuit build_box(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief The box-star encoding circuit: copy x->z, starred acceptance
/// rotations, a-controlled replacement of z by y, proposal oracle z->xc.
Circuit build_boxstar(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief The branched encoding: box-star on the b=0 branch, box on b=1.
Circuit build_boxtimes(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief The shift part of the walk: X on b, then SWAPs exchanging the
/// register pairs (x, z) and (y, xc). Optionally controlled.
Circuit build_shift(const RegisterLayout& lay,
                    std::optional<ControlBit> ctrl = {});

/// @brief Phase block: applies exp(i*angle) to every state whose tested
/// qubits are NOT all zero, via a flag qubit (computed, phased, uncomputed).
/// The optional control conditions only the phase gate; the flag arithmetic
/// cancels on the inactive branch.
Circuit build_phase_block(const std::vector<int>& tested, int flag, double angle,
                          std::optional<ControlBit> ctrl = {});

/// @brief One walk step W = (2 P_box - I)(X (x) S), fused with the optional
/// penalty into V = (P_box + e^{i varphi}(I - P_box)) W.
///
/// Layout of the gate list: shift, inverse encoding, reflection phase block
/// (tested registers z, xc, a), membership phase block (z, xc, a, c, d;
/// only when varphi != 0), encoding. The optional control conditions the
/// shift gates and the phase gates only, which is exact because the
/// encoding conjugation cancels on the inactive branch.
Circuit build_walk_step(const ProblemInstance& inst, const RegisterLayout& lay,
                        double varphi, std::optional<ControlBit> ctrl = {});

/// @brief Standalone penalty operator P_box + e^{i varphi}(I - P_box):
/// inverse encoding, membership phase block, encoding.
Circuit build_penalty(const ProblemInstance& inst, const RegisterLayout& lay,
                      double varphi, std::optional<ControlBit> ctrl = {});

/// @brief Decoding circuit: b=0-controlled swaps of (x,z) and (y,xc), the
/// inverse box circuit, then the inverse proposal oracle x->y. Maps the
/// encoded target to |+>_b |pi-weighted x> with y, z, xc, a, c, d at |0>.
Circuit build_decoding(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief Seed preparation: H on b, H on x, proposal oracle x->y, encoding.
/// Prepares the encoded uniform superposition over directed edges.
Circuit build_seed(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief Seed statevector: the seed circuit applied to |0...0>.
Statevector seed_state(const ProblemInstance& inst, const RegisterLayout& lay);

/// @brief Inverse quantum Fourier transform on the given qubits (LSB first:
/// qubits[0] is the least significant bit of the encoded integer).
Circuit build_inverse_qft(const std::vector<int>& qubits);

/// @brief Coherent phase-estimation circuit over the layout's phase register:
/// Hadamards, the controlled walk-power ladder, inverse QFT.
/// @throws std::invalid_argument when the layout has no phase register
Circuit build_qpe(const ProblemInstance& inst, const RegisterLayout& lay,
                  double varphi);

} // namespace qmh
