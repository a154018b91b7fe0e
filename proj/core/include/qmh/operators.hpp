// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmh/circuits.hpp"
#include "qmh/instance.hpp"
#include "qmh/layout.hpp"
#include "qmh/statevector.hpp"

namespace qmh {

/// @brief A unitary operator usable through its action, with an optional
/// dense matrix when the dimension is within the dense cap.
struct LinearOperatorHandle {
  std::uint64_t dimension = 0;  ///< a power of two
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply_adjoint;
  std::optional<Eigen::MatrixXcd> dense;
  bool is_adjoint = false;
  std::string label;

  /// @brief The adjoint operator (swapped maps, adjointed dense matrix).
  LinearOperatorHandle adjoint() const;
};

/// @brief A partial isometry between a small domain and a circuit codomain.
struct PartialIsometryHandle {
  std::uint64_t domain_dimension = 0;
  std::uint64_t codomain_dimension = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply_adjoint;
  std::optional<Eigen::MatrixXcd> dense;  ///< codomain x domain
  std::string label;
};

/// @brief Eigenphase summary of a unitary operator.
struct SpectralReport {
  std::vector<double> eigenphases;  ///< sorted, in (-pi, pi]
  double angular_gap = -1.0;        ///< min |theta| over nonzero phases; -1 when none
  int zero_multiplicity = 0;
  double target_overlap = 0.0;  ///< |projection of target onto phase-0 space|^2
};

/// @brief A symmetric projected unitary encoding built directly from a
/// symmetric matrix D with ||D|| <= 1 (dense; used for spectral testing).
struct SyntheticSpue {
  LinearOperatorHandle U;      ///< [[D, S],[S, -D]] with S = sqrt(I - D^2)
  PartialIsometryHandle box;   ///< |v> -> (v, 0)
};

/// @brief Builds the dilation SPUE of a symmetric contraction D.
/// @throws std::invalid_argument when D is not symmetric or ||D||_2 > 1
SyntheticSpue synthetic_spue_of_discriminant(const Eigen::MatrixXd& D);

/// @brief Qubitized walk (2 box box^dag - I) U of a synthetic SPUE. Its
/// eigenphases are +-arccos of the eigenvalues of the encoded matrix.
LinearOperatorHandle qubitized_walk(const SyntheticSpue& spue);

/// @brief A dense projected unitary encoding (U, box_left, box_right) with
/// box_left^dag U box_right equal to the encoded matrix.
struct DensePue {
  Eigen::MatrixXcd U;
  Eigen::MatrixXcd box_left;   ///< codomain x domain
  Eigen::MatrixXcd box_right;  ///< codomain x domain
};

/// @brief Hermitianization: doubles the space so the encoding becomes
/// symmetric; eigenvalues of the new encoded matrix are the singular values
/// of the original with both signs.
/// @throws std::invalid_argument on dimension mismatch
DensePue hermitianize(const DensePue& pue);

/// @brief The branched encoding as a partial isometry handle: domain indexed
/// by (x, y, b) with b the most significant bit, codomain the full register
/// space of the layout. Dense matrix populated when the codomain dimension
/// is within the cap.
PartialIsometryHandle boxtimes_from_circuits(const ProblemInstance& inst,
                                             const RegisterLayout& lay,
                                             std::uint64_t dense_cap = 1u << 14);

/// @brief The dual walk operator W = (2 P_box - I)(X (x) S) as a handle on
/// the flag-0 register space (dimension 2^(total-1)); the flag qubit is a
/// phase-block ancilla that every application returns to |0>.
LinearOperatorHandle dual_walk(const ProblemInstance& inst,
                               const RegisterLayout& lay,
                               std::uint64_t dense_cap = 1u << 14);

/// @brief The penalised walk V = (P_box + e^{i varphi}(I - P_box)) W.
/// varphi = 0 returns the plain walk (degeneracy not lifted).
LinearOperatorHandle penalised_walk(const ProblemInstance& inst,
                                    const RegisterLayout& lay, double varphi,
                                    std::uint64_t dense_cap = 1u << 14);

/// @brief Dense unitary of a circuit on the low-index block of the register
/// space, extracted column by column through sparse application.
/// @throws std::runtime_error if any column leaks outside the block by more
/// than 1e-12 (the block must be circuit-invariant)
/// @throws CapacityError when block_dim exceeds the dense cap
Eigen::MatrixXcd circuit_block_matrix(const Circuit& circ, int num_qubits,
                                      std::uint64_t block_dim,
                                      std::uint64_t dense_cap = 1u << 14);

/// @brief Dense matrix of a circuit restricted to an invariant index set:
/// entry (i, j) is the amplitude of support[i] in circuit|support[j]>.
/// @throws std::runtime_error if a column leaks outside the support by more
/// than 1e-12
Eigen::MatrixXcd support_matrix(const Circuit& circ, int num_qubits,
                                const std::vector<std::uint64_t>& support);

/// @brief Eigenphase report of a dense unitary, with multiplicity of the
/// zero cluster and the target's overlap with the phase-0 eigenspace.
/// @param phase_tolerance phases below it are classified as zero
SpectralReport spectral_report(const Eigen::MatrixXcd& unitary,
                               const Eigen::VectorXcd& target,
                               double phase_tolerance = 1e-8);

/// @brief Dimension of ker(U - I) via the Hermitian proxy (U + U^dag)/2,
/// counting eigenvalues >= 1 - eps; exact for unitary U.
int fixed_space_dimension(const Eigen::MatrixXcd& unitary, double eps = 1e-12);

/// @brief Smallest nonzero eigenphase magnitude of a unitary via the
/// Hermitian proxy: arccos of the largest proxy eigenvalue below 1 - eps.
/// Returns -1 when every eigenphase is zero.
double angular_gap_hermitian(const Eigen::MatrixXcd& unitary, double eps = 1e-12);

} // namespace qmh
