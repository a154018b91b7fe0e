// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <utility>

#include "qmh/errors.hpp"

namespace qmh {

namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

LinearOperatorHandle dense_handle(Eigen::MatrixXcd mat, std::string label) {
  LinearOperatorHandle h;
  h.dimension = static_cast<std::uint64_t>(mat.rows());
  h.label = std::move(label);
  auto shared = std::make_shared<Eigen::MatrixXcd>(std::move(mat));
  h.apply = [shared](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (*shared) * v;
  };
  h.apply_adjoint = [shared](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return shared->adjoint() * v;
  };
  h.dense = *shared;
  return h;
}

} // namespace

LinearOperatorHandle LinearOperatorHandle::adjoint() const {
  LinearOperatorHandle h;
  h.dimension = dimension;
  h.apply = apply_adjoint;
  h.apply_adjoint = apply;
  if (dense) h.dense = dense->adjoint();
  h.is_adjoint = !is_adjoint;
  h.label = label + "^dag";
  return h;
}

SyntheticSpue synthetic_spue_of_discriminant(const Eigen::MatrixXd& D) {
  const Eigen::Index n = D.rows();
  if (D.cols() != n) throw std::invalid_argument("encoded matrix must be square");
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("encoded matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  if (es.eigenvalues().cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw std::invalid_argument("encoded matrix must be a contraction");
  }
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Eigenvalues within 1e-13 of +-1 are treated as exactly +-1: the
    // complement 1 - e^2 is then pure roundoff and its square root would
    // inject spurious eigenphases of order sqrt(eps) into the dilation.
    double e = es.eigenvalues()[i];
    s[i] = std::abs(e) >= 1.0 - 1e-13
               ? 0.0
               : std::sqrt(std::max(0.0, 1.0 - e * e));
  }
  const Eigen::MatrixXd S =
      es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXcd U(2 * n, 2 * n);
  U.setZero();
  U.topLeftCorner(n, n) = D;
  U.topRightCorner(n, n) = S;
  U.bottomLeftCorner(n, n) = S;
  U.bottomRightCorner(n, n) = -D;

  SyntheticSpue out;
  out.U = dense_handle(std::move(U), "dilation");
  Eigen::MatrixXcd box(2 * n, n);
  box.setZero();
  box.topLeftCorner(n, n).setIdentity();
  out.box.domain_dimension = static_cast<std::uint64_t>(n);
  out.box.codomain_dimension = static_cast<std::uint64_t>(2 * n);
  out.box.label = "embed";
  auto shared = std::make_shared<Eigen::MatrixXcd>(std::move(box));
  out.box.apply = [shared](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (*shared) * v;
  };
  out.box.apply_adjoint = [shared](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return shared->adjoint() * v;
  };
  out.box.dense = *shared;
  return out;
}

LinearOperatorHandle qubitized_walk(const SyntheticSpue& spue) {
  if (!spue.U.dense || !spue.box.dense) {
    throw std::invalid_argument("qubitized walk needs dense encodings");
  }
  const Eigen::MatrixXcd& box = *spue.box.dense;
  Eigen::MatrixXcd refl =
      2.0 * (box * box.adjoint()) -
      Eigen::MatrixXcd::Identity(box.rows(), box.rows());
  return dense_handle(refl * (*spue.U.dense), "qubitized-walk");
}

DensePue hermitianize(const DensePue& pue) {
  const Eigen::Index n = pue.U.rows();
  if (pue.box_left.rows() != n || pue.box_right.rows() != n) {
    throw std::invalid_argument("isometry codomain must match the unitary");
  }
  if (pue.box_left.cols() != pue.box_right.cols()) {
    throw std::invalid_argument("isometry domains must match");
  }
  const Eigen::Index d = pue.box_left.cols();
  DensePue out;
  out.U.setZero(2 * n, 2 * n);
  out.U.topRightCorner(n, n) = pue.U;
  out.U.bottomLeftCorner(n, n) = pue.U.adjoint();
  out.box_left.setZero(2 * n, 2 * d);
  out.box_left.topLeftCorner(n, d) = pue.box_left;
  out.box_left.bottomRightCorner(n, d) = pue.box_right;
  out.box_right = out.box_left;
  return out;
}

PartialIsometryHandle boxtimes_from_circuits(const ProblemInstance& inst,
                                             const RegisterLayout& lay,
                                             std::uint64_t dense_cap) {
  const int nb = lay.state_bits;
  const int nq = lay.total;
  PartialIsometryHandle h;
  h.domain_dimension = std::uint64_t{1} << (2 * nb + 1);
  h.codomain_dimension = std::uint64_t{1} << nq;
  h.label = "boxtimes[" + inst.tag() + "]";
  auto circ = std::make_shared<Circuit>(build_boxtimes(inst, lay));
  auto circ_inv = std::make_shared<Circuit>(inverse(*circ));
  const int b_pos = lay.b;

  // Domain index: x in bits [0, nb), y in [nb, 2nb), b in bit 2nb.
  auto embed_index = [nb, b_pos](std::uint64_t dom) -> std::uint64_t {
    const std::uint64_t xy = dom & ((std::uint64_t{1} << (2 * nb)) - 1);
    const std::uint64_t b = (dom >> (2 * nb)) & 1u;
    return xy | (b << b_pos);
  };

  h.apply = [circ, embed_index, nq,
             dom = h.domain_dimension](const Eigen::VectorXcd& v) {
    if (static_cast<std::uint64_t>(v.size()) != dom) {
      throw std::invalid_argument("domain dimension mismatch");
    }
    SparseState st(nq);
    for (std::uint64_t j = 0; j < dom; ++j) {
      if (v[j] != cplx{0.0, 0.0}) st.amplitudes()[embed_index(j)] = v[j];
    }
    st.apply(*circ);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(std::int64_t{1} << nq);
    for (const auto& [i, a] : st.amplitudes()) out[static_cast<std::int64_t>(i)] = a;
    return out;
  };
  h.apply_adjoint = [circ_inv, embed_index, nq,
                     dom = h.domain_dimension](const Eigen::VectorXcd& w) {
    if (static_cast<std::uint64_t>(w.size()) != (std::uint64_t{1} << nq)) {
      throw std::invalid_argument("codomain dimension mismatch");
    }
    Statevector sv(nq);
    for (std::int64_t i = 0; i < w.size(); ++i) sv.amplitudes()[i] = w[i];
    sv.apply(*circ_inv);
    Eigen::VectorXcd out(dom);
    for (std::uint64_t j = 0; j < dom; ++j) {
      out[static_cast<std::int64_t>(j)] = sv.amplitudes()[embed_index(j)];
    }
    return out;
  };
  if (h.codomain_dimension <= dense_cap) {
    Eigen::MatrixXcd mat(h.codomain_dimension, h.domain_dimension);
    for (std::uint64_t j = 0; j < h.domain_dimension; ++j) {
      SparseState st = SparseState::basis(nq, embed_index(j));
      st.apply(*circ);
      mat.col(static_cast<std::int64_t>(j)).setZero();
      for (const auto& [i, a] : st.amplitudes()) {
        mat(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) = a;
      }
    }
    h.dense = std::move(mat);
  }
  return h;
}

namespace {

LinearOperatorHandle circuit_walk_handle(const ProblemInstance& inst,
                                         const RegisterLayout& lay,
                                         double varphi, std::uint64_t dense_cap,
                                         std::string label) {
  if (!lay.p.empty()) {
    throw std::invalid_argument("walk handles use a phase-free layout");
  }
  LinearOperatorHandle h;
  const int nq = lay.total;
  h.dimension = std::uint64_t{1} << (nq - 1);  // flag-0 block
  h.label = std::move(label);
  auto circ = std::make_shared<Circuit>(build_walk_step(inst, lay, varphi));
  auto circ_inv = std::make_shared<Circuit>(inverse(*circ));
  auto block_apply = [nq, dim = h.dimension](const Circuit& c,
                                             const Eigen::VectorXcd& v) {
    if (static_cast<std::uint64_t>(v.size()) != dim) {
      throw std::invalid_argument("operator dimension mismatch");
    }
    Statevector sv(nq);
    sv.amplitudes()[0] = 0.0;
    for (std::int64_t i = 0; i < v.size(); ++i) sv.amplitudes()[i] = v[i];
    sv.apply(c);
    Eigen::VectorXcd out(v.size());
    for (std::int64_t i = 0; i < v.size(); ++i) out[i] = sv.amplitudes()[i];
    return out;
  };
  h.apply = [circ, block_apply](const Eigen::VectorXcd& v) {
    return block_apply(*circ, v);
  };
  h.apply_adjoint = [circ_inv, block_apply](const Eigen::VectorXcd& v) {
    return block_apply(*circ_inv, v);
  };
  if (h.dimension <= dense_cap) {
    h.dense = circuit_block_matrix(*circ, nq, h.dimension, dense_cap);
  }
  return h;
}

} // namespace

LinearOperatorHandle dual_walk(const ProblemInstance& inst,
                               const RegisterLayout& lay,
                               std::uint64_t dense_cap) {
  return circuit_walk_handle(inst, lay, 0.0, dense_cap,
                             "walk[" + inst.tag() + "]");
}

LinearOperatorHandle penalised_walk(const ProblemInstance& inst,
                                    const RegisterLayout& lay, double varphi,
                                    std::uint64_t dense_cap) {
  return circuit_walk_handle(inst, lay, varphi, dense_cap,
                             "penalised-walk[" + inst.tag() + "]");
}

Eigen::MatrixXcd circuit_block_matrix(const Circuit& circ, int num_qubits,
                                      std::uint64_t block_dim,
                                      std::uint64_t dense_cap) {
  if (!is_power_of_two(block_dim)) {
    throw std::invalid_argument("block dimension must be a power of two");
  }
  if (block_dim > dense_cap) {
    throw CapacityError("dense extraction above the dense cap; use a reduced instance");
  }
  Eigen::MatrixXcd mat(block_dim, block_dim);
  for (std::uint64_t j = 0; j < block_dim; ++j) {
    SparseState st = SparseState::basis(num_qubits, j);
    st.apply(circ);
    mat.col(static_cast<std::int64_t>(j)).setZero();
    for (const auto& [i, a] : st.amplitudes()) {
      if (i >= block_dim) {
        if (std::abs(a) > 1e-12) {
          throw std::runtime_error("circuit leaks outside the requested block");
        }
        continue;
      }
      mat(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)) = a;
    }
  }
  return mat;
}

Eigen::MatrixXcd support_matrix(const Circuit& circ, int num_qubits,
                                const std::vector<std::uint64_t>& support) {
  const std::int64_t n = static_cast<std::int64_t>(support.size());
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    SparseState st = SparseState::basis(num_qubits, support[j]);
    st.apply(circ);
    for (const auto& [i, a] : st.amplitudes()) {
      const auto it = std::lower_bound(support.begin(), support.end(), i);
      if (it == support.end() || *it != i) {
        if (std::abs(a) > 1e-12) {
          throw std::runtime_error("circuit leaks outside the invariant support");
        }
        continue;
      }
      mat(it - support.begin(), j) = a;
    }
  }
  return mat;
}

SpectralReport spectral_report(const Eigen::MatrixXcd& unitary,
                               const Eigen::VectorXcd& target,
                               double phase_tolerance) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(unitary, true);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed");
  }
  const Eigen::Index n = unitary.rows();
  SpectralReport rep;
  rep.eigenphases.resize(n);
  std::vector<Eigen::Index> zero_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    rep.eigenphases[i] = std::arg(es.eigenvalues()[i]);
    if (std::abs(rep.eigenphases[i]) <= phase_tolerance) zero_idx.push_back(i);
  }
  std::sort(rep.eigenphases.begin(), rep.eigenphases.end());
  rep.zero_multiplicity = static_cast<int>(zero_idx.size());
  rep.angular_gap = -1.0;
  for (double th : rep.eigenphases) {
    const double a = std::abs(th);
    if (a > phase_tolerance && (rep.angular_gap < 0.0 || a < rep.angular_gap)) {
      rep.angular_gap = a;
    }
  }
  if (!zero_idx.empty() && target.size() == n) {
    // Orthonormalize the zero-cluster eigenvectors before projecting, since a
    // general eigensolver does not return an orthogonal basis inside a
    // degenerate eigenspace.
    Eigen::MatrixXcd basis(n, static_cast<Eigen::Index>(zero_idx.size()));
    for (std::size_t k = 0; k < zero_idx.size(); ++k) {
      basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(zero_idx[k]);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
    Eigen::MatrixXcd q = qr.householderQ() *
                         Eigen::MatrixXcd::Identity(n, basis.cols());
    rep.target_overlap = (q.adjoint() * target).squaredNorm();
  }
  return rep;
}

namespace {

Eigen::VectorXd hermitian_proxy_eigenvalues(const Eigen::MatrixXcd& unitary) {
  const Eigen::MatrixXcd h = 0.5 * (unitary + unitary.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve failed");
  }
  return es.eigenvalues();
}

} // namespace

int fixed_space_dimension(const Eigen::MatrixXcd& unitary, double eps) {
  const Eigen::VectorXd ev = hermitian_proxy_eigenvalues(unitary);
  int count = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] >= 1.0 - eps) ++count;
  }
  return count;
}

double angular_gap_hermitian(const Eigen::MatrixXcd& unitary, double eps) {
  const Eigen::VectorXd ev = hermitian_proxy_eigenvalues(unitary);
  // Proxy eigenvalues are cos(theta); the angular gap is the arccos of the
  // largest one strictly below the fixed (theta = 0) cluster.
  double second = -2.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 1.0 - eps) second = std::max(second, ev[i]);
  }
  if (second <= -2.0) return -1.0;
  return std::acos(std::clamp(second, -1.0, 1.0));
}

} // namespace qmh
