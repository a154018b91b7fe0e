// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmh/circuits.hpp"
#include "qmh/filter.hpp"
#include "qmh/instance.hpp"
#include "qmh/kernels.hpp"
#include "qmh/layout.hpp"
#include "qmh/metrics.hpp"
#include "qmh/operators.hpp"
#include "qmh/statevector.hpp"

namespace qmh {
namespace {

constexpr double kPenaltyPhase = 1.0472;

struct Suite {
  std::vector<CheckResult> out;

  /// Pass when measured <= tol.
  void upper(const std::string& name, double measured, double tol,
             const std::string& details = "") {
    out.push_back({name, measured <= tol, measured, tol, details});
  }

  /// Pass when measured >= bound.
  void lower(const std::string& name, double measured, double bound,
             const std::string& details = "") {
    std::string d = details.empty() ? "lower bound" : "lower bound; " + details;
    out.push_back({name, measured >= bound, measured, bound, d});
  }

  /// Pass when measured == expected (integer-valued quantities).
  void equal(const std::string& name, long long measured, long long expected,
             const std::string& details = "") {
    std::string d =
        details.empty() ? "exact equality" : "exact equality; " + details;
    out.push_back({name, measured == expected, static_cast<double>(measured),
                   static_cast<double>(expected), d});
  }
};

double clamp_to_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

std::uint64_t place_bits(std::uint64_t value, const std::vector<int>& qubits) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if ((value >> k) & 1u) idx |= std::uint64_t{1} << qubits[k];
  }
  return idx;
}

std::uint64_t register_mask(const std::vector<int>& qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t extract_bits(std::uint64_t idx, const std::vector<int>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if ((idx >> qubits[k]) & 1u) v |= std::uint64_t{1} << k;
  }
  return v;
}

/// L2 distance between two sparse states on the same register.
double sparse_l2_diff(const SparseState& a, const SparseState& b) {
  double s = 0.0;
  auto ia = a.amplitudes().begin();
  auto ib = b.amplitudes().begin();
  while (ia != a.amplitudes().end() || ib != b.amplitudes().end()) {
    if (ib == b.amplitudes().end() ||
        (ia != a.amplitudes().end() && ia->first < ib->first)) {
      s += std::norm(ia->second);
      ++ia;
    } else if (ia == a.amplitudes().end() || ib->first < ia->first) {
      s += std::norm(ib->second);
      ++ib;
    } else {
      s += std::norm(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return std::sqrt(s);
}

/// Uniform double in (0, 1) from the generator's top 53 bits (portable).
double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Complex standard Gaussian via Box-Muller (portable across libstdc++s).
cplx gaussian(std::mt19937_64& rng) {
  double r = std::sqrt(-2.0 * std::log(uniform01(rng)));
  double t = 2.0 * M_PI * uniform01(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

Eigen::VectorXcd random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = gaussian(rng);
  v.normalize();
  return v;
}

/// The encoded target state: the branched encoding applied to
/// |+>_b (x) sum_{(x,y)} sqrt(nu(x,y)) |x,y>.
SparseState encoded_target(const ProblemInstance& inst,
                           const RegisterLayout& lay) {
  Distribution pi = gibbs_distribution(inst);
  Distribution nu = dual_stationary(inst, pi);
  SparseState s(lay.total);
  for (const auto& [x, y] : directed_edges(inst)) {
    double w = nu.probs(x * inst.state_count + y);
    if (w <= 0.0) continue;
    double amp = std::sqrt(w) * M_SQRT1_2;
    std::uint64_t base = place_bits(static_cast<std::uint64_t>(x), lay.x) |
                         place_bits(static_cast<std::uint64_t>(y), lay.y);
    s.amplitudes()[base] += amp;
    s.amplitudes()[base | (std::uint64_t{1} << lay.b)] += amp;
  }
  s.apply(build_boxtimes(inst, lay));
  s.prune();
  return s;
}

// --- classical chain invariants -------------------------------------------

void classical_checks(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  Distribution pi = gibbs_distribution(inst);
  StochasticKernel P = mh_kernel(inst);
  DualKernels dual = dual_kernels(inst);
  Distribution nu = dual_stationary(inst, pi);

  auto row_dev = [](const Eigen::MatrixXd& M) {
    return (M.rowwise().sum().array() - 1.0).abs().maxCoeff();
  };
  double rows = std::max({row_dev(P.M), row_dev(dual.T.M), row_dev(dual.A.M),
                          row_dev(dual.P.M)});
  suite.upper("classical/" + tag + "/row-stochastic", rows, 1e-12,
              "P, Tdual, Adual, Pdual row sums");

  auto stat_dev = [](const Eigen::MatrixXd& M, const Eigen::VectorXd& mu) {
    return (M.transpose() * mu - mu).cwiseAbs().maxCoeff();
  };
  double stat = std::max({stat_dev(P.M, pi.probs), stat_dev(dual.T.M, nu.probs),
                          stat_dev(dual.A.M, nu.probs),
                          stat_dev(dual.P.M, nu.probs)});
  suite.upper("classical/" + tag + "/stationarity", stat, 1e-12,
              "pi P = pi and nu T = nu A = nu P = nu");

  double db = 0.0;
  for (int x = 0; x < inst.state_count; ++x) {
    for (int y = 0; y < inst.state_count; ++y) {
      db = std::max(db, std::abs(pi.probs(x) * P.M(x, y) -
                                 pi.probs(y) * P.M(y, x)));
    }
  }
  suite.upper("classical/" + tag + "/detailed-balance", db, 1e-12);
}

// --- spectral identities of the synthetic (matrix-level) walk --------------

void synthetic_checks(Suite& suite, const ProblemInstance& inst,
                      const std::string& label) {
  const int n = inst.state_count;
  Distribution pi = gibbs_distribution(inst);
  StochasticKernel P = mh_kernel(inst);
  Eigen::MatrixXd D = discriminant(P, pi).M;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D,
                                                    Eigen::EigenvaluesOnly);
  Eigen::VectorXd evs = es.eigenvalues();  // ascending
  suite.upper("spectral/" + label + "/top-eigenvalue",
              std::abs(evs(n - 1) - 1.0), 1e-12, "lambda_max(D) = 1");

  SyntheticSpue spue = synthetic_spue_of_discriminant(D);
  LinearOperatorHandle Q = qubitized_walk(spue);

  double enc = (spue.box.dense->adjoint() * (*spue.U.dense) *
                    (*spue.box.dense) -
                D.cast<cplx>())
                   .cwiseAbs()
                   .maxCoeff();
  suite.upper("spectral/" + label + "/encoded-matrix", enc, 1e-12,
              "box^dag U box = D");

  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(2 * n);
  target.head(n) = pi.probs.cwiseSqrt().cast<cplx>();
  SpectralReport rep = spectral_report(*Q.dense, target);

  // Expected eigenphase multiset: each eigenvalue e of D contributes the
  // conjugate pair +-arccos(e) (a double zero at e = 1).
  std::vector<double> expected;
  expected.reserve(2 * n);
  for (int j = 0; j < n; ++j) {
    // Snap eigenvalues within 1e-13 of +-1, matching the dilation builder:
    // acos amplifies eigenvalue roundoff near +-1 to sqrt(eps).
    double e = clamp_to_unit(evs(j));
    double th = e >= 1.0 - 1e-13 ? 0.0
                                 : (e <= -1.0 + 1e-13 ? M_PI : std::acos(e));
    expected.push_back(th);
    expected.push_back(th >= M_PI - 1e-12 ? M_PI : -th);
  }
  std::sort(expected.begin(), expected.end());
  double pairing = 0.0;
  if (rep.eigenphases.size() != expected.size()) {
    pairing = 1.0;  // size mismatch: report as gross failure
  } else {
    for (std::size_t k = 0; k < expected.size(); ++k) {
      double d = std::abs(rep.eigenphases[k] - expected[k]);
      pairing = std::max(pairing, std::min(d, 2.0 * M_PI - d));
    }
  }
  suite.upper("spectral/" + label + "/eigenphase-pairing", pairing, 1e-9,
              "walk phases are +-arccos of the encoded spectrum");

  suite.equal("spectral/" + label + "/zero-multiplicity",
              rep.zero_multiplicity, 2, "double zero from lambda_max(D) = 1");
  suite.upper("spectral/" + label + "/target-in-kernel",
              std::abs(rep.target_overlap - 1.0), 1e-9,
              "sqrt(pi) lies in the phase-0 space");

  double expected_gap = std::acos(clamp_to_unit(evs(n - 2)));
  suite.upper("spectral/" + label + "/gap-identity",
              std::abs(rep.angular_gap - expected_gap), 1e-9,
              "Delta = arccos(lambda_2(P))");

  SpectralGap gap = spectral_gap(P, pi);
  suite.lower("spectral/" + label + "/gap-amplification", rep.angular_gap,
              std::sqrt(gap.delta), "Delta >= sqrt(delta)");
}

// --- circuit-level operator checks ------------------------------------------

void operator_checks(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  std::mt19937_64 rng(0x51c5u);

  auto unitarity = [&](const LinearOperatorHandle& H) {
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      Eigen::VectorXcd v =
          random_unit_vector(static_cast<Eigen::Index>(H.dimension), rng);
      Eigen::VectorXcd w = H.apply(v);
      worst = std::max(worst, std::abs(w.squaredNorm() - 1.0));
      worst = std::max(
          worst, (H.apply_adjoint(w) - v).cwiseAbs().maxCoeff());
    }
    return worst;
  };
  LinearOperatorHandle W = dual_walk(inst, lay);
  suite.upper("operators/" + tag + "/walk-unitarity", unitarity(W), 1e-10,
              "norm preservation and U^dag U = I on random vectors");
  LinearOperatorHandle V = penalised_walk(inst, lay, kPenaltyPhase);
  suite.upper("operators/" + tag + "/penalised-unitarity", unitarity(V), 1e-10);

  PartialIsometryHandle box = boxtimes_from_circuits(inst, lay);
  Eigen::MatrixXcd gram = box.dense->adjoint() * (*box.dense);
  double iso = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
                   .cwiseAbs()
                   .maxCoeff();
  suite.upper("operators/" + tag + "/branch-isometry", iso, 1e-10,
              "box^dag box = I on the edge space");

  double idem = 0.0;
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXcd v = random_unit_vector(box.dense->rows(), rng);
    Eigen::VectorXcd pv = (*box.dense) * (box.dense->adjoint() * v);
    Eigen::VectorXcd ppv = (*box.dense) * (box.dense->adjoint() * pv);
    idem = std::max(idem, (ppv - pv).cwiseAbs().maxCoeff());
  }
  suite.upper("operators/" + tag + "/branch-projector", idem, 1e-10,
              "box box^dag is idempotent");

  // The encoded matrix: on directed-edge columns, box*^dag (X (x) S) box
  // equals the transposed dual discriminant. This pins the walk's active
  // subspace to the classical chain independently of how the oracles extend
  // to scratch sectors the pipeline never populates.
  {
    const Distribution pi = gibbs_distribution(inst);
    const DualKernels duals = dual_kernels(inst);
    const Distribution nu = dual_stationary(inst, pi);
    const std::vector<std::pair<int, int>> edges = directed_edges(inst);
    const Eigen::Index ne = static_cast<Eigen::Index>(edges.size());
    const int n = inst.state_count;
    const Circuit shift = build_shift(lay);
    const Eigen::Index rows = box.dense->rows();

    Eigen::MatrixXcd shifted(rows, ne);
    Eigen::MatrixXcd star(rows, ne);
    for (Eigen::Index j = 0; j < ne; ++j) {
      const auto [x, y] = edges[static_cast<std::size_t>(j)];
      const Eigen::Index col =
          static_cast<Eigen::Index>(x) |
          (static_cast<Eigen::Index>(y) << lay.state_bits);
      star.col(j) = box.dense->col(col);
      Statevector sv(lay.total);
      const Eigen::Index bcol =
          col | (Eigen::Index{1} << (2 * lay.state_bits));
      for (Eigen::Index r = 0; r < rows; ++r) {
        sv.amplitudes()[static_cast<std::uint64_t>(r)] = (*box.dense)(r, bcol);
      }
      sv.apply(shift);
      for (Eigen::Index r = 0; r < rows; ++r) {
        shifted(r, j) = sv.amplitudes()[static_cast<std::uint64_t>(r)];
      }
    }
    const Eigen::MatrixXcd M = star.adjoint() * shifted;
    Eigen::MatrixXcd D(ne, ne);
    for (Eigen::Index j = 0; j < ne; ++j) {
      for (Eigen::Index k = 0; k < ne; ++k) {
        const auto [xj, yj] = edges[static_cast<std::size_t>(j)];
        const auto [xk, yk] = edges[static_cast<std::size_t>(k)];
        const Eigen::Index ej = xj * n + yj;
        const Eigen::Index ek = xk * n + yk;
        D(j, k) = std::sqrt(nu.probs[ej] / nu.probs[ek]) * duals.P.M(ej, ek);
      }
    }
    suite.upper("operators/" + tag + "/encoded-matrix",
                (M - D.transpose()).cwiseAbs().maxCoeff(), 1e-12,
                "box*^dag (X (x) S) box = D_P^T on directed edges");
  }
}

void oracle_cleanliness(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  Circuit ot = build_ot(inst, lay, lay.x, lay.y);
  double worst = 0.0;
  for (int x = 0; x < inst.state_count; ++x) {
    SparseState got(lay.total);
    got.amplitudes()[place_bits(static_cast<std::uint64_t>(x), lay.x)] = 1.0;
    got.apply(ot);
    got.prune();
    SparseState want(lay.total);
    for (int y : inst.neighbors[x]) {
      std::uint64_t idx = place_bits(static_cast<std::uint64_t>(x), lay.x) |
                          place_bits(static_cast<std::uint64_t>(y), lay.y);
      want.amplitudes()[idx] = std::sqrt(inst.proposal(x, y));
    }
    worst = std::max(worst, sparse_l2_diff(got, want));
  }
  suite.upper("oracles/" + tag + "/proposal-cleanliness", worst, 1e-10,
              "O_T|x,0,0> = sum_y sqrt(T(x,y)) |x,y,0> with coin/scratch clean");
}

void target_preservation(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  SparseState t = encoded_target(inst, lay);
  double worst = 0.0;
  for (double varphi : {0.0, 0.5, kPenaltyPhase, 2.0}) {
    SparseState u = t;
    u.apply(build_walk_step(inst, lay, varphi));
    u.prune();
    worst = std::max(worst, sparse_l2_diff(u, t));
  }
  suite.upper("walk/" + tag + "/target-preservation", worst, 1e-9,
              "encoded target fixed for varphi in {0, 0.5, 1.0472, 2.0}");
}

void seed_identity(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  SparseState got(lay.total);
  got.amplitudes()[0] = 1.0;
  got.apply(build_seed(inst, lay));
  got.prune();

  SparseState want(lay.total);
  const double n = static_cast<double>(inst.state_count);
  for (const auto& [x, y] : directed_edges(inst)) {
    double amp = std::sqrt(inst.proposal(x, y) / n) * M_SQRT1_2;
    std::uint64_t base = place_bits(static_cast<std::uint64_t>(x), lay.x) |
                         place_bits(static_cast<std::uint64_t>(y), lay.y);
    want.amplitudes()[base] += amp;
    want.amplitudes()[base | (std::uint64_t{1} << lay.b)] += amp;
  }
  want.apply(build_boxtimes(inst, lay));
  want.prune();
  suite.upper("circuits/" + tag + "/seed-identity",
              sparse_l2_diff(got, want), 1e-12,
              "seed circuit = encoding of the uniform edge superposition");
}

void decode_checks(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  Distribution pi = gibbs_distribution(inst);
  SparseState t = encoded_target(inst, lay);
  t.apply(build_decoding(inst, lay));
  t.prune();

  std::uint64_t ancilla = register_mask(lay.y) | register_mask(lay.z) |
                          register_mask(lay.xc) | register_mask(lay.c) |
                          register_mask(lay.d) |
                          (std::uint64_t{1} << lay.a) |
                          (std::uint64_t{1} << lay.flag);
  double leak = 0.0;
  Eigen::VectorXd px = Eigen::VectorXd::Zero(inst.state_count);
  for (const auto& [idx, amp] : t.amplitudes()) {
    if (idx & ancilla) leak += std::norm(amp);
    px(static_cast<Eigen::Index>(extract_bits(idx, lay.x))) += std::norm(amp);
  }
  suite.upper("circuits/" + tag + "/decode-ancillas", std::sqrt(leak), 1e-10,
              "y, z, xc, a, coin, scratch return to |0>");
  suite.upper("circuits/" + tag + "/decode-marginal",
              (px - pi.probs).cwiseAbs().maxCoeff(), 1e-10,
              "decoded register-x marginal equals pi");
}

void commutator_check(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  LinearOperatorHandle W = dual_walk(inst, lay);
  PartialIsometryHandle box = boxtimes_from_circuits(inst, lay);
  const Eigen::Index dim = static_cast<Eigen::Index>(W.dimension);
  Eigen::MatrixXcd B = box.dense->topRows(dim);

  auto proj = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return B * (B.adjoint() * v);
  };
  auto Mv = [&](const Eigen::VectorXcd& v) {
    return (proj(W.apply(v)) - W.apply(proj(v))).eval();
  };
  auto Mtv = [&](const Eigen::VectorXcd& v) {
    return (W.apply_adjoint(proj(v)) - proj(W.apply_adjoint(v))).eval();
  };
  std::mt19937_64 rng(0xc033u);
  Eigen::VectorXcd v = random_unit_vector(dim, rng);
  double sigma2 = 0.0;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXcd w = Mtv(Mv(v));
    sigma2 = w.norm();
    if (sigma2 == 0.0) break;
    v = w / sigma2;
  }
  suite.lower("walk/" + tag + "/penalty-noncommutation", std::sqrt(sigma2),
              0.01, "||[P_box, W]||_2 bounded away from zero");
}

void degeneracy_checks(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  RegisterLayout lay = RegisterLayout::make(inst);
  {
    LinearOperatorHandle W = dual_walk(inst, lay);
    const int dw = fixed_space_dimension(*W.dense);
    suite.lower("walk/" + tag + "/degeneracy-unlifted", dw, 2,
                "dim ker(W - I) on the flag-0 block is macroscopic");
    // The exact count also includes fixed vectors supported on scratch
    // sectors the pipeline never populates, where any unitary extension of
    // the oracles is admissible; 1952 is this implementation's
    // deterministic value, pinned as a regression guard.
    suite.equal("walk/" + tag + "/degeneracy-unlifted-regression", dw, 1952,
                "implementation-specific fixed-space dimension");
  }
  {
    LinearOperatorHandle V = penalised_walk(inst, lay, kPenaltyPhase);
    suite.equal("walk/" + tag + "/degeneracy-lifted",
                fixed_space_dimension(*V.dense), 1,
                "the penalty leaves only the encoded target fixed");
  }
}

// --- filter checks ----------------------------------------------------------

void mode_equivalence(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  double px_dev = 0.0;
  double s_dev = 0.0;
  double round_dev = 0.0;
  auto compare = [&](int m, bool penalised) {
    FilterSpec spec;
    spec.m = m;
    spec.varphi = kPenaltyPhase;
    spec.mode = FilterMode::Coherent;
    PipelineResult rc = run_pipeline(inst, spec, penalised);
    spec.mode = FilterMode::Semiclassical;
    PipelineResult rs = run_pipeline(inst, spec, penalised);
    spec.mode = FilterMode::PowerSumOracle;
    PipelineResult ro = run_pipeline(inst, spec, penalised);
    px_dev = std::max({px_dev, (rc.p_x - rs.p_x).cwiseAbs().maxCoeff(),
                       (rc.p_x - ro.p_x).cwiseAbs().maxCoeff(),
                       (rs.p_x - ro.p_x).cwiseAbs().maxCoeff()});
    s_dev = std::max(
        {s_dev, std::abs(rc.success_probability - rs.success_probability),
         std::abs(rc.success_probability - ro.success_probability)});
    double prod = 1.0;
    for (double p : rs.round_probs) prod *= p;
    round_dev = std::max(round_dev,
                         std::abs(prod - rs.success_probability));
  };
  for (int m = 1; m <= 3; ++m) compare(m, true);
  compare(2, false);
  suite.upper("filter/" + tag + "/mode-equivalence-px", px_dev, 1e-9,
              "coherent, semiclassical, power-sum p_X agree");
  suite.upper("filter/" + tag + "/mode-equivalence-success", s_dev, 1e-10,
              "success probabilities agree");
  suite.upper("filter/" + tag + "/semiclassical-round-product", round_dev,
              1e-12, "per-round survivals multiply to the success weight");
}

void filter_formula_checks(Suite& suite) {
  double unit = 0.0;
  double zero = 0.0;
  for (int m = 1; m <= 8; ++m) {
    unit = std::max(unit, std::abs(dirichlet_weight(0.0, m) - 1.0));
    zero = std::max(zero,
                    std::abs(dirichlet_weight(2.0 * M_PI / std::ldexp(1.0, m), m)));
  }
  suite.upper("filter/dirichlet-unit", unit, 1e-15,
              "weight 1 at phase zero for m = 1..8");
  suite.upper("filter/dirichlet-first-zero", zero, 1e-12,
              "weight vanishes at phi = 2pi/2^m");
  suite.upper("filter/dirichlet-spot",
              std::abs(dirichlet_weight(M_PI / 2.0, 1) - M_SQRT1_2), 1e-12,
              "m=1 response at phi = pi/2 is 1/sqrt(2)");
  suite.equal("filter/required-precision-unit-gap", required_precision(1.0), 3);

  // Closed-form survival weights against a direct power-sum of a diagonal
  // unitary (its eigenbasis is the computational basis, so the sum over
  // eigencomponents is exact, not approximate).
  const std::vector<double> thetas = {0.0, 0.3, 2.0 * M_PI / 8.0, M_PI};
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(4, cplx(0.5, 0.0));
  auto apply = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      w(k) = v(k) * std::polar(1.0, thetas[static_cast<std::size_t>(k)]);
    }
    return w;
  };
  auto [state, prob] = power_sum_filter(apply, psi0, 3);
  (void)state;
  double direct = 0.0;
  for (double th : thetas) direct += survival_probability(0.5, th, 3);
  suite.upper("filter/survival-sum-synthetic", std::abs(prob - direct), 1e-12,
              "power-sum success equals the survival-weight sum");
}

void survival_sum_pipeline(Suite& suite, const ProblemInstance& inst) {
  const std::string tag = inst.tag();
  const int m = 3;
  RegisterLayout lay = RegisterLayout::make(inst);
  SparseState seed(lay.total);
  seed.amplitudes()[0] = 1.0;
  seed.apply(build_seed(inst, lay));
  seed.prune();

  Circuit step = build_walk_step(inst, lay, kPenaltyPhase);
  std::vector<std::uint64_t> seeds;
  seeds.reserve(seed.amplitudes().size());
  for (const auto& [idx, amp] : seed.amplitudes()) seeds.push_back(idx);
  std::vector<std::uint64_t> support =
      invariant_support(step, seeds, lay.total, std::size_t{1} << 16);
  Eigen::MatrixXcd VS = support_matrix(step, lay.total, support);

  const Eigen::Index dim = VS.rows();
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    auto it = seed.amplitudes().find(support[static_cast<std::size_t>(i)]);
    if (it != seed.amplitudes().end()) psi0(i) = it->second;
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(VS, true);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) order[static_cast<std::size_t>(i)] = i;
  auto phase = [&](Eigen::Index i) { return std::arg(ces.eigenvalues()(i)); };
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return phase(a) < phase(b); });

  // Cluster eigenphases, orthonormalise each cluster's eigenvectors and sum
  // the closed-form survival weights of the projections of psi0.
  double direct = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && phase(order[j]) - phase(order[j - 1]) < 1e-8) ++j;
    Eigen::MatrixXcd block(dim, static_cast<Eigen::Index>(j - i));
    for (std::size_t k = i; k < j; ++k) {
      block.col(static_cast<Eigen::Index>(k - i)) =
          ces.eigenvectors().col(order[k]);
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
    Eigen::MatrixXcd q = qr.householderQ() *
                         Eigen::MatrixXcd::Identity(dim, block.cols());
    double alpha2 = (q.adjoint() * psi0).squaredNorm();
    direct += survival_probability(std::sqrt(alpha2), phase(order[i]), m);
    i = j;
  }

  FilterSpec spec;
  spec.m = m;
  spec.varphi = kPenaltyPhase;
  spec.mode = FilterMode::Coherent;
  PipelineResult rc = run_pipeline(inst, spec);
  suite.upper("filter/" + tag + "/survival-sum-pipeline",
              std::abs(direct - rc.success_probability), 1e-9,
              "eigencomponent survival weights sum to the pipeline success");
}

void hot_start_check(Suite& suite) {
  ProblemInstance hot = build_ising(4, 1.0, 0.0, 1e-9);
  FilterSpec spec;
  spec.m = 3;
  spec.varphi = kPenaltyPhase;
  spec.mode = FilterMode::PowerSumOracle;
  PipelineResult r = run_pipeline(hot, spec);
  double dev = (r.p_x.array() - 1.0 / 16.0).abs().maxCoeff();
  suite.upper("filter/ising-4/hot-start-uniformity", dev, 1e-6,
              "beta -> 0 sampling converges to the uniform distribution");
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  Suite suite;

  const ProblemInstance grid4 = build_double_well(4, 1.0);
  const ProblemInstance grid2 = build_double_well(2, 1.0);
  const ProblemInstance ising4 = build_ising(4, 1.0, 0.0, 1.0);
  const ProblemInstance ising2 = build_ising(2, 1.0, 0.0, 1.0);

  for (const ProblemInstance* inst : {&grid4, &ising4, &grid2, &ising2}) {
    classical_checks(suite, *inst);
  }

  synthetic_checks(suite, grid4, grid4.tag());
  synthetic_checks(suite, ising4, ising4.tag());
  synthetic_checks(suite, grid2, grid2.tag());
  for (double beta : {0.25, 1.0, 4.0}) {
    char label[64];
    std::snprintf(label, sizeof label, "ising-2/beta=%.2f", beta);
    synthetic_checks(suite, build_ising(2, 1.0, 0.0, beta), label);
  }
  {
    Distribution pi = gibbs_distribution(grid4);
    SpectralGap gap = spectral_gap(mh_kernel(grid4), pi);
    suite.equal("spectral/doublewell-4/required-precision",
                required_precision(gap.delta), 5,
                "phase bits needed to resolve sqrt(delta)");
  }

  operator_checks(suite, grid2);
  operator_checks(suite, ising2);

  oracle_cleanliness(suite, grid4);
  oracle_cleanliness(suite, ising4);

  target_preservation(suite, grid2);
  target_preservation(suite, grid4);
  target_preservation(suite, ising4);

  seed_identity(suite, grid4);
  seed_identity(suite, ising4);

  decode_checks(suite, grid2);
  decode_checks(suite, grid4);
  decode_checks(suite, ising4);

  commutator_check(suite, grid2);
  if (options.include_dense_kernel_checks) {
    degeneracy_checks(suite, grid2);
  }

  mode_equivalence(suite, grid2);
  mode_equivalence(suite, ising2);
  filter_formula_checks(suite);
  survival_sum_pipeline(suite, grid2);
  hot_start_check(suite);

  return suite.out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string format_check(const CheckResult& result) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "[%s] %-55s measured=%.6e limit=%.6e%s%s",
                result.pass ? "PASS" : "FAIL", result.name.c_str(),
                result.measured, result.tolerance,
                result.details.empty() ? "" : "  ",
                result.details.c_str());
  return buf;
}

}  // namespace qmh
