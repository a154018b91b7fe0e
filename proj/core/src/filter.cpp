// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/filter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qmh/circuits.hpp"
#include "qmh/errors.hpp"
#include "qmh/layout.hpp"
#include "qmh/operators.hpp"
#include "qmh/statevector.hpp"

namespace qmh {

std::string to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::Coherent: return "coherent";
    case FilterMode::Semiclassical: return "semiclassical";
    case FilterMode::PowerSumOracle: return "power-sum-oracle";
  }
  throw std::invalid_argument("unknown filter mode");
}

FilterMode filter_mode_from_string(const std::string& name) {
  if (name == "coherent") return FilterMode::Coherent;
  if (name == "semiclassical") return FilterMode::Semiclassical;
  if (name == "power-sum-oracle" || name == "oracle") {
    return FilterMode::PowerSumOracle;
  }
  throw std::invalid_argument("unknown filter mode: " + name);
}

double dirichlet_weight(double phi, int m) {
  if (m < 1) throw std::invalid_argument("precision must be at least 1");
  const double half = std::sin(0.5 * phi);
  if (half == 0.0) return 1.0;  // analytic phi -> 0 limit
  return std::sin(std::ldexp(phi, m - 1)) / (std::ldexp(1.0, m) * half);
}

double survival_probability(double alpha, double phi, int m) {
  const double w = dirichlet_weight(phi, m);
  return alpha * alpha * w * w;
}

int required_precision(double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("spectral gap must lie in (0, 1]");
  }
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  for (int m = 1; m <= 64; ++m) {
    // 2*pi/2^m <= sqrt(delta), squared to keep boundary cases exact
    if (four_pi2 <= delta * std::ldexp(1.0, 2 * m)) return m;
  }
  throw std::invalid_argument("spectral gap too small to resolve");
}

std::pair<Eigen::VectorXcd, double> power_sum_filter(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
    const Eigen::VectorXcd& psi0, int m) {
  if (m < 1) throw std::invalid_argument("precision must be at least 1");
  Eigen::VectorXcd acc = psi0;
  Eigen::VectorXcd cur = psi0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < total; ++k) {
    cur = apply(cur);
    acc += cur;
  }
  acc /= static_cast<double>(total);
  const double p = acc.squaredNorm();
  if (p < 1e-14) {
    throw EmptyBranchError("filtered state has vanishing norm");
  }
  acc /= std::sqrt(p);
  return {std::move(acc), p};
}

namespace {

bool is_full_size(const ProblemInstance& inst) { return inst.state_count >= 16; }

double effective_varphi(const FilterSpec& spec, bool penalised) {
  return penalised ? spec.varphi : 0.0;
}

/// Decodes a normalized sparse filtered state and reads off the register-x
/// marginal.
Eigen::VectorXd decode_marginal_sparse(SparseState& st,
                                       const ProblemInstance& inst,
                                       const RegisterLayout& lay) {
  st.apply(build_decoding(inst, lay));
  Eigen::VectorXd p_x = Eigen::VectorXd::Zero(inst.state_count);
  for (const auto& [idx, amp] : st.amplitudes()) {
    int v = 0;
    for (int k = 0; k < lay.state_bits; ++k) {
      v |= static_cast<int>((idx >> lay.x[k]) & 1u) << k;
    }
    p_x[v] += std::norm(amp);
  }
  return p_x;
}

Eigen::VectorXd decode_marginal_dense(Statevector& sv,
                                      const ProblemInstance& inst,
                                      const RegisterLayout& lay) {
  sv.apply(build_decoding(inst, lay));
  const std::vector<double> marg = sv.marginal(lay.x);
  Eigen::VectorXd p_x(inst.state_count);
  for (int v = 0; v < inst.state_count; ++v) p_x[v] = marg[v];
  return p_x;
}

/// The walk restricted to the closed invariant support reachable from the
/// seed, plus the seed's coordinates in that basis.
struct OracleRestriction {
  RegisterLayout lay;
  std::vector<std::uint64_t> support;
  Eigen::MatrixXcd v;
  Eigen::VectorXcd psi0;
};

OracleRestriction oracle_restriction(const ProblemInstance& inst,
                                     double varphi,
                                     const PipelineCaps& caps) {
  OracleRestriction r{RegisterLayout::make(inst, 0), {}, {}, {}};
  const Circuit step = build_walk_step(inst, r.lay, varphi);

  SparseState seed(r.lay.total);
  seed.amplitudes()[0] = 1.0;
  seed.apply(build_seed(inst, r.lay));

  std::vector<std::uint64_t> seed_support;
  seed_support.reserve(seed.amplitudes().size());
  for (const auto& [i, a] : seed.amplitudes()) seed_support.push_back(i);
  r.support = invariant_support(step, seed_support, r.lay.total,
                                caps.support_cap);
  r.v = support_matrix(step, r.lay.total, r.support);

  r.psi0.resize(static_cast<std::int64_t>(r.support.size()));
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    const auto it = seed.amplitudes().find(r.support[i]);
    r.psi0[static_cast<std::int64_t>(i)] =
        it == seed.amplitudes().end() ? cplx{0.0, 0.0} : it->second;
  }
  return r;
}

/// Lifts a normalized filtered vector back to register space and decodes.
PipelineResult oracle_decode(const OracleRestriction& r,
                             const ProblemInstance& inst,
                             const Eigen::VectorXcd& filtered, double p) {
  SparseState out(r.lay.total);
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    const cplx a = filtered[static_cast<std::int64_t>(i)];
    if (a != cplx{0.0, 0.0}) out.amplitudes()[r.support[i]] = a;
  }
  PipelineResult res;
  res.success_probability = p;
  res.p_x = decode_marginal_sparse(out, inst, r.lay);
  return res;
}

PipelineResult run_oracle(const ProblemInstance& inst, const FilterSpec& spec,
                          bool penalised, const PipelineCaps& caps) {
  const OracleRestriction r =
      oracle_restriction(inst, effective_varphi(spec, penalised), caps);
  auto apply = [&r](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return r.v * v;
  };
  auto [filtered, p] = power_sum_filter(apply, r.psi0, spec.m);
  return oracle_decode(r, inst, filtered, p);
}

PipelineResult run_semiclassical(const ProblemInstance& inst,
                                 const FilterSpec& spec, bool penalised,
                                 const PipelineCaps& caps) {
  const RegisterLayout lay = RegisterLayout::make(inst, 1);
  if (lay.total > caps.sim_qubits) {
    throw CapacityError("semiclassical layout exceeds the simulation cap");
  }
  const double varphi = effective_varphi(spec, penalised);
  const int anc = lay.p[0];
  const Circuit ctrl_step =
      build_walk_step(inst, lay, varphi, ControlBit{anc, 1});

  Statevector sv = seed_state(inst, lay);
  PipelineResult res;
  res.success_probability = 1.0;
  for (int k = spec.m - 1; k >= 0; --k) {
    sv.apply(gate_h(anc));
    for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << k); ++rep) {
      sv.apply(ctrl_step);
    }
    sv.apply(gate_h(anc));
    const double pk = sv.postselect(anc, 0);
    if (pk < 1e-14) {
      throw EmptyBranchError("semiclassical round has vanishing branch weight");
    }
    res.round_probs.push_back(pk);
    res.success_probability *= pk;
  }
  res.p_x = decode_marginal_dense(sv, inst, lay);
  return res;
}

PipelineResult run_coherent(const ProblemInstance& inst, const FilterSpec& spec,
                            bool penalised, const PipelineCaps& caps) {
  if (spec.m >= 5 && is_full_size(inst)) {
    throw CapacityError(
        "coherent filtering at full scale supports m <= 4; "
        "use semiclassical or power-sum-oracle mode");
  }
  const RegisterLayout lay = RegisterLayout::make(inst, spec.m);
  if (lay.total > caps.sim_qubits) {
    throw CapacityError("coherent layout exceeds the simulation cap");
  }
  Statevector sv = seed_state(inst, lay);
  sv.apply(build_qpe(inst, lay, effective_varphi(spec, penalised)));

  PipelineResult res;
  res.success_probability = 1.0;
  for (int q : lay.p) {
    const double pq = sv.postselect(q, 0);
    if (pq < 1e-14) {
      throw EmptyBranchError("phase-register postselection has zero weight");
    }
    res.success_probability *= pq;
  }
  // The phase register occupies the top qubits; after postselection the
  // state lives in the low block, so shrink before decoding.
  const int base_qubits = lay.total - spec.m;
  Statevector compact(base_qubits);
  for (std::uint64_t i = 0; i < compact.dimension(); ++i) {
    compact.amplitudes()[i] = sv.amplitudes()[i];
  }
  const RegisterLayout base_lay = RegisterLayout::make(inst, 0);
  res.p_x = decode_marginal_dense(compact, inst, base_lay);
  return res;
}

} // namespace

std::vector<PipelineResult> run_oracle_sweep(const ProblemInstance& inst,
                                             const std::vector<int>& m_list,
                                             double varphi, bool penalised,
                                             const PipelineCaps& caps) {
  if (m_list.empty()) throw std::invalid_argument("empty precision list");
  for (const int m : m_list) {
    if (m < 1) throw std::invalid_argument("precision must be at least 1");
  }
  if (varphi < 0.0 || varphi >= 2.0 * std::numbers::pi) {
    throw std::invalid_argument("penalty phase must lie in [0, 2*pi)");
  }
  const OracleRestriction r =
      oracle_restriction(inst, penalised ? varphi : 0.0, caps);

  std::vector<int> ms = m_list;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  std::map<int, PipelineResult> by_m;
  Eigen::VectorXcd acc = r.psi0;
  Eigen::VectorXcd cur = r.psi0;
  std::uint64_t terms = 1;
  for (const int m : ms) {
    const std::uint64_t want = std::uint64_t{1} << m;
    for (; terms < want; ++terms) {
      cur = r.v * cur;
      acc += cur;
    }
    Eigen::VectorXcd filtered = acc / static_cast<double>(want);
    const double p = filtered.squaredNorm();
    if (p < 1e-14) {
      throw EmptyBranchError("filtered state has vanishing norm");
    }
    filtered /= std::sqrt(p);
    PipelineResult res = oracle_decode(r, inst, filtered, p);
    res.instance = inst.tag();
    res.mode = FilterMode::PowerSumOracle;
    res.m = m;
    res.varphi = varphi;
    res.penalised = penalised;
    by_m.emplace(m, std::move(res));
  }

  std::vector<PipelineResult> out;
  out.reserve(m_list.size());
  for (const int m : m_list) out.push_back(by_m.at(m));
  return out;
}

PipelineResult run_pipeline(const ProblemInstance& inst, const FilterSpec& spec,
                            bool penalised, const PipelineCaps& caps) {
  if (spec.m < 1) throw std::invalid_argument("precision must be at least 1");
  if (spec.varphi < 0.0 || spec.varphi >= 2.0 * std::numbers::pi) {
    throw std::invalid_argument("penalty phase must lie in [0, 2*pi)");
  }
  PipelineResult res;
  switch (spec.mode) {
    case FilterMode::PowerSumOracle:
      res = run_oracle(inst, spec, penalised, caps);
      break;
    case FilterMode::Semiclassical:
      res = run_semiclassical(inst, spec, penalised, caps);
      break;
    case FilterMode::Coherent:
      res = run_coherent(inst, spec, penalised, caps);
      break;
  }
  res.instance = inst.tag();
  res.mode = spec.mode;
  res.m = spec.m;
  res.varphi = spec.varphi;
  res.penalised = penalised;
  return res;
}

} // namespace qmh
