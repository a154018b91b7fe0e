// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/circuits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qmh/kernels.hpp"

namespace qmh {

namespace {

void append(Circuit& dst, const Circuit& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

/// CNOT fan: dst[k] ^= src[k].
Circuit copy_register(const std::vector<int>& src, const std::vector<int>& dst) {
  Circuit g;
  for (std::size_t k = 0; k < src.size(); ++k) {
    g.push_back(gate_x(dst[k], {{src[k], 1}}));
  }
  return g;
}

/// Little-endian bit pattern of value v over the register qs as controls.
std::vector<ControlBit> pattern_controls(const std::vector<int>& qs, int v) {
  std::vector<ControlBit> cc;
  cc.reserve(qs.size());
  for (std::size_t k = 0; k < qs.size(); ++k) {
    cc.push_back({qs[k], (v >> k) & 1});
  }
  return cc;
}

std::vector<ControlBit> operator+(std::vector<ControlBit> a,
                                  const std::vector<ControlBit>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

} // namespace

Circuit build_ot(const ProblemInstance& inst, const RegisterLayout& lay,
                 const std::vector<int>& tail, const std::vector<int>& head) {
  return inst.kind == ProblemInstance::Kind::DoubleWell
             ? build_ot_grid(inst, lay, tail, head)
             : build_ot_ising(inst, lay, tail, head);
}

Circuit build_ot_grid(const ProblemInstance& inst, const RegisterLayout& lay,
                      const std::vector<int>& tail, const std::vector<int>& head) {
  if (inst.kind != ProblemInstance::Kind::DoubleWell) {
    throw std::invalid_argument("grid proposal oracle needs a grid instance");
  }
  Circuit g = copy_register(tail, head);
  if (inst.grid_side == 4) {
    if (lay.c.size() != 2 || lay.d.size() != 2) {
      throw std::invalid_argument("grid side 4 needs coin and scratch width 2");
    }
    const int dq = lay.c[0], aq = lay.c[1];  // direction, axis
    const int dd = lay.d[0], ad = lay.d[1];
    g.push_back(gate_h(dq));
    g.push_back(gate_h(aq));
    // +-1 (mod 4) on a coordinate pair (lo, hi), conditioned on the coin.
    auto inc = [&g](int lo, int hi, std::vector<ControlBit> cc) {
      g.push_back(gate_x(hi, cc + std::vector<ControlBit>{{lo, 1}}));
      g.push_back(gate_x(lo, std::move(cc)));
    };
    auto dec = [&g](int lo, int hi, std::vector<ControlBit> cc) {
      g.push_back(gate_x(lo, cc));
      g.push_back(gate_x(hi, cc + std::vector<ControlBit>{{lo, 1}}));
    };
    inc(head[0], head[1], {{dq, 0}, {aq, 0}});
    dec(head[0], head[1], {{dq, 1}, {aq, 0}});
    inc(head[2], head[3], {{dq, 0}, {aq, 1}});
    dec(head[2], head[3], {{dq, 1}, {aq, 1}});
    // Recompute axis (which coordinate moved) and direction into the scratch
    // register, cancel the coin against it, then uncompute.
    Circuit cmp;
    cmp.push_back(gate_x(ad, {{tail[2], 1}}));
    cmp.push_back(gate_x(ad, {{head[2], 1}}));
    for (int t : {tail[3], head[3], tail[2]}) {
      cmp.push_back(gate_x(dd, {{ad, 1}, {t, 1}}));
    }
    for (int t : {tail[1], head[1], tail[0]}) {
      cmp.push_back(gate_x(dd, {{ad, 0}, {t, 1}}));
    }
    append(g, cmp);
    g.push_back(gate_x(dq, {{dd, 1}}));
    g.push_back(gate_x(aq, {{ad, 1}}));
    append(g, inverse(cmp));
  } else if (inst.grid_side == 2) {
    if (lay.c.empty() || lay.d.empty()) {
      throw std::invalid_argument("grid side 2 needs coin and scratch width 1");
    }
    const int c0 = lay.c[0];
    const int d0 = lay.d[0];
    g.push_back(gate_h(c0));
    g.push_back(gate_x(head[0], {{c0, 0}}));
    g.push_back(gate_x(head[1], {{c0, 1}}));
    Circuit cmp;
    cmp.push_back(gate_x(d0, {{tail[1], 1}}));
    cmp.push_back(gate_x(d0, {{head[1], 1}}));
    append(g, cmp);
    g.push_back(gate_x(c0, {{d0, 1}}));
    append(g, inverse(cmp));
  } else {
    throw std::invalid_argument("grid proposal circuits support sides 2 and 4");
  }
  return g;
}

Circuit build_ot_ising(const ProblemInstance& inst, const RegisterLayout& lay,
                       const std::vector<int>& tail, const std::vector<int>& head) {
  if (inst.kind != ProblemInstance::Kind::Ising) {
    throw std::invalid_argument("spin proposal oracle needs a spin instance");
  }
  const int n = inst.n_spins;
  const int w = static_cast<int>(lay.c.size());
  if ((1 << w) != n) {
    throw std::invalid_argument("coin width must be log2(n_spins)");
  }
  Circuit g = copy_register(tail, head);
  for (int cq : lay.c) g.push_back(gate_h(cq));
  for (int k = 0; k < n; ++k) {
    g.push_back(gate_x(head[k], pattern_controls(lay.c, k)));
  }
  // The flipped-spin index appears as the parities tail_k xor head_k;
  // accumulate them onto the coin to restore it to |0>.
  for (int j = 0; j < w; ++j) {
    for (int k = 0; k < n; ++k) {
      if ((k >> j) & 1) {
        g.push_back(gate_x(lay.c[j], {{tail[k], 1}}));
        g.push_back(gate_x(lay.c[j], {{head[k], 1}}));
      }
    }
  }
  return g;
}

Circuit build_acceptance(const ProblemInstance& inst, const RegisterLayout& lay,
                         bool starred) {
  const std::vector<int>& src1 = starred ? lay.x : lay.z;
  const std::vector<int>& src2 = starred ? lay.y : lay.xc;
  const std::vector<int>& guard = starred ? lay.z : lay.x;
  Circuit g;
  for (const auto& [u, t] : directed_edges(inst)) {
    const double theta = 2.0 * std::asin(std::sqrt(mh_acceptance(inst, u, t)));
    g.push_back(gate_ry(lay.a, theta,
                        pattern_controls(src1, u) + pattern_controls(src2, t) +
                            pattern_controls(guard, u)));
  }
  return g;
}

Circuit build_box(const ProblemInstance& inst, const RegisterLayout& lay) {
  Circuit g = copy_register(lay.x, lay.z);
  append(g, build_ot(inst, lay, lay.z, lay.xc));
  append(g, build_acceptance(inst, lay, /*starred=*/false));
  for (int k = 0; k < lay.state_bits; ++k) {
    g.push_back(gate_swap(lay.z[k], lay.xc[k], {{lay.a, 1}}));
  }
  return g;
}

Circuit build_boxstar(const ProblemInstance& inst, const RegisterLayout& lay) {
  Circuit g = copy_register(lay.x, lay.z);
  append(g, build_acceptance(inst, lay, /*starred=*/true));
  for (int k = 0; k < lay.state_bits; ++k) {
    g.push_back(gate_x(lay.z[k], {{lay.a, 1}, {lay.x[k], 1}}));
    g.push_back(gate_x(lay.z[k], {{lay.a, 1}, {lay.y[k], 1}}));
  }
  append(g, build_ot(inst, lay, lay.z, lay.xc));
  return g;
}

Circuit build_boxtimes(const ProblemInstance& inst, const RegisterLayout& lay) {
  Circuit g = controlled(build_boxstar(inst, lay), {lay.b, 0});
  append(g, controlled(build_box(inst, lay), {lay.b, 1}));
  return g;
}

Circuit build_shift(const RegisterLayout& lay, std::optional<ControlBit> ctrl) {
  const std::vector<ControlBit> cc =
      ctrl ? std::vector<ControlBit>{*ctrl} : std::vector<ControlBit>{};
  Circuit g;
  g.push_back(gate_x(lay.b, cc));
  for (int k = 0; k < lay.state_bits; ++k) {
    g.push_back(gate_swap(lay.x[k], lay.z[k], cc));
  }
  for (int k = 0; k < lay.state_bits; ++k) {
    g.push_back(gate_swap(lay.y[k], lay.xc[k], cc));
  }
  return g;
}

Circuit build_phase_block(const std::vector<int>& tested, int flag, double angle,
                          std::optional<ControlBit> ctrl) {
  std::vector<ControlBit> zeros;
  zeros.reserve(tested.size());
  for (int q : tested) zeros.push_back({q, 0});
  std::vector<ControlBit> pc;
  if (ctrl) pc.push_back(*ctrl);
  Circuit g;
  g.push_back(gate_x(flag, zeros));  // flag = 1 iff all tested qubits are 0
  g.push_back(gate_x(flag));
  g.push_back(gate_phase(flag, angle, pc));
  g.push_back(gate_x(flag));
  g.push_back(gate_x(flag, std::move(zeros)));
  return g;
}

Circuit build_walk_step(const ProblemInstance& inst, const RegisterLayout& lay,
                        double varphi, std::optional<ControlBit> ctrl) {
  Circuit g = build_shift(lay, ctrl);
  const Circuit enc = build_boxtimes(inst, lay);
  append(g, inverse(enc));
  append(g, build_phase_block(lay.reflection_test_qubits(), lay.flag,
                              std::numbers::pi, ctrl));
  if (varphi != 0.0) {
    append(g, build_phase_block(lay.membership_test_qubits(), lay.flag, varphi,
                                ctrl));
  }
  append(g, enc);
  return g;
}

Circuit build_penalty(const ProblemInstance& inst, const RegisterLayout& lay,
                      double varphi, std::optional<ControlBit> ctrl) {
  const Circuit enc = build_boxtimes(inst, lay);
  Circuit g = inverse(enc);
  append(g, build_phase_block(lay.membership_test_qubits(), lay.flag, varphi,
                              ctrl));
  append(g, enc);
  return g;
}

Circuit build_decoding(const ProblemInstance& inst, const RegisterLayout& lay) {
  Circuit g;
  for (int k = 0; k < lay.state_bits; ++k) {
    g.push_back(gate_swap(lay.x[k], lay.z[k], {{lay.b, 0}}));
    g.push_back(gate_swap(lay.y[k], lay.xc[k], {{lay.b, 0}}));
  }
  append(g, inverse(build_box(inst, lay)));
  append(g, inverse(build_ot(inst, lay, lay.x, lay.y)));
  return g;
}

Circuit build_seed(const ProblemInstance& inst, const RegisterLayout& lay) {
  Circuit g;
  g.push_back(gate_h(lay.b));
  for (int q : lay.x) g.push_back(gate_h(q));
  append(g, build_ot(inst, lay, lay.x, lay.y));
  append(g, build_boxtimes(inst, lay));
  return g;
}

Statevector seed_state(const ProblemInstance& inst, const RegisterLayout& lay) {
  Statevector sv(lay.total);
  sv.apply(build_seed(inst, lay));
  return sv;
}

Circuit build_inverse_qft(const std::vector<int>& qubits) {
  const int m = static_cast<int>(qubits.size());
  Circuit g;
  // Inverse of the QFT |j> -> 2^{-m/2} sum_k exp(2 pi i jk / 2^m)|k> on
  // little-endian qubits: bit-reversal swaps, then for each qubit (ascending)
  // the negative controlled phases from all lower qubits followed by H.
  for (int i = 0; i < m / 2; ++i) {
    g.push_back(gate_swap(qubits[i], qubits[m - 1 - i]));
  }
  for (int t = 0; t < m; ++t) {
    for (int r = 0; r < t; ++r) {
      const double angle = -std::numbers::pi / static_cast<double>(1 << (t - r));
      g.push_back(gate_phase(qubits[t], angle, {{qubits[r], 1}}));
    }
    g.push_back(gate_h(qubits[t]));
  }
  return g;
}

Circuit build_qpe(const ProblemInstance& inst, const RegisterLayout& lay,
                  double varphi) {
  if (lay.p.empty()) {
    throw std::invalid_argument("phase estimation needs a phase register");
  }
  Circuit g;
  for (int q : lay.p) g.push_back(gate_h(q));
  for (std::size_t j = 0; j < lay.p.size(); ++j) {
    const Circuit step =
        build_walk_step(inst, lay, varphi, ControlBit{lay.p[j], 1});
    for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << j); ++rep) {
      append(g, step);
    }
  }
  append(g, build_inverse_qft(lay.p));
  return g;
}

} // namespace qmh
