// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmh {

namespace {

void check_qubit(int q, int nq, const char* what) {
  if (q < 0 || q >= nq) {
    throw std::out_of_range(std::string(what) + " qubit " + std::to_string(q) +
                            " out of range for " + std::to_string(nq) +
                            " qubits");
  }
}

void check_gate(const Gate& g, int nq) {
  check_qubit(g.target, nq, "target");
  std::uint64_t used = std::uint64_t{1} << g.target;
  if (g.kind == GateKind::Swap) {
    check_qubit(g.target2, nq, "target");
    if (g.target2 == g.target) throw std::invalid_argument("swap targets equal");
    used |= std::uint64_t{1} << g.target2;
  }
  for (const auto& c : g.controls) {
    check_qubit(c.qubit, nq, "control");
    if (c.value != 0 && c.value != 1) {
      throw std::invalid_argument("control value must be 0 or 1");
    }
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (used & bit) {
      throw std::invalid_argument("control overlaps target or another control");
    }
    used |= bit;
  }
  if (!std::isfinite(g.angle)) throw std::invalid_argument("non-finite angle");
}

/// Precomputed enumeration of the indices a gate touches: iterate a counter
/// over the free qubits and expand it by inserting zero bits at each special
/// (target/control) position, then OR in the required control values.
struct GateSpan {
  std::vector<std::uint64_t> low_masks;  ///< per special position, ascending
  std::uint64_t base_or = 0;             ///< control-value bits
  std::uint64_t count = 0;               ///< number of free-qubit assignments
};

GateSpan make_span(const Gate& g, int nq) {
  std::vector<int> specials{g.target};
  if (g.kind == GateKind::Swap) specials.push_back(g.target2);
  GateSpan span;
  for (const auto& c : g.controls) {
    specials.push_back(c.qubit);
    if (c.value) span.base_or |= std::uint64_t{1} << c.qubit;
  }
  std::sort(specials.begin(), specials.end());
  span.low_masks.reserve(specials.size());
  for (int pos : specials) {
    span.low_masks.push_back((std::uint64_t{1} << pos) - 1);
  }
  span.count = std::uint64_t{1} << (nq - static_cast<int>(specials.size()));
  return span;
}

inline std::uint64_t expand(std::uint64_t r,
                            const std::vector<std::uint64_t>& low_masks) {
  for (std::uint64_t low : low_masks) {
    r = (r & low) | ((r & ~low) << 1);
  }
  return r;
}

bool controls_satisfied(std::uint64_t idx, const std::vector<ControlBit>& cc) {
  for (const auto& c : cc) {
    if (((idx >> c.qubit) & 1u) != static_cast<std::uint64_t>(c.value)) {
      return false;
    }
  }
  return true;
}

} // namespace

Gate gate_x(int target, std::vector<ControlBit> controls) {
  return Gate{GateKind::X, target, -1, std::move(controls), 0.0};
}
Gate gate_h(int target, std::vector<ControlBit> controls) {
  return Gate{GateKind::H, target, -1, std::move(controls), 0.0};
}
Gate gate_phase(int target, double angle, std::vector<ControlBit> controls) {
  return Gate{GateKind::Phase, target, -1, std::move(controls), angle};
}
Gate gate_ry(int target, double angle, std::vector<ControlBit> controls) {
  return Gate{GateKind::Ry, target, -1, std::move(controls), angle};
}
Gate gate_swap(int target, int target2, std::vector<ControlBit> controls) {
  return Gate{GateKind::Swap, target, target2, std::move(controls), 0.0};
}

Gate inverse(const Gate& g) {
  Gate inv = g;
  if (g.kind == GateKind::Phase || g.kind == GateKind::Ry) inv.angle = -g.angle;
  return inv;
}

Circuit inverse(const Circuit& circ) {
  Circuit inv;
  inv.reserve(circ.size());
  for (auto it = circ.rbegin(); it != circ.rend(); ++it) {
    inv.push_back(inverse(*it));
  }
  return inv;
}

Circuit controlled(const Circuit& circ, ControlBit ctrl) {
  Circuit out = circ;
  for (Gate& g : out) g.controls.push_back(ctrl);
  return out;
}

Statevector::Statevector(int num_qubits) : nq_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  amp_.assign(std::uint64_t{1} << num_qubits, cplx{0.0, 0.0});
  amp_[0] = 1.0;
}

Statevector Statevector::basis(int num_qubits, std::uint64_t index) {
  Statevector sv(num_qubits);
  if (index >= sv.dimension()) throw std::out_of_range("basis index");
  sv.amp_[0] = 0.0;
  sv.amp_[index] = 1.0;
  return sv;
}

void Statevector::apply(const Gate& g) {
  check_gate(g, nq_);
  const GateSpan span = make_span(g, nq_);
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  cplx* a = amp_.data();
  switch (g.kind) {
    case GateKind::X: {
      for (std::uint64_t r = 0; r < span.count; ++r) {
        const std::uint64_t i0 = expand(r, span.low_masks) | span.base_or;
        std::swap(a[i0], a[i0 | tbit]);
      }
      break;
    }
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      for (std::uint64_t r = 0; r < span.count; ++r) {
        const std::uint64_t i0 = expand(r, span.low_masks) | span.base_or;
        const cplx v0 = a[i0];
        const cplx v1 = a[i0 | tbit];
        a[i0] = s * (v0 + v1);
        a[i0 | tbit] = s * (v0 - v1);
      }
      break;
    }
    case GateKind::Phase: {
      const cplx ph = std::polar(1.0, g.angle);
      for (std::uint64_t r = 0; r < span.count; ++r) {
        const std::uint64_t i0 = expand(r, span.low_masks) | span.base_or;
        a[i0 | tbit] *= ph;
      }
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      for (std::uint64_t r = 0; r < span.count; ++r) {
        const std::uint64_t i0 = expand(r, span.low_masks) | span.base_or;
        const cplx v0 = a[i0];
        const cplx v1 = a[i0 | tbit];
        a[i0] = c * v0 - s * v1;
        a[i0 | tbit] = s * v0 + c * v1;
      }
      break;
    }
    case GateKind::Swap: {
      const std::uint64_t t2bit = std::uint64_t{1} << g.target2;
      for (std::uint64_t r = 0; r < span.count; ++r) {
        const std::uint64_t i0 = expand(r, span.low_masks) | span.base_or;
        std::swap(a[i0 | tbit], a[i0 | t2bit]);
      }
      break;
    }
  }
}

void Statevector::apply(const Circuit& circ) {
  for (const Gate& g : circ) apply(g);
}

double Statevector::norm2() const {
  double s = 0.0;
  for (const cplx& v : amp_) s += std::norm(v);
  return s;
}

double Statevector::postselect(int qubit, int value) {
  check_qubit(qubit, nq_, "postselect");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const std::uint64_t want = value ? bit : 0;
  double kept = 0.0;
  for (std::uint64_t i = 0; i < amp_.size(); ++i) {
    if ((i & bit) == want) {
      kept += std::norm(amp_[i]);
    } else {
      amp_[i] = 0.0;
    }
  }
  if (kept > 0.0) {
    const double scale = 1.0 / std::sqrt(kept);
    for (cplx& v : amp_) v *= scale;
  }
  return kept;
}

std::vector<double> Statevector::marginal(const std::vector<int>& qubits) const {
  for (int q : qubits) check_qubit(q, nq_, "marginal");
  std::vector<double> out(std::uint64_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < amp_.size(); ++i) {
    const double w = std::norm(amp_[i]);
    if (w == 0.0) continue;
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      v |= ((i >> qubits[k]) & 1u) << k;
    }
    out[v] += w;
  }
  return out;
}

cplx Statevector::overlap(const Statevector& other) const {
  if (other.nq_ != nq_) throw std::invalid_argument("qubit count mismatch");
  cplx s{0.0, 0.0};
  for (std::uint64_t i = 0; i < amp_.size(); ++i) {
    s += std::conj(amp_[i]) * other.amp_[i];
  }
  return s;
}

SparseState SparseState::basis(int num_qubits, std::uint64_t index) {
  SparseState st(num_qubits);
  st.amp_[index] = 1.0;
  return st;
}

void SparseState::apply(const Gate& g) {
  check_gate(g, nq_);
  const std::uint64_t tbit = std::uint64_t{1} << g.target;
  std::map<std::uint64_t, cplx> out;
  switch (g.kind) {
    case GateKind::X: {
      for (const auto& [i, v] : amp_) {
        out[controls_satisfied(i, g.controls) ? (i ^ tbit) : i] += v;
      }
      break;
    }
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      for (const auto& [i, v] : amp_) {
        if (!controls_satisfied(i, g.controls)) {
          out[i] += v;
        } else if (i & tbit) {
          out[i & ~tbit] += s * v;
          out[i] -= s * v;
        } else {
          out[i] += s * v;
          out[i | tbit] += s * v;
        }
      }
      break;
    }
    case GateKind::Phase: {
      const cplx ph = std::polar(1.0, g.angle);
      for (const auto& [i, v] : amp_) {
        out[i] += (controls_satisfied(i, g.controls) && (i & tbit)) ? ph * v : v;
      }
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(0.5 * g.angle);
      const double s = std::sin(0.5 * g.angle);
      for (const auto& [i, v] : amp_) {
        if (!controls_satisfied(i, g.controls)) {
          out[i] += v;
        } else if (i & tbit) {
          out[i & ~tbit] -= s * v;
          out[i] += c * v;
        } else {
          out[i] += c * v;
          out[i | tbit] += s * v;
        }
      }
      break;
    }
    case GateKind::Swap: {
      const std::uint64_t t2bit = std::uint64_t{1} << g.target2;
      for (const auto& [i, v] : amp_) {
        std::uint64_t j = i;
        if (controls_satisfied(i, g.controls)) {
          const bool b1 = (i & tbit) != 0;
          const bool b2 = (i & t2bit) != 0;
          if (b1 != b2) j = i ^ tbit ^ t2bit;
        }
        out[j] += v;
      }
      break;
    }
  }
  amp_ = std::move(out);
}

void SparseState::apply(const Circuit& circ) {
  for (const Gate& g : circ) {
    apply(g);
    prune();
  }
}

void SparseState::prune(double eps) {
  for (auto it = amp_.begin(); it != amp_.end();) {
    if (std::abs(it->second) <= eps) {
      it = amp_.erase(it);
    } else {
      ++it;
    }
  }
}

double SparseState::norm2() const {
  double s = 0.0;
  for (const auto& [i, v] : amp_) s += std::norm(v);
  return s;
}

std::vector<std::uint64_t> invariant_support(const Circuit& step,
                                             const std::vector<std::uint64_t>& seeds,
                                             int num_qubits,
                                             std::size_t max_size) {
  std::set<std::uint64_t> support(seeds.begin(), seeds.end());
  std::deque<std::uint64_t> frontier(seeds.begin(), seeds.end());
  while (!frontier.empty()) {
    const std::uint64_t b = frontier.front();
    frontier.pop_front();
    SparseState st = SparseState::basis(num_qubits, b);
    st.apply(step);
    for (const auto& [i, v] : st.amplitudes()) {
      if (support.insert(i).second) {
        if (support.size() > max_size) {
          throw std::runtime_error("invariant support exceeds cap");
        }
        frontier.push_back(i);
      }
    }
  }
  return {support.begin(), support.end()};
}

} // namespace qmh
