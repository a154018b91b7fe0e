// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "qmh/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qmh {

namespace {

constexpr char kMagic[6] = {'Q', 'M', 'H', 'S', 'V', '1'};

void put_u16_le(std::ostream& os, std::uint16_t v) {
  const char bytes[2] = {static_cast<char>(v & 0xff),
                         static_cast<char>((v >> 8) & 0xff)};
  os.write(bytes, 2);
}

void put_u64_le(std::ostream& os, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes, 8);
}

std::uint16_t get_u16_le(std::istream& is) {
  unsigned char bytes[2];
  is.read(reinterpret_cast<char*>(bytes), 2);
  return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

std::uint64_t get_u64_le(std::istream& is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Phase: return "phase";
    case GateKind::Ry: return "ry";
    case GateKind::Swap: return "swap";
  }
  return "?";
}

} // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

void export_circuit(std::ostream& os, const Circuit& circ) {
  for (const Gate& g : circ) {
    os << kind_name(g.kind) << " targets=" << g.target;
    if (g.kind == GateKind::Swap) os << ',' << g.target2;
    os << " controls=";
    if (g.controls.empty()) {
      os << '-';
    } else {
      for (std::size_t i = 0; i < g.controls.size(); ++i) {
        if (i) os << ',';
        os << g.controls[i].qubit << ':' << g.controls[i].value;
      }
    }
    os << " angle=" << format_float(g.angle) << '\n';
  }
}

void export_circuit_file(const std::string& path, const Circuit& circ) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  export_circuit(os, circ);
  if (!os) throw std::runtime_error("write failed for " + path);
}

void write_statevector(const std::string& path, const Statevector& sv,
                       std::uint64_t layout_hash) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write(kMagic, sizeof(kMagic));
  put_u16_le(os, static_cast<std::uint16_t>(sv.num_qubits()));
  put_u64_le(os, layout_hash);
  for (const cplx& a : sv.amplitudes()) {
    double re = a.real();
    double im = a.imag();
    os.write(reinterpret_cast<const char*>(&re), sizeof(double));
    os.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  if (!os) throw std::runtime_error("write failed for " + path);
}

Statevector read_statevector(const std::string& path,
                             std::uint64_t* layout_hash) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  char magic[6];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("bad statevector magic in " + path);
  }
  const std::uint16_t nq = get_u16_le(is);
  const std::uint64_t hash = get_u64_le(is);
  if (layout_hash) *layout_hash = hash;
  Statevector sv(nq);
  for (cplx& a : sv.amplitudes()) {
    double re = 0.0;
    double im = 0.0;
    is.read(reinterpret_cast<char*>(&re), sizeof(double));
    is.read(reinterpret_cast<char*>(&im), sizeof(double));
    a = cplx{re, im};
  }
  if (!is) throw std::runtime_error("truncated statevector in " + path);
  return sv;
}

nlohmann::json to_json(const PipelineResult& result) {
  nlohmann::json j;
  j["instance"] = result.instance;
  j["mode"] = to_string(result.mode);
  j["m"] = result.m;
  j["varphi"] = result.varphi;
  j["penalised"] = result.penalised;
  j["success_probability"] = result.success_probability;
  j["p_X"] = std::vector<double>(result.p_x.data(),
                                 result.p_x.data() + result.p_x.size());
  j["round_probs"] = result.round_probs;
  return j;
}

nlohmann::json to_json(const SpectralReport& report) {
  nlohmann::json j;
  j["eigenphases"] = report.eigenphases;
  j["angular_gap"] = report.angular_gap;
  j["zero_multiplicity"] = report.zero_multiplicity;
  j["target_overlap"] = report.target_overlap;
  return j;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << doc.dump(2) << '\n';
  if (!os) throw std::runtime_error("write failed for " + path);
}

} // namespace qmh
