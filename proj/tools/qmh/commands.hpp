// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmh::cli {

/// Options shared by the two experiment subcommands.
struct CommonOptions {
  double varphi = 1.0472;
  std::string mode = "coherent";
  bool no_penalty = false;
  std::string out;      ///< CSV path; empty prints the table to stdout
  std::string results;  ///< results JSON path; empty skips the JSON
  int jobs = 1;
  int sim_qubits = 28;
  std::uint64_t dense_cap = std::uint64_t{1} << 14;
  std::uint64_t support_cap = std::uint64_t{1} << 20;
};

struct DoubleWellOptions {
  CommonOptions common;
  std::string m_list = "1,2,3,4";
  int side = 4;
  double temperature = 1.0;
};

struct IsingOptions {
  CommonOptions common;  ///< mode defaults to "oracle" for this command
  std::string m_list = "3..11";
  std::string beta = "0.1:4.0:0.1";
  int spins = 4;
  double coupling = 1.0;
  double field = 0.0;
};

struct ValidateOptions {
  bool quick = false;   ///< skip the dense fixed-space eigensolves
  std::string out;      ///< JSON report path; empty skips the report
};

struct ReportOptions {
  std::string results;       ///< results JSON produced by doublewell/ising
  std::string out_dir = ".";
};

/// @brief "1,2,4" or "3..11" (or a mix, e.g. "1,3..5") -> sorted-as-given ints.
/// @throws std::invalid_argument on malformed tokens or empty result
std::vector<int> parse_int_list(const std::string& text);

/// @brief "start:stop:step" inclusive range, or a comma-separated value list.
/// @throws std::invalid_argument on malformed tokens, step <= 0, or empty grid
std::vector<double> parse_value_grid(const std::string& text);

int cmd_doublewell(const DoubleWellOptions& opt);
int cmd_ising(const IsingOptions& opt);
int cmd_validate(const ValidateOptions& opt);
int cmd_report(const ReportOptions& opt);

} // namespace qmh::cli
