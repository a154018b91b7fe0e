// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
//
// qmh: exact simulator of a penalised quantum Metropolis-Hastings sampler.
//
// Exit codes: 0 success, 2 validation failure, 3 resource-cap rejection,
// 4 empty postselection branch (1 for other runtime errors, CLI11 codes for
// usage errors).
#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qmh/errors.hpp"

namespace {

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const qmh::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qmh::EmptyBranchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

void add_common_options(CLI::App& cmd, qmh::cli::CommonOptions& common) {
  cmd.add_option("--varphi", common.varphi,
                 "Penalty phase in radians, in [0, 2*pi)")
      ->capture_default_str();
  cmd.add_option("--mode", common.mode,
                 "Filter realization: coherent|semiclassical|oracle")
      ->capture_default_str();
  cmd.add_flag("--no-penalty", common.no_penalty,
               "Filter with the plain walk operator (penalty bypassed)");
  cmd.add_option("--out", common.out,
                 "CSV output path (prints to stdout when omitted)");
  cmd.add_option("--results", common.results,
                 "Results JSON path for later `qmh report` runs");
  cmd.add_option("--jobs", common.jobs,
                 "Worker-pool size for sweep points (merge order is "
                 "deterministic regardless)")
      ->capture_default_str();
  cmd.add_option("--sim-qubits", common.sim_qubits,
                 "Densest statevector allowed, in qubits")
      ->capture_default_str();
  cmd.add_option("--dense-cap", common.dense_cap,
                 "Densest operator matrix dimension allowed")
      ->capture_default_str();
  cmd.add_option("--support-cap", common.support_cap,
                 "Invariant-support size guard for oracle mode")
      ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact statevector simulator of a penalised quantum "
      "Metropolis-Hastings sampler"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Options file: `key = value` lines under a [doublewell] or "
                 "[ising] section header; quote list values (e.g. m = "
                 "\"1,2,3,4\"); any key is overridden by the flag of the "
                 "same name");

  qmh::cli::DoubleWellOptions dw;
  CLI::App* dw_cmd = app.add_subcommand(
      "doublewell", "Sample the 4x4 double-well grid and tabulate "
                    "fidelity, total-variation distance, basin mass and "
                    "success probability per precision");
  add_common_options(*dw_cmd, dw.common);
  dw_cmd->add_option("--m", dw.m_list,
                     "Precision-qubit list (comma list and/or a..b range)")
      ->capture_default_str();
  dw_cmd->add_option("--side", dw.side, "Grid side length (power of two)")
      ->capture_default_str();
  dw_cmd->add_option("--temperature", dw.temperature, "Temperature T = 1/beta")
      ->capture_default_str();

  qmh::cli::IsingOptions ising;
  ising.common.mode = "oracle";
  CLI::App* ising_cmd = app.add_subcommand(
      "ising", "Sweep the open spin chain over (beta, m) and tabulate "
               "fidelity, energy, observable errors and sector masses");
  add_common_options(*ising_cmd, ising.common);
  ising_cmd
      ->add_option("--m", ising.m_list,
                   "Precision-qubit list (comma list and/or a..b range)")
      ->capture_default_str();
  ising_cmd
      ->add_option("--beta", ising.beta,
                   "Inverse-temperature grid: start:stop:step or comma list")
      ->capture_default_str();
  ising_cmd->add_option("--spins", ising.spins, "Chain length")
      ->capture_default_str();
  ising_cmd
      ->add_option("--coupling,--J", ising.coupling, "Nearest-neighbor coupling")
      ->capture_default_str();
  ising_cmd->add_option("--field", ising.field, "Longitudinal field")
      ->capture_default_str();

  qmh::cli::ValidateOptions validate;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "Run the full invariant suite on reduced and full "
                  "instances (exit 2 on any failure)");
  validate_cmd->add_flag("--quick", validate.quick,
                         "Skip the dense fixed-space eigensolves");
  validate_cmd->add_option("--out", validate.out, "JSON report path");

  qmh::cli::ReportOptions report;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "Emit per-figure CSV plot data from a results JSON");
  report_cmd->add_option("results", report.results, "Results JSON path")
      ->required();
  report_cmd->add_option("--out-dir", report.out_dir, "Output directory")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (dw_cmd->parsed()) {
    return run_guarded([&] { return qmh::cli::cmd_doublewell(dw); });
  }
  if (ising_cmd->parsed()) {
    return run_guarded([&] { return qmh::cli::cmd_ising(ising); });
  }
  if (validate_cmd->parsed()) {
    return run_guarded([&] { return qmh::cli::cmd_validate(validate); });
  }
  return run_guarded([&] { return qmh::cli::cmd_report(report); });
}
