// Copyright (c) 2026 The qmh authors
// SPDX-License-Identifier: MIT
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "pool.hpp"
#include "qmh/filter.hpp"
#include "qmh/instance.hpp"
#include "qmh/io.hpp"
#include "qmh/kernels.hpp"
#include "qmh/metrics.hpp"
#include "qmh/validate.hpp"

namespace qmh::cli {

namespace {

PipelineCaps make_caps(const CommonOptions& c) {
  PipelineCaps caps;
  caps.sim_qubits = c.sim_qubits;
  caps.dense_dim = c.dense_cap;
  caps.support_cap = c.support_cap;
  return caps;
}

/// Writes the table to the given CSV path, or to stdout when the path is
/// empty.
void emit_table(const std::string& path,
                const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  if (!path.empty()) {
    write_csv(path, header, rows);
    return;
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << header[i];
  }
  std::cout << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << row[i];
    }
    std::cout << '\n';
  }
}

std::string level_name(double level) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "E=%g", level);
  return buf;
}

Eigen::VectorXd to_vector(const nlohmann::json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] = arr.at(static_cast<std::size_t>(i)).get<double>();
  }
  return v;
}

int parse_single_int(const std::string& token) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  if (pos != token.size()) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  return value;
}

double parse_single_double(const std::string& token) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  if (pos != token.size()) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

} // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& token : split(text, ',')) {
    if (token.empty()) {
      throw std::invalid_argument("empty entry in integer list: '" + text +
                                  "'");
    }
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_single_int(token));
      continue;
    }
    const int lo = parse_single_int(token.substr(0, dots));
    const int hi = parse_single_int(token.substr(dots + 2));
    if (hi < lo) {
      throw std::invalid_argument("descending range: '" + token + "'");
    }
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_value_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("range must be start:stop:step, got '" +
                                  text + "'");
    }
    const double start = parse_single_double(parts[0]);
    const double stop = parse_single_double(parts[1]);
    const double step = parse_single_double(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    if (stop < start) {
      throw std::invalid_argument("descending range: '" + text + "'");
    }
    // Half-a-step slack on the endpoint so that exact-decimal grids such as
    // 0.1:4.0:0.1 include their stop value despite binary rounding.
    const auto count =
        static_cast<std::int64_t>(std::floor((stop - start) / step + 0.5));
    for (std::int64_t k = 0; k <= count; ++k) {
      const double v = start + static_cast<double>(k) * step;
      if (v > stop + 0.5 * step) break;
      out.push_back(v);
    }
  } else {
    for (const std::string& token : split(text, ',')) {
      if (token.empty()) {
        throw std::invalid_argument("empty entry in value list: '" + text +
                                    "'");
      }
      out.push_back(parse_single_double(token));
    }
  }
  if (out.empty()) throw std::invalid_argument("empty value grid");
  return out;
}

int cmd_doublewell(const DoubleWellOptions& opt) {
  const std::vector<int> ms = parse_int_list(opt.m_list);
  const ProblemInstance inst = build_double_well(opt.side, opt.temperature);
  const Distribution pi = gibbs_distribution(inst);
  const PipelineCaps caps = make_caps(opt.common);
  const bool penalised = !opt.common.no_penalty;
  const FilterMode mode = filter_mode_from_string(opt.common.mode);

  std::vector<PipelineResult> runs(ms.size());
  if (mode == FilterMode::PowerSumOracle) {
    runs = run_oracle_sweep(inst, ms, opt.common.varphi, penalised, caps);
  } else {
    std::vector<std::function<void()>> tasks;
    tasks.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
      tasks.push_back([&, i] {
        FilterSpec spec;
        spec.m = ms[i];
        spec.varphi = opt.common.varphi;
        spec.mode = mode;
        runs[i] = run_pipeline(inst, spec, penalised, caps);
      });
    }
    run_parallel(opt.common.jobs, tasks);
  }

  std::vector<std::vector<std::string>> rows;
  rows.reserve(runs.size());
  for (const PipelineResult& r : runs) {
    rows.push_back({std::to_string(r.m),
                    format_float(fidelity(r.p_x, pi.probs)),
                    format_float(tv_distance(r.p_x, pi.probs)),
                    format_float(basin_mass(r.p_x, inst)),
                    format_float(r.success_probability)});
  }
  emit_table(opt.common.out,
             {"m", "fidelity", "tv_distance", "basin_mass",
              "success_probability"},
             rows);

  if (!opt.common.results.empty()) {
    nlohmann::json doc;
    doc["command"] = "doublewell";
    doc["instance"] = {{"kind", "doublewell"},
                       {"side", opt.side},
                       {"temperature", opt.temperature}};
    doc["varphi"] = opt.common.varphi;
    doc["mode"] = to_string(mode);
    doc["penalised"] = penalised;
    doc["m_list"] = ms;
    nlohmann::json jruns = nlohmann::json::array();
    for (const PipelineResult& r : runs) jruns.push_back(to_json(r));
    doc["runs"] = std::move(jruns);
    write_json(opt.common.results, doc);
  }
  return 0;
}

int cmd_ising(const IsingOptions& opt) {
  const std::vector<int> ms = parse_int_list(opt.m_list);
  const std::vector<double> betas = parse_value_grid(opt.beta);
  const PipelineCaps caps = make_caps(opt.common);
  const bool penalised = !opt.common.no_penalty;
  const FilterMode mode = filter_mode_from_string(opt.common.mode);

  std::vector<ProblemInstance> insts;
  insts.reserve(betas.size());
  for (const double beta : betas) {
    insts.push_back(build_ising(opt.spins, opt.coupling, opt.field, beta));
  }

  std::vector<std::vector<PipelineResult>> results(betas.size());
  std::vector<std::function<void()>> tasks;
  if (mode == FilterMode::PowerSumOracle) {
    tasks.reserve(betas.size());
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      tasks.push_back([&, bi] {
        results[bi] =
            run_oracle_sweep(insts[bi], ms, opt.common.varphi, penalised,
                             caps);
      });
    }
  } else {
    tasks.reserve(betas.size() * ms.size());
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      results[bi].resize(ms.size());
      for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        tasks.push_back([&, bi, mi] {
          FilterSpec spec;
          spec.m = ms[mi];
          spec.varphi = opt.common.varphi;
          spec.mode = mode;
          results[bi][mi] = run_pipeline(insts[bi], spec, penalised, caps);
        });
      }
    }
  }
  run_parallel(opt.common.jobs, tasks);

  std::vector<double> levels = insts.front().energy;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<std::string> header = {
      "beta",       "m",
      "fidelity",   "energy",
      "energy_gibbs", "magnetization_abs_err",
      "domain_wall_abs_err"};
  for (const double level : levels) header.push_back("mass[" + level_name(level) + "]");
  header.push_back("success_probability");

  std::vector<std::vector<std::string>> rows;
  rows.reserve(betas.size() * ms.size());
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const ProblemInstance& inst = insts[bi];
    const Distribution pi = gibbs_distribution(inst);
    const IsingObservables obs = observables_ising(inst);
    const double e_gibbs = expectation(pi.probs, obs.energy);
    const double mag_gibbs = expectation(pi.probs, obs.magnetization);
    const double dw_gibbs = expectation(pi.probs, obs.domain_walls);
    for (const PipelineResult& r : results[bi]) {
      const std::map<double, double> masses = energy_sector_mass(r.p_x, inst);
      std::vector<std::string> row = {
          format_float(betas[bi]),
          std::to_string(r.m),
          format_float(fidelity(r.p_x, pi.probs)),
          format_float(expectation(r.p_x, obs.energy)),
          format_float(e_gibbs),
          format_float(
              std::abs(expectation(r.p_x, obs.magnetization) - mag_gibbs)),
          format_float(
              std::abs(expectation(r.p_x, obs.domain_walls) - dw_gibbs))};
      for (const double level : levels) {
        const auto it = masses.find(level);
        row.push_back(format_float(it == masses.end() ? 0.0 : it->second));
      }
      row.push_back(format_float(r.success_probability));
      rows.push_back(std::move(row));
    }
  }
  emit_table(opt.common.out, header, rows);

  if (!opt.common.results.empty()) {
    nlohmann::json doc;
    doc["command"] = "ising";
    doc["instance"] = {{"kind", "ising"},
                       {"n_spins", opt.spins},
                       {"J", opt.coupling},
                       {"h", opt.field}};
    doc["varphi"] = opt.common.varphi;
    doc["mode"] = to_string(mode);
    doc["penalised"] = penalised;
    doc["m_list"] = ms;
    doc["beta_grid"] = betas;
    nlohmann::json jruns = nlohmann::json::array();
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      for (const PipelineResult& r : results[bi]) {
        nlohmann::json j = to_json(r);
        j["beta"] = betas[bi];
        jruns.push_back(std::move(j));
      }
    }
    doc["runs"] = std::move(jruns);
    write_json(opt.common.results, doc);
  }
  return 0;
}

int cmd_validate(const ValidateOptions& opt) {
  ValidationOptions vo;
  vo.include_dense_kernel_checks = !opt.quick;
  const std::vector<CheckResult> checks = run_validation(vo);
  std::size_t passed = 0;
  for (const CheckResult& c : checks) {
    std::cout << format_check(c) << '\n';
    if (c.pass) ++passed;
  }

  nlohmann::json spectra = nlohmann::json::object();
  for (const ProblemInstance& inst :
       {build_double_well(), build_ising(), build_double_well(2),
        build_ising(2)}) {
    const Distribution pi = gibbs_distribution(inst);
    const SpectralGap gap = spectral_gap(mh_kernel(inst), pi);
    const double walk_gap = std::acos(std::clamp(gap.lambda2, -1.0, 1.0));
    const double ratio = walk_gap / std::sqrt(gap.delta);
    char line[160];
    std::snprintf(line, sizeof(line),
                  "spectra %-14s delta=%.8f walk_gap=%.8f "
                  "gap_over_sqrt_delta=%.4f",
                  inst.tag().c_str(), gap.delta, walk_gap, ratio);
    std::cout << line << '\n';
    spectra[inst.tag()] = {{"delta", gap.delta},
                           {"walk_gap", walk_gap},
                           {"gap_over_sqrt_delta", ratio}};
  }
  std::cout << passed << "/" << checks.size() << " checks passed" << '\n';

  if (!opt.out.empty()) {
    nlohmann::json doc;
    nlohmann::json jchecks = nlohmann::json::array();
    for (const CheckResult& c : checks) {
      jchecks.push_back({{"name", c.name},
                         {"pass", c.pass},
                         {"measured", c.measured},
                         {"tolerance", c.tolerance},
                         {"details", c.details}});
    }
    doc["checks"] = std::move(jchecks);
    doc["spectra"] = std::move(spectra);
    doc["all_passed"] = passed == checks.size();
    write_json(opt.out, doc);
  }
  return passed == checks.size() ? 0 : 2;
}

namespace {

void report_doublewell(const nlohmann::json& doc, const std::string& dir) {
  const int side = doc.at("instance").at("side").get<int>();
  const double temperature =
      doc.at("instance").at("temperature").get<double>();
  const ProblemInstance inst = build_double_well(side, temperature);
  const Distribution pi = gibbs_distribution(inst);

  const nlohmann::json* best = nullptr;
  for (const nlohmann::json& run : doc.at("runs")) {
    if (!best || run.at("m").get<int>() > best->at("m").get<int>()) {
      best = &run;
    }
  }
  if (!best) throw std::runtime_error("results file has no runs");
  const Eigen::VectorXd p_x = to_vector(best->at("p_X"));
  if (p_x.size() != inst.state_count) {
    throw std::runtime_error("results p_X length does not match the instance");
  }

  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(inst.state_count));
  for (int x = 0; x < inst.state_count; ++x) {
    rows.push_back({std::to_string(x % side), std::to_string(x / side),
                    format_float(p_x[x]), format_float(pi.probs[x])});
  }
  write_csv(dir + "/doublewell_heatmap.csv", {"i", "j", "p_X", "pi"}, rows);
}

void report_ising(const nlohmann::json& doc, const std::string& dir) {
  const nlohmann::json& jinst = doc.at("instance");
  const int n = jinst.at("n_spins").get<int>();
  const double J = jinst.at("J").get<double>();
  const double h = jinst.at("h").get<double>();
  const std::vector<int> ms = doc.at("m_list").get<std::vector<int>>();
  const std::vector<double> betas =
      doc.at("beta_grid").get<std::vector<double>>();
  if (ms.empty() || betas.empty()) {
    throw std::runtime_error("results file has an empty sweep grid");
  }
  const int m_max = *std::max_element(ms.begin(), ms.end());

  // Index the runs by (beta, m). JSON round-trips doubles exactly, so the
  // beta keys match the grid bit-for-bit.
  std::map<double, std::map<int, const nlohmann::json*>> by_key;
  for (const nlohmann::json& run : doc.at("runs")) {
    by_key[run.at("beta").get<double>()][run.at("m").get<int>()] = &run;
  }

  std::vector<std::string> fid_header = {"beta"};
  std::vector<std::string> energy_header = {"beta", "gibbs"};
  std::vector<std::string> dw_header = {"beta"};
  for (const int m : ms) {
    fid_header.push_back("m=" + std::to_string(m));
    energy_header.push_back("m=" + std::to_string(m));
    dw_header.push_back("m=" + std::to_string(m));
  }

  std::vector<std::vector<std::string>> fid_rows;
  std::vector<std::vector<std::string>> energy_rows;
  std::vector<std::vector<std::string>> dw_rows;
  std::vector<std::vector<std::string>> mass_rows;
  std::vector<std::string> mass_header;

  for (const double beta : betas) {
    const ProblemInstance inst = build_ising(n, J, h, beta);
    const Distribution pi = gibbs_distribution(inst);
    const IsingObservables obs = observables_ising(inst);
    const double e_gibbs = expectation(pi.probs, obs.energy);
    const double dw_gibbs = expectation(pi.probs, obs.domain_walls);

    if (mass_header.empty()) {
      mass_header.push_back("beta");
      for (const auto& [level, mass] : energy_sector_mass(pi.probs, inst)) {
        mass_header.push_back(level_name(level));
      }
    }

    const auto bit = by_key.find(beta);
    if (bit == by_key.end()) {
      throw std::runtime_error("results file is missing a beta grid point");
    }
    std::vector<std::string> fid_row = {format_float(beta)};
    std::vector<std::string> energy_row = {format_float(beta),
                                           format_float(e_gibbs)};
    std::vector<std::string> dw_row = {format_float(beta)};
    for (const int m : ms) {
      const auto mit = bit->second.find(m);
      if (mit == bit->second.end()) {
        throw std::runtime_error("results file is missing an m grid point");
      }
      const Eigen::VectorXd p_x = to_vector(mit->second->at("p_X"));
      fid_row.push_back(format_float(fidelity(p_x, pi.probs)));
      energy_row.push_back(format_float(expectation(p_x, obs.energy)));
      dw_row.push_back(format_float(
          std::abs(expectation(p_x, obs.domain_walls) - dw_gibbs)));
    }
    {
      // Sector masses are reported at the finest precision in the sweep.
      const Eigen::VectorXd p_x =
          to_vector(bit->second.at(m_max)->at("p_X"));
      std::vector<std::string> mass_row = {format_float(beta)};
      for (const auto& [level, mass] : energy_sector_mass(p_x, inst)) {
        mass_row.push_back(format_float(mass));
      }
      mass_rows.push_back(std::move(mass_row));
    }
    fid_rows.push_back(std::move(fid_row));
    energy_rows.push_back(std::move(energy_row));
    dw_rows.push_back(std::move(dw_row));
  }

  write_csv(dir + "/fidelity_vs_beta.csv", fid_header, fid_rows);
  write_csv(dir + "/energy_vs_beta.csv", energy_header, energy_rows);
  write_csv(dir + "/domain_wall_error_vs_beta.csv", dw_header, dw_rows);
  write_csv(dir + "/sector_mass_vs_beta.csv", mass_header, mass_rows);
}

} // namespace

int cmd_report(const ReportOptions& opt) {
  std::ifstream is(opt.results);
  if (!is) {
    throw std::runtime_error("cannot read results file: " + opt.results);
  }
  const nlohmann::json doc = nlohmann::json::parse(is);
  std::filesystem::create_directories(opt.out_dir);
  const std::string command = doc.at("command").get<std::string>();
  if (command == "doublewell") {
    report_doublewell(doc, opt.out_dir);
  } else if (command == "ising") {
    report_ising(doc, opt.out_dir);
  } else {
    throw std::runtime_error("unknown command in results file: " + command);
  }
  return 0;
}

} // namespace qmh::cli
