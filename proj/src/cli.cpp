// Copyright 2026 The isingsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isingsim/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

namespace isingsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Verification tolerances for the fitted expansion constants.
constexpr double kOrder2CoeffTol = 0.01;
constexpr double kOrder6CoeffTol = 0.02;

double parse_double(const std::string& text, std::size_t* consumed) {
  try {
    return std::stod(text, consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
}

struct ClaimCheck {
  std::string name;
  bool pass;
  std::string detail;
};

void print_check(std::ostream& out, const ClaimCheck& check) {
  out << (check.pass ? "PASS" : "FAIL") << " " << std::left << std::setw(14)
      << check.name << " " << check.detail << "\n";
}

std::string format_rel_err(double fitted, double expected) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2)
     << 100.0 * std::abs(fitted - expected) / expected << "%";
  return os.str();
}

ClaimCheck check_expansion(SequenceFamily family, ErrorAxis axis,
                           int expected_exponent, double expected_coeff,
                           double coeff_tol, double window_min,
                           double window_max) {
  const auto curve = fidelity_vs_error(family, kPi / 2, axis);
  ClaimCheck check{family_name(family), false, ""};
  try {
    const SeriesFit fit = fit_leading_order(curve, window_min, window_max);
    const bool exponent_ok = fit.exponent == expected_exponent;
    const double rel_err =
        std::abs(fit.coefficient - expected_coeff) / expected_coeff;
    check.pass = exponent_ok && rel_err <= coeff_tol;
    std::ostringstream os;
    os << "exponent " << fit.exponent << " (expected " << expected_exponent
       << ", slope " << std::fixed << std::setprecision(4) << fit.slope
       << "), coefficient " << std::setprecision(6) << fit.coefficient
       << " (expected " << expected_coeff << ", off by "
       << format_rel_err(fit.coefficient, expected_coeff) << ")";
    check.detail = os.str();
  } catch (const std::exception& e) {
    check.detail = std::string("fit failed: ") + e.what();
  }
  return check;
}

ClaimCheck check_flatness(double threshold) {
  const auto grid = uniform_grid(-0.1, 0.1, 0.001);
  const FidelityCurve curve =
      sweep(SequenceFamily::Bb1Ising, kPi / 2, ErrorAxis::Coupling, grid);
  double max_infidelity = 0.0;
  for (const auto& [eps, fid] : curve.samples) {
    max_infidelity = std::max(max_infidelity, 1.0 - fid);
  }
  ClaimCheck check{"flatness", max_infidelity < threshold, ""};
  std::ostringstream os;
  os << "max infidelity " << std::scientific << std::setprecision(3)
     << max_infidelity << " over |eps| <= 0.1 (threshold " << threshold << ")";
  check.detail = os.str();
  return check;
}

ClaimCheck check_range_ratio(double threshold, double search_max) {
  const auto naive =
      fidelity_vs_error(SequenceFamily::NaiveIsing, kPi / 2,
                        ErrorAxis::Coupling);
  const auto robust =
      fidelity_vs_error(SequenceFamily::Bb1Ising, kPi / 2,
                        ErrorAxis::Coupling);
  const double ratio = range_ratio(naive, robust, threshold, search_max);
  ClaimCheck check{"range-ratio", ratio > 50.0, ""};
  std::ostringstream os;
  os << "robust/naive range ratio " << std::fixed << std::setprecision(2)
     << ratio << " at threshold " << std::scientific << std::setprecision(0)
     << threshold << " (must exceed 50)";
  check.detail = os.str();
  return check;
}

// Streams to the output path when set, otherwise to `out`.
int with_output(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& writer) {
  if (cfg.output_path.empty()) {
    writer(out);
    return kExitSuccess;
  }
  std::ofstream file(cfg.output_path);
  if (!file) {
    err << "error: cannot open output file '" << cfg.output_path << "'\n";
    return kExitFailure;
  }
  writer(file);
  return kExitSuccess;
}

ErrorAxis default_axis(SequenceFamily family) {
  switch (family) {
    case SequenceFamily::NaiveSingleQubit:
    case SequenceFamily::Bb1SingleQubit:
      return ErrorAxis::Pulse;
    default:
      return ErrorAxis::Coupling;
  }
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string body = text;
  double unit = 1.0;
  if (body.size() >= 2 && body.ends_with("pi")) {
    body = body.substr(0, body.size() - 2);
    unit = kPi;
    if (body.empty() || body == "-" || body == "+") body += "1";
  } else if (body.size() >= 3 && body.ends_with("deg")) {
    body = body.substr(0, body.size() - 3);
    unit = kPi / 180.0;
  }
  std::size_t consumed = 0;
  const double value = parse_double(body, &consumed);
  if (consumed != body.size()) {
    throw std::invalid_argument("malformed angle: '" + text + "'");
  }
  return value * unit;
}

void parse_eps_range(const std::string& text, RunConfig& cfg) {
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("epsilon range must be min:max:step");
  }
  std::size_t consumed = 0;
  const std::string min_str = text.substr(0, first);
  const std::string max_str = text.substr(first + 1, second - first - 1);
  const std::string step_str = text.substr(second + 1);
  cfg.eps_min = parse_double(min_str, &consumed);
  if (consumed != min_str.size()) {
    throw std::invalid_argument("malformed epsilon range: '" + text + "'");
  }
  cfg.eps_max = parse_double(max_str, &consumed);
  if (consumed != max_str.size()) {
    throw std::invalid_argument("malformed epsilon range: '" + text + "'");
  }
  cfg.eps_step = parse_double(step_str, &consumed);
  if (consumed != step_str.size()) {
    throw std::invalid_argument("malformed epsilon range: '" + text + "'");
  }
  if (!(cfg.eps_min < cfg.eps_max)) {
    throw std::invalid_argument("epsilon range needs min < max");
  }
  if (!(cfg.eps_step > 0.0)) {
    throw std::invalid_argument("epsilon step must be positive");
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = uniform_grid(cfg.eps_min, cfg.eps_max, cfg.eps_step);
  const FidelityCurve curve = sweep(cfg.family, cfg.theta, cfg.axis, grid);
  return with_output(cfg, out, err,
                     [&curve](std::ostream& os) { write_csv(os, curve); });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double theta = kPi / 2;
  const double order2_coeff = theta * theta / 8.0;  // = pi^2/32
  const double order6_coeff =
      std::abs(std::pow(theta, 6) - 14 * kPi * kPi * std::pow(theta, 4) -
               32 * std::pow(kPi, 4) * theta * theta) /
      9216.0;  // = 63 pi^6/65536 at theta = pi/2

  std::vector<ClaimCheck> checks;
  if (cfg.claim == "expansions" || cfg.claim == "all") {
    checks.push_back(check_expansion(SequenceFamily::NaiveSingleQubit,
                                     ErrorAxis::Pulse, 2, order2_coeff,
                                     kOrder2CoeffTol, 1e-3, 1e-2));
    checks.push_back(check_expansion(SequenceFamily::Bb1SingleQubit,
                                     ErrorAxis::Pulse, 6, order6_coeff,
                                     kOrder6CoeffTol, 0.03, 0.1));
    checks.push_back(check_expansion(SequenceFamily::NaiveIsing,
                                     ErrorAxis::Coupling, 2, order2_coeff,
                                     kOrder2CoeffTol, 1e-3, 1e-2));
    checks.push_back(check_expansion(SequenceFamily::Bb1Ising,
                                     ErrorAxis::Coupling, 6, order6_coeff,
                                     kOrder6CoeffTol, 0.03, 0.1));
  }
  if (cfg.claim == "flatness" || cfg.claim == "all") {
    checks.push_back(check_flatness(cfg.threshold));
  }
  if (cfg.claim == "range-ratio" || cfg.claim == "all") {
    checks.push_back(check_range_ratio(cfg.threshold, cfg.search_max));
  }
  if (checks.empty()) {
    err << "error: unknown claim '" << cfg.claim
        << "' (expansions|flatness|range-ratio|all)\n";
    return kExitUsage;
  }

  bool all_pass = true;
  for (const auto& check : checks) {
    print_check(out, check);
    all_pass = all_pass && check.pass;
  }
  return all_pass ? kExitSuccess : kExitFailure;
}

int cmd_range(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
    err << "error: threshold must be in (0, 1)\n";
    return kExitUsage;
  }
  const auto curve = fidelity_vs_error(cfg.family, cfg.theta, cfg.axis);
  const RobustRange range =
      robust_range(curve, cfg.threshold, cfg.search_max);
  std::ostringstream os;
  os << "family=" << family_name(cfg.family) << " threshold=" << std::scientific
     << std::setprecision(6) << cfg.threshold << " eps_max=" << range.eps_max
     << "\n";
  if (range.hit_search_bound) {
    os << "note: infidelity never exceeded the threshold up to the search "
          "bound "
       << range.eps_max << "\n";
  }
  return with_output(cfg, out, err,
                     [&os](std::ostream& sink) { sink << os.str(); });
}

int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PulseSequence seq = build_sequence(cfg.family, cfg.theta);
  return with_output(cfg, out, err, [&](std::ostream& os) {
    if (cfg.json) {
      nlohmann::json j = to_json(seq);
      j["family"] = family_name(cfg.family);
      j["theta"] = cfg.theta;
      os << j.dump(2) << "\n";
    } else {
      os << to_text(seq);
    }
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "isingsim: composite-pulse simulator for robust Ising and single-qubit "
      "gates under systematic errors"};
  app.set_config("--config", "",
                 "flat key=value config file; command-line flags override it");
  app.require_subcommand(1);
  app.footer(
      "Sweep workers default to the hardware concurrency; set "
      "ISINGSIM_THREADS to cap them.");

  std::string family_str = "bb1-ising";
  std::string theta_str = "0.5pi";
  std::string eps_str = "-0.1:0.1:0.001";
  std::string axis_str = "auto";
  std::string claim = "expansions";
  std::string output_path;
  double threshold = 1e-6;
  double search_max = 1.0;
  bool json = false;

  const std::string family_help =
      "sequence family: naive-single|naive-ising|naive-cnot|bb1-single|"
      "bb1-ising|bb1-cnot";
  const auto axis_check = CLI::IsMember({"auto", "coupling", "pulse"});

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "evaluate a fidelity-vs-error curve and emit CSV");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--family", family_str, family_help)->required();
  sweep_cmd->add_option("--theta", theta_str,
                        "rotation angle (0.5pi, 90deg, or radians)");
  sweep_cmd->add_option("--eps", eps_str, "epsilon grid as min:max:step");
  sweep_cmd->add_option("--axis", axis_str,
                        "error axis (default: pulse for single-qubit "
                        "families, coupling otherwise)")
      ->check(axis_check);
  sweep_cmd->add_option("--output,-o", output_path,
                        "output file (default: standard output)");

  auto* verify_cmd = app.add_subcommand(
      "verify", "check the expansion orders, coefficients, and robustness "
                "claims; prints PASS/FAIL per line");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--claim", claim,
                         "expansions|flatness|range-ratio|all")
      ->check(CLI::IsMember({"expansions", "flatness", "range-ratio", "all"}));
  verify_cmd->add_option("--threshold", threshold,
                         "infidelity threshold for flatness/range-ratio");
  verify_cmd->add_option("--search-max", search_max,
                         "upper epsilon bound for range searches");

  auto* range_cmd = app.add_subcommand(
      "range", "largest epsilon keeping infidelity at or below a threshold");
  range_cmd->fallthrough();
  range_cmd->add_option("--family", family_str, family_help)->required();
  range_cmd->add_option("--theta", theta_str,
                        "rotation angle (0.5pi, 90deg, or radians)");
  range_cmd->add_option("--threshold", threshold, "infidelity threshold");
  range_cmd->add_option("--search-max", search_max,
                        "upper epsilon bound for the search");
  range_cmd->add_option("--axis", axis_str, "error axis")->check(axis_check);
  range_cmd->add_option("--output,-o", output_path, "output file");

  auto* dump_cmd =
      app.add_subcommand("dump", "print a sequence schedule (text or JSON)");
  dump_cmd->fallthrough();
  dump_cmd->add_option("--family", family_str, family_help)->required();
  dump_cmd->add_option("--theta", theta_str,
                       "rotation angle (0.5pi, 90deg, or radians)");
  dump_cmd->add_flag("--json", json, "emit the structured JSON form");
  dump_cmd->add_option("--output,-o", output_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitSuccess;
    }
    err << "error: " << e.what() << "\n";
    err << "usage: run with --help for details\n";
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg.family = parse_family(family_str);
    cfg.theta = parse_angle(theta_str);
    parse_eps_range(eps_str, cfg);
    cfg.axis = axis_str == "auto"
                   ? default_axis(cfg.family)
                   : (axis_str == "pulse" ? ErrorAxis::Pulse
                                          : ErrorAxis::Coupling);
    cfg.threshold = threshold;
    cfg.search_max = search_max;
    cfg.claim = claim;
    cfg.json = json;
    cfg.output_path = output_path;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    err << "usage: run with --help for details\n";
    return kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      cfg.command = RunConfig::Command::Sweep;
      return cmd_sweep(cfg, out, err);
    }
    if (verify_cmd->parsed()) {
      cfg.command = RunConfig::Command::Verify;
      return cmd_verify(cfg, out, err);
    }
    if (range_cmd->parsed()) {
      cfg.command = RunConfig::Command::Range;
      return cmd_range(cfg, out, err);
    }
    cfg.command = RunConfig::Command::Dump;
    return cmd_dump(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace isingsim
