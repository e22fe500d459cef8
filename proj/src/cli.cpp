// Copyright 2026 The qdctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdc/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qdc/criteria.hpp"
#include "qdc/errors.hpp"
#include "qdc/lie_closure.hpp"

namespace qdc::cli {
namespace {

using nlohmann::json;

void emit(const std::string& text, const std::filesystem::path& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidSpecError("cannot write " + path.string());
  file << text;
}

SystemSpec load(const RunConfig& config) {
  if (config.spec_path.empty()) throw InvalidSpecError("--spec FILE is required");
  return load_spec(config.spec_path, config.units);
}

double tolerance_of(const RunConfig& config) {
  const double tol = config.tolerance.value_or(kDefaultClosureTolerance);
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  return tol;
}

StateVector state_from(const std::vector<double>& values, int dim, const char* what) {
  if (static_cast<int>(values.size()) != dim) {
    throw InvalidSpecError(std::string(what) + " needs " + std::to_string(dim) + " amplitudes, got " +
                           std::to_string(values.size()));
  }
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = values[static_cast<std::size_t>(i)];
  return StateVector(std::move(v));
}

json amplitudes_json(const StateVector& s) {
  json out = json::array();
  for (int i = 0; i < s.dim(); ++i) out.push_back({s[i].real(), s[i].imag()});
  return out;
}

json closure_json(const ClosureResult& c) {
  return {{"dimension", c.dimension},
          {"hilbert_dimension", c.hilbert_dimension},
          {"su_dimension", c.hilbert_dimension * c.hilbert_dimension - 1},
          {"controllable", c.controllable},
          {"rounds", c.rounds},
          {"tolerance", c.tolerance}};
}

std::string format17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::analyze: return "analyze";
    case Command::split: return "split";
    case Command::fidelity: return "fidelity";
    case Command::optimize: return "optimize";
    case Command::demo: return "demo";
  }
  return "unknown";
}

std::vector<double> default_tau_grid() { return log_spaced(1e-15, 1e-11, 41); }

json analyze_report(const SystemSpec& spec, double tolerance, bool& violation) {
  const ClosureResult closure = is_completely_controllable(spec, tolerance);
  std::vector<ConditionReport> reports;
  reports.push_back(check_lemma1(spec));
  reports.push_back(check_theorem1(spec));
  if (spec.levels >= 3 && !has_equal_gaps(spec)) {
    ConditionReport r;
    r.id = ConditionId::theorem2;
    r.applicable = false;
    r.notes.push_back("energy gaps are not equal");
    reports.push_back(std::move(r));
  } else {
    reports.push_back(check_theorem2(spec));
  }
  reports.push_back(check_no_crossing(spec));
  reports.push_back(check_gap_distinct(spec));
  reports.push_back(check_elimination(spec));

  violation = false;
  json notes = json::array();
  for (const auto& r : reports) {
    if ((r.id == ConditionId::theorem1 || r.id == ConditionId::theorem2) && r.pass &&
        !closure.controllable) {
      violation = true;
      notes.push_back(to_string(r.id) + " passes but the closure is not su(d)");
    }
  }
  notes.push_back("the theorem conditions are sufficient, not necessary");

  json conditions = json::array();
  for (const auto& r : reports) conditions.push_back(to_json(r));
  return {{"closure", closure_json(closure)},
          {"conditions", std::move(conditions)},
          {"consistency", {{"sufficiency_violation", violation}, {"notes", std::move(notes)}}},
          {"settings", {{"closure_tolerance", tolerance}, {"condition_margin", kConditionMargin}}}};
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = load(config);
  bool violation = false;
  json report = analyze_report(spec, tolerance_of(config), violation);
  report["command"] = "analyze";
  report["spec"] = spec_to_json(spec);
  emit(report.dump(2) + "\n", config.output_path, out);
  if (violation) {
    err << "qdctl: sufficiency violation: a theorem condition passed on an uncontrollable system\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_split(const RunConfig& config, std::ostream& out, std::ostream&) {
  const SystemSpec spec = load(config);
  const ConditionReport report = check_elimination(spec);
  const auto split = split_energies(spec);
  json table = json::array();
  for (int pos = 0; pos < spec.dimension(); ++pos) {
    const LevelIndex idx = unflatten(pos, spec.levels);
    table.push_back({{"n", idx.n}, {"k", idx.k}, {"energy", split[static_cast<std::size_t>(pos)]}});
  }
  json doc = {{"command", "split"},
              {"report", to_json(report)},
              {"split_spectrum", std::move(table)},
              {"units", {{"energy", "eV"}}}};
  emit(doc.dump(2) + "\n", config.output_path, out);
  return kExitOk;
}

int cmd_fidelity(const RunConfig& config, std::ostream& out, std::ostream&) {
  const SystemSpec spec = load(config);
  if (config.state.empty()) throw InvalidSpecError("fidelity needs --state");
  const StateVector state = state_from(config.state, spec.dimension(), "--state");
  const std::vector<double> taus = config.taus.empty() ? default_tau_grid() : config.taus;

  SweepOptions options;
  options.with_exact = config.exact;
  options.dt_max = config.dt_max.value_or(default_exact_step(spec));
  options.variant = config.variant;
  const FidelityCurve curve = sweep_tau(spec, state, taus, options);

  SweepOptions other = options;
  other.with_exact = false;
  other.variant = config.variant == CoefficientVariant::as_printed ? CoefficientVariant::corrected
                                                                   : CoefficientVariant::as_printed;
  const FidelityCurve alt = sweep_tau(spec, state, taus, other);
  double variant_gap = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    variant_gap = std::max(variant_gap, std::abs(curve.samples[i].f_perturbative -
                                                 alt.samples[i].f_perturbative));
  }

  std::string grid = config.taus.empty() ? "default log grid 1e-15..1e-11 s, 41 points"
                                         : "explicit list, " + std::to_string(taus.size()) + " points";
  const std::vector<std::string> metadata = {
      "qdctl fidelity",
      "units: energies eV, couplings eV (J inputs converted on load), tau s, hbar = " +
          format17(kHbarEvSeconds) + " eV s",
      "tau grid: " + grid,
      "state: C(T) in basis order (1,1),(2,1),(2,2),...",
      "coefficient variant: " + to_string(config.variant),
      "exact: " + std::string(config.exact ? "rk4 interaction picture, dt_max = " +
                                                 format17(*options.dt_max) + " s"
                                           : "off"),
      "max |F_pert(as_printed) - F_pert(corrected)| = " + format17(variant_gap),
  };
  std::ostringstream csv;
  write_csv(csv, curve, metadata);
  emit(csv.str(), config.output_path, out);
  return kExitOk;
}

int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = load(config);
  const int d = spec.dimension();
  const StateVector initial =
      config.state.empty() ? StateVector::basis_state(d, 0) : state_from(config.state, d, "--state");
  const StateVector target =
      config.target.empty() ? random_state(d, config.seed) : state_from(config.target, d, "--target");

  const ClosureResult closure = is_completely_controllable(spec, tolerance_of(config));
  OptimizerOptions options;
  options.n_segments = config.segments;
  options.duration = config.duration.value_or(50.0 * kHbarEvSeconds / energy_gaps(spec).front());
  options.iterations = config.iterations;
  options.seed = config.seed;
  const PulseSchedule schedule = optimize_pulse(spec, initial, target, options);

  json warnings = json::array();
  if (!closure.controllable) {
    warnings.push_back("system not completely controllable");
    err << "qdctl: warning: system not completely controllable (dimension " << closure.dimension
        << " < " << d * d - 1 << ")\n";
  }
  json summary = {{"command", "optimize"},
                  {"achieved_fidelity", schedule.achieved_fidelity},
                  {"closure", closure_json(closure)},
                  {"warnings", std::move(warnings)},
                  {"segments", options.n_segments},
                  {"duration", options.duration},
                  {"iterations", options.iterations},
                  {"seed", config.seed},
                  {"initial", amplitudes_json(initial)},
                  {"target", amplitudes_json(target)},
                  {"units", {{"time", "s"}, {"amplitude", "eV"}}}};

  if (config.output_path.empty()) {
    out << summary.dump(2) << '\n';
  } else {
    std::ostringstream csv;
    const std::vector<std::string> metadata = {
        "qdctl optimize", "seed " + std::to_string(config.seed),
        "achieved_fidelity " + format17(schedule.achieved_fidelity)};
    write_csv(csv, schedule, metadata);
    emit(csv.str(), config.output_path, out);
    std::filesystem::path summary_path = config.summary_path;
    if (summary_path.empty()) summary_path = config.output_path.string() + ".json";
    emit(summary.dump(2) + "\n", summary_path, out);
  }
  return kExitOk;
}

int cmd_demo(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.demo_levels < 3) {
    throw InvalidSpecError("demo needs N >= 3 (the N = 2 system is never completely controllable)");
  }
  const SystemSpec spec = explicit_example_spec(config.demo_levels);
  bool violation = false;
  json report = analyze_report(spec, tolerance_of(config), violation);
  json doc = {{"command", "demo"}, {"spec", spec_to_json(spec)}, {"report", std::move(report)}};
  emit(doc.dump(2) + "\n", config.output_path, out);
  return violation ? kExitNumeric : kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::analyze: return cmd_analyze(config, out, err);
      case Command::split: return cmd_split(config, out, err);
      case Command::fidelity: return cmd_fidelity(config, out, err);
      case Command::optimize: return cmd_optimize(config, out, err);
      case Command::demo: return cmd_demo(config, out, err);
    }
  } catch (const NumericError& e) {
    err << "qdctl: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const InvalidSpecError& e) {
    err << "qdctl: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::logic_error& e) {  // contract, index, shape, invalid_argument
    err << "qdctl: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "qdctl: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitInput;
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidSpecError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_tau_range(const std::string& text) {
  // lo:hi:n, log-spaced
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw InvalidSpecError("--tau-range expects lo:hi:n");
  }
  const auto lo = parse_list(text.substr(0, first));
  const auto hi = parse_list(text.substr(first + 1, second - first - 1));
  const auto n = parse_list(text.substr(second + 1));
  if (lo.size() != 1 || hi.size() != 1 || n.size() != 1 || n[0] < 1 || n[0] != std::floor(n[0])) {
    throw InvalidSpecError("--tau-range expects lo:hi:n with integer n >= 1");
  }
  if (!(lo[0] > 0.0) || !(hi[0] >= lo[0])) throw InvalidSpecError("--tau-range needs 0 < lo <= hi");
  return log_spaced(lo[0], hi[0], static_cast<int>(n[0]));
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controllability analysis of two-fold degenerate N-level quantum systems", "qdctl"};
  RunConfig config;
  std::string command, spec, output, summary, taus, tau_range, units, state, target;
  std::optional<double> tol, dt_max, duration;
  bool corrected = false;

  app.add_option("command", command, "analyze | split | fidelity | optimize | demo")
      ->required()
      ->check(CLI::IsMember({"analyze", "split", "fidelity", "optimize", "demo"}));
  app.add_option("--spec", spec, "system spec JSON file");
  app.add_option("--out", output, "output file (default: standard output)");
  app.add_option("--summary", summary, "optimize: JSON summary file (default: <out>.json)");
  app.add_option("--tol", tol, "closure tolerance (default 1e-9)");
  app.add_option("--seed", config.seed, "seed for every random choice");
  app.add_flag("--exact", config.exact, "fidelity: also integrate the exact dynamics");
  auto* taus_opt = app.add_option("--taus", taus, "fidelity: comma-separated tau list (s)");
  auto* range_opt = app.add_option("--tau-range", tau_range, "fidelity: lo:hi:n log-spaced taus (s)");
  taus_opt->excludes(range_opt);
  app.add_option("--dt-max", dt_max, "fidelity: largest exact-integration step (s)");
  app.add_flag("--corrected", corrected, "fidelity: use C_{m+-1,p} in the neighbour sums");
  app.add_option("--state", state, "comma-separated real amplitudes in basis order");
  app.add_option("--target", target, "optimize: comma-separated real target amplitudes");
  app.add_option("--segments", config.segments, "optimize: number of pulse segments");
  app.add_option("--duration", duration, "optimize: pulse duration (s)");
  app.add_option("--iters", config.iterations, "optimize: iteration budget");
  app.add_option("--units", units, "coupling unit of the spec file: J or eV")
      ->check(CLI::IsMember({"J", "eV"}));
  app.add_option("--n", config.demo_levels, "demo: number of levels N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qdctl: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (command == "analyze") config.command = Command::analyze;
    if (command == "split") config.command = Command::split;
    if (command == "fidelity") config.command = Command::fidelity;
    if (command == "optimize") config.command = Command::optimize;
    if (command == "demo") config.command = Command::demo;
    config.spec_path = spec;
    config.output_path = output;
    config.summary_path = summary;
    config.tolerance = tol;
    config.dt_max = dt_max;
    config.duration = duration;
    if (!units.empty()) config.units = parse_coupling_unit(units);
    if (!taus.empty()) config.taus = parse_list(taus);
    if (!tau_range.empty()) config.taus = parse_tau_range(tau_range);
    if (!state.empty()) config.state = parse_list(state);
    if (!target.empty()) config.target = parse_list(target);
    config.variant = corrected ? CoefficientVariant::corrected : CoefficientVariant::as_printed;
  } catch (const std::exception& e) {
    err << "qdctl: " << e.what() << '\n';
    return kExitInput;
  }
  return run(config, out, err);
}

}  // namespace qdc::cli
