#include "ppqkd/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ppqkd/channels.hpp"
#include "ppqkd/classical_sim.hpp"
#include "ppqkd/information.hpp"

namespace ppqkd::cli {

namespace {

const char* kBellNames[] = {"psi+", "psi-", "phi+", "phi-"};

bool valid_lambda(double l) { return l >= 0.0 && l <= 1.0; }

}  // namespace

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(config);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "sweep: {}\n", e.what());
    return kBadArguments;
  }
  for (const auto& row : rows)
    if (auto violation = row_invariant_violation(row)) {
      fmt::print(err, "sweep: invariant violated at gamma={} gt={}: {}\n", row.gamma, row.gt, *violation);
      return kInvariantViolation;
    }

  std::ostringstream buffer;
  if (config.format == OutputFormat::csv)
    write_csv(buffer, config.scenario, rows);
  else
    write_svg(buffer, config, rows);

  if (config.output_path.empty() || config.output_path == "-") {
    out << buffer.str();
    return kOk;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    fmt::print(err, "sweep: cannot open '{}' for writing\n", config.output_path);
    return kIoFailure;
  }
  file << buffer.str();
  file.flush();
  if (!file) {
    fmt::print(err, "sweep: write to '{}' failed\n", config.output_path);
    return kIoFailure;
  }
  return kOk;
}

int cmd_table(const ProtocolScenario& scenario, std::ostream& out, std::ostream& err) {
  try {
    scenario.validate();
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "table: {}\n", e.what());
    return kBadArguments;
  }
  const auto sim = measure_joint(scenario);
  const bool has_closed_form = scenario.variant != Variant::gad_both_qubits;
  const auto closed = has_closed_form ? closed_form_joint(scenario.variant, scenario.lambda) : JointDistribution{};

  fmt::print(out, "scenario {}  lambda {}", to_string(scenario.variant), format_sig12(scenario.lambda));
  if (scenario.variant == Variant::gad_both_qubits) fmt::print(out, "  p {}", format_sig12(scenario.p));
  fmt::print(out, "\n{:>2} {:>2} {:>5} {:>16} {:>16} {:>12}\n", "A", "E", "B", "simulated", "closed_form", "diff");
  for (std::size_t a = 0; a < JointDistribution::kA; ++a)
    for (std::size_t e = 0; e < JointDistribution::kE; ++e)
      for (std::size_t b = 0; b < JointDistribution::kB; ++b) {
        if (has_closed_form)
          fmt::print(out, "{:>2} {:>2} {:>5} {:>16.12f} {:>16.12f} {:>12.3e}\n", a, e, kBellNames[b], sim(a, e, b),
                     closed(a, e, b), sim(a, e, b) - closed(a, e, b));
        else
          fmt::print(out, "{:>2} {:>2} {:>5} {:>16.12f} {:>16} {:>12}\n", a, e, kBellNames[b], sim(a, e, b), "-", "-");
      }
  if (has_closed_form) fmt::print(out, "max deviation {:.3e}\n", sim.max_abs_difference(closed));
  return kOk;
}

int cmd_simulability(double lambda, double grid_step, double tol, std::ostream& out, std::ostream& err) {
  if (!valid_lambda(lambda)) {
    fmt::print(err, "simulability: lambda must lie in [0, 1]\n");
    return kBadArguments;
  }
  FeasibilityReport report;
  try {
    report = feasibility_search(closed_form_joint(Variant::noiseless, 0.0),
                                closed_form_joint(Variant::case2_both_qubits, lambda), grid_step, tol);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "simulability: {}\n", e.what());
    return kBadArguments;
  }
  const auto cert = algebraic_witness(lambda);

  fmt::print(out, "target: case2_both_qubits table at lambda {}\n", format_sig12(lambda));
  fmt::print(out, "grid step {}  tol {}  LP solves {}\n", format_sig12(grid_step), format_sig12(tol),
             report.lp_solves);
  fmt::print(out, "min residual (L-inf over 24 cells) {:.12g}\n", report.min_residual);
  fmt::print(out, "best a = [[{:.4f}, {:.4f}], [{:.4f}, {:.4f}]]\n", report.best_a(0, 0), report.best_a(0, 1),
             report.best_a(1, 0), report.best_a(1, 1));
  fmt::print(out, "best b = [[{:.4f}, {:.4f}, {:.4f}, {:.4f}], [{:.4f}, {:.4f}, {:.4f}, {:.4f}]]\n",
             report.best_b(0, 0), report.best_b(0, 1), report.best_b(0, 2), report.best_b(0, 3), report.best_b(1, 0),
             report.best_b(1, 1), report.best_b(1, 2), report.best_b(1, 3));
  fmt::print(out, "algebraic certificate:\n");
  for (std::size_t i = 0; i < cert.steps.size(); ++i) fmt::print(out, "  {}. {}\n", i + 1, cert.steps[i]);
  const bool agree = cert.infeasible == !report.feasible;
  fmt::print(out, "certificate {} the LP search\n", agree ? "agrees with" : "DISAGREES with");
  fmt::print(out, "{}\n", report.feasible ? "FEASIBLE" : "INFEASIBLE");
  return kOk;
}

int cmd_gad(double lambda, const std::vector<double>& ps, std::ostream& out, std::ostream& err) {
  if (!valid_lambda(lambda)) {
    fmt::print(err, "gad: lambda must lie in [0, 1]\n");
    return kBadArguments;
  }
  if (ps.empty()) {
    fmt::print(err, "gad: need at least one p\n");
    return kBadArguments;
  }
  for (double p : ps)
    if (!(p >= 0.0 && p <= 0.5)) {
      fmt::print(err, "gad: p = {} outside [0, 1/2]\n", p);
      return kBadArguments;
    }
  out << "p,unitality_deviation,k_max\n";
  double prev_p = 0.0, prev_k = 0.0;
  bool have_prev = false;
  for (double p : ps) {
    const double dev = unitality_deviation(gad_kraus({p, lambda}));
    const double k = key_rates(ProtocolScenario::gad(p, lambda)).k_max;
    out << format_sig12(p) << ',' << format_sig12(dev) << ',' << format_sig12(k) << '\n';
    if (have_prev && p > prev_p && k > prev_k + 1e-12)
      fmt::print(err, "warning: k_max increases from p={} to p={} ({} -> {})\n", prev_p, p, prev_k, k);
    prev_p = p;
    prev_k = k;
    have_prev = true;
  }
  return kOk;
}

int cmd_witness(double g, const std::vector<double>& gammas, double t_max, int n_points, std::ostream& out,
                std::ostream& err) {
  if (gammas.empty()) {
    fmt::print(err, "witness: need a gamma\n");
    return kBadArguments;
  }
  try {
    for (double gamma : gammas) {
      const DampingParams params(g, gamma);
      const auto report = nonmarkov_witness(params, t_max, n_points);
      const char* regime = params.regime() == DampingRegime::non_markovian ? "oscillatory (2 gamma > g)"
                           : params.regime() == DampingRegime::critical  ? "critical (2 gamma = g)"
                                                                          : "overdamped (2 gamma < g)";
      fmt::print(out, "g {}  gamma {}  regime {}\n", format_sig12(g), format_sig12(gamma), regime);
      fmt::print(out, "non-Markovian: {}\n", report.non_markovian ? "yes" : "no");
      fmt::print(out, "revival intervals: {}\n", report.revival_intervals.size());
      for (const auto& [a, b] : report.revival_intervals) fmt::print(out, "  [{:.6f}, {:.6f}]\n", a, b);
      const std::size_t stride = std::max<std::size_t>(1, report.samples.size() / 20);
      fmt::print(out, "samples (t, lambda):\n");
      for (std::size_t i = 0; i < report.samples.size(); i += stride)
        fmt::print(out, "  {:.6f} {:.9f}\n", report.samples[i].first, report.samples[i].second);
    }
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "witness: {}\n", e.what());
    return kBadArguments;
  }
  return kOk;
}

}  // namespace ppqkd::cli
