#pragma once

// Key-rate sweeps over the damped Jaynes-Cummings schedule, plus the CSV and
// SVG emitters used by the command-line tool.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ppqkd/information.hpp"
#include "ppqkd/protocol.hpp"

namespace ppqkd {

enum class OutputFormat { csv, svg };

struct SweepConfig {
  Variant scenario = Variant::case1_travel_only;
  double g = 1.0;
  std::vector<double> gammas{0.1, 4.0, 15.0};
  double t_max = 4.0;  // in units of the dimensionless time gt
  int n_points = 401;
  double p = 0.0;  // GAD mixing for the gad scenario
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  void validate() const;
};

struct SweepRow {
  double gt = 0.0;
  double gamma = 0.0;
  KeyRateReport rates;  // rates.lambda is lambda(t)
};

// Rows ordered by gamma (in config order), then gt ascending. Grid points are
// evaluated in parallel; the result does not depend on scheduling.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

ProtocolScenario scenario_at(const SweepConfig& config, double lambda);

// First violated information-theoretic invariant, if any.
std::optional<std::string> row_invariant_violation(const SweepRow& row);

inline constexpr const char* kCsvHeader = "scenario,gt,gamma,lambda,i_ab,i_ae,chi_ae,chi_ab,k_min,k_max";

// 12 significant digits, LF line endings.
void write_csv(std::ostream& out, Variant scenario, const std::vector<SweepRow>& rows);
// 800x600 line chart of k_max against gt, one polyline per gamma.
void write_svg(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);

std::string format_sig12(double v);

}  // namespace ppqkd
