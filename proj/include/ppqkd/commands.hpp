#pragma once

#include <ostream>
#include <vector>

#include "ppqkd/protocol.hpp"
#include "ppqkd/sweep.hpp"

namespace ppqkd::cli {

enum ExitCode : int { kOk = 0, kBadArguments = 1, kIoFailure = 2, kInvariantViolation = 3 };

// Writes to config.output_path, or to out when the path is empty or "-".
int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const ProtocolScenario& scenario, std::ostream& out, std::ostream& err);
int cmd_simulability(double lambda, double grid_step, double tol, std::ostream& out, std::ostream& err);
int cmd_gad(double lambda, const std::vector<double>& ps, std::ostream& out, std::ostream& err);
int cmd_witness(double g, const std::vector<double>& gammas, double t_max, int n_points, std::ostream& out,
                std::ostream& err);

}  // namespace ppqkd::cli
