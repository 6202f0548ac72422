#include "ppqkd/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "ppqkd/channels.hpp"

namespace ppqkd {

void SweepConfig::validate() const {
  if (n_points < 2) throw std::invalid_argument("need at least 2 points");
  if (!(t_max > 0.0)) throw std::invalid_argument("t-max must be > 0");
  if (gammas.empty()) throw std::invalid_argument("need at least one gamma");
  DampingParams(g, gammas.front());
  for (double gm : gammas) DampingParams(g, gm);
  if (scenario == Variant::gad_both_qubits && !(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("GAD mixing p must lie in [0, 1/2]");
}

ProtocolScenario scenario_at(const SweepConfig& config, double lambda) {
  return {config.scenario, lambda, config.scenario == Variant::gad_both_qubits ? config.p : 0.0};
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t per_gamma = static_cast<std::size_t>(config.n_points);
  const std::size_t total = per_gamma * config.gammas.size();
  std::vector<SweepRow> rows(total);

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double gamma = config.gammas[i / per_gamma];
      const double gt = config.t_max * static_cast<double>(i % per_gamma) / static_cast<double>(per_gamma - 1);
      const double lambda = jc_damping(DampingParams(config.g, gamma), gt / config.g);
      rows[i] = {gt, gamma, key_rates(scenario_at(config, lambda))};
      rows[i].rates.lambda = lambda;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < total; begin += chunk)
    jobs.push_back(std::async(std::launch::async, fill, begin, std::min(total, begin + chunk)));
  for (auto& j : jobs) j.get();
  return rows;
}

std::optional<std::string> row_invariant_violation(const SweepRow& row) {
  const auto& r = row.rates;
  const double values[] = {row.gt, row.gamma, r.lambda, r.i_ab, r.i_ae, r.chi_ae, r.chi_ab, r.k_min, r.k_max};
  for (double v : values)
    if (!std::isfinite(v)) return "non-finite value";
  if (r.lambda < 0.0 || r.lambda > 1.0) return "lambda outside [0, 1]";
  for (double v : {r.i_ab, r.i_ae, r.chi_ae, r.chi_ab})
    if (v < 0.0 || v > 2.0) return "information quantity outside [0, 2] bits";
  if (std::abs(r.chi_ae - r.i_ae) > 1e-9) return "chi(A:E) differs from I(A:E)";
  if (r.i_ab > r.chi_ab + 1e-9) return "I(A:B) exceeds chi(A:B)";
  if (std::abs(r.k_min - (r.i_ab - r.chi_ae)) > 1e-12 || std::abs(r.k_max - (r.i_ab - r.i_ae)) > 1e-12)
    return "key rate identity broken";
  return std::nullopt;
}

std::string format_sig12(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return fmt::format("{:.12g}", v);
}

void write_csv(std::ostream& out, Variant scenario, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  const std::string name = to_string(scenario);
  for (const auto& row : rows) {
    const auto& r = row.rates;
    out << name;
    for (double v : {row.gt, row.gamma, r.lambda, r.i_ab, r.i_ae, r.chi_ae, r.chi_ab, r.k_min, r.k_max})
      out << ',' << format_sig12(v);
    out << '\n';
  }
}

void write_svg(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows) {
  constexpr double kWidth = 800, kHeight = 600, kLeft = 80, kRight = 160, kTop = 50, kBottom = 60;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

  double lo = 0.0, hi = 0.0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.rates.k_max);
    hi = std::max(hi, r.rates.k_max);
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto px = [&](double gt) { return kLeft + plot_w * gt / config.t_max; };
  auto py = [&](double k) { return kTop + plot_h * (hi - k) / (hi - lo); };

  out << fmt::format(R"(<?xml version="1.0" encoding="UTF-8"?>)") << '\n';
  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)",
                     kWidth, kHeight, kWidth, kHeight)
      << '\n';
  out << R"(<rect x="0" y="0" width="800" height="600" fill="white"/>)" << '\n';
  out << fmt::format(R"(<text x="{}" y="30" font-size="16" text-anchor="middle">k_max vs gt ({})</text>)",
                     kLeft + plot_w / 2, to_string(config.scenario))
      << '\n';
  // axes
  out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>)", kLeft, kTop + plot_h,
                     kLeft + plot_w)
      << '\n';
  out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)", kLeft, kTop, kTop + plot_h)
      << '\n';
  if (lo < 0.0 && hi > 0.0)
    out << fmt::format(R"(<line x1="{0}" y1="{1:.2f}" x2="{2}" y2="{1:.2f}" stroke="#999" stroke-dasharray="4 4"/>)",
                       kLeft, py(0.0), kLeft + plot_w)
        << '\n';
  for (int i = 0; i <= 4; ++i) {
    const double gt = config.t_max * i / 4.0, k = lo + (hi - lo) * i / 4.0;
    out << fmt::format(R"(<text x="{:.2f}" y="{}" font-size="12" text-anchor="middle">{:.3g}</text>)", px(gt),
                       kTop + plot_h + 20, gt)
        << '\n';
    out << fmt::format(R"(<text x="{}" y="{:.2f}" font-size="12" text-anchor="end">{:.3g}</text>)", kLeft - 8,
                       py(k) + 4, k)
        << '\n';
  }
  out << fmt::format(R"(<text x="{}" y="{}" font-size="14" text-anchor="middle">gt</text>)", kLeft + plot_w / 2,
                     kHeight - 15)
      << '\n';

  for (std::size_t gi = 0; gi < config.gammas.size(); ++gi) {
    const char* color = kColors[gi % std::size(kColors)];
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="2" points=")", color);
    bool first = true;
    for (const auto& r : rows) {
      if (r.gamma != config.gammas[gi]) continue;
      out << (first ? "" : " ") << fmt::format("{:.2f},{:.2f}", px(r.gt), py(r.rates.k_max));
      first = false;
    }
    out << R"("/>)" << '\n';
    const double ly = kTop + 20 + 22 * static_cast<double>(gi);
    out << fmt::format(R"(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{3}" stroke-width="2"/>)",
                       kLeft + plot_w + 15, ly, kLeft + plot_w + 45, color)
        << '\n';
    out << fmt::format(R"(<text x="{}" y="{}" font-size="12">gamma = {}</text>)", kLeft + plot_w + 50, ly + 4,
                       format_sig12(config.gammas[gi]))
        << '\n';
  }
  out << "</svg>\n";
}

}  // namespace ppqkd
