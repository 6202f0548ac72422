#include "ppqkd/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppqkd {

namespace {

constexpr double kCompletenessTol = 1e-9;

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

ComplexOperator matrix(std::size_t n, std::initializer_list<Complex> entries) {
  return ComplexOperator(SystemLayout::flat(n), std::vector<Complex>(entries));
}

}  // namespace

DampingParams::DampingParams(double g, double gamma) : g_(g), gamma_(gamma) {
  if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("spectral bandwidth g must be > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("coupling gamma must be >= 0");
}

DampingRegime DampingParams::regime() const {
  const double l2 = l_squared();
  if (l2 > 0.0) return DampingRegime::markovian_like;
  if (l2 < 0.0) return DampingRegime::non_markovian;
  return DampingRegime::critical;
}

double jc_damping(const DampingParams& params, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("jc_damping: t must be >= 0");
  const double g = params.g();
  const double l2 = params.l_squared();
  double amp;  // G(t)
  if (std::abs(l2) <= 1e-12 * g * g) {
    amp = std::exp(-0.5 * g * t) * (1.0 + 0.5 * g * t);
  } else if (l2 > 0.0) {
    // cosh/sinh expanded into exponentials so that large t does not overflow.
    const double l = std::sqrt(l2);
    amp = 0.5 * ((1.0 + g / l) * std::exp(0.5 * (l - g) * t) + (1.0 - g / l) * std::exp(-0.5 * (l + g) * t));
  } else {
    const double w = std::sqrt(-l2);
    amp = std::exp(-0.5 * g * t) * (std::cos(0.5 * w * t) + (g / w) * std::sin(0.5 * w * t));
  }
  const double lambda = 1.0 - amp * amp;
  if (lambda < -1e-9 || lambda > 1.0 + 1e-9)
    throw std::logic_error("jc_damping: lambda left [0, 1] by more than 1e-9");
  return std::clamp(lambda, 0.0, 1.0);
}

KrausChannel::KrausChannel(std::vector<ComplexOperator> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  const std::size_t d = kraus_.front().dimension();
  for (const auto& k : kraus_)
    if (k.dimension() != d) throw std::invalid_argument("Kraus operators differ in dimension");
  if (completeness_error() > kCompletenessTol)
    throw std::invalid_argument("Kraus operators of '" + label_ + "' are not trace preserving");
}

double KrausChannel::completeness_error() const {
  ComplexOperator sum(kraus_.front().layout());
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return (sum - ComplexOperator::identity(sum.layout())).max_abs();
}

KrausChannel ad_kraus_qubit(double lambda) {
  require_unit_interval(lambda, "lambda");
  return KrausChannel({matrix(2, {1, 0, 0, std::sqrt(1 - lambda)}),
                       matrix(2, {0, std::sqrt(lambda), 0, 0})},
                      "AD");
}

KrausChannel ad_kraus_mode(double lambda) {
  require_unit_interval(lambda, "lambda");
  return KrausChannel({matrix(3, {1, 0, 0, 0, std::sqrt(1 - lambda), 0, 0, 0, 1}),
                       matrix(3, {0, std::sqrt(lambda), 0, 0, 0, 0, 0, 0, 0})},
                      "AD-mode");
}

KrausChannel gad_kraus(const GadParams& params) {
  if (!(params.p >= 0.0 && params.p <= 0.5)) throw std::invalid_argument("GAD mixing p must lie in [0, 1/2]");
  require_unit_interval(params.lambda, "lambda");
  const double a = std::sqrt(1 - params.p), b = std::sqrt(params.p);
  const double sl = std::sqrt(params.lambda), sk = std::sqrt(1 - params.lambda);
  return KrausChannel({matrix(2, {a, 0, 0, a * sk}),
                       matrix(2, {0, a * sl, 0, 0}),
                       matrix(2, {0, 0, b * sl, 0}),
                       matrix(2, {b * sk, 0, 0, b})},
                      "GAD");
}

KrausChannel gad_kraus_mode(const GadParams& params) {
  const auto qubit = gad_kraus(params);
  const double vacuum[] = {std::sqrt(1 - params.p), 0.0, 0.0, std::sqrt(params.p)};
  std::vector<ComplexOperator> ops;
  for (std::size_t k = 0; k < 4; ++k) {
    ComplexOperator m(SystemLayout::flat(3));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(r, c) = qubit.kraus()[k](r, c);
    m(2, 2) = vacuum[k];
    ops.push_back(std::move(m));
  }
  return KrausChannel(std::move(ops), "GAD-mode");
}

ComplexOperator apply_channel(const ComplexOperator& state, const KrausChannel& channel,
                              const std::string& target) {
  if (state.layout().dim_of(target) != channel.dimension())
    throw std::invalid_argument("channel '" + channel.label() + "' does not fit subsystem '" + target + "'");
  ComplexOperator out(state.layout());
  for (const auto& k : channel.kraus()) out += conjugate_subsystems(k, {target}, state);
  return out;
}

double unitality_deviation(const KrausChannel& channel) {
  if (channel.dimension() != 2) throw std::invalid_argument("unitality_deviation: qubit channel required");
  const auto id = ComplexOperator::identity(channel.kraus().front().layout());
  ComplexOperator image(id.layout());
  for (const auto& k : channel.kraus()) image += k * k.adjoint();
  return trace_distance(image, id);
}

WitnessReport nonmarkov_witness(const DampingParams& params, double t_max, int n_points) {
  if (!(t_max > 0.0) || n_points < 10) throw std::invalid_argument("witness grid needs t_max > 0 and n_points >= 10");
  WitnessReport report;
  report.samples.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double t = t_max * i / (n_points - 1);
    report.samples.emplace_back(t, jc_damping(params, t));
  }
  constexpr double kNoise = 1e-12;
  bool in_run = false;
  for (std::size_t i = 0; i + 1 < report.samples.size(); ++i) {
    const bool falling = report.samples[i + 1].second < report.samples[i].second - kNoise;
    if (falling && !in_run) report.revival_intervals.emplace_back(report.samples[i].first, 0.0);
    if (falling) report.revival_intervals.back().second = report.samples[i + 1].first;
    in_run = falling;
  }
  report.non_markovian = !report.revival_intervals.empty();
  return report;
}

}  // namespace ppqkd
