#include "latqpa/qpa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "latqpa/erp_geometry.hpp"
#include "latqpa/errors.hpp"

namespace latqpa {

void QpaConfig::validate() const {
  if (!(std::isfinite(lambda_min) && std::isfinite(lambda_max) && lambda_min > 0.0)) {
    throw Error(ErrorCode::validation, "lambda_min must be positive and finite");
  }
  if (!(lambda_max > lambda_min)) {
    throw Error(ErrorCode::validation, "lambda_max must exceed lambda_min");
  }
  if (q_num < 2) {
    throw Error(ErrorCode::validation, "q_num must be at least 2, got " + std::to_string(q_num));
  }
  if (!(std::isfinite(q0) && q0 >= 0.0 && q0 <= max_q())) {
    throw Error(ErrorCode::validation,
                "q0 must lie in [0, " + std::to_string(q_num - 1) + "], got " + std::to_string(q0));
  }
}

double QpaConfig::log_span() const { return std::log(lambda_max) - std::log(lambda_min); }

QpaConfig default_config(double q0) {
  QpaConfig config;
  config.q0 = q0;
  config.validate();
  return config;
}

double lambda_from_q(double q, const QpaConfig& config) {
  config.validate();
  return std::exp(std::log(config.lambda_min) + q * config.log_span() / config.max_q());
}

double q_from_lambda(double lambda, const QpaConfig& config) {
  config.validate();
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::domain, "lambda must be positive, got " + std::to_string(lambda));
  }
  return config.max_q() * (std::log(lambda) - std::log(config.lambda_min)) / config.log_span();
}

double lambda_at_latitude(double lambda0, double latitude) {
  require_off_pole(latitude);
  if (!(lambda0 > 0.0)) {
    throw Error(ErrorCode::domain, "lambda0 must be positive");
  }
  return lambda0 * std::cos(latitude);
}

double delta_q(double latitude, const QpaConfig& config) {
  config.validate();
  require_off_pole(latitude);
  return config.max_q() * std::log(std::cos(latitude)) / config.log_span();
}

double mean_delta_q(const QpaConfig& config) {
  config.validate();
  return -config.max_q() * std::numbers::ln2 / config.log_span();
}

double adapted_q(double latitude, const QpaConfig& config) {
  return config.q0 + delta_q(latitude, config) - mean_delta_q(config);
}

QualityMap::QualityMap(QpaConfig config, bool clamped, std::vector<double> q_tilde)
    : config_(config), clamped_(clamped), q_tilde_(std::move(q_tilde)) {
  config_.validate();
  if (q_tilde_.empty()) {
    throw Error(ErrorCode::validation, "quality map needs at least one row");
  }
  for (std::size_t r = 0; r < q_tilde_.size(); ++r) {
    if (!std::isfinite(q_tilde_[r])) {
      throw Error(ErrorCode::non_finite, "quality map row " + std::to_string(r) + " is not finite");
    }
  }
}

double QualityMap::min() const { return *std::min_element(q_tilde_.begin(), q_tilde_.end()); }
double QualityMap::max() const { return *std::max_element(q_tilde_.begin(), q_tilde_.end()); }
double QualityMap::mean() const {
  return std::accumulate(q_tilde_.begin(), q_tilde_.end(), 0.0) / static_cast<double>(q_tilde_.size());
}

QualityMap build_quality_map(int rows, const QpaConfig& config, bool clamp) {
  config.validate();
  const LatitudeGrid grid(rows);
  std::vector<double> q(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    q[r] = adapted_q(grid.latitude(r), config);
    if (clamp) q[r] = std::clamp(q[r], 0.0, config.max_q());
  }
  return QualityMap(config, clamp, std::move(q));
}

GopSchedule GopSchedule::low_delay() { return GopSchedule{{0, 8, 0, 4, 0, 4, 0, 4}}; }

double gop_offset_schedule(long long frame_index, const GopSchedule& schedule, double q0,
                           int q_num) {
  if (frame_index < 0) {
    throw Error(ErrorCode::domain, "frame index must be nonnegative");
  }
  if (schedule.offsets.empty()) {
    throw Error(ErrorCode::validation, "GOP offset schedule is empty");
  }
  if (q_num < 2) {
    throw Error(ErrorCode::validation, "q_num must be at least 2");
  }
  const auto n = static_cast<long long>(schedule.offsets.size());
  const double offset = schedule.offsets[static_cast<std::size_t>(frame_index % n)];
  return std::clamp(q0 + offset, 0.0, static_cast<double>(q_num - 1));
}

}  // namespace latqpa
