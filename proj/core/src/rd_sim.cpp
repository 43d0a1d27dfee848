#include "latqpa/rd_sim.hpp"

#include <cmath>
#include <ostream>
#include <queue>
#include <string>

#include <fmt/format.h>

#include "latqpa/detail/text.hpp"
#include "latqpa/erp_geometry.hpp"
#include "latqpa/errors.hpp"
#include "latqpa/rd_eval.hpp"

namespace latqpa {

void RdModel::validate() const {
  if (!(std::isfinite(c) && c > 0.0 && std::isfinite(k) && k > 0.0)) {
    throw Error(ErrorCode::validation, fmt::format("R-D model needs C > 0 and K > 0, got C={} K={}", c, k));
  }
}

double distortion_at_rate(const RdModel& model, double rate) {
  model.validate();
  if (!(rate >= 0.0)) throw Error(ErrorCode::domain, fmt::format("rate {} is negative", rate));
  return model.c * std::exp(-model.k * rate);
}

double rate_at_distortion(const RdModel& model, double distortion) {
  model.validate();
  if (!(distortion > 0.0)) throw Error(ErrorCode::domain, "distortion must be positive");
  return (std::log(model.c) - std::log(distortion)) / model.k;
}

double lambda_at_distortion(const RdModel& model, double distortion) {
  model.validate();
  if (!(distortion > 0.0)) throw Error(ErrorCode::domain, "distortion must be positive");
  return 1.0 / (model.k * distortion);
}

namespace {

BandAllocation allocate_with(const RdModel& model, double lambda,
                             std::span<const double> latitudes, bool cos_law) {
  model.validate();
  if (!(lambda > 0.0 && std::isfinite(lambda))) {
    throw Error(ErrorCode::domain, "lambda must be positive and finite");
  }
  if (latitudes.empty()) throw Error(ErrorCode::domain, "no latitude bands given");
  BandAllocation out{{}, model};
  out.bands.reserve(latitudes.size());
  for (std::size_t b = 0; b < latitudes.size(); ++b) {
    const double phi = latitudes[b];
    require_off_pole(phi);
    const double band_lambda = cos_law ? lambda * std::cos(phi) : lambda;
    const double d = 1.0 / (model.k * band_lambda);
    const double r = rate_at_distortion(model, d);
    if (r < 0.0) {
      throw Error(ErrorCode::infeasible,
                  fmt::format("band {} (latitude {}) needs negative rate {}: lambda {} is below "
                              "the model's zero-rate multiplier {}",
                              b, phi, r, band_lambda, 1.0 / (model.k * model.c)));
    }
    out.bands.push_back({phi, r, d});
  }
  return out;
}

}  // namespace

BandAllocation adapted_allocation(const RdModel& model, double lambda0,
                                  std::span<const double> latitudes) {
  return allocate_with(model, lambda0, latitudes, true);
}

BandAllocation uniform_allocation(const RdModel& model, double lambda,
                                  std::span<const double> latitudes) {
  return allocate_with(model, lambda, latitudes, false);
}

SphereScore sphere_score(const BandAllocation& allocation) {
  SphereScore s;
  double weight_sum = 0.0;
  for (const auto& band : allocation.bands) {
    const double w = std::cos(band.latitude);
    s.total_rate += band.rate;
    s.weighted_distortion += w * band.distortion;
    weight_sum += w;
  }
  if (weight_sum > 0.0) s.weighted_distortion /= weight_sum;
  return s;
}

std::string_view to_string(Strategy strategy) noexcept {
  return strategy == Strategy::adapted ? "adapted" : "uniform";
}

BandAllocation allocate(Strategy strategy, const RdModel& model, double lambda,
                        std::span<const double> latitudes) {
  return allocate_with(model, lambda, latitudes, strategy == Strategy::adapted);
}

double lambda_for_total_rate(Strategy strategy, const RdModel& model,
                             std::span<const double> latitudes, double total_rate,
                             double rel_tol) {
  model.validate();
  if (latitudes.empty()) throw Error(ErrorCode::domain, "no latitude bands given");
  if (!(total_rate > 0.0)) throw Error(ErrorCode::infeasible, "total rate must be positive");

  // Smallest multiplier for which every band has nonnegative rate.
  double min_cos = 1.0;
  for (double phi : latitudes) {
    require_off_pole(phi);
    min_cos = std::min(min_cos, std::cos(phi));
  }
  const double lambda_floor =
      1.0 / (model.k * model.c * (strategy == Strategy::adapted ? min_cos : 1.0));
  const double rate_at_floor = sphere_score(allocate(strategy, model, lambda_floor, latitudes)).total_rate;
  if (total_rate < rate_at_floor) {
    throw Error(ErrorCode::infeasible,
                fmt::format("total rate {} is below the minimum {} this strategy can reach "
                            "without negative band rates",
                            total_rate, rate_at_floor));
  }

  double lo = std::log(lambda_floor);
  double hi = lo + 1.0;
  while (sphere_score(allocate(strategy, model, std::exp(hi), latitudes)).total_rate < total_rate) {
    hi += 2.0 * (hi - lo);
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double rate = sphere_score(allocate(strategy, model, std::exp(mid), latitudes)).total_rate;
    if (std::abs(rate - total_rate) <= rel_tol * total_rate) return std::exp(mid);
    (rate < total_rate ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

BandAllocation brute_force_optimal_allocation(const RdModel& model,
                                              std::span<const double> latitudes,
                                              double total_rate, int steps_per_band) {
  model.validate();
  if (latitudes.empty()) throw Error(ErrorCode::domain, "no latitude bands given");
  if (!(total_rate > 0.0) || !std::isfinite(total_rate)) {
    throw Error(ErrorCode::infeasible, fmt::format("total rate {} is not a positive budget", total_rate));
  }
  if (steps_per_band < 1000) {
    throw Error(ErrorCode::domain, "brute-force search needs at least 1000 steps per band");
  }
  const std::size_t n = latitudes.size();
  const long long quanta = static_cast<long long>(steps_per_band) * static_cast<long long>(n);
  const double step = total_rate / static_cast<double>(quanta);

  std::vector<double> weight(n);
  for (std::size_t b = 0; b < n; ++b) {
    require_off_pole(latitudes[b]);
    weight[b] = std::cos(latitudes[b]);
  }
  std::vector<long long> count(n, 0);

  // Gain of giving band b one more quantum: w_b (D(r) - D(r + step)).
  auto gain = [&](std::size_t b) {
    const double r = static_cast<double>(count[b]) * step;
    return weight[b] * (distortion_at_rate(model, r) - distortion_at_rate(model, r + step));
  };
  std::priority_queue<std::pair<double, std::size_t>> heap;
  for (std::size_t b = 0; b < n; ++b) heap.emplace(gain(b), b);
  for (long long q = 0; q < quanta; ++q) {
    const auto b = heap.top().second;
    heap.pop();
    ++count[b];
    heap.emplace(gain(b), b);
  }

  BandAllocation out{{}, model};
  for (std::size_t b = 0; b < n; ++b) {
    const double r = static_cast<double>(count[b]) * step;
    out.bands.push_back({latitudes[b], r, distortion_at_rate(model, r)});
  }
  return out;
}

SimulationResult simulate_bd_gain(const RdModel& model, std::span<const double> latitudes,
                                  std::span<const double> lambda0_sweep) {
  if (lambda0_sweep.size() < kMinCurvePoints) {
    throw Error(ErrorCode::too_few_points,
                fmt::format("lambda0 sweep needs at least {} values", kMinCurvePoints));
  }
  SimulationResult result;
  std::vector<RdPoint> uniform_curve, adapted_curve;

  // With equal band weights the adapted allocation at lambda0 is the uniform
  // one at lambda0 cos(phi): both sweeps sample one curve and the BD-Rate is
  // zero. Interpolating the two sample sets separately would only add noise.
  bool equal_weights = true;
  for (double phi : latitudes) {
    require_off_pole(phi);
    equal_weights = equal_weights && std::cos(phi) == std::cos(latitudes.front());
  }

  for (Strategy strategy : {Strategy::uniform, Strategy::adapted}) {
    for (double lambda0 : lambda0_sweep) {
      const auto score = sphere_score(allocate(strategy, model, lambda0, latitudes));
      const double quality = -10.0 * std::log10(score.weighted_distortion) + 0.0;  // no -0
      result.points.push_back({strategy, lambda0, score.total_rate, score.weighted_distortion, quality});
      (strategy == Strategy::adapted ? adapted_curve : uniform_curve).push_back({score.total_rate, quality});
    }
  }
  const auto uniform = validate_curve(std::move(uniform_curve));
  const auto adapted = validate_curve(std::move(adapted_curve));
  result.bd_rate = equal_weights ? 0.0 : bd_rate(uniform, adapted);
  return result;
}

std::vector<double> erp_band_latitudes(int rows) {
  const LatitudeGrid grid(rows);
  return {grid.latitudes().begin(), grid.latitudes().end()};
}

void write_simulation_report(std::ostream& out, const SimulationResult& result, int digits) {
  auto fmt_value = [digits](double v) {
    return digits <= 0 ? detail::shortest_repr(v) : fmt::format("{:.{}g}", v, digits);
  };
  out << "strategy,lambda0,total_rate,weighted_distortion,quality_db\n";
  for (const auto& p : result.points) {
    out << to_string(p.strategy) << ',' << fmt_value(p.lambda0) << ',' << fmt_value(p.total_rate)
        << ',' << fmt_value(p.weighted_distortion) << ',' << fmt_value(p.quality_db) << '\n';
  }
  out << "\nbd_rate_percent," << fmt_value(result.bd_rate) << '\n';
  if (!out) throw Error(ErrorCode::io, "failed writing simulation report");
}

}  // namespace latqpa
