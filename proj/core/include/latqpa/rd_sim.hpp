#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace latqpa {

/// Exponential rate-distortion model D = C exp(-K R).
struct RdModel {
  double c = 1.0;
  double k = 1.0;

  void validate() const;
};

double distortion_at_rate(const RdModel& model, double rate);
double rate_at_distortion(const RdModel& model, double distortion);

/// Lagrange multiplier -dR/dD of the model at distortion D, i.e. 1 / (K D).
double lambda_at_distortion(const RdModel& model, double distortion);

struct Band {
  double latitude = 0.0;
  double rate = 0.0;
  double distortion = 0.0;
};

/// One band per ERP row; every band covers the same number of plane pixels.
struct BandAllocation {
  std::vector<Band> bands;
  RdModel model;
};

/// lambda_phi = lambda0 cos(phi) in every band: D_phi = 1 / (K lambda0 cos phi).
BandAllocation adapted_allocation(const RdModel& model, double lambda0,
                                  std::span<const double> latitudes);

/// The same multiplier in every band.
BandAllocation uniform_allocation(const RdModel& model, double lambda,
                                  std::span<const double> latitudes);

struct SphereScore {
  double total_rate = 0.0;
  /// sum(cos phi * D_phi) / sum(cos phi)
  double weighted_distortion = 0.0;
};

SphereScore sphere_score(const BandAllocation& allocation);

enum class Strategy { uniform, adapted };
std::string_view to_string(Strategy strategy) noexcept;

BandAllocation allocate(Strategy strategy, const RdModel& model, double lambda,
                        std::span<const double> latitudes);

/// Bisection on log(lambda) until the strategy's total rate matches
/// `total_rate` to `rel_tol`.
double lambda_for_total_rate(Strategy strategy, const RdModel& model,
                             std::span<const double> latitudes, double total_rate,
                             double rel_tol = 1e-12);

/// Numerical optimum of the cos-weighted distortion for a fixed rate budget.
/// The budget is cut into steps_per_band * bands equal quanta, and each quantum
/// goes to the band whose weighted distortion drops the most. For a separable
/// convex objective this greedy rule is optimal on the grid.
BandAllocation brute_force_optimal_allocation(const RdModel& model,
                                              std::span<const double> latitudes,
                                              double total_rate, int steps_per_band = 10000);

struct SimulationPoint {
  Strategy strategy;
  double lambda0;
  double total_rate;
  double weighted_distortion;
  double quality_db;  // -10 log10(weighted_distortion)
};

struct SimulationResult {
  std::vector<SimulationPoint> points;
  /// Adapted vs. uniform, in percent; negative means the adapted allocation saves rate.
  double bd_rate = 0.0;
};

/// Sweeps lambda0 for both strategies, builds (rate, quality) curves and
/// returns their BD-Rate. Needs at least four lambda0 values.
SimulationResult simulate_bd_gain(const RdModel& model, std::span<const double> latitudes,
                                  std::span<const double> lambda0_sweep);

/// Latitudes of the row centres of an ERP plane with `rows` rows.
std::vector<double> erp_band_latitudes(int rows);

/// CSV table (strategy, lambda0, total_rate, weighted_distortion, quality_db)
/// followed by a blank line and a "bd_rate_percent,<value>" summary line.
void write_simulation_report(std::ostream& out, const SimulationResult& result, int digits = 6);

}  // namespace latqpa
