#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace latqpa {

/// Lagrange-multiplier range and quality-parameter constants of a variable-rate
/// model. q indexes a log-linear lambda schedule over [lambda_min, lambda_max].
struct QpaConfig {
  double lambda_min = 1.0;
  double lambda_max = 768.0;
  int q_num = 64;
  double q0 = 0.0;

  /// Throws ErrorCode::validation when an invariant is broken.
  void validate() const;

  double max_q() const noexcept { return q_num - 1; }
  /// ln(lambda_max) - ln(lambda_min)
  double log_span() const;

  friend bool operator==(const QpaConfig&, const QpaConfig&) = default;
};

/// Constants of the pretrained variable-rate model: lambda in [1, 768], 64 qualities.
QpaConfig default_config(double q0);

/// Real-valued extension of the training schedule; q need not be an integer.
double lambda_from_q(double q, const QpaConfig& config);
double q_from_lambda(double lambda, const QpaConfig& config);

/// Lagrange multiplier that keeps spherical distortion uniform: lambda0 * cos(latitude).
double lambda_at_latitude(double lambda0, double latitude);

/// Quality-parameter shift of a row at `latitude` relative to the equator (<= 0).
double delta_q(double latitude, const QpaConfig& config);

/// Average of delta_q over latitude in [-pi/2, pi/2], in closed form using
/// the integral of ln cos over that interval, -pi ln 2.
double mean_delta_q(const QpaConfig& config);

/// q0 + delta_q - mean_delta_q: the latitude-adapted quality whose latitude
/// mean equals q0.
double adapted_q(double latitude, const QpaConfig& config);

class QualityMap {
 public:
  QualityMap(QpaConfig config, bool clamped, std::vector<double> q_tilde);

  int rows() const noexcept { return static_cast<int>(q_tilde_.size()); }
  std::span<const double> values() const noexcept { return q_tilde_; }
  double at(int row) const { return q_tilde_.at(static_cast<std::size_t>(row)); }
  const QpaConfig& config() const noexcept { return config_; }
  bool clamped() const noexcept { return clamped_; }

  double min() const;
  double max() const;
  double mean() const;

  friend bool operator==(const QualityMap&, const QualityMap&) = default;

 private:
  QpaConfig config_;
  bool clamped_ = false;
  std::vector<double> q_tilde_;
};

/// One adapted quality per ERP row. With `clamp`, values are clipped to
/// [0, q_num - 1], the range on which vector banks are defined.
QualityMap build_quality_map(int rows, const QpaConfig& config, bool clamp);

struct GopSchedule {
  std::vector<double> offsets;

  /// The low-delay pattern of the pretrained model: [0, 8, 0, 4, 0, 4, 0, 4].
  static GopSchedule low_delay();
};

/// Effective base quality of frame `frame_index`: q0 plus the cyclic offset,
/// clipped to [0, q_num - 1].
double gop_offset_schedule(long long frame_index, const GopSchedule& schedule, double q0,
                           int q_num);

// Text document: "key = value" lines, '#' comments, q_tilde as a whitespace
// separated list. Doubles are written in shortest round-trip form.
void write_quality_map(std::ostream& out, const QualityMap& map);
QualityMap read_quality_map(std::istream& in);
void save_quality_map(const QualityMap& map, const std::filesystem::path& path);
QualityMap load_quality_map(const std::filesystem::path& path);

}  // namespace latqpa
