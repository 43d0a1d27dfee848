#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace latqpa {

struct RdPoint {
  double rate = 0.0;     // e.g. kbps, > 0
  double quality = 0.0;  // dB

  friend bool operator==(const RdPoint&, const RdPoint&) = default;
};

/// At least four points, sorted by rate, strictly increasing in rate and in quality.
class RdCurve {
 public:
  std::span<const RdPoint> points() const noexcept { return points_; }
  double min_quality() const noexcept { return points_.front().quality; }
  double max_quality() const noexcept { return points_.back().quality; }

 private:
  explicit RdCurve(std::vector<RdPoint> points) : points_(std::move(points)) {}
  friend RdCurve validate_curve(std::vector<RdPoint> points);

  std::vector<RdPoint> points_;
};

inline constexpr std::size_t kMinCurvePoints = 4;

/// Sorts by rate and checks the curve; errors name the offending points.
RdCurve validate_curve(std::vector<RdPoint> points);

enum class BdMethod {
  piecewise_cubic,  // monotone cubic through every point (default)
  polynomial,       // least-squares cubic polynomial
};

BdMethod parse_bd_method(std::string_view name);

/// Mean rate difference of `test` against `reference` at equal quality, in
/// percent, over the overlap of the two quality ranges. Negative = savings.
double bd_rate(const RdCurve& reference, const RdCurve& test,
               BdMethod method = BdMethod::piecewise_cubic);

/// Mean quality difference (dB) at equal rate over the overlapping log-rate range.
double bd_psnr(const RdCurve& reference, const RdCurve& test,
               BdMethod method = BdMethod::piecewise_cubic);

/// Two delimiter-separated columns (rate, quality). Blank lines, '#' comments
/// and a leading non-numeric header line are skipped.
std::vector<RdPoint> read_curve_points(std::istream& in);
RdCurve load_curve(const std::filesystem::path& path);

}  // namespace latqpa
