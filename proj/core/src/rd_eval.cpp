#include "latqpa/rd_eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "latqpa/detail/pchip.hpp"
#include "latqpa/detail/text.hpp"
#include "latqpa/errors.hpp"

namespace latqpa {

namespace {

std::string describe(const RdPoint& p) { return fmt::format("({}, {})", p.rate, p.quality); }

// Integral over [lo, hi] of a curve y(x) fitted through (x_i, y_i).
class CurveFit {
 public:
  CurveFit(std::vector<double> x, std::vector<double> y, BdMethod method) : method_(method) {
    if (method == BdMethod::piecewise_cubic) {
      cubic_.emplace(x, y);
      return;
    }
    // Centre and scale the abscissa so the Vandermonde system stays well conditioned.
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    centre_ = 0.5 * (*mn + *mx);
    scale_ = 0.5 * (*mx - *mn);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 4);
    Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = (x[i] - centre_) / scale_;
      const auto row = static_cast<Eigen::Index>(i);
      a(row, 0) = 1.0;
      a(row, 1) = t;
      a(row, 2) = t * t;
      a(row, 3) = t * t * t;
      b(row) = y[i];
    }
    coeffs_ = a.colPivHouseholderQr().solve(b);
  }

  double integrate(double lo, double hi) const {
    if (method_ == BdMethod::piecewise_cubic) return cubic_->integrate(lo, hi);
    auto primitive = [&](double x) {
      const double t = (x - centre_) / scale_;
      return scale_ * t * (coeffs_(0) + t * (coeffs_(1) / 2.0 + t * (coeffs_(2) / 3.0 + t * coeffs_(3) / 4.0)));
    };
    return primitive(hi) - primitive(lo);
  }

 private:
  BdMethod method_;
  std::optional<detail::MonotoneCubic> cubic_;
  double centre_ = 0.0;
  double scale_ = 1.0;
  Eigen::Vector4d coeffs_ = Eigen::Vector4d::Zero();
};

struct Overlap {
  double lo;
  double hi;
};

Overlap overlap(double lo_a, double hi_a, double lo_b, double hi_b, std::string_view axis) {
  const double lo = std::max(lo_a, lo_b);
  const double hi = std::min(hi_a, hi_b);
  if (!(hi > lo)) {
    throw Error(ErrorCode::empty_overlap,
                fmt::format("{} ranges [{}, {}] and [{}, {}] do not overlap", axis, lo_a, hi_a,
                            lo_b, hi_b));
  }
  return {lo, hi};
}

}  // namespace

RdCurve validate_curve(std::vector<RdPoint> points) {
  if (points.size() < kMinCurvePoints) {
    throw Error(ErrorCode::too_few_points,
                fmt::format("an RD curve needs at least {} points, got {}", kMinCurvePoints,
                            points.size()));
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.rate) || !std::isfinite(p.quality) || !(p.rate > 0.0)) {
      throw Error(ErrorCode::domain, "RD point " + describe(p) + " needs a positive finite rate and finite quality");
    }
  }
  std::sort(points.begin(), points.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });

  std::vector<std::string> duplicates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].quality == points[j].quality) {
        duplicates.push_back(describe(points[i]) + " and " + describe(points[j]));
      }
    }
  }
  if (!duplicates.empty()) {
    std::string msg = "equal qualities at";
    for (const auto& d : duplicates) msg += " " + d + ";";
    throw Error(ErrorCode::duplicate_quality, msg);
  }

  std::vector<std::string> offending;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1].rate > points[i].rate) || !(points[i + 1].quality > points[i].quality)) {
      offending.push_back(describe(points[i]) + " -> " + describe(points[i + 1]));
    }
  }
  if (!offending.empty()) {
    std::string msg = "curve is not strictly increasing in rate and quality:";
    for (const auto& o : offending) msg += " " + o + ";";
    throw Error(ErrorCode::non_monotonic, msg);
  }
  return RdCurve(std::move(points));
}

BdMethod parse_bd_method(std::string_view name) {
  if (name == "pchip" || name == "piecewise-cubic" || name == "piecewise_cubic") {
    return BdMethod::piecewise_cubic;
  }
  if (name == "poly" || name == "polynomial") return BdMethod::polynomial;
  throw Error(ErrorCode::parse, "unknown BD method '" + std::string(name) + "' (pchip or poly)");
}

double bd_rate(const RdCurve& reference, const RdCurve& test, BdMethod method) {
  const auto [lo, hi] = overlap(reference.min_quality(), reference.max_quality(),
                                test.min_quality(), test.max_quality(), "quality");
  auto fit = [method](const RdCurve& c) {
    std::vector<double> q, log_rate;
    for (const auto& p : c.points()) {
      q.push_back(p.quality);
      log_rate.push_back(std::log10(p.rate));
    }
    return CurveFit(std::move(q), std::move(log_rate), method);
  };
  const double ref_area = fit(reference).integrate(lo, hi);
  const double test_area = fit(test).integrate(lo, hi);
  const double mean_diff = (test_area - ref_area) / (hi - lo);
  return (std::pow(10.0, mean_diff) - 1.0) * 100.0;
}

double bd_psnr(const RdCurve& reference, const RdCurve& test, BdMethod method) {
  auto log_range = [](const RdCurve& c) {
    return std::pair{std::log10(c.points().front().rate), std::log10(c.points().back().rate)};
  };
  const auto [ref_lo, ref_hi] = log_range(reference);
  const auto [test_lo, test_hi] = log_range(test);
  const auto [lo, hi] = overlap(ref_lo, ref_hi, test_lo, test_hi, "log-rate");
  auto fit = [method](const RdCurve& c) {
    std::vector<double> log_rate, q;
    for (const auto& p : c.points()) {
      log_rate.push_back(std::log10(p.rate));
      q.push_back(p.quality);
    }
    return CurveFit(std::move(log_rate), std::move(q), method);
  };
  return (fit(test).integrate(lo, hi) - fit(reference).integrate(lo, hi)) / (hi - lo);
}

std::vector<RdPoint> read_curve_points(std::istream& in) {
  std::vector<RdPoint> points;
  std::string line;
  int line_number = 0;
  bool seen_data_or_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split_fields(text);
    try {
      if (fields.size() != 2) {
        throw Error(ErrorCode::parse, fmt::format("line {}: expected 2 columns, found {}",
                                                  line_number, fields.size()));
      }
      points.push_back({detail::parse_double(fields[0], "rate"),
                        detail::parse_double(fields[1], "quality")});
    } catch (const Error&) {
      if (seen_data_or_header) throw;
    }
    seen_data_or_header = true;
  }
  return points;
}

RdCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return validate_curve(read_curve_points(in));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace latqpa
