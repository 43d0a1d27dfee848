#pragma once

#include <span>
#include <vector>

namespace latqpa::detail {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
/// slopes, weighted harmonic mean in the interior, three-point one-sided
/// slopes at the ends). Matches the usual PCHIP definition.
class MonotoneCubic {
 public:
  /// x strictly increasing, at least two knots.
  MonotoneCubic(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;

  /// Exact integral of the interpolant over [a, b], both inside the knot range.
  double integrate(double a, double b) const;

  std::span<const double> slopes() const noexcept { return d_; }

 private:
  std::size_t segment(double x) const;
  // Antiderivative of segment k evaluated at offset s from x_k.
  double segment_primitive(std::size_t k, double s) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace latqpa::detail
