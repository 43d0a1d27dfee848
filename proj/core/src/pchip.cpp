#include "latqpa/detail/pchip.hpp"

#include <algorithm>
#include <cmath>

#include "latqpa/errors.hpp"

namespace latqpa::detail {

namespace {

int sign(double v) { return (v > 0) - (v < 0); }

double edge_slope(double h0, double h1, double m0, double m1) {
  double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (sign(d) != sign(m0)) {
    d = 0.0;
  } else if (sign(m0) != sign(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
    d = 3.0 * m0;
  }
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), d_(x.size()) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw Error(ErrorCode::domain, "piecewise cubic needs at least two (x, y) knots");
  }
  std::vector<double> h(n - 1), m(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) throw Error(ErrorCode::non_monotonic, "knots must be strictly increasing");
    m[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  if (n == 2) {
    d_[0] = d_[1] = m[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (sign(m[k - 1]) * sign(m[k]) <= 0) {
      d_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
    }
  }
  d_[0] = edge_slope(h[0], h[1], m[0], m[1]);
  d_[n - 1] = edge_slope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
  const auto it = std::upper_bound(x_.begin() + 1, x_.end() - 1, x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double MonotoneCubic::segment_primitive(std::size_t k, double s) const {
  const double h = x_[k + 1] - x_[k];
  const double m = (y_[k + 1] - y_[k]) / h;
  const double c0 = y_[k];
  const double c1 = d_[k];
  const double c2 = (3.0 * m - 2.0 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * m) / (h * h);
  return s * (c0 + s * (c1 / 2.0 + s * (c2 / 3.0 + s * c3 / 4.0)));
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double m = (y_[k + 1] - y_[k]) / h;
  const double s = x - x_[k];
  const double c2 = (3.0 * m - 2.0 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2.0 * m) / (h * h);
  return y_[k] + s * (d_[k] + s * (c2 + s * c3));
}

double MonotoneCubic::integrate(double a, double b) const {
  if (a > b) return -integrate(b, a);
  if (a < x_.front() || b > x_.back()) {
    throw Error(ErrorCode::domain, "integration bounds outside the interpolation range");
  }
  const std::size_t ka = segment(a);
  const std::size_t kb = segment(b);
  if (ka == kb) {
    return segment_primitive(ka, b - x_[ka]) - segment_primitive(ka, a - x_[ka]);
  }
  double total = segment_primitive(ka, x_[ka + 1] - x_[ka]) - segment_primitive(ka, a - x_[ka]);
  for (std::size_t k = ka + 1; k < kb; ++k) total += segment_primitive(k, x_[k + 1] - x_[k]);
  total += segment_primitive(kb, b - x_[kb]);
  return total;
}

}  // namespace latqpa::detail
