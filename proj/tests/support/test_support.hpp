#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <unistd.h>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "latqpa/erp_geometry.hpp"
#include "latqpa/qpa.hpp"
#include "latqpa/vector_bank.hpp"
#include "latqpa/yuv.hpp"

namespace latqpa::test {

// ---- independent oracles -------------------------------------------------

/// (1/pi) * integral over [-pi/2, pi/2] of (q_num - 1) ln cos(phi) / ln(lmax/lmin),
/// by tanh-sinh quadrature. Near the endpoints cos(phi) is taken as
/// sin(distance to the endpoint) so the log singularity is resolved.
inline double quadrature_mean_delta_q(double lambda_min, double lambda_max, int q_num) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double scale = (q_num - 1) / (std::log(lambda_max) - std::log(lambda_min));
  const double half_pi = std::numbers::pi / 2;
  auto f = [&](double, double xc) { return scale * std::log(std::sin(std::abs(xc))); };
  return integrator.integrate(f, -half_pi, half_pi) / std::numbers::pi;
}

/// (1/pi) * integral of an arbitrary function of latitude over (-pi/2, pi/2).
template <class F>
double quadrature_latitude_mean(F&& f) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double half_pi = std::numbers::pi / 2;
  auto g = [&](double x) {
    if (!(std::abs(x) < half_pi)) x = std::copysign(std::nextafter(half_pi, 0.0), x);
    return f(x);
  };
  return integrator.integrate(g, -half_pi, half_pi) / std::numbers::pi;
}

/// Per-pixel loop over an explicit weight per sample.
inline double naive_weighted_mse(const Plane& a, const Plane& b, const std::vector<double>& w) {
  double num = 0, den = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const double d = double(a.at(x, y)) - double(b.at(x, y));
      const double wi = w[static_cast<std::size_t>(y) * a.width() + x];
      num += wi * d * d;
      den += wi;
    }
  }
  return num / den;
}

// ---- fixtures ------------------------------------------------------------

inline VectorBank random_bank(std::mt19937_64& rng, int q_num, int channels) {
  std::uniform_real_distribution<float> dist(-2.0f, 2.0f);
  std::vector<float> v(static_cast<std::size_t>(q_num) * channels);
  for (auto& x : v) x = dist(rng);
  return VectorBank(q_num, channels, std::move(v));
}

/// V[q] = a q + b per channel, with a and b multiples of 1/256 so every knot
/// is exactly representable in single precision.
struct LinearBank {
  std::vector<double> a, b;
  VectorBank bank;
};

inline LinearBank random_linear_bank(std::mt19937_64& rng, int q_num, int channels) {
  std::uniform_int_distribution<int> dist(-2048, 2048);
  std::vector<double> a(channels), b(channels);
  std::vector<float> v(static_cast<std::size_t>(q_num) * channels);
  for (int c = 0; c < channels; ++c) {
    a[c] = dist(rng) / 256.0;
    b[c] = dist(rng) / 256.0;
  }
  for (int q = 0; q < q_num; ++q) {
    for (int c = 0; c < channels; ++c) {
      v[static_cast<std::size_t>(q) * channels + c] = static_cast<float>(a[c] * q + b[c]);
    }
  }
  return {a, b, VectorBank(q_num, channels, std::move(v))};
}

inline VectorBankSet random_bank_set(std::mt19937_64& rng, int q_num) {
  return {random_bank(rng, q_num, 8), random_bank(rng, q_num, 6), random_bank(rng, q_num, 3),
          random_bank(rng, q_num, 5)};
}

inline void fill_random(Plane& p, std::mt19937_64& rng, int max_value) {
  std::uniform_int_distribution<int> dist(0, max_value);
  for (auto& s : p.samples()) s = static_cast<std::uint16_t>(dist(rng));
}

inline YuvFrame random_frame(const VideoSpec& spec, std::mt19937_64& rng) {
  YuvFrame f(spec);
  for (int c = 0; c < 3; ++c) fill_random(f.plane(c), rng, spec.max_value());
  return f;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("latqpa_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_sequence(const std::filesystem::path& path, const std::vector<YuvFrame>& frames) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& f : frames) write_frame(out, f);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace latqpa::test
