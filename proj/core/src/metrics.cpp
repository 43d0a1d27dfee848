#include "latqpa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <ostream>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "latqpa/detail/text.hpp"
#include "latqpa/errors.hpp"

namespace latqpa {

namespace {

void require_same_shape(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::dimension_mismatch,
                fmt::format("plane sizes differ: {}x{} vs {}x{}", a.width(), a.height(), b.width(),
                            b.height()));
  }
}

// Exact integer sum of squared differences for one row.
std::uint64_t row_sse(std::span<const std::uint16_t> a, std::span<const std::uint16_t> b) {
  std::uint64_t sse = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const std::int64_t d = static_cast<std::int64_t>(a[x]) - static_cast<std::int64_t>(b[x]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  return sse;
}

}  // namespace

double weighted_mse(const Plane& reference, const Plane& test, const WeightGrid& weights) {
  require_same_shape(reference, test);
  if (weights.rows() != reference.height() || weights.cols() != reference.width()) {
    throw Error(ErrorCode::dimension_mismatch,
                fmt::format("weight grid {}x{} does not match plane {}x{}", weights.cols(),
                            weights.rows(), reference.width(), reference.height()));
  }
  const double weight_sum = weights.sum();
  if (!(weight_sum > 0.0)) {
    throw Error(ErrorCode::domain, "weight grid sums to zero");
  }
  double acc = 0.0;
  if (weights.is_column_invariant()) {
    const auto row_w = weights.row_weights();
    for (int y = 0; y < reference.height(); ++y) {
      acc += row_w[static_cast<std::size_t>(y)] *
             static_cast<double>(row_sse(reference.row(y), test.row(y)));
    }
  } else {
    for (int y = 0; y < reference.height(); ++y) {
      const auto a = reference.row(y);
      const auto b = test.row(y);
      for (int x = 0; x < reference.width(); ++x) {
        const double d = static_cast<double>(a[x]) - static_cast<double>(b[x]);
        acc += weights.at(y, x) * d * d;
      }
    }
  }
  return acc / weight_sum;
}

double mse(const Plane& reference, const Plane& test) {
  require_same_shape(reference, test);
  std::uint64_t sse = 0;
  for (int y = 0; y < reference.height(); ++y) sse += row_sse(reference.row(y), test.row(y));
  return static_cast<double>(sse) / static_cast<double>(reference.samples().size());
}

double mse_to_psnr(double mse_value, double max_value) {
  if (mse_value < 0.0 || !std::isfinite(mse_value)) {
    throw Error(ErrorCode::domain, "MSE must be finite and nonnegative");
  }
  if (mse_value == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(max_value * max_value / mse_value));
}

double psnr_plane(const Plane& reference, const Plane& test, double max_value) {
  return mse_to_psnr(mse(reference, test), max_value);
}

double ws_psnr_plane(const Plane& reference, const Plane& test, const WeightGrid& weights,
                     double max_value) {
  return mse_to_psnr(weighted_mse(reference, test, weights), max_value);
}

SphereWeights::SphereWeights(int width, int height)
    : luma_(sphere_weight_map(height, width)), chroma_(chroma_weight_map(height, width)) {}

FrameMetrics frame_metrics(const YuvFrame& reference, const YuvFrame& test,
                           const SphereWeights& weights) {
  if (reference.bit_depth != test.bit_depth) {
    throw Error(ErrorCode::dimension_mismatch, "frames have different bit depths");
  }
  const double max_value = (1 << reference.bit_depth) - 1;
  FrameMetrics m;
  m.psnr_y = psnr_plane(reference.y, test.y, max_value);
  m.psnr_u = psnr_plane(reference.u, test.u, max_value);
  m.psnr_v = psnr_plane(reference.v, test.v, max_value);
  m.wspsnr_y = ws_psnr_plane(reference.y, test.y, weights.luma(), max_value);
  m.wspsnr_u = ws_psnr_plane(reference.u, test.u, weights.chroma(), max_value);
  m.wspsnr_v = ws_psnr_plane(reference.v, test.v, weights.chroma(), max_value);
  m.wspsnr_yuv = (kLumaWeight * m.wspsnr_y + kChromaWeight * (m.wspsnr_u + m.wspsnr_v)) /
                 (kLumaWeight + 2.0 * kChromaWeight);
  return m;
}

double ws_psnr_yuv(const YuvFrame& reference, const YuvFrame& test) {
  const SphereWeights weights(reference.y.width(), reference.y.height());
  return frame_metrics(reference, test, weights).wspsnr_yuv;
}

FrameMetrics average_metrics(const std::vector<FrameMetrics>& frames) {
  FrameMetrics avg;
  if (frames.empty()) return avg;
  for (const auto& f : frames) {
    avg.psnr_y += f.psnr_y;
    avg.psnr_u += f.psnr_u;
    avg.psnr_v += f.psnr_v;
    avg.wspsnr_y += f.wspsnr_y;
    avg.wspsnr_u += f.wspsnr_u;
    avg.wspsnr_v += f.wspsnr_v;
    avg.wspsnr_yuv += f.wspsnr_yuv;
  }
  const double n = static_cast<double>(frames.size());
  avg.psnr_y /= n;
  avg.psnr_u /= n;
  avg.psnr_v /= n;
  avg.wspsnr_y /= n;
  avg.wspsnr_u /= n;
  avg.wspsnr_v /= n;
  avg.wspsnr_yuv /= n;
  return avg;
}

SequenceReport sequence_metrics(const std::filesystem::path& reference,
                                const std::filesystem::path& test, const VideoSpec& spec,
                                unsigned threads) {
  spec.validate();
  YuvReader ref_reader(reference, spec);
  YuvReader test_reader(test, spec);
  for (const auto* reader : {&ref_reader, &test_reader}) {
    if (reader->frames_in_file() < spec.frame_count) {
      const auto& path = reader == &ref_reader ? reference : test;
      throw Error(ErrorCode::short_file,
                  fmt::format("{} ends before frame {} ({} frames requested)", path.string(),
                              reader->frames_in_file(), spec.frame_count));
    }
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const SphereWeights weights(spec.width, spec.height);

  SequenceReport report{spec, {}, {}};
  report.frames.reserve(static_cast<std::size_t>(spec.frame_count));

  // Frames are read in order; a bounded window of them is evaluated concurrently.
  std::vector<std::future<FrameMetrics>> window;
  auto drain = [&] {
    for (auto& f : window) report.frames.push_back(f.get());
    window.clear();
  };
  for (int i = 0; i < spec.frame_count; ++i) {
    auto ref_frame = ref_reader.read_next();
    auto test_frame = test_reader.read_next();
    window.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                [&weights, r = std::move(ref_frame), t = std::move(test_frame)] {
                                  return frame_metrics(r, t, weights);
                                }));
    if (window.size() >= threads) drain();
  }
  drain();
  report.average = average_metrics(report.frames);
  return report;
}

namespace {

std::string format_value(double v, int digits) {
  if (digits <= 0) return detail::shortest_repr(v);
  return fmt::format("{:.{}g}", v, digits);
}

void write_row(std::ostream& out, const std::string& label, const FrameMetrics& m, int digits) {
  out << label;
  for (double v : {m.psnr_y, m.psnr_u, m.psnr_v, m.wspsnr_y, m.wspsnr_u, m.wspsnr_v, m.wspsnr_yuv}) {
    out << ',' << format_value(v, digits);
  }
  out << '\n';
}

}  // namespace

void write_report(std::ostream& out, const SequenceReport& report, int digits) {
  out << "frame,psnr_y,psnr_u,psnr_v,wspsnr_y,wspsnr_u,wspsnr_v,wspsnr_yuv\n";
  for (std::size_t i = 0; i < report.frames.size(); ++i) {
    write_row(out, std::to_string(i), report.frames[i], digits);
  }
  out << '\n';
  write_row(out, "average", report.average, digits);
  if (!out) throw Error(ErrorCode::io, "failed writing metrics report");
}

}  // namespace latqpa
