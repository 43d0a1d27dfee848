#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "latqpa/erp_geometry.hpp"
#include "latqpa/yuv.hpp"

namespace latqpa {

/// Reported in place of +inf when two planes are identical.
inline constexpr double kPsnrCap = 999.99;

/// Luma:chroma weighting of the combined YUV score.
inline constexpr double kLumaWeight = 6.0;
inline constexpr double kChromaWeight = 1.0;

/// sum(w * (a - b)^2) / sum(w)
double weighted_mse(const Plane& reference, const Plane& test, const WeightGrid& weights);
double mse(const Plane& reference, const Plane& test);

/// 10 log10(max^2 / mse), or kPsnrCap when mse is zero.
double mse_to_psnr(double mse, double max_value);

double psnr_plane(const Plane& reference, const Plane& test, double max_value);
double ws_psnr_plane(const Plane& reference, const Plane& test, const WeightGrid& weights,
                     double max_value);

/// Luma and chroma WS-PSNR weights of one frame geometry, built once per sequence.
class SphereWeights {
 public:
  SphereWeights(int width, int height);

  const WeightGrid& luma() const noexcept { return luma_; }
  const WeightGrid& chroma() const noexcept { return chroma_; }

 private:
  WeightGrid luma_;
  WeightGrid chroma_;
};

struct FrameMetrics {
  double psnr_y = 0, psnr_u = 0, psnr_v = 0;
  double wspsnr_y = 0, wspsnr_u = 0, wspsnr_v = 0;
  double wspsnr_yuv = 0;
};

/// (6 WS-PSNR_Y + WS-PSNR_U + WS-PSNR_V) / 8
double ws_psnr_yuv(const YuvFrame& reference, const YuvFrame& test);

FrameMetrics frame_metrics(const YuvFrame& reference, const YuvFrame& test,
                           const SphereWeights& weights);

struct SequenceReport {
  VideoSpec spec;
  std::vector<FrameMetrics> frames;
  /// Per-component mean of the per-frame dB values.
  FrameMetrics average;
};

/// Compares the first spec.frame_count frames of two I420 files. Frames are
/// evaluated on up to `threads` workers (0 = hardware concurrency); the report
/// keeps file order.
SequenceReport sequence_metrics(const std::filesystem::path& reference,
                                const std::filesystem::path& test, const VideoSpec& spec,
                                unsigned threads = 0);

FrameMetrics average_metrics(const std::vector<FrameMetrics>& frames);

/// CSV: a header, one row per frame, then a blank line and an "average" row.
/// Values are printed with `digits` significant digits (0 = shortest exact form).
void write_report(std::ostream& out, const SequenceReport& report, int digits = 6);

}  // namespace latqpa
