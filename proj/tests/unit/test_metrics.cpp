#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "latqpa/errors.hpp"
#include "latqpa/metrics.hpp"
#include "test_support.hpp"

namespace latqpa {
namespace {

std::vector<double> expand_rows(const WeightGrid& w) {
  std::vector<double> out;
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) out.push_back(w.at(r, c));
  }
  return out;
}

TEST(WeightedMse, IdenticalPlanesAreZero) {
  std::mt19937_64 rng(1);
  Plane a(16, 8);
  test::fill_random(a, rng, 255);
  EXPECT_EQ(weighted_mse(a, a, sphere_weight_map(8, 16)), 0.0);
  EXPECT_EQ(ws_psnr_plane(a, a, sphere_weight_map(8, 16), 255), kPsnrCap);
}

TEST(WeightedMse, HandComputedOneByTwo) {
  Plane a(2, 1), b(2, 1);
  a.at(1, 0) = 10;
  EXPECT_EQ(weighted_mse(a, b, WeightGrid::dense(1, 2, {1.0, 3.0})), 75.0);
}

TEST(WeightedMse, UniformWeightsReduceToMse) {
  std::mt19937_64 rng(2);
  Plane a(33, 17), b(33, 17);
  test::fill_random(a, rng, 1023);
  test::fill_random(b, rng, 1023);
  EXPECT_NEAR(weighted_mse(a, b, WeightGrid::uniform(17, 33)), mse(a, b), 1e-9 * mse(a, b));
  EXPECT_NEAR(ws_psnr_plane(a, b, WeightGrid::uniform(17, 33, 0.25), 1023), psnr_plane(a, b, 1023), 1e-9);
}

TEST(WeightedMse, MatchesPerPixelLoop) {
  std::mt19937_64 rng(3);
  Plane a(24, 12), b(24, 12);
  test::fill_random(a, rng, 255);
  test::fill_random(b, rng, 255);
  const auto w = sphere_weight_map(12, 24);
  EXPECT_NEAR(weighted_mse(a, b, w), test::naive_weighted_mse(a, b, expand_rows(w)), 1e-10);
  // Dense path with the same values agrees.
  const auto dense = WeightGrid::dense(12, 24, expand_rows(w));
  EXPECT_NEAR(weighted_mse(a, b, dense), weighted_mse(a, b, w), 1e-10);
}

TEST(WeightedMse, SymmetricInArguments) {
  std::mt19937_64 rng(4);
  Plane a(10, 6), b(10, 6);
  test::fill_random(a, rng, 255);
  test::fill_random(b, rng, 255);
  const auto w = sphere_weight_map(6, 10);
  EXPECT_EQ(weighted_mse(a, b, w), weighted_mse(b, a, w));
}

TEST(WeightedMse, DimensionMismatch) {
  Plane a(4, 4), b(4, 2);
  EXPECT_THROW(weighted_mse(a, b, WeightGrid::uniform(4, 4)), Error);
  Plane c(4, 4);
  EXPECT_THROW(weighted_mse(a, c, WeightGrid::uniform(2, 4)), Error);
}

TEST(WsPsnrPlane, UnitWeightedMseAt8Bit) {
  Plane a(8, 4, 100), b(8, 4, 101);
  // oracle: 10 log10(255^2) = 48.130803608679103412 (mpmath)
  EXPECT_NEAR(ws_psnr_plane(a, b, sphere_weight_map(4, 8), 255), 48.130803608679103, 1e-12);
}

TEST(WsPsnrPlane, TenBitScalingMultipliesMseBy16) {
  std::mt19937_64 rng(5);
  Plane a8(16, 8), b8(16, 8);
  test::fill_random(a8, rng, 255);
  test::fill_random(b8, rng, 255);
  Plane a10 = a8, b10 = b8;
  for (auto& s : a10.samples()) s = static_cast<std::uint16_t>(s * 4);
  for (auto& s : b10.samples()) s = static_cast<std::uint16_t>(s * 4);
  const auto w = sphere_weight_map(8, 16);
  EXPECT_NEAR(weighted_mse(a10, b10, w), 16 * weighted_mse(a8, b8, w), 1e-9);
  const double expected_db = ws_psnr_plane(a8, b8, w, 255) + 20 * std::log10(1023.0 / 1020.0);
  EXPECT_NEAR(ws_psnr_plane(a10, b10, w, 1023), expected_db, 1e-9);
}

TEST(WsPsnrYuv, IdenticalFramesAtCap) {
  std::mt19937_64 rng(6);
  const VideoSpec spec{8, 4, 8, 1};
  const auto f = test::random_frame(spec, rng);
  EXPECT_EQ(ws_psnr_yuv(f, f), kPsnrCap);
}

TEST(WsPsnrYuv, LumaOnlyDistortion) {
  std::mt19937_64 rng(7);
  const VideoSpec spec{16, 8, 8, 1};
  const auto ref = test::random_frame(spec, rng);
  auto test_frame = ref;
  test::fill_random(test_frame.y, rng, 255);
  const double wy = ws_psnr_plane(ref.y, test_frame.y, sphere_weight_map(8, 16), 255);
  EXPECT_NEAR(ws_psnr_yuv(ref, test_frame), (6 * wy + 2 * kPsnrCap) / 8, 1e-12);
}

TEST(WsPsnrYuv, PolarErrorHurtsLessThanEquatorialError) {
  const VideoSpec spec{4, 4, 8, 1};
  YuvFrame ref(spec);
  for (int c = 0; c < 3; ++c) {
    for (auto& s : ref.plane(c).samples()) s = 128;
  }
  auto top = ref;
  auto centre = ref;
  top.y.at(1, 0) = 138;     // row 0, weight cos(3pi/8)
  centre.y.at(1, 1) = 138;  // row 1, weight cos(pi/8)

  // Brute-force oracle on the luma plane.
  const double w_top = std::cos(3 * std::numbers::pi / 8);
  const double w_mid = std::cos(std::numbers::pi / 8);
  const double weight_sum = 4 * 2 * (w_top + w_mid);
  EXPECT_NEAR(weighted_mse(ref.y, top.y, sphere_weight_map(4, 4)), 100 * w_top / weight_sum, 1e-12);
  EXPECT_NEAR(weighted_mse(ref.y, centre.y, sphere_weight_map(4, 4)), 100 * w_mid / weight_sum, 1e-12);

  EXPECT_GT(ws_psnr_yuv(ref, top), ws_psnr_yuv(ref, centre));
}

TEST(WsPsnrYuv, MovingErrorTowardEquatorNeverHelps) {
  std::mt19937_64 rng(8);
  const VideoSpec spec{16, 16, 8, 1};
  const auto ref = test::random_frame(spec, rng);
  std::uniform_int_distribution<int> col(0, 15);
  for (int trial = 0; trial < 20; ++trial) {
    const int x = col(rng);
    double prev = kPsnrCap + 1;
    // Rows 0..7 move from the pole to the equator.
    for (int row = 0; row < 8; ++row) {
      auto t = ref;
      t.y.at(x, row) = static_cast<std::uint16_t>(ref.y.at(x, row) < 128 ? ref.y.at(x, row) + 50
                                                                        : ref.y.at(x, row) - 50);
      const double score = ws_psnr_yuv(ref, t);
      EXPECT_LE(score, prev);
      prev = score;
    }
  }
}

class SequenceTest : public ::testing::Test {
 protected:
  test::TempDir dir;
  std::mt19937_64 rng{9};
};

TEST_F(SequenceTest, SelfComparisonAtCap) {
  const VideoSpec spec{16, 8, 10, 3};
  std::vector<YuvFrame> frames;
  for (int i = 0; i < 3; ++i) frames.push_back(test::random_frame(spec, rng));
  test::write_sequence(dir / "a.yuv", frames);
  const auto report = sequence_metrics(dir / "a.yuv", dir / "a.yuv", spec);
  ASSERT_EQ(report.frames.size(), 3u);
  for (const auto& f : report.frames) {
    EXPECT_EQ(f.psnr_y, kPsnrCap);
    EXPECT_EQ(f.wspsnr_yuv, kPsnrCap);
  }
}

TEST_F(SequenceTest, OnlyDifferingFrameDropsAndAveragesArePerFrameMeans) {
  const VideoSpec spec{16, 8, 8, 2};
  std::vector<YuvFrame> ref{test::random_frame(spec, rng), test::random_frame(spec, rng)};
  auto dist = ref;
  dist[1].y.at(3, 2) = static_cast<std::uint16_t>(255 - dist[1].y.at(3, 2));
  dist[1].u.at(1, 1) = static_cast<std::uint16_t>(255 - dist[1].u.at(1, 1));
  test::write_sequence(dir / "ref.yuv", ref);
  test::write_sequence(dir / "dist.yuv", dist);

  const auto report = sequence_metrics(dir / "ref.yuv", dir / "dist.yuv", spec);
  ASSERT_EQ(report.frames.size(), 2u);
  EXPECT_EQ(report.frames[0].wspsnr_yuv, kPsnrCap);
  EXPECT_LT(report.frames[1].wspsnr_yuv, kPsnrCap);
  EXPECT_EQ(report.frames[1].wspsnr_v, kPsnrCap);

  const SphereWeights w(16, 8);
  const auto direct = frame_metrics(ref[1], dist[1], w);
  EXPECT_EQ(report.frames[1].wspsnr_y, direct.wspsnr_y);
  EXPECT_EQ(report.average.wspsnr_y, (kPsnrCap + direct.wspsnr_y) / 2);
  EXPECT_EQ(report.average.wspsnr_yuv, (kPsnrCap + direct.wspsnr_yuv) / 2);
  EXPECT_EQ(report.average.psnr_u, (kPsnrCap + direct.psnr_u) / 2);
}

TEST_F(SequenceTest, ThreadCountDoesNotChangeResults) {
  const VideoSpec spec{32, 16, 10, 7};
  std::vector<YuvFrame> a, b;
  for (int i = 0; i < 7; ++i) {
    a.push_back(test::random_frame(spec, rng));
    b.push_back(test::random_frame(spec, rng));
  }
  test::write_sequence(dir / "a.yuv", a);
  test::write_sequence(dir / "b.yuv", b);
  std::ostringstream one, many;
  write_report(one, sequence_metrics(dir / "a.yuv", dir / "b.yuv", spec, 1), 0);
  write_report(many, sequence_metrics(dir / "a.yuv", dir / "b.yuv", spec, 4), 0);
  EXPECT_EQ(one.str(), many.str());
}

TEST_F(SequenceTest, ShortFileNamesFrame) {
  const VideoSpec spec{8, 4, 8, 3};
  test::write_sequence(dir / "a.yuv", {test::random_frame(spec, rng), test::random_frame(spec, rng)});
  try {
    sequence_metrics(dir / "a.yuv", dir / "a.yuv", spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::short_file);
    EXPECT_NE(std::string(e.what()).find("frame 2"), std::string::npos) << e.what();
  }
}

TEST_F(SequenceTest, EightBitFileDeclaredTenBit) {
  const VideoSpec spec8{8, 4, 8, 3};
  test::write_sequence(dir / "a.yuv", {test::random_frame(spec8, rng), test::random_frame(spec8, rng),
                                       test::random_frame(spec8, rng)});
  const VideoSpec spec10{8, 4, 10, 3};
  try {
    sequence_metrics(dir / "a.yuv", dir / "a.yuv", spec10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_mismatch);
    EXPECT_NE(std::string(e.what()).find("frame 1"), std::string::npos) << e.what();
  }
}

TEST_F(SequenceTest, TenBitSampleOutOfRange) {
  const VideoSpec spec{8, 4, 10, 1};
  auto f = test::random_frame(spec, rng);
  f.v.at(0, 0) = 1024;
  test::write_sequence(dir / "a.yuv", {f});
  EXPECT_THROW(sequence_metrics(dir / "a.yuv", dir / "a.yuv", spec), Error);
}

TEST_F(SequenceTest, ReportLayout) {
  SequenceReport report{VideoSpec{8, 4, 8, 1}, {}, {}};
  FrameMetrics m{40, 41, 42, 39.5, 40.5, 41.5, 39.9375};
  report.frames = {m};
  report.average = m;
  std::ostringstream out;
  write_report(out, report);
  EXPECT_EQ(out.str(),
            "frame,psnr_y,psnr_u,psnr_v,wspsnr_y,wspsnr_u,wspsnr_v,wspsnr_yuv\n"
            "0,40,41,42,39.5,40.5,41.5,39.9375\n"
            "\n"
            "average,40,41,42,39.5,40.5,41.5,39.9375\n");
}

}  // namespace
}  // namespace latqpa
