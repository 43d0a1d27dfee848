#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "latqpa/detail/pchip.hpp"
#include "latqpa/errors.hpp"
#include "latqpa/rd_eval.hpp"
#include "test_support.hpp"

namespace latqpa {
namespace {

const std::vector<RdPoint> kReference{{100, 30}, {200, 33}, {400, 36}, {800, 39}};

std::vector<RdPoint> scale_rates(std::vector<RdPoint> pts, double factor) {
  for (auto& p : pts) p.rate *= factor;
  return pts;
}

std::vector<RdPoint> shift_quality(std::vector<RdPoint> pts, double db) {
  for (auto& p : pts) p.quality += db;
  return pts;
}

ErrorCode validation_error(std::vector<RdPoint> pts, std::string* message = nullptr) {
  try {
    validate_curve(std::move(pts));
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "curve validated unexpectedly";
  return ErrorCode::domain;
}

TEST(MonotoneCubic, MatchesReferencePchip) {
  // Reference values from scipy.interpolate.PchipInterpolator.
  const std::vector<double> x{30, 33, 36, 39.5, 41};
  std::vector<double> y;
  for (double r : {100.0, 210.0, 390.0, 820.0, 1500.0}) y.push_back(std::log10(r));
  const detail::MonotoneCubic f(x, y);
  EXPECT_NEAR(f(31), 2.1135153832280702, 1e-14);
  EXPECT_NEAR(f(35), 2.5026933155619115, 1e-14);
  EXPECT_NEAR(f(40), 2.9876166532274078, 1e-14);
  EXPECT_NEAR(f.integrate(30.5, 40.5), 25.445969549489405, 1e-12);
  const double slopes[] = {0.1163020953181962, 0.097707476632980683, 0.090862711941140206,
                           0.12594372838852674, 0.19964286475175069};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(f.slopes()[i], slopes[i], 1e-15);
}

TEST(MonotoneCubic, ExtremumAndThreeKnots) {
  const std::vector<double> x{0, 1, 3}, y{0, 2, 1};
  const detail::MonotoneCubic f(x, y);
  EXPECT_NEAR(f.slopes()[0], 2.8333333333333335, 1e-15);
  EXPECT_EQ(f.slopes()[1], 0.0);
  EXPECT_NEAR(f.slopes()[2], -1.5, 1e-15);
  EXPECT_NEAR(f.integrate(0, 3), 4.7361111111111107, 1e-14);
}

TEST(MonotoneCubic, InterpolatesKnotsAndIsExactOnLines) {
  const std::vector<double> x{1, 2, 4, 7, 8}, y{3, 5, 9, 15, 17};
  const detail::MonotoneCubic f(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(f(x[i]), y[i], 1e-14);
  EXPECT_NEAR(f(5.5), 12.0, 1e-13);
  EXPECT_NEAR(f.integrate(1.5, 7.5), 60.0, 1e-12);  // y = 2x + 1
}

TEST(ValidateCurve, SortsUnorderedInput) {
  const auto curve = validate_curve({{800, 39}, {100, 30}, {400, 36}, {200, 33}});
  ASSERT_EQ(curve.points().size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(curve.points()[i], kReference[i]);
}

TEST(ValidateCurve, Errors) {
  EXPECT_EQ(validation_error({{100, 30}, {200, 33}, {400, 36}}), ErrorCode::too_few_points);
  std::string msg;
  EXPECT_EQ(validation_error({{100, 30}, {200, 33}, {400, 33}, {800, 39}}, &msg),
            ErrorCode::duplicate_quality);
  EXPECT_NE(msg.find("(200, 33)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(400, 33)"), std::string::npos) << msg;
  EXPECT_EQ(validation_error({{100, 30}, {200, 36}, {400, 33}, {800, 39}}, &msg),
            ErrorCode::non_monotonic);
  EXPECT_NE(msg.find("(200, 36) -> (400, 33)"), std::string::npos) << msg;
  EXPECT_EQ(validation_error({{100, 30}, {100, 33}, {400, 36}, {800, 39}}), ErrorCode::non_monotonic);
  EXPECT_EQ(validation_error({{0, 30}, {100, 33}, {400, 36}, {800, 39}}), ErrorCode::domain);
}

class BdRateMethods : public ::testing::TestWithParam<BdMethod> {};

TEST_P(BdRateMethods, IdentityIsZero) {
  const auto c = validate_curve(kReference);
  EXPECT_NEAR(bd_rate(c, c, GetParam()), 0.0, 1e-12);
}

TEST_P(BdRateMethods, UniformInflation) {
  const auto ref = validate_curve(kReference);
  EXPECT_NEAR(bd_rate(ref, validate_curve(scale_rates(kReference, 1.10)), GetParam()), 10.0, 1e-6);
  EXPECT_NEAR(bd_rate(ref, validate_curve(scale_rates(kReference, 0.9)), GetParam()), -10.0, 1e-6);
}

TEST_P(BdRateMethods, MinusTenPercentFixture) {
  const auto ref = validate_curve(kReference);
  const auto test = validate_curve({{90, 30}, {180, 33}, {360, 36}, {720, 39}});
  EXPECT_NEAR(bd_rate(ref, test, GetParam()), -10.0, 1e-6);
}

TEST_P(BdRateMethods, ScaleAndShiftInvariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RdPoint> a, b;
    for (int i = 0; i < 5; ++i) {
      a.push_back({1000.0 * std::pow(1.9, i), 32 + 2.5 * i + jitter(rng)});
      b.push_back({930.0 * std::pow(1.9, i), 32.2 + 2.5 * i + jitter(rng)});
    }
    const double base = bd_rate(validate_curve(a), validate_curve(b), GetParam());
    EXPECT_NEAR(bd_rate(validate_curve(scale_rates(a, 7.5)), validate_curve(scale_rates(b, 7.5)), GetParam()),
                base, 1e-9);
    EXPECT_NEAR(bd_rate(validate_curve(shift_quality(a, -3.25)), validate_curve(shift_quality(b, -3.25)),
                        GetParam()),
                base, 1e-9);
    // Swapping the curves inverts the rate ratio.
    const double back = bd_rate(validate_curve(b), validate_curve(a), GetParam());
    EXPECT_NEAR(base, -back / (1 + back / 100), 0.01);
  }
}

INSTANTIATE_TEST_SUITE_P(Both, BdRateMethods,
                         ::testing::Values(BdMethod::piecewise_cubic, BdMethod::polynomial));

TEST(BdRate, IrregularCurvesMatchReferenceImplementation) {
  // scipy PchipInterpolator / numpy.polyfit reference values.
  const auto ref = validate_curve({{1000, 32.1}, {1900, 34.9}, {3700, 37.2}, {7400, 39.0}, {14000, 40.3}});
  const auto test = validate_curve({{950, 32.4}, {1750, 35.0}, {3500, 37.5}, {6900, 39.1}});
  EXPECT_NEAR(bd_rate(ref, test, BdMethod::piecewise_cubic), -11.7471480264166, 1e-9);
  EXPECT_NEAR(bd_rate(ref, test, BdMethod::polynomial), -11.6337023465087, 1e-9);
}

TEST(BdRate, EmptyOverlap) {
  const auto ref = validate_curve(kReference);
  const auto far = validate_curve(shift_quality(kReference, 20));
  try {
    bd_rate(ref, far);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_overlap);
  }
}

TEST(BdPsnr, ConstantQualityOffset) {
  const auto ref = validate_curve(kReference);
  EXPECT_NEAR(bd_psnr(ref, validate_curve(shift_quality(kReference, 0.5))), 0.5, 1e-12);
}

TEST(ReadCurve, DelimitersHeaderAndComments) {
  std::istringstream in("rate,quality\n# comment\n100, 30\n200\t33\n\n400;36\n800 39\n");
  const auto pts = read_curve_points(in);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[3], (RdPoint{800, 39}));
}

TEST(ReadCurve, BadLineAfterData) {
  std::istringstream in("100,30\n200,abc\n");
  EXPECT_THROW(read_curve_points(in), Error);
  std::istringstream three("100,30,1\n200,33,2\n");
  EXPECT_THROW(read_curve_points(three), Error);
}

TEST(ParseBdMethod, Names) {
  EXPECT_EQ(parse_bd_method("pchip"), BdMethod::piecewise_cubic);
  EXPECT_EQ(parse_bd_method("poly"), BdMethod::polynomial);
  EXPECT_THROW(parse_bd_method("akima"), Error);
}

}  // namespace
}  // namespace latqpa
