#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kontact/double_kcontact.hpp"
#include "kontact/errors.hpp"
#include "kontact/harmonic.hpp"
#include "support/fd_oracle.hpp"

namespace kontact {
namespace {

constexpr double kPi = std::numbers::pi;
// 1/2 int (3 + tan^2 r + cot^2 r) 4 pi^2 cos r sin r dr over |cos 2r| <= 0.9,
// by adaptive quadrature.
constexpr double kGuardedNormalEnergyS3 = 67.00353977602073;

DoubleKContact s3_pair() { return DoubleKContact::from_blocks(std::vector<int>{1, 1}, std::vector<int>{-1, 1}); }
DoubleKContact s5_pair() {
  return DoubleKContact::from_blocks(std::vector<int>{1, 1, 1}, std::vector<int>{-1, 1, 1});
}

SpherePoint s3_point_at_level(double t) {
  const double c = std::sqrt((1.0 - t) / 2.0);
  const double s = std::sqrt((1.0 + t) / 2.0);
  Vec y(4);
  y << c * std::cos(0.2), c * std::sin(0.2), s * std::cos(-0.9), s * std::sin(-0.9);
  return SpherePoint(y);
}

UnitVectorField non_harmonic_field() {
  Mat s(4, 4);
  s << 1.0, 0.3, 0.0, 0.2,  //
      0.3, -0.5, 0.4, 0.0,  //
      0.0, 0.4, 0.2, -0.1,  //
      0.2, 0.0, -0.1, 0.7;
  return UnitVectorField::normalized_gradient(ScalarField::quadratic_form("q", s));
}

TEST(Weingarten, TransposeRoutesAgree) {
  const auto d = s5_pair();
  const UnitVectorField n = UnitVectorField::normalized_gradient(d.angle_function());
  std::mt19937_64 rng(51);
  for (const auto& p : sample_points(5, 20, 52, angle_exclusion(d, 0.9))) {
    const TangentVector x = random_tangent(p, rng);
    const Vec frame_route = weingarten_transpose(n, x).vec();
    const Vec field_route = weingarten_transpose_field(n, ambient::projected_constant(x.vec())).at(p).vec();
    EXPECT_LT((frame_route - field_route).norm(), 1e-12);
  }
}

TEST(Weingarten, MatchesFiniteDifferences) {
  const UnitVectorField z = non_harmonic_field();
  std::mt19937_64 rng(53);
  for (const auto& p : sample_points(3, 10, 54)) {
    const TangentVector u = random_tangent(p, rng);
    const Vec approx = -fd::cov_deriv([&](const Vec& y) { return z.field().value(y); }, p, u.vec());
    EXPECT_LT((weingarten(z, u).vec() - approx).norm(), 1e-7);
  }
}

TEST(LOperator, ReebTraceIsConstant) {
  for (const auto& d : {s3_pair(), s5_pair()}) {
    const UnitVectorField z = UnitVectorField::reeb(d.alpha());
    for (const auto& p : sample_points(d.dim(), 20, 55)) {
      EXPECT_NEAR(trace_l(z, p), d.dim() + 2.0 * d.n(), 1e-12);
    }
  }
}

TEST(LOperator, PullbackMetricAgreesWithL) {
  const UnitVectorField z = non_harmonic_field();
  std::mt19937_64 rng(56);
  for (const auto& p : sample_points(3, 10, 57)) {
    const TangentVector u = random_tangent(p, rng);
    const TangentVector v = random_tangent(p, rng);
    EXPECT_NEAR(pullback_metric(z, u, v), metric(l_operator(z, u), v), 1e-12);
    EXPECT_NEAR(pullback_metric(z, u, v), pullback_metric(z, v, u), 1e-12);
  }
}

TEST(Energy, ReebFieldOnS3MatchesClosedForm) {
  const auto d = s3_pair();
  const EnergyEstimate e = energy(UnitVectorField::reeb(d.alpha()), 3, 1000, 58);
  EXPECT_NEAR(e.value, 5.0 * kPi * kPi, 1e-9);
  EXPECT_EQ(e.rejected, 0u);
}

TEST(Energy, DeterministicAcrossThreadCounts) {
  const UnitVectorField z = non_harmonic_field();
  setenv("KONTACT_THREADS", "1", 1);
  const EnergyEstimate one = energy(z, 3, 500, 59);
  setenv("KONTACT_THREADS", "4", 1);
  const EnergyEstimate four = energy(z, 3, 500, 59);
  unsetenv("KONTACT_THREADS");
  EXPECT_EQ(one.value, four.value);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(Energy, GuardedNormalFieldOnS3) {
  const auto d = s3_pair();
  const ScalarField f = d.angle_function();
  const UnitVectorField n = UnitVectorField::normalized_gradient(f).restricted(
      [f](const SpherePoint& p) { return std::abs(f(p)) <= 0.9; });
  const EnergyEstimate e = energy(n, 3, 100000, 60);
  EXPECT_GT(e.rejected, 0u);
  EXPECT_LT(std::abs(e.value - kGuardedNormalEnergyS3), 4.0 * e.std_error);
}

TEST(Energy, EmptyDomainExhaustsSampling) {
  const UnitVectorField z = non_harmonic_field().restricted([](const SpherePoint&) { return false; });
  EXPECT_THROW(energy(z, 3, 100, 61), SamplingExhaustedError);
}

TEST(ShapeSpectrum, PrincipalCurvaturesOfTori) {
  const UnitVectorField n = UnitVectorField::normalized_gradient(s3_pair().angle_function());
  const ShapeSpectrum spec = shape_spectrum(n, s3_point_at_level(0.5));
  ASSERT_EQ(spec.eigenvalues.size(), 2u);
  EXPECT_NEAR(spec.eigenvalues[0], -1.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(spec.eigenvalues[1], std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(spec.mean_curvature, 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(mean_curvature(n, s3_point_at_level(0.5)), 2.0 / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(mean_curvature(n, s3_point_at_level(0.0)), 0.0, 1e-9);
}

TEST(ShapeSpectrum, RequiresGeodesicField) {
  EXPECT_THROW(shape_spectrum(non_harmonic_field(), sample_points(3, 1, 62).front()), PreconditionError);
}

TEST(ShapeSpectrum, BalanceAndRicciResiduals) {
  const auto d = s3_pair();
  const UnitVectorField n = UnitVectorField::normalized_gradient(d.angle_function());
  for (const auto& p : sample_points(3, 20, 63, angle_exclusion(d, 0.9))) {
    const auto balance = principal_balance_residual(n, p);
    ASSERT_TRUE(balance.has_value());
    for (double r : *balance) EXPECT_LT(std::abs(r), 1e-6);
    const auto ricci_h = ricci_mean_curvature_residual(n, p);
    ASSERT_TRUE(ricci_h.has_value());
    for (double r : *ricci_h) EXPECT_LT(std::abs(r), 1e-6);
  }
}

TEST(ShapeSpectrum, RepeatedEigenvaluesAreReported) {
  // Level sets of a height function are umbilic.
  const UnitVectorField n = UnitVectorField::normalized_gradient(ScalarField::coordinate(0));
  Vec y = Vec::Zero(6);
  y[0] = 0.3;
  y[3] = std::sqrt(1.0 - 0.09);
  EXPECT_FALSE(principal_balance_residual(n, SpherePoint(y)).has_value());
  EXPECT_FALSE(ricci_mean_curvature_residual(n, SpherePoint(y)).has_value());
}

TEST(Harmonicity, NormalFieldsOfAngleFunctionsAreHarmonic) {
  for (const auto& d : {s3_pair(), s5_pair()}) {
    const UnitVectorField n = UnitVectorField::normalized_gradient(d.angle_function());
    const auto pts = sample_points(d.dim(), 100, 64, angle_exclusion(d, 0.9));
    const auto nu = harmonicity_check(n, pts);
    EXPECT_TRUE(nu.pass) << nu.max;
    const auto crit = critical_condition_check(n, pts);
    EXPECT_TRUE(crit.pass) << crit.max;
  }
}

TEST(Harmonicity, HopfFieldIsHarmonic) {
  const auto d = s3_pair();
  EXPECT_TRUE(harmonicity_check(UnitVectorField::reeb(d.alpha()), sample_points(3, 50, 65)).pass);
}

TEST(Harmonicity, GenericNormalFieldIsNotHarmonic) {
  const UnitVectorField z = non_harmonic_field();
  const auto r = harmonicity_check(z, sample_points(3, 50, 66));
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max, 1e-3);
}

TEST(Harmonicity, NuFormRequiresOrthogonalArgument) {
  const auto d = s3_pair();
  const UnitVectorField z = UnitVectorField::reeb(d.alpha());
  const SpherePoint p = sample_points(3, 1, 67).front();
  EXPECT_THROW(nu_form(z, z.at(p)), PreconditionError);
}

TEST(Harmonicity, UndefinedPointsAreSkipped) {
  const auto d = s3_pair();
  const UnitVectorField n = UnitVectorField::normalized_gradient(d.angle_function());
  const std::vector<SpherePoint> pts{SpherePoint(Vec::Unit(4, 0)), s3_point_at_level(0.2)};
  const auto r = harmonicity_check(n, pts);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.count, 1u);
}

}  // namespace
}  // namespace kontact
