#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kontact/errors.hpp"
#include "kontact/scalar_field.hpp"
#include "support/fd_oracle.hpp"

namespace kontact {
namespace {

// f = |z2|^2 - |z1|^2 on S^3, the angle function of the shipped pair.
ScalarField s3_angle() {
  Mat s = Mat::Identity(4, 4);
  s(0, 0) = s(1, 1) = -1.0;
  return ScalarField::quadratic_form("f", s);
}

SpherePoint s3_point_at_level(double t, double theta = 0.3, double psi = 1.1) {
  // |z2|^2 - |z1|^2 = t with |z1|^2 = (1 - t)/2.
  const double c = std::sqrt((1.0 - t) / 2.0);
  const double s = std::sqrt((1.0 + t) / 2.0);
  Vec y(4);
  y << c * std::cos(theta), c * std::sin(theta), s * std::cos(psi), s * std::sin(psi);
  return SpherePoint(y);
}

const TransnormalProfile kAngleProfile{[](double t) { return 4.0 * (1.0 - t * t); },
                                       [](double t) { return -8.0 * t; }};
const TransnormalProfile kHeightProfile{[](double t) { return 1.0 - t * t; }, [](double t) { return -2.0 * t; }};

TEST(ScalarField, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  const Mat s = fd::random_matrix(6, rng);
  const ScalarField q = ScalarField::quadratic_form("q", s);
  for (const auto& p : sample_points(5, 20, 3)) {
    const Vec approx = fd::gradient([&](const Vec& y) { return q.formula()(ambient::lift(y)).value(); }, p);
    EXPECT_LT((gradient(q, p).vec() - approx).norm(), 1e-8);
  }
}

TEST(ScalarField, LaplacianMatchesFiniteDifferences) {
  const ScalarField f = s3_angle();
  for (const auto& p : sample_points(3, 10, 4)) {
    const Frame frame = gram_schmidt_frame(p);
    const double approx = fd::laplacian([&](const Vec& y) { return f.formula()(ambient::lift(y)).value(); }, frame);
    EXPECT_NEAR(laplacian(f, frame), approx, 1e-5);
  }
}

TEST(ScalarField, HessianIsSymmetric) {
  std::mt19937_64 rng(12);
  const ScalarField q = ScalarField::quadratic_form("q", fd::random_matrix(4, rng));
  for (const auto& p : sample_points(3, 20, 5)) {
    const TangentVector u = random_tangent(p, rng);
    const TangentVector v = random_tangent(p, rng);
    EXPECT_NEAR(hessian(q, u, v), hessian(q, v, u), 1e-12);
  }
}

TEST(ScalarField, HarmonicQuadraticsAreEigenfunctions) {
  std::mt19937_64 rng(13);
  for (int dim : {3, 5, 7}) {
    Mat s = fd::random_matrix(dim + 1, rng);
    s = 0.5 * (s + s.transpose());
    s -= (s.trace() / (dim + 1)) * Mat::Identity(dim + 1, dim + 1);
    const ScalarField q = ScalarField::quadratic_form("q", s);
    for (const auto& p : sample_points(dim, 20, 6)) {
      EXPECT_NEAR(laplacian(q, p), 2.0 * (dim + 1) * q(p), 1e-7);
    }
  }
}

TEST(ScalarField, CoordinateFunctionsAreFirstEigenfunctions) {
  const ScalarField x = ScalarField::coordinate(1);
  for (const auto& p : sample_points(5, 20, 7)) EXPECT_NEAR(laplacian(x, p), 5.0 * x(p), 1e-10);
}

TEST(Geodesic, AngleAndHeightFunctionsHaveGeodesicNormals) {
  const auto pts = sample_points(3, 200, 8, [](const SpherePoint& p) {
    return std::abs(p.coords()[2] * p.coords()[2] + p.coords()[3] * p.coords()[3] -
                    p.coords()[0] * p.coords()[0] - p.coords()[1] * p.coords()[1]) > 0.9;
  });
  EXPECT_TRUE(check_geodesic(s3_angle(), pts).pass);
  EXPECT_TRUE(check_geodesic(ScalarField::coordinate(0), sample_points(3, 200, 9)).pass);
}

TEST(Geodesic, GenericQuadraticIsNotGeodesic) {
  std::mt19937_64 rng(14);
  const ScalarField q = ScalarField::quadratic_form("q", fd::random_matrix(4, rng));
  EXPECT_FALSE(check_geodesic(q, sample_points(3, 50, 10)).pass);
}

TEST(Transnormal, AngleFunctionProfile) {
  const auto r = check_transnormal(s3_angle(), kAngleProfile, sample_points(3, 200, 11));
  EXPECT_TRUE(r.pass) << r.max;
  EXPECT_EQ(r.check_name, "transnormal");
}

TEST(Transnormal, NegativeControlFails) {
  const ScalarField g("x1 + x1 x2", [](const JetVec& y) { return y[0] + y[0] * y[1]; });
  EXPECT_FALSE(check_transnormal(g, kHeightProfile, sample_points(3, 100, 12)).pass);
}

TEST(Isoparametric, AffineFitRecoversProfiles) {
  const AffineFit fit = fit_affine_profile(s3_angle(), sample_points(3, 100, 13));
  EXPECT_NEAR(fit.slope, 8.0, 1e-9);
  EXPECT_NEAR(fit.offset, 0.0, 1e-9);
  EXPECT_LT(fit.residual, 1e-9);
  const IsoparametricProfile height{[](double t) { return 3.0 * t; }};
  EXPECT_TRUE(check_isoparametric(ScalarField::coordinate(0), height, sample_points(3, 100, 14)).pass);
}

TEST(MeanCurvature, CliffordTorusIsMinimal) {
  for (double theta : {0.0, 0.7, 2.1}) {
    EXPECT_NEAR(level_mean_curvature(s3_angle(), s3_point_at_level(0.0, theta, 0.4 * theta)), 0.0, 1e-7);
  }
}

TEST(MeanCurvature, AngleFunctionLevelHalf) {
  EXPECT_NEAR(level_mean_curvature(s3_angle(), s3_point_at_level(0.5)), 2.0 / std::sqrt(3.0), 1e-9);
}

TEST(MeanCurvature, HeightFunctionLevels) {
  for (double t : {-0.6, 0.0, 0.3, 0.8}) {
    Vec y = Vec::Zero(4);
    y[0] = t;
    y[2] = std::sqrt(1.0 - t * t);
    EXPECT_NEAR(level_mean_curvature(ScalarField::coordinate(0), SpherePoint(y)), 2.0 * t / std::sqrt(1.0 - t * t),
                1e-9);
  }
}

TEST(MeanCurvature, IdentityHoldsForTransnormalExamples) {
  const auto angle_pts = sample_points(3, 200, 15, [f = s3_angle()](const SpherePoint& p) {
    return std::abs(f(p)) > 0.9;
  });
  EXPECT_TRUE(mean_curvature_identity_check(s3_angle(), kAngleProfile, angle_pts).pass);
  const auto height_pts = sample_points(3, 200, 16, [](const SpherePoint& p) {
    return std::abs(p.coords()[0]) > 0.9;
  });
  EXPECT_TRUE(mean_curvature_identity_check(ScalarField::coordinate(0), kHeightProfile, height_pts).pass);
}

TEST(Regularity, CriticalPointsAreSkipped) {
  // The north pole is a critical point of the height function.
  const std::vector<SpherePoint> pts{SpherePoint(Vec::Unit(4, 0)), SpherePoint(Vec::Unit(4, 1))};
  const auto r = check_geodesic(ScalarField::coordinate(0), pts);
  EXPECT_EQ(r.count, 1u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_THROW(normalized_gradient(ScalarField::coordinate(0), pts[0]), RegularityError);
}

}  // namespace
}  // namespace kontact
