#pragma once

#include <functional>
#include <span>
#include <string>

#include "kontact/manifold.hpp"
#include "kontact/report.hpp"

namespace kontact {

using ScalarFormula = std::function<Jet(const JetVec&)>;

/// Smooth function given by an ambient formula near the sphere.
class ScalarField {
 public:
  ScalarField(std::string label, ScalarFormula formula);

  Jet operator()(const JetVec& y) const { return formula_(y); }
  double operator()(const SpherePoint& p) const;
  const ScalarFormula& formula() const { return formula_; }
  const std::string& label() const { return label_; }

  static ScalarField constant(double c);
  /// y -> y^T S y for symmetric S (only the symmetric part of S is used).
  static ScalarField quadratic_form(std::string label, const Mat& s);
  static ScalarField coordinate(int axis);

 private:
  std::string label_;
  ScalarFormula formula_;
};

/// |grad f|^2 = b(f).
struct TransnormalProfile {
  std::function<double(double)> b;
  std::function<double(double)> b_prime;
};

/// Laplacian f = a(f).
struct IsoparametricProfile {
  std::function<double(double)> a;
};

struct AffineFit {
  double slope = 0.0;
  double offset = 0.0;
  double residual = 0.0;  // max |Lap f - (slope f + offset)| over the samples
  std::size_t count = 0;
};

inline constexpr double kRegularityEps = 1e-6;

/// Ambient gradient of the formula, all partials at once.
JetVec ambient_gradient(const ScalarFormula& f, const JetVec& y);

TangentVector gradient(const ScalarField& f, const SpherePoint& p);
/// y -> P_y(ambient gradient); tangent, differentiable to any order left.
AmbientVectorField gradient_field(const ScalarField& f);
/// y -> grad f / |grad f|; throws RegularityError below eps at evaluation.
AmbientVectorField normalized_gradient_field(const ScalarField& f, double eps = kRegularityEps);

/// g(nabla_u grad f, v).
double hessian(const ScalarField& f, const TangentVector& u, const TangentVector& v);
/// Lap f = -sum_i Hess_f(E_i, E_i) (non-negative spectrum convention).
double laplacian(const ScalarField& f, const SpherePoint& p);
double laplacian(const ScalarField& f, const Frame& frame);
TangentVector normalized_gradient(const ScalarField& f, const SpherePoint& p,
                                  double eps = kRegularityEps);

/// h = -sum_i g(nabla_{E_i} N, E_i) over an orthonormal frame of N^perp.
double level_mean_curvature(const ScalarField& f, const SpherePoint& p);

/// |nabla_N N| per point; critical points are skipped and counted.
ResidualReport check_geodesic(const ScalarField& f, std::span<const SpherePoint> points,
                              double tolerance = 1e-7);
ResidualReport check_transnormal(const ScalarField& f, const TransnormalProfile& profile,
                                 std::span<const SpherePoint> points, double tolerance = 1e-9);
ResidualReport check_isoparametric(const ScalarField& f, const IsoparametricProfile& profile,
                                   std::span<const SpherePoint> points, double tolerance = 1e-7);
/// Least-squares fit Lap f ~ slope f + offset.
AffineFit fit_affine_profile(const ScalarField& f, std::span<const SpherePoint> points);
/// |h - (Lap f / |grad f| + b'(f) / (2 sqrt b))| per regular point. b is
/// clamped below at 1e-14; clamped points are flagged.
ResidualReport mean_curvature_identity_check(const ScalarField& f, const TransnormalProfile& profile,
                               std::span<const SpherePoint> points, double tolerance = 1e-7);

}  // namespace kontact
