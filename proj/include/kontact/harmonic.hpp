#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kontact/contact.hpp"
#include "kontact/manifold.hpp"
#include "kontact/report.hpp"
#include "kontact/scalar_field.hpp"

namespace kontact {

/// Unit vector field together with the predicate describing where it is
/// defined (e.g. off the critical set of f for N = grad f / |grad f|).
class UnitVectorField {
 public:
  explicit UnitVectorField(AmbientVectorField field, PointPredicate defined = {});

  static UnitVectorField reeb(const ContactMetricStructure& s);
  static UnitVectorField normalized_gradient(const ScalarField& f, double eps = kRegularityEps);

  const AmbientVectorField& field() const { return field_; }
  const std::string& label() const { return field_.label(); }
  bool defined_at(const SpherePoint& p) const { return !defined_ || defined_(p); }
  /// Throws RegularityError outside the domain.
  void require(const SpherePoint& p) const;
  TangentVector at(const SpherePoint& p) const;
  /// Same field, defined only where both predicates hold.
  UnitVectorField restricted(PointPredicate keep) const;

 private:
  AmbientVectorField field_;
  PointPredicate defined_;
};

/// A_Z u = -nabla_u Z.
TangentVector weingarten(const UnitVectorField& z, const TangentVector& u);
/// Adjoint of A_Z, assembled from the matrix of A_Z on an orthonormal frame.
TangentVector weingarten_transpose(const UnitVectorField& z, const TangentVector& u);
/// Field y -> A_Z^t(y) x(y) from the ambient Jacobian of Z; differentiable,
/// and equal to weingarten_transpose on the sphere.
AmbientVectorField weingarten_transpose_field(const UnitVectorField& z, const AmbientVectorField& x);

/// L_Z u = u + A_Z^t (A_Z u).
TangentVector l_operator(const UnitVectorField& z, const TangentVector& u);
/// Z* g_S(u, v) = g(u, v) + g(nabla_u Z, nabla_v Z).
double pullback_metric(const UnitVectorField& z, const TangentVector& u, const TangentVector& v);
double trace_l(const UnitVectorField& z, const SpherePoint& p);

struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t rejected = 0;  // draws outside the field's domain (contribute 0)
};

/// Monte Carlo estimate of E(Z) = 1/2 int tr L_Z dV over the field's domain:
/// Vol(S^m) * mean(tr L_Z / 2) with points outside the domain contributing 0.
/// Summation is pairwise in sample order, so results do not depend on the
/// worker count.
EnergyEstimate energy(const UnitVectorField& z, int dim, std::size_t sample_size, std::uint64_t seed);

/// nu_Z(x) = sum_i g((nabla_{u_i} A_Z^t) x, u_i) over an orthonormal frame.
/// Throws PreconditionError unless x is orthogonal to Z(p) within 1e-8.
double nu_form(const UnitVectorField& z, const TangentVector& x);
double nu_form(const UnitVectorField& z, const TangentVector& x, const Frame& frame);

struct ShapeSpectrum {
  SpherePoint base;
  std::vector<double> eigenvalues;  // ascending
  std::vector<TangentVector> eigenframe;
  double mean_curvature = 0.0;  // sum of eigenvalues
};

/// Spectral decomposition of A_N restricted to N^perp. Requires |nabla_N N|
/// <= 1e-6 (PreconditionError) and A_N symmetric on N^perp within 1e-7
/// (IntegrabilityError).
ShapeSpectrum shape_spectrum(const UnitVectorField& n, const SpherePoint& p);
/// h = trace of A_N on N^perp, without an eigen-decomposition.
double mean_curvature(const UnitVectorField& n, const SpherePoint& p);

/// Per eigen-direction j, E_j(l_j) + sum_i (l_i - l_j) g(nabla_{E_i} E_i, E_j).
/// Empty when two eigenvalues are closer than 1e-4 (multiplicity).
std::optional<std::vector<double>> principal_balance_residual(const UnitVectorField& n,
                                                              const SpherePoint& p);
/// Per eigen-direction j, rho(E_j, N) - E_j(h). Empty on multiplicity.
std::optional<std::vector<double>> ricci_mean_curvature_residual(const UnitVectorField& n,
                                                                 const SpherePoint& p);

/// max over frame directions x of N^perp of |x(h) - rho(x, N)|, with x(h) by
/// five-point differences along geodesics.
ResidualReport critical_condition_check(const UnitVectorField& n, std::span<const SpherePoint> points,
                                        double tolerance = 1e-5);
/// max over frame directions x of N^perp of |nu_N(x)|.
ResidualReport harmonicity_check(const UnitVectorField& n, std::span<const SpherePoint> points,
                                 double tolerance = 1e-6);

}  // namespace kontact
