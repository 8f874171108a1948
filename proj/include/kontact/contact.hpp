#pragma once

#include <span>
#include <string>

#include "kontact/manifold.hpp"
#include "kontact/report.hpp"

namespace kontact {

/// Contact metric structure (alpha, Z, phi, g) on the round S^{2n+1} built
/// from an orthogonal complex structure J on R^{2n+2}:
///
///   Z(p) = J p,   alpha = g(., Z),   phi u = sigma (J u + alpha(u) p).
///
/// sigma is chosen once at build time so that d alpha(A,B) = 2 g(A, phi B)
/// with d alpha(A,B) = A alpha(B) - B alpha(A) - alpha([A,B]).
class ContactMetricStructure {
 public:
  /// Throws ConstructionError if neither sign of phi satisfies the contact
  /// axioms, or if the result fails the K-contact check.
  static ContactMetricStructure build(const OrthoComplexStructure& j);

  const OrthoComplexStructure& generator() const { return j_; }
  int n() const { return (j_.ambient_dim() - 2) / 2; }
  int dim() const { return j_.ambient_dim() - 1; }
  int sigma() const { return sigma_; }
  /// alpha wedge (d alpha)^n on a positively oriented orthonormal frame at
  /// the first basis point, recorded at build time.
  double volume_constant() const { return volume_constant_; }

  const AmbientVectorField& reeb() const { return reeb_; }
  double alpha(const TangentVector& u) const;
  TangentVector phi(const TangentVector& u) const;

  Jet alpha(const JetVec& y, const JetVec& u) const;
  JetVec phi(const JetVec& y, const JetVec& u) const;
  /// y -> phi(V(y)).
  AmbientVectorField phi_of(const AmbientVectorField& v) const;

 private:
  ContactMetricStructure(OrthoComplexStructure j, int sigma);

  OrthoComplexStructure j_;
  int sigma_;
  AmbientVectorField reeb_;
  double volume_constant_ = 0.0;
};

/// d alpha(u, v) for the 1-form alpha = g(dual, .), using projected-constant
/// extensions of u and v. No 1/2 factor.
double exterior_derivative(const AmbientVectorField& dual, const TangentVector& u,
                           const TangentVector& v);

/// (alpha wedge (d alpha)^n)(E_1, ..., E_{2n+1}), normalized as
/// 2^-n sum_sigma sgn(sigma) alpha(E_s1) prod d alpha(E_s(2i), E_s(2i+1)).
double volume_form_value(const AmbientVectorField& dual, const Frame& frame);

/// Axiom i for an arbitrary 1-form: per-point residual max(0, 1 - s v / (C/2))
/// with s = sign(C); passes iff every value keeps the sign of C and reaches
/// half its magnitude.
ResidualReport check_axiom_volume(const AmbientVectorField& dual, double reference,
                                  std::span<const SpherePoint> points);
ResidualReport check_axiom_volume(const ContactMetricStructure& s,
                                  std::span<const SpherePoint> points);
/// |phi^2 u + u - alpha(u) Z| for random tangent u.
ResidualReport check_axiom_ii(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance = 1e-9);
/// |d alpha(u,v) - 2 g(u, phi v)| for random tangent pairs.
ResidualReport check_axiom_iii(const ContactMetricStructure& s,
                               std::span<const SpherePoint> points, double tolerance = 1e-8);
/// |g(nabla_u V, v) + g(u, nabla_v V)| for random tangent pairs.
ResidualReport killing_residual(const AmbientVectorField& field, std::span<const SpherePoint> points,
                                double tolerance = 1e-9);
ResidualReport check_kcontact(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance = 1e-9);
/// |(nabla_u phi) v - (g(u,v) Z - alpha(v) u)|.
ResidualReport check_sasakian(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance = 1e-8);

}  // namespace kontact
