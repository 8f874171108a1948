#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kontact/contact.hpp"
#include "kontact/report.hpp"
#include "kontact/scalar_field.hpp"

namespace kontact {

/// Two K-contact structures on the same round sphere with commuting Reeb
/// fields: alpha (Reeb Z, generator J1) and beta (Reeb X, generator J2).
///
/// Naming: phi_alpha and phi_beta are the transverse complex structures of
/// alpha and beta. The angle function f = g(X, Z) has gradient
/// 2 phi_alpha(X) = 2 phi_beta(Z); the "J phi" composition in the Laplacian
/// and Hessian identities is phi_alpha after phi_beta.
class DoubleKContact {
 public:
  /// Throws ConstructionError unless J1 J2 = J2 J1 to 1e-12.
  static DoubleKContact make(const OrthoComplexStructure& j1, const OrthoComplexStructure& j2);
  static DoubleKContact from_blocks(std::span<const int> j1_blocks, std::span<const int> j2_blocks);

  const ContactMetricStructure& alpha() const { return alpha_; }
  const ContactMetricStructure& beta() const { return beta_; }
  int dim() const { return alpha_.dim(); }
  int n() const { return alpha_.n(); }

  /// X = +-Z: the angle function is constant and every point is critical.
  bool degenerate() const { return degenerate_; }
  /// Generators that are not block-diagonal with +-j blocks.
  bool experimental() const { return !j1_blocks_.has_value(); }
  const std::optional<std::vector<int>>& j1_blocks() const { return j1_blocks_; }
  const std::optional<std::vector<int>>& j2_blocks() const { return j2_blocks_; }

  /// For block-diagonal generators, the constant c0 in
  /// Lap f = (4n+4) f + c0, namely 2 * trace of J phi on H.
  std::optional<double> expected_offset() const;

  /// f(p) = g(X(p), Z(p)).
  ScalarField angle_function() const;
  /// J phi u = phi_alpha(phi_beta(u)).
  TangentVector j_phi(const TangentVector& u) const;
  TangentVector phi_j(const TangentVector& u) const;

 private:
  DoubleKContact(ContactMetricStructure alpha, ContactMetricStructure beta);

  ContactMetricStructure alpha_;
  ContactMetricStructure beta_;
  bool degenerate_ = false;
  std::optional<std::vector<int>> j1_blocks_;
  std::optional<std::vector<int>> j2_blocks_;
};

/// Orthonormal basis of H, the orthogonal complement of span{Z, X, phi_alpha X}.
struct HBundleBasis {
  SpherePoint base;
  std::vector<TangentVector> vectors;
};

/// Canonical completion order; throws RegularityError when |f| >= 1 - 1e-9.
HBundleBasis hbundle_basis(const DoubleKContact& d, const SpherePoint& p);
/// sum_i g(J phi E_i, E_i) over the basis.
double hbundle_trace(const DoubleKContact& d, const HBundleBasis& basis);

/// |[X, Z]| per point.
ResidualReport commutation_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                 double tolerance = 1e-10);
/// Both pairings grad f = 2 phi_alpha(X) and grad f = 2 phi_beta(Z); the
/// report carries the better one and both maxima as diagnostics.
ResidualReport gradient_identity_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                       double tolerance = 1e-9);
/// Transnormality with b(t) = 4 (1 - t^2).
ResidualReport transnormal_b_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                   double tolerance = 1e-9);
/// |Lap f - (4n+4) f - 2 sum_H g(J phi E_i, E_i)|.
ResidualReport laplacian_formula_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                       double tolerance = 1e-7);
/// Dimension 3: |Lap f - 8 f| <= 1e-7. Dimension 5: |Lap f - 12 f - c0| with
/// c0 estimated at the first point, required constant and of magnitude 4;
/// tolerance 1e-6. Other dimensions throw UnsupportedDimensionError.
ResidualReport low_dimension_isoparametric_check(const DoubleKContact& d,
                                                 std::span<const SpherePoint> points);
/// Spectrum of phi J on H: symmetry, commutation with J phi, and eigenvalues
/// within 1e-7 of +-1. Requires alpha Sasakian and dimension >= 5.
ResidualReport hbundle_spectrum_check(const DoubleKContact& d, std::span<const SpherePoint> points);
/// Hess_f(A,B) = -2 alpha(X) g(A,B) - 2 g(J phi A, B) on H x H. The
/// full-argument form is reported as the diagnostic "full_domain_max".
ResidualReport hessian_formula_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                     double tolerance = 1e-7);
/// |rho(E, N)| over an orthonormal basis of N^perp, together with
/// |Q phi_alpha X - phi_alpha Q X|.
ResidualReport ricci_normal_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                  double tolerance = 1e-8);
/// |Q Z - 2n Z| for both Reeb fields, numeric curvature route.
ResidualReport reeb_ricci_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                double tolerance = 1e-8);

/// Exclusion predicate |f(p)| > cutoff for the angle function.
PointPredicate angle_exclusion(const DoubleKContact& d, double cutoff);

}  // namespace kontact
