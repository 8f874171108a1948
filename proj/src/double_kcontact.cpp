#include "kontact/double_kcontact.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "check_util.hpp"
#include "kontact/errors.hpp"

namespace kontact {

namespace {

constexpr double kCommuteTol = 1e-12;
constexpr double kCriticalMargin = 1e-9;
constexpr double kEigenTol = 1e-7;
constexpr double kAlgebraTol = 1e-8;
constexpr std::size_t kSasakianProbe = 32;

// Recovers the +-1 block signs when the matrix is block-diagonal in +-j.
std::optional<std::vector<int>> detect_blocks(const Mat& j) {
  std::vector<int> blocks;
  Mat rebuilt = Mat::Zero(j.rows(), j.cols());
  for (Eigen::Index k = 0; k + 1 < j.rows(); k += 2) {
    const double s = j(k, k + 1);
    if (s != 1.0 && s != -1.0) return std::nullopt;
    blocks.push_back(static_cast<int>(s));
    rebuilt(k, k + 1) = s;
    rebuilt(k + 1, k) = -s;
  }
  if ((rebuilt - j).cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  return blocks;
}

void require_sasakian(const DoubleKContact& d, std::span<const SpherePoint> points) {
  const auto probe = points.first(std::min(points.size(), kSasakianProbe));
  if (!check_sasakian(d.alpha(), probe).pass) {
    throw PreconditionError("the alpha structure is not Sasakian");
  }
}

// Orthonormalized {Z, X, phi_alpha X} at a regular point.
std::vector<TangentVector> adapted_seeds(const DoubleKContact& d, const SpherePoint& p) {
  const TangentVector z = d.alpha().reeb().at(p);
  const TangentVector x = d.beta().reeb().at(p);
  const double f = metric(x, z);
  const double s = std::sqrt(1.0 - f * f);
  const TangentVector e2n = (x - z * f) * (1.0 / s);
  const TangentVector jx = d.alpha().phi(x);
  return {z, e2n, jx * (1.0 / jx.norm())};
}

}  // namespace

DoubleKContact::DoubleKContact(ContactMetricStructure alpha, ContactMetricStructure beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {}

DoubleKContact DoubleKContact::make(const OrthoComplexStructure& j1, const OrthoComplexStructure& j2) {
  if (j1.ambient_dim() != j2.ambient_dim()) throw ConstructionError("generators differ in dimension");
  const Mat& a = j1.matrix();
  const Mat& b = j2.matrix();
  if ((a * b - b * a).cwiseAbs().maxCoeff() > kCommuteTol) {
    throw ConstructionError("generators do not commute, so the Reeb fields would not commute");
  }
  DoubleKContact d(ContactMetricStructure::build(j1), ContactMetricStructure::build(j2));
  d.degenerate_ = (a - b).cwiseAbs().maxCoeff() < kCommuteTol || (a + b).cwiseAbs().maxCoeff() < kCommuteTol;
  d.j1_blocks_ = detect_blocks(a);
  d.j2_blocks_ = detect_blocks(b);
  if (!d.j1_blocks_ || !d.j2_blocks_) {
    d.j1_blocks_.reset();
    d.j2_blocks_.reset();
  }
  return d;
}

DoubleKContact DoubleKContact::from_blocks(std::span<const int> j1_blocks, std::span<const int> j2_blocks) {
  return make(OrthoComplexStructure::from_blocks(j1_blocks), OrthoComplexStructure::from_blocks(j2_blocks));
}

std::optional<double> DoubleKContact::expected_offset() const {
  if (!j1_blocks_ || degenerate_) return std::nullopt;
  // J1 J2 acts as +I on blocks where the signs disagree and -I where they
  // agree; H loses the (p, J p) plane inside each group.
  int disagree = 0;
  int agree = 0;
  for (std::size_t k = 0; k < j1_blocks_->size(); ++k) {
    ((*j1_blocks_)[k] == (*j2_blocks_)[k] ? agree : disagree) += 1;
  }
  const double orientation = alpha_.sigma() * beta_.sigma();
  return 4.0 * orientation * (disagree - agree);
}

ScalarField DoubleKContact::angle_function() const {
  const Mat s = beta_.generator().matrix().transpose() * alpha_.generator().matrix();
  return ScalarField::quadratic_form("f", s);
}

TangentVector DoubleKContact::j_phi(const TangentVector& u) const { return alpha_.phi(beta_.phi(u)); }

TangentVector DoubleKContact::phi_j(const TangentVector& u) const { return beta_.phi(alpha_.phi(u)); }

HBundleBasis hbundle_basis(const DoubleKContact& d, const SpherePoint& p) {
  const double f = d.angle_function()(p);
  if (std::abs(f) >= 1.0 - kCriticalMargin) {
    throw RegularityError("H is undefined where the Reeb fields are parallel");
  }
  const auto seeds = adapted_seeds(d, p);
  Frame frame = gram_schmidt_frame(p, seeds);
  HBundleBasis basis{p, {}};
  basis.vectors.assign(frame.vectors.begin() + 3, frame.vectors.end());
  return basis;
}

double hbundle_trace(const DoubleKContact& d, const HBundleBasis& basis) {
  double trace = 0.0;
  for (const TangentVector& e : basis.vectors) trace += metric(d.j_phi(e), e);
  return trace;
}

ResidualReport commutation_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                 double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    return detail::residual(lie_bracket(d.beta().reeb(), d.alpha().reeb(), p).norm());
  });
  return acc.finish("double_pair", tolerance, "Reeb fields commute: [X, Z] = 0");
}

ResidualReport gradient_identity_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                       double tolerance) {
  const ScalarField f = d.angle_function();
  std::vector<double> via_beta(points.size());
  auto acc_alpha = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    const TangentVector grad = gradient(f, p);
    const TangentVector x = d.beta().reeb().at(p);
    const TangentVector z = d.alpha().reeb().at(p);
    via_beta[i] = (grad - d.beta().phi(z) * 2.0).norm();
    return detail::residual((grad - d.alpha().phi(x) * 2.0).norm());
  });
  ResidualAccumulator acc_beta;
  for (double r : via_beta) acc_beta.add(r);
  const bool alpha_better = acc_alpha.max() <= acc_beta.max();
  ResidualReport r = (alpha_better ? acc_alpha : acc_beta)
                         .finish("gradient_identity", tolerance, "grad f = 2 phi_alpha(X) = 2 phi_beta(Z)");
  r.diagnostics = {{"max_phi_alpha_X", acc_alpha.max()}, {"max_phi_beta_Z", acc_beta.max()}};
  return r;
}

ResidualReport transnormal_b_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                   double tolerance) {
  const TransnormalProfile profile{[](double t) { return 4.0 * (1.0 - t * t); },
                                   [](double t) { return -8.0 * t; }};
  ResidualReport r = check_transnormal(d.angle_function(), profile, points, tolerance);
  r.provenance = "angle function is transnormal with b(t) = 4(1 - t^2)";
  return r;
}

ResidualReport laplacian_formula_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                       double tolerance) {
  const ScalarField f = d.angle_function();
  const int n = d.n();
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const HBundleBasis basis = hbundle_basis(d, p);
    const double predicted = (4.0 * n + 4.0) * f(p) + 2.0 * hbundle_trace(d, basis);
    return detail::residual(laplacian(f, p) - predicted);
  });
  return acc.finish("laplacian_formula", tolerance, "Lap f = (4n+4) f + 2 sum_H g(J phi E_i, E_i)");
}

ResidualReport low_dimension_isoparametric_check(const DoubleKContact& d,
                                                 std::span<const SpherePoint> points) {
  const ScalarField f = d.angle_function();
  if (d.dim() == 3) {
    auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
      return detail::residual(laplacian(f, p) - 8.0 * f(p));
    });
    ResidualReport r = acc.finish("dim_theorem", 1e-7, "dimension 3: Lap f = 8 f");
    r.diagnostics = {{"slope", 8.0}, {"offset", 0.0}};
    return r;
  }
  if (d.dim() != 5) {
    throw UnsupportedDimensionError("the closed-form Laplacian check covers dimensions 3 and 5 only; use fit_affine_profile");
  }
  if (points.empty()) return ResidualAccumulator{}.finish("dim_theorem", 1e-6, "dimension 5: Lap f = 12 f +- 4");
  const double offset = laplacian(f, points.front()) - 12.0 * f(points.front());
  const double magnitude_error = std::abs(std::abs(offset) - 4.0);
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    return detail::residual(std::max(std::abs(laplacian(f, p) - 12.0 * f(p) - offset), magnitude_error));
  });
  ResidualReport r = acc.finish("dim_theorem", 1e-6, "dimension 5: Lap f = 12 f +- 4");
  r.diagnostics = {{"slope", 12.0}, {"offset", offset}};
  return r;
}

ResidualReport hbundle_spectrum_check(const DoubleKContact& d, std::span<const SpherePoint> points) {
  require_sasakian(d, points);
  struct Parts {
    double symmetry = 0.0;
    double commutation = 0.0;
    double square = 0.0;
    double eigen = 0.0;
  };
  std::vector<Parts> parts(points.size());
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    const HBundleBasis basis = hbundle_basis(d, p);
    const auto k = static_cast<Eigen::Index>(basis.vectors.size());
    Mat m(k, k);
    Parts& out = parts[i];
    for (Eigen::Index a = 0; a < k; ++a) {
      const TangentVector& ea = basis.vectors[static_cast<std::size_t>(a)];
      const TangentVector pj = d.phi_j(ea);
      out.commutation = std::max(out.commutation, (pj - d.j_phi(ea)).norm());
      for (Eigen::Index b = 0; b < k; ++b) m(a, b) = metric(pj, basis.vectors[static_cast<std::size_t>(b)]);
    }
    if (k > 0) {
      out.symmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
      out.square = (m * m - Mat::Identity(k, k)).cwiseAbs().maxCoeff();
      const Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (m + m.transpose()));
      for (double lambda : eig.eigenvalues()) {
        out.eigen = std::max(out.eigen, std::min(std::abs(lambda - 1.0), std::abs(lambda + 1.0)));
      }
    }
    // One tolerance for all parts: algebraic identities are held to 1e-8,
    // eigenvalues to 1e-7, so the former are scaled up by 10.
    const double scale = kEigenTol / kAlgebraTol;
    return detail::residual(
        std::max({out.eigen, scale * out.symmetry, scale * out.commutation, scale * out.square}));
  });
  ResidualReport r = acc.finish("hbundle_spectrum", kEigenTol,
                                "phi J = J phi on H, symmetric, eigenvalues +-1");
  Parts worst;
  for (const Parts& q : parts) {
    worst.symmetry = std::max(worst.symmetry, q.symmetry);
    worst.commutation = std::max(worst.commutation, q.commutation);
    worst.square = std::max(worst.square, q.square);
    worst.eigen = std::max(worst.eigen, q.eigen);
  }
  r.diagnostics = {{"symmetry_max", worst.symmetry},
                   {"commutation_max", worst.commutation},
                   {"square_minus_identity_max", worst.square},
                   {"eigenvalue_deviation_max", worst.eigen}};
  return r;
}

ResidualReport hessian_formula_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                     double tolerance) {
  require_sasakian(d, points);
  const ScalarField f = d.angle_function();
  const AmbientVectorField grad = gradient_field(f);
  std::vector<double> full(points.size(), 0.0);
  std::vector<double> asym(points.size(), 0.0);
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    const double fp = f(p);
    const TangentVector z = d.alpha().reeb().at(p);
    const TangentVector x = d.beta().reeb().at(p);
    const Frame frame = gram_schmidt_frame(p);
    for (const TangentVector& a : frame.vectors) {
      const TangentVector nabla_a = cov_deriv(grad, a);
      const TangentVector jphi_a = d.j_phi(a);
      for (const TangentVector& b : frame.vectors) {
        const double rhs = 2.0 * metric(a, x) * metric(z, b) - 2.0 * fp * metric(a, b) - 2.0 * metric(jphi_a, b);
        full[i] = std::max(full[i], std::abs(metric(nabla_a, b) - rhs));
      }
    }
    const HBundleBasis basis = hbundle_basis(d, p);
    double worst = 0.0;
    for (const TangentVector& a : basis.vectors) {
      const TangentVector nabla_a = cov_deriv(grad, a);
      const TangentVector jphi_a = d.j_phi(a);
      for (const TangentVector& b : basis.vectors) {
        const double rhs = -2.0 * fp * metric(a, b) - 2.0 * metric(jphi_a, b);
        worst = std::max(worst, std::abs(metric(nabla_a, b) - rhs));
        asym[i] = std::max(asym[i], std::abs(metric(jphi_a, b) - metric(d.j_phi(b), a)));
      }
    }
    return detail::residual(worst);
  });
  ResidualReport r = acc.finish("hessian_formula", tolerance,
                                "Hess_f(A,B) = -2 alpha(X) g(A,B) - 2 g(J phi A, B) on H");
  if (!points.empty()) {
    r.diagnostics = {{"full_domain_max", *std::max_element(full.begin(), full.end())},
                     {"j_phi_asymmetry_max", *std::max_element(asym.begin(), asym.end())}};
  }
  return r;
}

ResidualReport ricci_normal_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                  double tolerance) {
  const ScalarField f = d.angle_function();
  std::vector<double> normal_part(points.size(), 0.0);
  std::vector<double> commute_part(points.size(), 0.0);
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    const TangentVector n = normalized_gradient(f, p);
    const Frame frame = gram_schmidt_frame(p, std::span(&n, 1));
    for (std::size_t k = 1; k < frame.vectors.size(); ++k) {
      normal_part[i] = std::max(normal_part[i], std::abs(ricci(frame.vectors[k], n, Route::numeric)));
    }
    const TangentVector x = d.beta().reeb().at(p);
    const TangentVector qjx = ricci_operator(d.alpha().phi(x), Route::numeric);
    const TangentVector jqx = d.alpha().phi(ricci_operator(x, Route::numeric));
    commute_part[i] = (qjx - jqx).norm();
    return detail::residual(std::max(normal_part[i], commute_part[i]));
  });
  ResidualReport r = acc.finish("ricci_normal", tolerance, "rho(E, N) = 0 for E orthogonal to N; QJ = JQ");
  if (!points.empty()) {
    r.diagnostics = {{"rho_EN_max", *std::max_element(normal_part.begin(), normal_part.end())},
                     {"QJX_minus_JQX_max", *std::max_element(commute_part.begin(), commute_part.end())}};
  }
  return r;
}

ResidualReport reeb_ricci_check(const DoubleKContact& d, std::span<const SpherePoint> points,
                                double tolerance) {
  const double two_n = 2.0 * d.n();
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    double worst = 0.0;
    for (const ContactMetricStructure* s : {&d.alpha(), &d.beta()}) {
      const TangentVector z = s->reeb().at(p);
      worst = std::max(worst, (ricci_operator(z, Route::numeric) - z * two_n).norm());
    }
    return detail::residual(worst);
  });
  return acc.finish("reeb_ricci", tolerance, "QZ = 2n Z for K-contact Reeb fields");
}

PointPredicate angle_exclusion(const DoubleKContact& d, double cutoff) {
  return [f = d.angle_function(), cutoff](const SpherePoint& p) { return std::abs(f(p)) > cutoff; };
}

}  // namespace kontact
