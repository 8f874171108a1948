#include "kontact/scalar_field.hpp"

#include <cmath>
#include <utility>

#include "check_util.hpp"
#include "kontact/errors.hpp"

namespace kontact {

namespace {

constexpr double kProfileFloor = 1e-14;

}  // namespace

ScalarField::ScalarField(std::string label, ScalarFormula formula)
    : label_(std::move(label)), formula_(std::move(formula)) {}

double ScalarField::operator()(const SpherePoint& p) const {
  return formula_(ambient::lift(p.coords())).value();
}

ScalarField ScalarField::constant(double c) {
  return ScalarField("constant", [c](const JetVec&) { return Jet(c); });
}

ScalarField ScalarField::quadratic_form(std::string label, const Mat& s) {
  const Mat sym = 0.5 * (s + s.transpose());
  struct Term {
    int i;
    int j;
    double w;
  };
  std::vector<Term> terms;
  for (int i = 0; i < sym.rows(); ++i) {
    if (sym(i, i) != 0.0) terms.push_back({i, i, sym(i, i)});
    for (int j = i + 1; j < sym.cols(); ++j) {
      if (sym(i, j) != 0.0) terms.push_back({i, j, 2.0 * sym(i, j)});
    }
  }
  return ScalarField(std::move(label), [terms = std::move(terms)](const JetVec& y) {
    Jet acc;
    for (const Term& t : terms) acc += t.w * (y[t.i] * y[t.j]);
    return acc;
  });
}

ScalarField ScalarField::coordinate(int axis) {
  return ScalarField("x" + std::to_string(axis), [axis](const JetVec& y) { return y[axis]; });
}

JetVec ambient_gradient(const ScalarFormula& f, const JetVec& y) {
  const int slot = free_slot(support_of(y));
  const Jet eps = Jet::infinitesimal(slot);
  JetVec grad(y.size());
  JetVec shifted(y);
  for (std::size_t k = 0; k < y.size(); ++k) {
    shifted[k] = y[k] + eps;
    grad[k] = f(shifted).derivative(slot);
    shifted[k] = y[k];
  }
  return grad;
}

TangentVector gradient(const ScalarField& f, const SpherePoint& p) {
  return project(p, ambient::values(ambient_gradient(f.formula(), ambient::lift(p.coords()))));
}

AmbientVectorField gradient_field(const ScalarField& f) {
  return AmbientVectorField("grad " + f.label(), [formula = f.formula()](const JetVec& y) {
    return ambient::project(y, ambient_gradient(formula, y));
  });
}

AmbientVectorField normalized_gradient_field(const ScalarField& f, double eps) {
  return AmbientVectorField("N(" + f.label() + ")", [formula = f.formula(), eps](const JetVec& y) {
    const JetVec g = ambient::project(y, ambient_gradient(formula, y));
    const Jet len = ambient::norm(g);
    if (!(len.value() >= eps)) throw RegularityError("gradient vanishes near this point");
    return ambient::scaled(g, 1.0 / len);
  });
}

double hessian(const ScalarField& f, const TangentVector& u, const TangentVector& v) {
  return metric(cov_deriv(gradient_field(f), u), v);
}

double laplacian(const ScalarField& f, const Frame& frame) {
  const AmbientVectorField grad = gradient_field(f);
  double trace = 0.0;
  for (const TangentVector& e : frame.vectors) trace += metric(cov_deriv(grad, e), e);
  return -trace;
}

double laplacian(const ScalarField& f, const SpherePoint& p) {
  return laplacian(f, gram_schmidt_frame(p));
}

TangentVector normalized_gradient(const ScalarField& f, const SpherePoint& p, double eps) {
  const TangentVector g = gradient(f, p);
  const double len = g.norm();
  if (!(len >= eps)) throw RegularityError("point is too close to the critical set");
  return g * (1.0 / len);
}

double level_mean_curvature(const ScalarField& f, const SpherePoint& p) {
  const TangentVector n = normalized_gradient(f, p);
  const AmbientVectorField field = normalized_gradient_field(f);
  const Frame frame = gram_schmidt_frame(p, std::span(&n, 1));
  double trace = 0.0;
  for (std::size_t i = 1; i < frame.vectors.size(); ++i) {
    trace += metric(cov_deriv(field, frame.vectors[i]), frame.vectors[i]);
  }
  return -trace;
}

ResidualReport check_geodesic(const ScalarField& f, std::span<const SpherePoint> points,
                              double tolerance) {
  const AmbientVectorField field = normalized_gradient_field(f);
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const TangentVector n = normalized_gradient(f, p);
    return detail::residual(cov_deriv(field, n).norm());
  });
  return acc.finish("geodesic", tolerance, "normalized gradient of a transnormal function is geodesic");
}

ResidualReport check_transnormal(const ScalarField& f, const TransnormalProfile& profile,
                                 std::span<const SpherePoint> points, double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const double g2 = gradient(f, p).vec().squaredNorm();
    return detail::residual(g2 - profile.b(f(p)));
  });
  return acc.finish("transnormal", tolerance, "|grad f|^2 = b(f)");
}

ResidualReport check_isoparametric(const ScalarField& f, const IsoparametricProfile& profile,
                                   std::span<const SpherePoint> points, double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    return detail::residual(laplacian(f, p) - profile.a(f(p)));
  });
  return acc.finish("isoparametric", tolerance, "Lap f = a(f)");
}

AffineFit fit_affine_profile(const ScalarField& f, std::span<const SpherePoint> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Mat design(n, 2);
  Vec lap(n);
  parallel_for(points.size(), [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    design(k, 0) = f(points[i]);
    design(k, 1) = 1.0;
    lap[k] = laplacian(f, points[i]);
  });
  const Vec coef = design.colPivHouseholderQr().solve(lap);
  AffineFit fit;
  fit.slope = coef[0];
  fit.offset = coef[1];
  fit.count = points.size();
  fit.residual = n > 0 ? (design * coef - lap).cwiseAbs().maxCoeff() : 0.0;
  return fit;
}

ResidualReport mean_curvature_identity_check(const ScalarField& f, const TransnormalProfile& profile,
                                             std::span<const SpherePoint> points, double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const double grad_norm = gradient(f, p).norm();
    if (!(grad_norm >= kRegularityEps)) return detail::skipped();
    const double value = f(p);
    double b = profile.b(value);
    const bool clamped = b < kProfileFloor;
    if (clamped) b = kProfileFloor;
    const double predicted = laplacian(f, p) / grad_norm + profile.b_prime(value) / (2.0 * std::sqrt(b));
    return detail::residual(level_mean_curvature(f, p) - predicted, clamped);
  });
  return acc.finish("mean_curvature_identity", tolerance,
                    "h = Lap f / |grad f| + b'(f) / (2 sqrt(b)) on regular levels");
}

}  // namespace kontact
