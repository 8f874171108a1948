#include "kontact/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "check_util.hpp"
#include "kontact/errors.hpp"

namespace kontact {

namespace {

constexpr std::uint64_t kBuildSeed = 0x5eed'c0de;
constexpr std::size_t kBuildSamples = 200;

AmbientVectorField make_reeb(const OrthoComplexStructure& j) {
  return AmbientVectorField("Z", [j](const JetVec& y) { return j.apply(y); });
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t k = i + 1; k < perm.size(); ++k) inversions += perm[i] > perm[k];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

ContactMetricStructure::ContactMetricStructure(OrthoComplexStructure j, int sigma)
    : j_(std::move(j)), sigma_(sigma), reeb_(make_reeb(j_)) {}

ContactMetricStructure ContactMetricStructure::build(const OrthoComplexStructure& j) {
  const int m = j.ambient_dim() - 1;
  const auto points = sample_points(m, kBuildSamples, kBuildSeed);
  for (const int sigma : {1, -1}) {
    ContactMetricStructure s(j, sigma);
    if (!check_axiom_iii(s, points).pass) continue;
    const SpherePoint reference(Vec::Unit(j.ambient_dim(), 0));
    s.volume_constant_ = volume_form_value(s.reeb_, oriented(gram_schmidt_frame(reference)));
    if (!check_axiom_ii(s, points).pass || !check_kcontact(s, points).pass ||
        !check_axiom_volume(s, points).pass) {
      throw ConstructionError("structure satisfies d alpha = 2 g(., phi .) but fails the remaining axioms");
    }
    return s;
  }
  throw ConstructionError("no orientation of phi satisfies d alpha = 2 g(., phi .)");
}

double ContactMetricStructure::alpha(const TangentVector& u) const {
  return metric(u, reeb_.at(u.base()));
}

TangentVector ContactMetricStructure::phi(const TangentVector& u) const {
  const JetVec y = ambient::lift(u.base().coords());
  return project(u.base(), ambient::values(phi(y, ambient::lift(u.vec()))));
}

Jet ContactMetricStructure::alpha(const JetVec& y, const JetVec& u) const {
  return ambient::dot(u, j_.apply(y));
}

JetVec ContactMetricStructure::phi(const JetVec& y, const JetVec& u) const {
  const Jet a = alpha(y, u);
  JetVec out = j_.apply(u);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma_ * (out[i] + a * y[i]);
  return out;
}

AmbientVectorField ContactMetricStructure::phi_of(const AmbientVectorField& v) const {
  return AmbientVectorField("phi " + v.label(), [self = *this, v](const JetVec& y) {
    return self.phi(y, v(y));
  });
}

double exterior_derivative(const AmbientVectorField& dual, const TangentVector& u,
                           const TangentVector& v) {
  const auto ue = ambient::projected_constant(u.vec());
  const auto ve = ambient::projected_constant(v.vec());
  auto pairing = [&dual](const AmbientVectorField& w) {
    return [&dual, &w](const JetVec& y) { return ambient::dot(dual(y), w(y)); };
  };
  const JetVec y = ambient::lift(u.base().coords());
  const double u_alpha_v = ambient::directional(pairing(ve), y, ambient::lift(u.vec())).value();
  const double v_alpha_u = ambient::directional(pairing(ue), y, ambient::lift(v.vec())).value();
  const TangentVector bracket = lie_bracket(ue, ve, u.base());
  const double alpha_bracket = dual.value(u.base().coords()).dot(bracket.vec());
  return u_alpha_v - v_alpha_u - alpha_bracket;
}

double volume_form_value(const AmbientVectorField& dual, const Frame& frame) {
  const int m = static_cast<int>(frame.vectors.size());
  const int n = (m - 1) / 2;
  const Vec a_dual = dual.value(frame.base.coords());
  Vec a(m);
  Mat w = Mat::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    a[k] = a_dual.dot(frame.vectors[k].vec());
    for (int l = k + 1; l < m; ++l) {
      w(k, l) = exterior_derivative(dual, frame.vectors[k], frame.vectors[l]);
      w(l, k) = -w(k, l);
    }
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    double term = a[perm[0]];
    for (int i = 0; i < n && term != 0.0; ++i) term *= w(perm[1 + 2 * i], perm[2 + 2 * i]);
    if (term != 0.0) total += permutation_sign(perm) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::ldexp(total, -n);
}

ResidualReport check_axiom_volume(const AmbientVectorField& dual, double reference,
                                  std::span<const SpherePoint> points) {
  const double sign = reference >= 0.0 ? 1.0 : -1.0;
  const double half = 0.5 * std::abs(reference);
  std::vector<double> values(points.size());
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    values[i] = volume_form_value(dual, oriented(gram_schmidt_frame(p)));
    return detail::residual(std::max(0.0, 1.0 - sign * values[i] / half));
  });
  ResidualReport r = acc.finish("axiom_volume[" + dual.label() + "]", 0.0,
                                "alpha wedge (d alpha)^n is a volume form");
  double smallest = values.empty() ? 0.0 : std::abs(values.front());
  for (double v : values) smallest = std::min(smallest, std::abs(v));
  r.diagnostics = {{"reference", reference}, {"min_abs_value", smallest}};
  return r;
}

ResidualReport check_axiom_volume(const ContactMetricStructure& s,
                                  std::span<const SpherePoint> points) {
  return check_axiom_volume(s.reeb(), s.volume_constant(), points);
}

ResidualReport check_axiom_ii(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    auto rng = detail::point_rng(0xa2, i);
    const TangentVector u = random_tangent(p, rng);
    const TangentVector z = s.reeb().at(p);
    const Vec lhs = s.phi(s.phi(u)).vec() + u.vec() - s.alpha(u) * z.vec();
    return detail::residual(lhs.norm());
  });
  return acc.finish("axiom_ii", tolerance, "phi^2 A = -A + alpha(A) Z");
}

ResidualReport check_axiom_iii(const ContactMetricStructure& s,
                               std::span<const SpherePoint> points, double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    auto rng = detail::point_rng(0xa3, i);
    const TangentVector u = random_tangent(p, rng);
    const TangentVector v = random_tangent(p, rng);
    return detail::residual(exterior_derivative(s.reeb(), u, v) - 2.0 * metric(u, s.phi(v)));
  });
  return acc.finish("axiom_iii", tolerance, "d alpha(A,B) = 2 g(A, phi B)");
}

ResidualReport killing_residual(const AmbientVectorField& field, std::span<const SpherePoint> points,
                                double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    auto rng = detail::point_rng(0xb1, i);
    const TangentVector u = random_tangent(p, rng);
    const TangentVector v = random_tangent(p, rng);
    return detail::residual(metric(cov_deriv(field, u), v) + metric(u, cov_deriv(field, v)));
  });
  return acc.finish("killing[" + field.label() + "]", tolerance, "Reeb field is an infinitesimal isometry");
}

ResidualReport check_kcontact(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance) {
  ResidualReport r = killing_residual(s.reeb(), points, tolerance);
  r.check_name = "kcontact";
  return r;
}

ResidualReport check_sasakian(const ContactMetricStructure& s, std::span<const SpherePoint> points,
                              double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t i, const SpherePoint& p) {
    auto rng = detail::point_rng(0x5a, i);
    const TangentVector u = random_tangent(p, rng);
    const TangentVector v = random_tangent(p, rng);
    const auto ve = ambient::projected_constant(v.vec());
    const TangentVector nabla_phi_v =
        cov_deriv(s.phi_of(ve), u) - s.phi(cov_deriv(ve, u));
    const Vec expected = metric(u, v) * s.reeb().at(p).vec() - s.alpha(v) * u.vec();
    return detail::residual((nabla_phi_v.vec() - expected).norm());
  });
  return acc.finish("sasakian", tolerance, "(nabla_A phi) B = g(A,B) Z - alpha(B) A");
}

}  // namespace kontact
