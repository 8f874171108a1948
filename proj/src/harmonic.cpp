#include "kontact/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "check_util.hpp"
#include "kontact/errors.hpp"

namespace kontact {

namespace {

constexpr double kOrthogonalityTol = 1e-8;
constexpr double kGeodesicTol = 1e-6;
constexpr double kSymmetryTol = 1e-7;
constexpr double kSimpleGap = 1e-4;
constexpr double kArcStep = 1e-3;

SpherePoint along_geodesic(const SpherePoint& p, const TangentVector& unit, double t) {
  return SpherePoint::normalized(std::cos(t) * p.coords() + std::sin(t) * unit.vec());
}

// Five-point central difference of g at t = 0.
template <typename G>
auto five_point(G&& g) {
  const double h = kArcStep;
  return (-g(2 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2 * h)) * (1.0 / (12.0 * h));
}

// Orthonormal frame of N^perp at p.
std::vector<TangentVector> normal_complement(const TangentVector& n) {
  Frame frame = gram_schmidt_frame(n.base(), std::span(&n, 1));
  return {frame.vectors.begin() + 1, frame.vectors.end()};
}

// Matrix of A_N on a frame of N^perp, S(i,j) = g(A e_j, e_i).
Mat restricted_weingarten(const UnitVectorField& n, const std::vector<TangentVector>& frame) {
  const auto k = static_cast<Eigen::Index>(frame.size());
  Mat s(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const TangentVector a = weingarten(n, frame[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < k; ++i) s(i, j) = metric(a, frame[static_cast<std::size_t>(i)]);
  }
  return s;
}

// Pairwise summation in index order.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

bool simple_spectrum(const std::vector<double>& lambda) {
  for (std::size_t i = 1; i < lambda.size(); ++i) {
    if (lambda[i] - lambda[i - 1] < kSimpleGap) return false;
  }
  return true;
}

// Index of the eigenvector at q best aligned (in ambient space) with `e`.
std::size_t match(const ShapeSpectrum& at_q, const TangentVector& e) {
  std::size_t best = 0;
  double overlap = -1.0;
  for (std::size_t k = 0; k < at_q.eigenframe.size(); ++k) {
    const double o = std::abs(at_q.eigenframe[k].vec().dot(e.vec()));
    if (o > overlap) {
      overlap = o;
      best = k;
    }
  }
  return best;
}

}  // namespace

UnitVectorField::UnitVectorField(AmbientVectorField field, PointPredicate defined)
    : field_(std::move(field)), defined_(std::move(defined)) {}

UnitVectorField UnitVectorField::reeb(const ContactMetricStructure& s) { return UnitVectorField(s.reeb()); }

UnitVectorField UnitVectorField::normalized_gradient(const ScalarField& f, double eps) {
  return UnitVectorField(normalized_gradient_field(f, eps), [f, eps](const SpherePoint& p) {
    return gradient(f, p).norm() >= eps;
  });
}

void UnitVectorField::require(const SpherePoint& p) const {
  if (!defined_at(p)) throw RegularityError("unit field " + label() + " is undefined at this point");
}

TangentVector UnitVectorField::at(const SpherePoint& p) const {
  require(p);
  return field_.at(p);
}

UnitVectorField UnitVectorField::restricted(PointPredicate keep) const {
  return UnitVectorField(field_, [outer = defined_, keep = std::move(keep)](const SpherePoint& p) {
    return (!outer || outer(p)) && keep(p);
  });
}

TangentVector weingarten(const UnitVectorField& z, const TangentVector& u) {
  z.require(u.base());
  return cov_deriv(z.field(), u) * -1.0;
}

TangentVector weingarten_transpose(const UnitVectorField& z, const TangentVector& u) {
  const Frame frame = gram_schmidt_frame(u.base());
  Vec out = Vec::Zero(u.base().ambient_dim());
  for (const TangentVector& e : frame.vectors) out += metric(u, weingarten(z, e)) * e.vec();
  return TangentVector(u.base(), std::move(out));
}

AmbientVectorField weingarten_transpose_field(const UnitVectorField& z, const AmbientVectorField& x) {
  return AmbientVectorField("A^t " + x.label(), [field = z.field(), x](const JetVec& y) {
    const JetVec xt = ambient::project(y, x(y));
    JetVec out(y.size());
    JetVec basis(y.size(), Jet(0.0));
    for (std::size_t k = 0; k < y.size(); ++k) {
      basis[k] = 1.0;
      out[k] = -ambient::dot(ambient::directional(field, y, basis), xt);
      basis[k] = 0.0;
    }
    return ambient::project(y, out);
  });
}

TangentVector l_operator(const UnitVectorField& z, const TangentVector& u) {
  return u + weingarten_transpose(z, weingarten(z, u));
}

double pullback_metric(const UnitVectorField& z, const TangentVector& u, const TangentVector& v) {
  z.require(u.base());
  return metric(u, v) + metric(cov_deriv(z.field(), u), cov_deriv(z.field(), v));
}

double trace_l(const UnitVectorField& z, const SpherePoint& p) {
  const Frame frame = gram_schmidt_frame(p);
  std::vector<TangentVector> a;
  a.reserve(frame.vectors.size());
  for (const TangentVector& e : frame.vectors) a.push_back(weingarten(z, e));
  // tr(A^t A) = sum_i |A e_i|^2 on an orthonormal frame.
  double trace = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) trace += 1.0 + metric(a[i], a[i]);
  return trace;
}

EnergyEstimate energy(const UnitVectorField& z, int dim, std::size_t sample_size, std::uint64_t seed) {
  const auto points = sample_points(dim, sample_size, seed);
  std::vector<double> half_trace(points.size(), 0.0);
  std::vector<char> inside(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    if (!z.defined_at(points[i])) return;
    inside[i] = 1;
    half_trace[i] = 0.5 * trace_l(z, points[i]);
  });
  EnergyEstimate est;
  est.samples = points.size();
  est.rejected = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 0));
  if (est.rejected * 100 > est.samples * 99) {
    throw SamplingExhaustedError("the field is undefined at more than 99% of the samples");
  }
  const double mean = pairwise_sum(half_trace) / static_cast<double>(points.size());
  std::vector<double> sq(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) sq[i] = (half_trace[i] - mean) * (half_trace[i] - mean);
  const double n = static_cast<double>(points.size());
  const double variance = points.size() > 1 ? pairwise_sum(sq) / (n - 1.0) : 0.0;
  const double volume = sphere_volume(dim);
  est.value = volume * mean;
  est.std_error = volume * std::sqrt(variance / n);
  return est;
}

double nu_form(const UnitVectorField& z, const TangentVector& x, const Frame& frame) {
  const SpherePoint& p = x.base();
  z.require(p);
  if (std::abs(metric(x, z.at(p))) > kOrthogonalityTol) {
    throw PreconditionError("nu_Z is evaluated on vectors orthogonal to Z");
  }
  const AmbientVectorField xe = ambient::projected_constant(x.vec());
  const AmbientVectorField transposed = weingarten_transpose_field(z, xe);
  double trace = 0.0;
  for (const TangentVector& u : frame.vectors) {
    const TangentVector derivative = cov_deriv(transposed, u) - weingarten_transpose(z, cov_deriv(xe, u));
    trace += metric(derivative, u);
  }
  return trace;
}

double nu_form(const UnitVectorField& z, const TangentVector& x) {
  return nu_form(z, x, gram_schmidt_frame(x.base()));
}

ShapeSpectrum shape_spectrum(const UnitVectorField& n, const SpherePoint& p) {
  const TangentVector np = n.at(p);
  if (cov_deriv(n.field(), np).norm() > kGeodesicTol) {
    throw PreconditionError("shape spectrum requires a geodesic unit field");
  }
  const auto frame = normal_complement(np);
  const Mat s = restricted_weingarten(n, frame);
  if (s.size() > 0 && (s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw IntegrabilityError("A_N is not symmetric on N^perp");
  }
  ShapeSpectrum out{p, {}, {}, 0.0};
  if (frame.empty()) return out;
  const Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (s + s.transpose()));
  const Mat& v = eig.eigenvectors();
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    out.eigenvalues.push_back(eig.eigenvalues()[i]);
    Vec e = Vec::Zero(p.ambient_dim());
    for (Eigen::Index k = 0; k < v.rows(); ++k) e += v(k, i) * frame[static_cast<std::size_t>(k)].vec();
    out.eigenframe.push_back(project(p, e));
    out.mean_curvature += eig.eigenvalues()[i];
  }
  return out;
}

double mean_curvature(const UnitVectorField& n, const SpherePoint& p) {
  const auto frame = normal_complement(n.at(p));
  double trace = 0.0;
  for (const TangentVector& e : frame) trace += metric(weingarten(n, e), e);
  return trace;
}

std::optional<std::vector<double>> principal_balance_residual(const UnitVectorField& n,
                                                              const SpherePoint& p) {
  const ShapeSpectrum spec = shape_spectrum(n, p);
  if (!simple_spectrum(spec.eigenvalues)) return std::nullopt;
  const std::size_t k = spec.eigenvalues.size();
  // nabla_{E_i} E_i from matched eigenvectors along the geodesic through E_i.
  std::vector<TangentVector> accel;
  accel.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const TangentVector& e = spec.eigenframe[i];
    const Vec d = five_point([&](double t) -> Vec {
      const ShapeSpectrum q = shape_spectrum(n, along_geodesic(p, e, t));
      const TangentVector& v = q.eigenframe[match(q, e)];
      return v.vec().dot(e.vec()) >= 0.0 ? v.vec() : Vec(-v.vec());
    });
    accel.push_back(project(p, d));
  }
  std::vector<double> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    const TangentVector& e = spec.eigenframe[j];
    const double d_lambda = five_point([&](double t) {
      const ShapeSpectrum q = shape_spectrum(n, along_geodesic(p, e, t));
      return q.eigenvalues[match(q, e)];
    });
    double sum = d_lambda;
    for (std::size_t i = 0; i < k; ++i) {
      sum += (spec.eigenvalues[i] - spec.eigenvalues[j]) * metric(accel[i], e);
    }
    out[j] = sum;
  }
  return out;
}

std::optional<std::vector<double>> ricci_mean_curvature_residual(const UnitVectorField& n,
                                                                 const SpherePoint& p) {
  const ShapeSpectrum spec = shape_spectrum(n, p);
  if (!simple_spectrum(spec.eigenvalues)) return std::nullopt;
  const TangentVector np = n.at(p);
  std::vector<double> out;
  for (const TangentVector& e : spec.eigenframe) {
    const double dh = five_point([&](double t) { return mean_curvature(n, along_geodesic(p, e, t)); });
    out.push_back(ricci(e, np) - dh);
  }
  return out;
}

ResidualReport critical_condition_check(const UnitVectorField& n, std::span<const SpherePoint> points,
                                        double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const TangentVector np = n.at(p);
    double worst = 0.0;
    for (const TangentVector& x : normal_complement(np)) {
      const double dh = five_point([&](double t) { return mean_curvature(n, along_geodesic(p, x, t)); });
      worst = std::max(worst, std::abs(dh - ricci(x, np)));
    }
    return detail::residual(worst);
  });
  return acc.finish("critical_condition", tolerance, "X(h) = rho(X, N) for X orthogonal to N");
}

ResidualReport harmonicity_check(const UnitVectorField& n, std::span<const SpherePoint> points,
                                 double tolerance) {
  auto acc = detail::accumulate(points, [&](std::size_t, const SpherePoint& p) {
    const TangentVector np = n.at(p);
    const Frame frame = gram_schmidt_frame(p);
    double worst = 0.0;
    for (const TangentVector& x : normal_complement(np)) worst = std::max(worst, std::abs(nu_form(n, x, frame)));
    return detail::residual(worst);
  });
  return acc.finish("nu_form", tolerance, "nu_N vanishes on N^perp (harmonic unit vector field)");
}

}  // namespace kontact
