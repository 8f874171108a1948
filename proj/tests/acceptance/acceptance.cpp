// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero when
// any criterion fails.

#include <Eigen/QR>

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "kontact/double_kcontact.hpp"
#include "kontact/errors.hpp"
#include "kontact/harmonic.hpp"
#include "kontact/scalar_field.hpp"
#include "kontact/suite.hpp"

using namespace kontact;

namespace {

constexpr std::size_t kSamples = 500;
constexpr std::uint64_t kSeed = 42;
constexpr double kExclusion = 0.9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g", detail.empty() ? "" : ", ", what.c_str(), value);
    detail += buf;
    if (!ok) {
      pass = false;
      detail += "(!)";
    }
  }
  void report(const ResidualReport& r, const std::string& tag) { require(r.pass, tag, r.max); }
};

int failures = 0;

void criterion(int number, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s  %2d  %-40s  %s\n", o.pass ? "PASS" : "FAIL", number, title, o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

DoubleKContact s3() { return shipped_pair(Manifold::s3); }
DoubleKContact s5() { return shipped_pair(Manifold::s5); }

std::vector<SpherePoint> all_points(const DoubleKContact& d) { return sample_points(d.dim(), kSamples, kSeed); }
std::vector<SpherePoint> regular(const DoubleKContact& d) {
  return sample_points(d.dim(), kSamples, kSeed, angle_exclusion(d, kExclusion));
}

const TransnormalProfile kAngleB{[](double t) { return 4.0 * (1.0 - t * t); }, [](double t) { return -8.0 * t; }};
const TransnormalProfile kHeightB{[](double t) { return 1.0 - t * t; }, [](double t) { return -2.0 * t; }};

std::vector<SpherePoint> height_regular(int dim) {
  return sample_points(dim, kSamples, kSeed, [](const SpherePoint& p) { return std::abs(p.coords()[0]) > kExclusion; });
}

Mat random_matrix(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat a(size, size);
  for (int i = 0; i < size; ++i) {
    for (int k = 0; k < size; ++k) a(i, k) = normal(rng);
  }
  return a;
}

AmbientVectorField linear_field(const Mat& a) {
  return AmbientVectorField("Ay", [a](const JetVec& y) {
    JetVec out(y.size(), Jet(0.0));
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t k = 0; k < y.size(); ++k) {
        out[i] += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * y[k];
      }
    }
    return ambient::project(y, out);
  });
}

}  // namespace

int main() {
  criterion(1, "transnormality b(t) = 4(1 - t^2)", [] {
    Outcome o;
    o.report(transnormal_b_check(s3(), all_points(s3())), "s3");
    o.report(transnormal_b_check(s5(), all_points(s5())), "s5");
    return o;
  });

  criterion(2, "dimension 3: Lap f = 8 f", [] {
    Outcome o;
    o.report(low_dimension_isoparametric_check(s3(), regular(s3())), "s3");
    return o;
  });

  criterion(3, "dimension 5: Lap f = 12 f + c0, c0 = -4", [] {
    Outcome o;
    const auto d = s5();
    const auto r = low_dimension_isoparametric_check(d, regular(d));
    o.report(r, "residual");
    const double c0 = r.diagnostic("offset");
    o.require(std::abs(c0 + 4.0) <= 1e-6, "c0+4", c0 + 4.0);
    const AffineFit fit = fit_affine_profile(d.angle_function(), regular(d));
    o.require(std::abs(fit.offset - c0) <= 1e-6, "fit_offset_gap", fit.offset - c0);
    return o;
  });

  criterion(4, "Laplacian formula and frame independence", [] {
    Outcome o;
    o.report(laplacian_formula_check(s3(), all_points(s3())), "s3");
    o.report(laplacian_formula_check(s5(), all_points(s5())), "s5");
    double worst = 0.0;
    std::mt19937_64 rng(kSeed);
    for (const auto& d : {s5(), shipped_pair(Manifold::s7)}) {
      for (const auto& p : sample_points(d.dim(), 100, kSeed, angle_exclusion(d, kExclusion))) {
        const HBundleBasis h = hbundle_basis(d, p);
        const auto k = static_cast<int>(h.vectors.size());
        const Eigen::HouseholderQR<Mat> qr(random_matrix(k, rng));
        const Mat q = qr.householderQ();
        HBundleBasis rotated{p, {}};
        for (int c = 0; c < k; ++c) {
          Vec v = Vec::Zero(p.ambient_dim());
          for (int r = 0; r < k; ++r) v += q(r, c) * h.vectors[static_cast<std::size_t>(r)].vec();
          rotated.vectors.emplace_back(p, v);
        }
        worst = std::max(worst, std::abs(hbundle_trace(d, h) - hbundle_trace(d, rotated)));
      }
    }
    o.require(worst <= 1e-8, "frame_gap", worst);
    return o;
  });

  criterion(5, "normals of level sets are geodesic", [] {
    Outcome o;
    o.report(check_geodesic(s3().angle_function(), regular(s3())), "s3_angle");
    o.report(check_geodesic(s5().angle_function(), regular(s5())), "s5_angle");
    o.report(check_geodesic(ScalarField::coordinate(0), height_regular(3)), "s3_height");
    return o;
  });

  criterion(6, "mean curvature identity, Clifford torus", [] {
    Outcome o;
    o.report(mean_curvature_identity_check(s3().angle_function(), kAngleB, regular(s3())), "s3_angle");
    o.report(mean_curvature_identity_check(s5().angle_function(), kAngleB, regular(s5())), "s5_angle");
    o.report(mean_curvature_identity_check(ScalarField::coordinate(0), kHeightB, height_regular(3)), "s3_height");
    const ScalarField f = s3().angle_function();
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double c = std::sqrt(0.5);
      const double theta = 0.4 * k;
      const double psi = 1.3 * k + 0.2;
      Vec y(4);
      y << c * std::cos(theta), c * std::sin(theta), c * std::cos(psi), c * std::sin(psi);
      worst = std::max(worst, std::abs(level_mean_curvature(f, SpherePoint(y))));
    }
    o.require(worst <= 1e-7, "clifford_h", worst);
    return o;
  });

  criterion(7, "phi J on H has eigenvalues +-1 (s5)", [] {
    Outcome o;
    const auto r = hbundle_spectrum_check(s5(), regular(s5()));
    o.report(r, "residual");
    o.require(r.diagnostic("symmetry_max") <= 1e-8, "symmetry", r.diagnostic("symmetry_max"));
    o.require(r.diagnostic("square_minus_identity_max") <= 1e-8, "square", r.diagnostic("square_minus_identity_max"));
    o.require(r.diagnostic("eigenvalue_deviation_max") <= 1e-7, "eigen", r.diagnostic("eigenvalue_deviation_max"));
    return o;
  });

  criterion(8, "Hessian formula on H x H (s5)", [] {
    Outcome o;
    o.report(hessian_formula_check(s5(), regular(s5())), "s5");
    return o;
  });

  criterion(9, "normal field is a harmonic unit vector field", [] {
    Outcome o;
    for (const auto& [d, tag] : {std::pair{s3(), std::string("s3")}, std::pair{s5(), std::string("s5")}}) {
      const UnitVectorField n = UnitVectorField::normalized_gradient(d.angle_function());
      const auto pts = regular(d);
      o.report(harmonicity_check(n, pts), tag + "_nu");
      o.report(critical_condition_check(n, pts), tag + "_critical");
    }
    return o;
  });

  criterion(10, "Ricci pinning QZ = 2nZ, rho(E,N) = 0, QJ = JQ", [] {
    Outcome o;
    for (const auto& [d, tag] : {std::pair{s3(), std::string("s3")}, std::pair{s5(), std::string("s5")}}) {
      o.report(reeb_ricci_check(d, all_points(d)), tag + "_QZ");
      const auto r = ricci_normal_check(d, regular(d));
      o.require(r.diagnostic("rho_EN_max") <= 1e-8, tag + "_rhoEN", r.diagnostic("rho_EN_max"));
      o.require(r.diagnostic("QJX_minus_JQX_max") <= 1e-8, tag + "_QJ", r.diagnostic("QJX_minus_JQX_max"));
    }
    return o;
  });

  criterion(11, "contact axioms, K-contact, Sasakian", [] {
    Outcome o;
    for (const auto& [d, tag] : {std::pair{s3(), std::string("s3")}, std::pair{s5(), std::string("s5")}}) {
      const auto pts = all_points(d);
      for (const auto& [s, name] : {std::pair{&d.alpha(), "alpha"}, std::pair{&d.beta(), "beta"}}) {
        const std::string t = tag + "_" + name;
        const auto vol = check_axiom_volume(*s, pts);
        o.require(vol.pass, t + "_vol_min", vol.diagnostic("min_abs_value"));
        o.report(check_axiom_ii(*s, pts), t + "_ii");
        o.report(check_axiom_iii(*s, pts), t + "_iii");
        o.report(check_kcontact(*s, pts), t + "_killing");
        o.report(check_sasakian(*s, pts), t + "_sasakian");
      }
    }
    return o;
  });

  criterion(12, "energy of the Reeb field on S^3 is 5 pi^2", [] {
    Outcome o;
    const auto d = s3();
    const UnitVectorField z = UnitVectorField::reeb(d.alpha());
    const double closed = 5.0 * std::numbers::pi * std::numbers::pi;
    const double floor = 1e-9 * closed;
    const EnergyEstimate a = energy(z, 3, 100000, 1);
    const EnergyEstimate b = energy(z, 3, 100000, 2);
    o.require(std::abs(a.value - closed) <= std::max(3.0 * a.std_error, floor), "seed1_gap", a.value - closed);
    o.require(std::abs(b.value - closed) <= std::max(3.0 * b.std_error, floor), "seed2_gap", b.value - closed);
    const double combined = std::hypot(a.std_error, b.std_error);
    o.require(std::abs(a.value - b.value) <= std::max(3.0 * combined, floor), "seed_gap", a.value - b.value);
    return o;
  });

  criterion(13, "property suites and negative controls", [] {
    Outcome o;
    std::mt19937_64 rng(kSeed);
    double compat = 0.0;
    double torsion = 0.0;
    double curv = 0.0;
    double eigen = 0.0;
    for (int dim : {3, 5, 7}) {
      const AmbientVectorField v = linear_field(random_matrix(dim + 1, rng));
      const AmbientVectorField w = linear_field(random_matrix(dim + 1, rng));
      Mat s = random_matrix(dim + 1, rng);
      s = 0.5 * (s + s.transpose());
      s -= (s.trace() / (dim + 1)) * Mat::Identity(dim + 1, dim + 1);
      const ScalarField q = ScalarField::quadratic_form("q", s);
      for (const auto& p : sample_points(dim, 100, kSeed + dim)) {
        const TangentVector u = random_tangent(p, rng);
        const TangentVector x = random_tangent(p, rng);
        const TangentVector y = random_tangent(p, rng);
        const auto pairing = [&](const JetVec& yy) { return ambient::dot(v(yy), w(yy)); };
        const double lhs = ambient::directional(pairing, ambient::lift(p.coords()), ambient::lift(u.vec())).value();
        compat = std::max(compat, std::abs(lhs - metric(cov_deriv(v, u), w.at(p)) - metric(v.at(p), cov_deriv(w, u))));
        torsion = std::max(torsion, (cov_deriv(w, v.at(p)) - cov_deriv(v, w.at(p)) - lie_bracket(v, w, p)).norm());
        curv = std::max(curv, (curvature(u, x, y, Route::numeric) - curvature(u, x, y, Route::analytic)).norm());
        eigen = std::max(eigen, std::abs(laplacian(q, p) - 2.0 * (dim + 1) * q(p)));
      }
    }
    o.require(compat <= 1e-8, "metric_compat", compat);
    o.require(torsion <= 1e-8, "torsion", torsion);
    o.require(curv <= 1e-8, "curvature", curv);
    o.require(eigen <= 1e-7, "eigenfunction", eigen);

    const ScalarField bumpy("x1 + x1 x2", [](const JetVec& y) { return y[0] + y[0] * y[1]; });
    const auto neg_t = check_transnormal(bumpy, kHeightB, sample_points(3, kSamples, kSeed));
    o.require(!neg_t.pass, "non_transnormal_max", neg_t.max);
    Mat g(4, 4);
    g << 1.0, 0.3, 0.0, 0.2, 0.3, -0.5, 0.4, 0.0, 0.0, 0.4, 0.2, -0.1, 0.2, 0.0, -0.1, 0.7;
    const UnitVectorField generic = UnitVectorField::normalized_gradient(ScalarField::quadratic_form("q", g));
    const auto neg_h = harmonicity_check(generic, sample_points(3, 100, kSeed));
    o.require(!neg_h.pass, "non_harmonic_max", neg_h.max);
    return o;
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
