#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kontact/jet.hpp"

namespace kontact {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Point of the unit sphere S^m embedded in R^{m+1}.
class SpherePoint {
 public:
  /// Throws DegenerateInputError unless | |coords| - 1 | <= 1e-12.
  explicit SpherePoint(Vec coords);
  /// Radial projection of a nonzero ambient vector.
  static SpherePoint normalized(const Vec& v);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  int dim() const { return ambient_dim() - 1; }

 private:
  Vec coords_;
};

/// Tangent vector stored in its ambient representation.
class TangentVector {
 public:
  /// Throws DegenerateInputError if <vec, base> exceeds 1e-10.
  TangentVector(SpherePoint base, Vec vec);

  const SpherePoint& base() const { return base_; }
  const Vec& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-(const TangentVector& o) const;
  TangentVector operator*(double s) const;

 private:
  SpherePoint base_;
  Vec vec_;
};

using VectorFormula = std::function<JetVec(const JetVec&)>;

/// Vector field given by an ambient formula defined near the sphere.
///
/// Formulas are evaluated on Jet coordinates so any number of nested
/// directional derivatives can be taken exactly. A field flagged tangent must
/// satisfy <V(p), p> = 0 on the sphere; evaluation through at() projects
/// anyway.
class AmbientVectorField {
 public:
  AmbientVectorField(std::string label, VectorFormula formula, bool tangent = true);

  JetVec operator()(const JetVec& y) const { return formula_(y); }
  Vec value(const Vec& y) const;
  TangentVector at(const SpherePoint& p) const;

  bool tangent() const { return tangent_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  VectorFormula formula_;
  bool tangent_;
};

/// Orthogonal, skew-symmetric matrix squaring to -I on R^{m+1}.
class OrthoComplexStructure {
 public:
  /// Validates the three defining identities to 1e-12.
  explicit OrthoComplexStructure(Mat mat);
  /// Block-diagonal structure with signs[k] * j in block k, where
  /// j = [[0, 1], [-1, 0]] maps (x, y) to (y, -x).
  static OrthoComplexStructure from_blocks(std::span<const int> signs);

  const Mat& matrix() const { return mat_; }
  int ambient_dim() const { return static_cast<int>(mat_.rows()); }

  JetVec apply(const JetVec& y) const;

 private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  Mat mat_;
  std::vector<Entry> nonzeros_;
};

/// Orthonormal tangent frame at a point.
struct Frame {
  SpherePoint base;
  std::vector<TangentVector> vectors;

  /// Columns are the ambient frame vectors.
  Mat matrix() const;
};

enum class Route { analytic, numeric };

TangentVector project(const SpherePoint& p, const Vec& v);
double metric(const TangentVector& u, const TangentVector& v);

/// Levi-Civita connection via the Gauss formula: project(p, D_u V).
TangentVector cov_deriv(const AmbientVectorField& field, const TangentVector& u);
TangentVector lie_bracket(const AmbientVectorField& v, const AmbientVectorField& w,
                          const SpherePoint& p);

/// R(u,v)w = nabla_u nabla_v w - nabla_v nabla_u w - nabla_[u,v] w.
/// The analytic route is the constant-curvature formula; the numeric route
/// differentiates projected-constant extensions twice.
TangentVector curvature(const TangentVector& u, const TangentVector& v, const TangentVector& w,
                        Route route = Route::analytic);
/// rho(u,v) = sum_i g(R(E_i,u)v, E_i); analytic route is (m-1) g(u,v).
double ricci(const TangentVector& u, const TangentVector& v, Route route = Route::analytic);
/// Q with rho(u,v) = g(Qu, v).
TangentVector ricci_operator(const TangentVector& u, Route route = Route::analytic);

/// Gram-Schmidt on the seeds followed by completion with projected ambient
/// basis vectors in index order. Throws DegenerateInputError when the seeds'
/// Gram determinant falls below 1e-10.
Frame gram_schmidt_frame(const SpherePoint& p, std::span<const TangentVector> seeds);
Frame gram_schmidt_frame(const SpherePoint& p);

/// Flips the last vector if needed so det[p, E_1, ..., E_m] > 0.
Frame oriented(Frame frame);

using PointPredicate = std::function<bool(const SpherePoint&)>;

/// Deterministic uniform samples on S^dim (normalized Gaussian tuples).
/// Points for which `exclude` returns true are redrawn; throws
/// SamplingExhaustedError when more than 99% of draws are rejected.
std::vector<SpherePoint> sample_points(int dim, std::size_t count, std::uint64_t seed,
                                       const PointPredicate& exclude = {});

/// Uniformly distributed unit tangent vector at p.
template <typename Rng>
TangentVector random_tangent(const SpherePoint& p, Rng& rng);

/// Volume of the unit sphere S^m.
double sphere_volume(int m);

// Jet-level primitives shared by all modules. Points y may lie slightly off
// the sphere (they carry infinitesimal displacements); projections use y/|y|.
namespace ambient {

JetVec lift(const Vec& v);
Vec values(const JetVec& v);
Jet dot(const JetVec& a, const JetVec& b);
Jet norm(const JetVec& a);
JetVec scaled(const JetVec& a, const Jet& s);
JetVec sum(const JetVec& a, const JetVec& b);
JetVec difference(const JetVec& a, const JetVec& b);
/// v - <v, y^> y^ with y^ = y/|y|.
JetVec project(const JetVec& y, const JetVec& v);
/// D_u F(y), the first-order coefficient of F(y + eps u).
JetVec directional(const VectorFormula& formula, const JetVec& y, const JetVec& u);
Jet directional(const std::function<Jet(const JetVec&)>& formula, const JetVec& y,
                const JetVec& u);
JetVec cov_deriv(const AmbientVectorField& field, const JetVec& y, const JetVec& u);
/// Field y -> nabla_{W(y)} V(y).
AmbientVectorField cov_deriv_field(const AmbientVectorField& v, const AmbientVectorField& w);
/// Field y -> P_y c for a constant ambient vector c.
AmbientVectorField projected_constant(const Vec& c);

}  // namespace ambient

template <typename Rng>
TangentVector random_tangent(const SpherePoint& p, Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    Vec g(p.ambient_dim());
    for (auto& x : g) x = normal(rng);
    TangentVector t = project(p, g);
    const double len = t.norm();
    if (len > 1e-6) return t * (1.0 / len);
  }
}

}  // namespace kontact
