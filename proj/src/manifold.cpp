#include "kontact/manifold.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "kontact/errors.hpp"

namespace kontact {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kTangentTol = 1e-10;
constexpr double kSameBaseTol = 1e-12;
constexpr double kSeedGramTol = 1e-10;
constexpr double kCompletionTol = 1e-8;

void require_same_base(const SpherePoint& a, const SpherePoint& b) {
  if (a.ambient_dim() != b.ambient_dim() || (a.coords() - b.coords()).norm() > kSameBaseTol) {
    throw BaseMismatchError("tangent vectors attached to different base points");
  }
}

Vec orthogonalize(Vec v, const std::vector<Vec>& basis) {
  // Two passes of modified Gram-Schmidt keep orthogonality at machine level.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& b : basis) v -= b.dot(v) * b;
  }
  return v;
}

}  // namespace

int free_slot(unsigned used) {
  for (int s = 0; s < Jet::kSlots; ++s) {
    if (!(used & (1u << s))) return s;
  }
  throw Error("differentiation nesting exceeds the available infinitesimal slots");
}

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2 || std::abs(coords_.norm() - 1.0) > kUnitTol) {
    throw DegenerateInputError("sphere point coordinates must have unit norm");
  }
}

SpherePoint SpherePoint::normalized(const Vec& v) {
  const double len = v.norm();
  if (len == 0.0) throw DegenerateInputError("cannot normalize the zero vector");
  return SpherePoint(v / len);
}

TangentVector::TangentVector(SpherePoint base, Vec vec) : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.coords().size()) {
    throw DegenerateInputError("tangent vector dimension does not match its base point");
  }
  if (std::abs(vec_.dot(base_.coords())) > kTangentTol * std::max(1.0, vec_.norm())) {
    throw DegenerateInputError("vector is not tangent to the sphere at its base point");
  }
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  require_same_base(base_, o.base_);
  return TangentVector(base_, vec_ + o.vec_);
}

TangentVector TangentVector::operator-(const TangentVector& o) const {
  require_same_base(base_, o.base_);
  return TangentVector(base_, vec_ - o.vec_);
}

TangentVector TangentVector::operator*(double s) const { return TangentVector(base_, vec_ * s); }

AmbientVectorField::AmbientVectorField(std::string label, VectorFormula formula, bool tangent)
    : label_(std::move(label)), formula_(std::move(formula)), tangent_(tangent) {}

Vec AmbientVectorField::value(const Vec& y) const { return ambient::values(formula_(ambient::lift(y))); }

TangentVector AmbientVectorField::at(const SpherePoint& p) const {
  return project(p, value(p.coords()));
}

OrthoComplexStructure::OrthoComplexStructure(Mat mat) : mat_(std::move(mat)) {
  const auto n = mat_.rows();
  if (n != mat_.cols() || n < 2 || n % 2 != 0) {
    throw DegenerateInputError("complex structure must be a square matrix of even size");
  }
  const Mat id = Mat::Identity(n, n);
  if ((mat_ * mat_.transpose() - id).cwiseAbs().maxCoeff() > kUnitTol ||
      (mat_ * mat_ + id).cwiseAbs().maxCoeff() > kUnitTol ||
      (mat_.transpose() + mat_).cwiseAbs().maxCoeff() > kUnitTol) {
    throw DegenerateInputError("matrix is not an orthogonal complex structure");
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (mat_(r, c) != 0.0) nonzeros_.push_back({r, c, mat_(r, c)});
    }
  }
}

OrthoComplexStructure OrthoComplexStructure::from_blocks(std::span<const int> signs) {
  const auto n = static_cast<Eigen::Index>(2 * signs.size());
  Mat m = Mat::Zero(n, n);
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) {
      throw DegenerateInputError("block signs must be +1 or -1");
    }
    const auto i = static_cast<Eigen::Index>(2 * k);
    m(i, i + 1) = signs[k];
    m(i + 1, i) = -signs[k];
  }
  return OrthoComplexStructure(std::move(m));
}

JetVec OrthoComplexStructure::apply(const JetVec& y) const {
  JetVec out(y.size());
  for (const Entry& e : nonzeros_) out[e.row] += e.value * y[e.col];
  return out;
}

Mat Frame::matrix() const {
  Mat m(base.ambient_dim(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i].vec();
  return m;
}

TangentVector project(const SpherePoint& p, const Vec& v) {
  const Vec& x = p.coords();
  Vec t = v - v.dot(x) * x;
  t -= t.dot(x) * x;
  return TangentVector(p, std::move(t));
}

double metric(const TangentVector& u, const TangentVector& v) {
  require_same_base(u.base(), v.base());
  return u.vec().dot(v.vec());
}

TangentVector cov_deriv(const AmbientVectorField& field, const TangentVector& u) {
  if (!field.tangent()) {
    throw PreconditionError("covariant derivative requires a tangent vector field: " + field.label());
  }
  const JetVec y = ambient::lift(u.base().coords());
  const JetVec d = ambient::directional(field, y, ambient::lift(u.vec()));
  return project(u.base(), ambient::values(d));
}

TangentVector lie_bracket(const AmbientVectorField& v, const AmbientVectorField& w,
                          const SpherePoint& p) {
  const JetVec y = ambient::lift(p.coords());
  const JetVec vp = v(y);
  const JetVec wp = w(y);
  const JetVec bracket =
      ambient::difference(ambient::directional(w, y, vp), ambient::directional(v, y, wp));
  return project(p, ambient::values(bracket));
}

TangentVector curvature(const TangentVector& u, const TangentVector& v, const TangentVector& w,
                        Route route) {
  require_same_base(u.base(), v.base());
  require_same_base(u.base(), w.base());
  const SpherePoint& p = u.base();
  if (route == Route::analytic) {
    return TangentVector(p, metric(v, w) * u.vec() - metric(u, w) * v.vec());
  }
  const auto ue = ambient::projected_constant(u.vec());
  const auto ve = ambient::projected_constant(v.vec());
  const auto we = ambient::projected_constant(w.vec());
  const auto nabla_v_w = ambient::cov_deriv_field(we, ve);
  const auto nabla_u_w = ambient::cov_deriv_field(we, ue);
  const TangentVector first = cov_deriv(nabla_v_w, u);
  const TangentVector second = cov_deriv(nabla_u_w, v);
  const TangentVector bracket = lie_bracket(ue, ve, p);
  const TangentVector third = cov_deriv(we, bracket);
  return first - second - third;
}

double ricci(const TangentVector& u, const TangentVector& v, Route route) {
  require_same_base(u.base(), v.base());
  const SpherePoint& p = u.base();
  if (route == Route::analytic) return (p.dim() - 1) * metric(u, v);
  const Frame frame = gram_schmidt_frame(p);
  double sum = 0.0;
  for (const TangentVector& e : frame.vectors) sum += metric(curvature(e, u, v, Route::numeric), e);
  return sum;
}

TangentVector ricci_operator(const TangentVector& u, Route route) {
  const SpherePoint& p = u.base();
  const Frame frame = gram_schmidt_frame(p);
  Vec q = Vec::Zero(p.ambient_dim());
  for (const TangentVector& e : frame.vectors) q += ricci(u, e, route) * e.vec();
  return TangentVector(p, std::move(q));
}

Frame gram_schmidt_frame(const SpherePoint& p, std::span<const TangentVector> seeds) {
  const int m = p.dim();
  if (static_cast<int>(seeds.size()) > m) throw DegenerateInputError("more seeds than tangent dimensions");
  if (!seeds.empty()) {
    Mat s(p.ambient_dim(), static_cast<Eigen::Index>(seeds.size()));
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      require_same_base(p, seeds[i].base());
      s.col(static_cast<Eigen::Index>(i)) = seeds[i].vec();
    }
    const Mat gram = s.transpose() * s;
    if (gram.determinant() < kSeedGramTol) {
      throw DegenerateInputError("frame seeds are linearly dependent");
    }
  }
  std::vector<Vec> basis;
  basis.reserve(m);
  auto accept = [&](const Vec& candidate, double threshold) {
    Vec r = orthogonalize(candidate - candidate.dot(p.coords()) * p.coords(), basis);
    r -= r.dot(p.coords()) * p.coords();
    const double len = r.norm();
    if (len <= threshold) return false;
    basis.push_back(r / len);
    return true;
  };
  for (const TangentVector& s : seeds) {
    if (!accept(s.vec(), 0.0)) throw DegenerateInputError("frame seeds are linearly dependent");
  }
  for (int k = 0; k <= m && static_cast<int>(basis.size()) < m; ++k) {
    accept(Vec::Unit(p.ambient_dim(), k), kCompletionTol);
  }
  if (static_cast<int>(basis.size()) != m) throw DegenerateInputError("frame completion failed");
  Frame frame{p, {}};
  frame.vectors.reserve(m);
  for (Vec& b : basis) frame.vectors.emplace_back(p, std::move(b));
  return frame;
}

Frame gram_schmidt_frame(const SpherePoint& p) { return gram_schmidt_frame(p, {}); }

Frame oriented(Frame frame) {
  Mat full(frame.base.ambient_dim(), frame.base.ambient_dim());
  full.col(0) = frame.base.coords();
  full.rightCols(frame.base.dim()) = frame.matrix();
  if (full.determinant() < 0.0) {
    TangentVector& last = frame.vectors.back();
    last = last * -1.0;
  }
  return frame;
}

std::vector<SpherePoint> sample_points(int dim, std::size_t count, std::uint64_t seed,
                                       const PointPredicate& exclude) {
  if (dim < 1) throw DegenerateInputError("sphere dimension must be positive");
  if (count < 1) throw DegenerateInputError("sample count must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SpherePoint> points;
  points.reserve(count);
  std::size_t attempts = 0;
  std::size_t rejected = 0;
  while (points.size() < count) {
    Vec g(dim + 1);
    for (auto& x : g) x = normal(rng);
    if (g.norm() < 1e-12) continue;
    ++attempts;
    SpherePoint p = SpherePoint::normalized(g);
    if (exclude && exclude(p)) {
      ++rejected;
      if (attempts >= 1000 && rejected * 100 > attempts * 99) {
        throw SamplingExhaustedError("exclusion predicate rejects more than 99% of draws");
      }
      continue;
    }
    points.push_back(std::move(p));
  }
  return points;
}

double sphere_volume(int m) {
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

namespace ambient {

JetVec lift(const Vec& v) { return JetVec(v.begin(), v.end()); }

Vec values(const JetVec& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value();
  return out;
}

Jet dot(const JetVec& a, const JetVec& b) {
  Jet s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Jet norm(const JetVec& a) { return sqrt(dot(a, a)); }

JetVec scaled(const JetVec& a, const Jet& s) {
  JetVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

JetVec sum(const JetVec& a, const JetVec& b) {
  JetVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

JetVec difference(const JetVec& a, const JetVec& b) {
  JetVec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

JetVec project(const JetVec& y, const JetVec& v) {
  const Jet coeff = dot(v, y) / dot(y, y);
  JetVec out(v);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= coeff * y[i];
  return out;
}

JetVec directional(const VectorFormula& formula, const JetVec& y, const JetVec& u) {
  const int slot = free_slot(support_of(y) | support_of(u));
  const Jet eps = Jet::infinitesimal(slot);
  JetVec shifted(y);
  for (std::size_t i = 0; i < y.size(); ++i) shifted[i] += eps * u[i];
  JetVec out = formula(shifted);
  for (Jet& x : out) x = x.derivative(slot);
  return out;
}

Jet directional(const std::function<Jet(const JetVec&)>& formula, const JetVec& y,
                const JetVec& u) {
  const int slot = free_slot(support_of(y) | support_of(u));
  const Jet eps = Jet::infinitesimal(slot);
  JetVec shifted(y);
  for (std::size_t i = 0; i < y.size(); ++i) shifted[i] += eps * u[i];
  return formula(shifted).derivative(slot);
}

JetVec cov_deriv(const AmbientVectorField& field, const JetVec& y, const JetVec& u) {
  return project(y, directional(field, y, u));
}

AmbientVectorField cov_deriv_field(const AmbientVectorField& v, const AmbientVectorField& w) {
  return AmbientVectorField("nabla_{" + w.label() + "}" + v.label(),
                            [v, w](const JetVec& y) { return cov_deriv(v, y, w(y)); });
}

AmbientVectorField projected_constant(const Vec& c) {
  return AmbientVectorField("P(const)", [c = lift(c)](const JetVec& y) { return project(y, c); });
}

}  // namespace ambient

}  // namespace kontact
