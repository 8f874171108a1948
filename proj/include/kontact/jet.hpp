#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <span>
#include <vector>

namespace kontact {

/// Truncated multivariate Taylor number in kSlots nilpotent infinitesimals
/// eps_0..eps_3 with eps_i^2 = 0.
///
/// The coefficient of the monomial prod_{i in S} eps_i lives at index S (a
/// bitmask), so seeding independent directions in distinct slots yields every
/// mixed directional derivative up to order kSlots in a single evaluation.
/// Nested differentiation (e.g. the derivative of a field that internally
/// takes a gradient) works by picking a slot unused by the inputs; see
/// free_slot().
class Jet {
 public:
  static constexpr int kSlots = 4;
  static constexpr unsigned kTerms = 1u << kSlots;

  constexpr Jet() = default;
  constexpr Jet(double value) { c_[0] = value; }  // NOLINT: implicit by design of formulas

  /// The pure infinitesimal eps_slot.
  static Jet infinitesimal(int slot) {
    Jet e;
    e.c_[1u << slot] = 1.0;
    e.support_ = 1u << slot;
    return e;
  }

  double value() const { return c_[0]; }
  double coeff(unsigned mask) const { return c_[mask]; }
  unsigned support() const { return support_; }

  /// Coefficient of eps_slot, itself a Jet in the remaining infinitesimals.
  Jet derivative(int slot) const {
    const unsigned bit = 1u << slot;
    Jet d;
    if (!(support_ & bit)) return d;
    d.support_ = support_ & ~bit;
    for_each_submask(d.support_, [&](unsigned s) { d.c_[s] = c_[s | bit]; });
    return d;
  }

  Jet operator-() const {
    Jet r = *this;
    for_each_submask(support_, [&](unsigned s) { r.c_[s] = -c_[s]; });
    return r;
  }

  Jet& operator+=(const Jet& o) {
    support_ |= o.support_;
    for_each_submask(o.support_, [&](unsigned s) { c_[s] += o.c_[s]; });
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    support_ |= o.support_;
    for_each_submask(o.support_, [&](unsigned s) { c_[s] -= o.c_[s]; });
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }
  Jet& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  Jet& operator*=(double v) {
    for_each_submask(support_, [&](unsigned s) { c_[s] *= v; });
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a += -b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a *= 1.0 / b; }
  friend Jet operator/(double a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.support_ = a.support_ | b.support_;
    for_each_submask(r.support_, [&](unsigned s) {
      double acc = 0.0;
      for_each_submask(s, [&](unsigned t) { acc += a.c_[t] * b.c_[s ^ t]; });
      r.c_[s] = acc;
    });
    return r;
  }

  friend bool operator<(const Jet& a, const Jet& b) { return a.value() < b.value(); }
  friend bool operator>(const Jet& a, const Jet& b) { return a.value() > b.value(); }

  friend Jet reciprocal(const Jet& x) {
    const double x0 = x.value();
    return x.compose([x0](int k, double prev) { return k == 0 ? 1.0 / x0 : -prev / x0; });
  }
  friend Jet sqrt(const Jet& x) {
    const double x0 = x.value();
    return x.compose([x0](int k, double prev) {
      return k == 0 ? std::sqrt(x0) : prev * (0.5 - (k - 1)) / (k * x0);
    });
  }
  friend Jet sin(const Jet& x) { return x.trig(std::sin(x.value()), std::cos(x.value())); }
  friend Jet cos(const Jet& x) { return x.trig(std::cos(x.value()), -std::sin(x.value())); }

 private:
  template <typename F>
  static void for_each_submask(unsigned mask, F&& f) {
    for (unsigned s = mask;; s = (s - 1) & mask) {
      f(s);
      if (s == 0) break;
    }
  }

  // Sum_k t_k n^k where n = x - x0 is nilpotent and t_k is the k-th Taylor
  // coefficient, produced recursively by next(k, t_{k-1}).
  template <typename Next>
  Jet compose(Next&& next) const {
    Jet nil = *this;
    nil.c_[0] = 0.0;
    double t = next(0, 0.0);
    Jet result(t);
    Jet power(1.0);
    const int order = std::popcount(support_);
    for (int k = 1; k <= order; ++k) {
      power = power * nil;
      t = next(k, t);
      result += power * t;
    }
    return result;
  }

  Jet trig(double f0, double f1) const {
    // Taylor coefficients of sin/cos cycle through (f0, f1, -f0, -f1) / k!.
    const std::array<double, 4> cycle{f0, f1, -f0, -f1};
    double factorial = 1.0;
    return compose([&](int k, double) {
      if (k > 0) factorial *= k;
      return cycle[k % 4] / factorial;
    });
  }

  std::array<double, kTerms> c_{};
  unsigned support_ = 0;
};

using JetVec = std::vector<Jet>;

/// Union of the infinitesimal slots any entry depends on.
inline unsigned support_of(std::span<const Jet> v) {
  unsigned s = 0;
  for (const Jet& x : v) s |= x.support();
  return s;
}

/// Lowest slot absent from `used`; throws when all slots are taken.
int free_slot(unsigned used);

}  // namespace kontact
