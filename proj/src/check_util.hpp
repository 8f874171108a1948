#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "kontact/errors.hpp"
#include "kontact/manifold.hpp"
#include "kontact/parallel.hpp"
#include "kontact/report.hpp"

namespace kontact::detail {

/// Result of a check at one point; an empty residual marks a skipped point.
struct PointOutcome {
  std::optional<double> residual;
  bool flagged = false;
};

inline PointOutcome skipped() { return {}; }
inline PointOutcome residual(double r, bool flagged = false) { return {r, flagged}; }

/// Per-point generator; independent of thread scheduling.
inline std::mt19937_64 point_rng(std::uint64_t salt, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

/// Evaluates fn(index, point) over all points in parallel and reduces the
/// outcomes in point order. RegularityError marks the point skipped.
template <typename Fn>
ResidualAccumulator accumulate(std::span<const SpherePoint> points, Fn&& fn) {
  std::vector<PointOutcome> outcomes(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    try {
      outcomes[i] = fn(i, points[i]);
    } catch (const RegularityError&) {
      outcomes[i] = skipped();
    }
  });
  ResidualAccumulator acc;
  for (const PointOutcome& o : outcomes) {
    if (!o.residual) {
      acc.skip();
      continue;
    }
    acc.add(*o.residual);
    if (o.flagged) acc.flag();
  }
  return acc;
}

}  // namespace kontact::detail
