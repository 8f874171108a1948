#include "kontact/report.hpp"

#include <cmath>
#include <limits>

namespace kontact {

double ResidualReport::diagnostic(const std::string& key) const {
  for (const auto& [name, value] : diagnostics) {
    if (name == key) return value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void ResidualAccumulator::add(double residual) {
  const double r = std::isnan(residual) ? std::numeric_limits<double>::infinity() : std::abs(residual);
  ++count_;
  sum_ += r;
  if (r > max_) max_ = r;
}

void ResidualAccumulator::merge(const ResidualAccumulator& other) {
  count_ += other.count_;
  skipped_ += other.skipped_;
  flagged_ += other.flagged_;
  sum_ += other.sum_;
  if (other.max_ > max_) max_ = other.max_;
}

ResidualReport ResidualAccumulator::finish(std::string name, double tolerance,
                                           std::string provenance) const {
  ResidualReport r;
  r.check_name = std::move(name);
  r.count = count_;
  r.skipped = skipped_;
  r.flagged = flagged_;
  r.max = max_;
  r.mean = count_ > 0 ? sum_ / static_cast<double>(count_) : 0.0;
  r.tolerance = tolerance;
  r.pass = max_ <= tolerance;
  r.provenance = std::move(provenance);
  return r;
}

}  // namespace kontact
