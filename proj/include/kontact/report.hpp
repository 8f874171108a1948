#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace kontact {

/// Aggregate of per-point residuals for one named check.
///
/// `pass` is always `max <= tolerance`; `count + skipped` equals the number
/// of attempted evaluations. `flagged` counts evaluated points that needed a
/// numerical guard (they are still included in max/mean).
struct ResidualReport {
  std::string check_name;
  std::size_t count = 0;
  std::size_t skipped = 0;
  std::size_t flagged = 0;
  double max = 0.0;
  double mean = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string provenance;
  std::vector<std::pair<std::string, double>> diagnostics;

  /// Value of a named diagnostic, or NaN when absent.
  double diagnostic(const std::string& key) const;
};

class ResidualAccumulator {
 public:
  /// NaN residuals count as +inf so they can never pass.
  void add(double residual);
  void skip() { ++skipped_; }
  void flag() { ++flagged_; }
  void merge(const ResidualAccumulator& other);

  std::size_t count() const { return count_; }
  double max() const { return max_; }

  ResidualReport finish(std::string name, double tolerance, std::string provenance) const;

 private:
  std::size_t count_ = 0;
  std::size_t skipped_ = 0;
  std::size_t flagged_ = 0;
  double max_ = 0.0;
  double sum_ = 0.0;
};

}  // namespace kontact
