#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kontact/contact.hpp"
#include "kontact/double_kcontact.hpp"
#include "kontact/harmonic.hpp"
#include "kontact/report.hpp"

namespace kontact {

enum class Manifold { s3, s5, s7 };
enum class OutputFormat { json, csv };

/// Throws UsageError for names other than s3, s5, s7.
Manifold parse_manifold(std::string_view name);
std::string manifold_name(Manifold m);
int manifold_dim(Manifold m);

OutputFormat parse_format(std::string_view name);

/// Generator blocks of the shipped example pair. The first block of J2 is
/// reversed relative to J1; all others agree.
std::vector<int> shipped_j1_blocks(Manifold m);
std::vector<int> shipped_j2_blocks(Manifold m);
DoubleKContact shipped_pair(Manifold m);

inline constexpr double kMaxToleranceOverride = 1e-3;

struct SuiteConfig {
  Manifold manifold = Manifold::s3;
  std::size_t samples = 500;
  std::uint64_t seed = 42;
  std::map<std::string, double> tol_overrides;
  double exclusion = 0.9;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  bool timestamps = false;
};

/// Throws UsageError on samples == 0, exclusion outside (0,1), or an override
/// that is negative, non-finite or above kMaxToleranceOverride.
void validate(const SuiteConfig& config);

/// Parses "name=value" into the override map (UsageError on malformed input).
void add_tolerance_override(SuiteConfig& config, std::string_view assignment);

/// Every check for the configured manifold, in a fixed order. Overrides are
/// matched first on the full report name, then on the part before '['.
std::vector<ResidualReport> run_suite(const SuiteConfig& config);

bool all_pass(const std::vector<ResidualReport>& reports);

/// Closed form of E(Reeb) on S^m: (m + 2n)/2 * Vol(S^m).
double reeb_energy_closed_form(int dim);

/// Sign conventions fixed across the library, as a JSON object.
std::string convention_ledger_json();
/// Generator blocks, sigma signs, conventions and golden constants.
std::string describe(Manifold m);

/// {config, convention_ledger, reports}; numbers carry 17 significant digits.
std::string reports_to_json(const SuiteConfig& config, const std::vector<ResidualReport>& reports);
/// Columns check_name,count,skipped,max,mean,tolerance,pass.
std::string reports_to_csv(const std::vector<ResidualReport>& reports);

/// {dimension, J_matrix, sigma}.
std::string structure_descriptor(const ContactMetricStructure& s);
/// Rebuilds the structure; throws ConstructionError when the stored sigma
/// disagrees with the one selected at build time.
ContactMetricStructure structure_from_descriptor(std::string_view json_text);

/// "reeb" or "normal" (normalized gradient of the angle function restricted
/// to |f| <= exclusion). Output is a JSON object.
std::string energy_report(Manifold m, std::string_view field, std::size_t samples, std::uint64_t seed,
                          double exclusion);

}  // namespace kontact
