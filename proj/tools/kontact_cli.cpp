// kontact: verify the double K-contact identities on round spheres.
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage
// errors (unknown manifold, malformed flags, invalid tolerance overrides).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kontact/errors.hpp"
#include "kontact/suite.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitUsage;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of double K-contact structures on round spheres"};
  app.require_subcommand(1);

  std::string manifold;
  std::size_t samples = 500;
  std::uint64_t seed = 42;
  double exclusion = 0.9;
  std::vector<std::string> tolerances;
  std::string out_path;
  std::string format = "json";
  bool timestamps = false;
  std::string field = "reeb";

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("manifold", manifold, "s3, s5 or s7")->required();
  verify->add_option("--samples", samples, "Sample points per check");
  verify->add_option("--seed", seed, "Sampling seed");
  verify->add_option("--exclusion", exclusion, "Cutoff on |f| for regular points");
  verify->add_option("--tol", tolerances, "Tolerance override name=value (repeatable)");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");
  verify->add_option("--format", format, "json or csv");
  verify->add_flag("--timestamps", timestamps, "Include a generation timestamp in JSON output");

  auto* describe = app.add_subcommand("describe", "Print the shipped structure pair and conventions");
  describe->add_option("manifold", manifold, "s3, s5 or s7")->required();

  auto* energy = app.add_subcommand("energy", "Monte Carlo energy of a unit vector field");
  energy->add_option("manifold", manifold, "s3, s5 or s7")->required();
  energy->add_option("--field", field, "reeb or normal");
  energy->add_option("--samples", samples, "Number of samples");
  energy->add_option("--seed", seed, "Sampling seed");
  energy->add_option("--exclusion", exclusion, "Domain |f| <= exclusion for the normal field");
  energy->add_option("--out", out_path, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const kontact::Manifold m = kontact::parse_manifold(manifold);
    if (*describe) return write_output(kontact::describe(m), out_path);
    if (*energy) return write_output(kontact::energy_report(m, field, samples, seed, exclusion), out_path);

    kontact::SuiteConfig config;
    config.manifold = m;
    config.samples = samples;
    config.seed = seed;
    config.exclusion = exclusion;
    config.output_path = out_path;
    config.format = kontact::parse_format(format);
    config.timestamps = timestamps;
    for (const std::string& t : tolerances) kontact::add_tolerance_override(config, t);
    kontact::validate(config);

    const auto reports = kontact::run_suite(config);
    const std::string text = config.format == kontact::OutputFormat::json
                                 ? kontact::reports_to_json(config, reports)
                                 : kontact::reports_to_csv(reports);
    if (const int rc = write_output(text, out_path); rc != 0) return rc;
    bool ok = true;
    for (const auto& r : reports) {
      if (r.pass) continue;
      ok = false;
      std::fprintf(stderr, "FAIL %s: max %.3e > tolerance %.3e\n", r.check_name.c_str(), r.max, r.tolerance);
    }
    return ok ? 0 : kExitFail;
  } catch (const kontact::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kontact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
