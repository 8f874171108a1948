#include "kontact/suite.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numbers>
#include <sstream>

#include "kontact/errors.hpp"
#include "kontact/scalar_field.hpp"

namespace kontact {

using nlohmann::json;

namespace {

constexpr std::uint64_t kRegularSeedOffset = 0x9e37'79b9;
constexpr double kFitTolerance = 1e-6;

std::string format_number(double v) {
  if (std::isnan(v)) return "\"NaN\"";
  if (std::isinf(v)) return v > 0 ? "\"Infinity\"" : "\"-Infinity\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// nlohmann's own dump prints the shortest round-trip form; the report format
// fixes 17 significant digits instead.
void write_json(std::ostringstream& out, const json& value, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(it.key()).dump() << ": ";
        write_json(out, it.value(), indent, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out << ",\n";
        out << pad;
        write_json(out, value[i], indent, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      out << format_number(value.get<double>());
      return;
    default:
      out << value.dump();
  }
}

std::string dump(const json& value) {
  std::ostringstream out;
  write_json(out, value, 2, 0);
  out << "\n";
  return out.str();
}

json report_json(const ResidualReport& r) {
  json diag = json::object();
  for (const auto& [key, v] : r.diagnostics) diag[key] = v;
  // nlohmann keeps object keys sorted; the schema order is not significant.
  return json{{"check_name", r.check_name}, {"count", r.count},     {"skipped", r.skipped},
              {"flagged", r.flagged},       {"max", r.max},         {"mean", r.mean},
              {"tolerance", r.tolerance},   {"pass", r.pass},       {"provenance", r.provenance},
              {"diagnostics", diag}};
}

json ledger() {
  return json{
      {"curvature", "R(u,v)w = g(v,w)u - g(u,w)v; sectional curvature +1"},
      {"ricci", "rho(u,v) = sum_i g(R(E_i,u)v, E_i) = (m-1) g(u,v)"},
      {"laplacian", "Lap f = -div grad f (nonnegative spectrum); Lap of y^T S y = 2(m+1) f - 2 tr S"},
      {"exterior_derivative", "d alpha(A,B) = A alpha(B) - B alpha(A) - alpha([A,B]) (no 1/2)"},
      {"phi", "phi u = sigma (J u + alpha(u) p), sigma fixed by d alpha(A,B) = 2 g(A, phi B)"},
      {"shape_operator", "A_Z u = -nabla_u Z; mean curvature h = trace of A_N on N^perp"},
      {"phi_pairing", "grad f = 2 phi_alpha(X) = 2 phi_beta(Z); both pairings hold; J phi = phi_alpha o phi_beta"},
      {"generator_block", "j = [[0,1],[-1,0]], (x,y) -> (y,-x)"},
  };
}

json blocks_json(const std::optional<std::vector<int>>& blocks) {
  return blocks ? json(*blocks) : json(nullptr);
}

json descriptor_json(const ContactMetricStructure& s) {
  const Mat& j = s.generator().matrix();
  json rows = json::array();
  for (Eigen::Index r = 0; r < j.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < j.cols(); ++c) row.push_back(j(r, c));
    rows.push_back(row);
  }
  return json{{"dimension", s.dim()}, {"J_matrix", rows}, {"sigma", s.sigma()}};
}

std::string base_name(const std::string& name) { return name.substr(0, name.find('[')); }

ResidualReport renamed(ResidualReport r, std::string name) {
  r.check_name = std::move(name);
  return r;
}

ResidualReport energy_check(const ContactMetricStructure& s, std::size_t samples, std::uint64_t seed) {
  const EnergyEstimate e = energy(UnitVectorField::reeb(s), s.dim(), samples, seed);
  const double closed = reeb_energy_closed_form(s.dim());
  ResidualAccumulator acc;
  acc.add(e.value - closed);
  const double tol = std::max(3.0 * e.std_error, 1e-9 * closed);
  ResidualReport r = acc.finish("energy", tol, "E(Z) = 1/2 int tr L_Z dV for the Reeb field");
  r.diagnostics = {{"estimate", e.value},
                   {"std_error", e.std_error},
                   {"closed_form", closed},
                   {"samples", static_cast<double>(e.samples)}};
  return r;
}

ResidualReport isoparametric_fit_check(const ScalarField& f, int n, std::span<const SpherePoint> points) {
  const AffineFit fit = fit_affine_profile(f, points);
  const IsoparametricProfile profile{[fit](double t) { return fit.slope * t + fit.offset; }};
  ResidualReport r = check_isoparametric(f, profile, points, kFitTolerance);
  r.check_name = "isoparametric_fit";
  r.provenance = "Lap f is an affine function of f";
  r.diagnostics = {{"slope", fit.slope}, {"offset", fit.offset}, {"expected_slope", 4.0 * n + 4.0}};
  return r;
}

}  // namespace

Manifold parse_manifold(std::string_view name) {
  if (name == "s3") return Manifold::s3;
  if (name == "s5") return Manifold::s5;
  if (name == "s7") return Manifold::s7;
  throw UsageError("unknown manifold '" + std::string(name) + "' (expected s3, s5 or s7)");
}

std::string manifold_name(Manifold m) {
  switch (m) {
    case Manifold::s3: return "s3";
    case Manifold::s5: return "s5";
    case Manifold::s7: return "s7";
  }
  return "?";
}

int manifold_dim(Manifold m) {
  switch (m) {
    case Manifold::s3: return 3;
    case Manifold::s5: return 5;
    case Manifold::s7: return 7;
  }
  return 0;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw UsageError("unknown format '" + std::string(name) + "' (expected json or csv)");
}

std::vector<int> shipped_j1_blocks(Manifold m) {
  return std::vector<int>(static_cast<std::size_t>((manifold_dim(m) + 1) / 2), 1);
}

std::vector<int> shipped_j2_blocks(Manifold m) {
  std::vector<int> b = shipped_j1_blocks(m);
  b.front() = -1;
  return b;
}

DoubleKContact shipped_pair(Manifold m) {
  const auto j1 = shipped_j1_blocks(m);
  const auto j2 = shipped_j2_blocks(m);
  return DoubleKContact::from_blocks(j1, j2);
}

void validate(const SuiteConfig& config) {
  if (config.samples < 1) throw UsageError("--samples must be at least 1");
  if (!(config.exclusion > 0.0 && config.exclusion < 1.0)) {
    throw UsageError("--exclusion must lie in (0, 1)");
  }
  for (const auto& [name, tol] : config.tol_overrides) {
    if (!std::isfinite(tol) || tol < 0.0 || tol > kMaxToleranceOverride) {
      throw UsageError("tolerance override for '" + name + "' must lie in [0, 1e-3]");
    }
  }
}

void add_tolerance_override(SuiteConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == assignment.size()) {
    throw UsageError("--tol expects name=value, got '" + std::string(assignment) + "'");
  }
  const std::string value(assignment.substr(eq + 1));
  std::size_t used = 0;
  double tol = 0.0;
  try {
    tol = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw UsageError("--tol value '" + value + "' is not a number");
  config.tol_overrides[std::string(assignment.substr(0, eq))] = tol;
}

std::vector<ResidualReport> run_suite(const SuiteConfig& config) {
  validate(config);
  const int dim = manifold_dim(config.manifold);
  const DoubleKContact d = shipped_pair(config.manifold);
  const ScalarField f = d.angle_function();
  const auto points = sample_points(dim, config.samples, config.seed);
  const auto regular =
      sample_points(dim, config.samples, config.seed + kRegularSeedOffset, angle_exclusion(d, config.exclusion));
  const TransnormalProfile b{[](double t) { return 4.0 * (1.0 - t * t); }, [](double t) { return -8.0 * t; }};
  const UnitVectorField normal = UnitVectorField::normalized_gradient(f);

  std::vector<ResidualReport> out;
  const std::pair<const ContactMetricStructure*, std::string> structures[] = {{&d.alpha(), "alpha"},
                                                                              {&d.beta(), "beta"}};
  for (const auto& [s, tag] : structures) {
    out.push_back(renamed(check_axiom_volume(*s, points), "axiom_volume[" + tag + "]"));
    out.push_back(renamed(check_axiom_ii(*s, points), "axiom_ii[" + tag + "]"));
    out.push_back(renamed(check_axiom_iii(*s, points), "axiom_iii[" + tag + "]"));
  }
  for (const auto& [s, tag] : structures) out.push_back(renamed(check_kcontact(*s, points), "kcontact[" + tag + "]"));
  for (const auto& [s, tag] : structures) out.push_back(renamed(check_sasakian(*s, points), "sasakian[" + tag + "]"));

  out.push_back(commutation_check(d, points));
  out.push_back(gradient_identity_check(d, points));
  out.push_back(transnormal_b_check(d, points));
  out.push_back(laplacian_formula_check(d, points));
  if (dim <= 5) {
    out.push_back(low_dimension_isoparametric_check(d, regular));
  } else {
    out.push_back(isoparametric_fit_check(f, d.n(), regular));
  }
  if (dim >= 5) {
    out.push_back(hbundle_spectrum_check(d, regular));
    out.push_back(hessian_formula_check(d, regular));
  }
  out.push_back(check_geodesic(f, regular));
  out.push_back(mean_curvature_identity_check(f, b, regular));
  out.push_back(ricci_normal_check(d, regular));
  out.push_back(reeb_ricci_check(d, points));
  out.push_back(harmonicity_check(normal, regular));
  out.push_back(critical_condition_check(normal, regular));
  out.push_back(energy_check(d.alpha(), config.samples, config.seed));

  for (ResidualReport& r : out) {
    auto it = config.tol_overrides.find(r.check_name);
    if (it == config.tol_overrides.end()) it = config.tol_overrides.find(base_name(r.check_name));
    if (it == config.tol_overrides.end()) continue;
    r.tolerance = it->second;
    r.pass = r.max <= r.tolerance;
  }
  return out;
}

bool all_pass(const std::vector<ResidualReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.pass; });
}

double reeb_energy_closed_form(int dim) { return 0.5 * (2.0 * dim - 1.0) * sphere_volume(dim); }

std::string convention_ledger_json() { return dump(ledger()); }

std::string describe(Manifold m) {
  const DoubleKContact d = shipped_pair(m);
  const int dim = d.dim();
  json golden{{"laplacian_slope", 4.0 * d.n() + 4.0},
              {"reeb_energy", reeb_energy_closed_form(dim)},
              {"reeb_energy_s3", 5.0 * std::numbers::pi * std::numbers::pi},
              {"transnormal_b", "4 (1 - t^2)"}};
  if (dim == 3) golden["dimension_3_laplacian"] = "Lap f = 8 f";
  if (dim == 5) golden["dimension_5_laplacian"] = "Lap f = 12 f + c0, |c0| = 4";
  const auto c0 = d.expected_offset();
  golden["expected_c0"] = c0 ? json(*c0) : json(nullptr);
  const json out{{"manifold", manifold_name(m)},
                 {"dimension", dim},
                 {"n", d.n()},
                 {"J1_blocks", blocks_json(d.j1_blocks())},
                 {"J2_blocks", blocks_json(d.j2_blocks())},
                 {"sigma", {{"alpha", d.alpha().sigma()}, {"beta", d.beta().sigma()}}},
                 {"structures", {{"alpha", descriptor_json(d.alpha())}, {"beta", descriptor_json(d.beta())}}},
                 {"convention_ledger", ledger()},
                 {"golden_constants", golden}};
  return dump(out);
}

std::string reports_to_json(const SuiteConfig& config, const std::vector<ResidualReport>& reports) {
  json overrides = json::object();
  for (const auto& [k, v] : config.tol_overrides) overrides[k] = v;
  json cfg{{"manifold", manifold_name(config.manifold)},
           {"samples", config.samples},
           {"seed", config.seed},
           {"exclusion", config.exclusion},
           {"tol_overrides", overrides},
           {"format", config.format == OutputFormat::json ? "json" : "csv"}};
  json doc{{"config", cfg}, {"convention_ledger", ledger()}, {"reports", json::array()}};
  for (const ResidualReport& r : reports) doc["reports"].push_back(report_json(r));
  doc["all_pass"] = all_pass(reports);
  if (config.timestamps) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    doc["generated_at"] = buf;
  }
  return dump(doc);
}

std::string reports_to_csv(const std::vector<ResidualReport>& reports) {
  std::ostringstream out;
  out << "check_name,count,skipped,max,mean,tolerance,pass\n";
  auto num = [](double v) {
    std::string s = format_number(v);
    if (!s.empty() && s.front() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  for (const ResidualReport& r : reports) {
    out << r.check_name << ',' << r.count << ',' << r.skipped << ',' << num(r.max) << ',' << num(r.mean) << ','
        << num(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string structure_descriptor(const ContactMetricStructure& s) { return dump(descriptor_json(s)); }

ContactMetricStructure structure_from_descriptor(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed structure descriptor: ") + e.what());
  }
  if (!doc.contains("dimension") || !doc.contains("J_matrix") || !doc.contains("sigma")) {
    throw UsageError("structure descriptor needs dimension, J_matrix and sigma");
  }
  const auto rows = doc["J_matrix"].get<std::vector<std::vector<double>>>();
  const int size = doc["dimension"].get<int>() + 1;
  if (static_cast<int>(rows.size()) != size) throw UsageError("J_matrix size does not match dimension");
  Mat j(size, size);
  for (int r = 0; r < size; ++r) {
    if (static_cast<int>(rows[r].size()) != size) throw UsageError("J_matrix must be square");
    for (int c = 0; c < size; ++c) j(r, c) = rows[r][c];
  }
  ContactMetricStructure s = ContactMetricStructure::build(OrthoComplexStructure(j));
  if (s.sigma() != doc["sigma"].get<int>()) {
    throw ConstructionError("descriptor sigma disagrees with the orientation selected at build time");
  }
  return s;
}

std::string energy_report(Manifold m, std::string_view field, std::size_t samples, std::uint64_t seed,
                          double exclusion) {
  if (samples < 1) throw UsageError("--samples must be at least 1");
  if (!(exclusion > 0.0 && exclusion < 1.0)) throw UsageError("--exclusion must lie in (0, 1)");
  const DoubleKContact d = shipped_pair(m);
  json out{{"manifold", manifold_name(m)}, {"field", std::string(field)}, {"seed", seed}};
  EnergyEstimate e;
  if (field == "reeb") {
    e = energy(UnitVectorField::reeb(d.alpha()), d.dim(), samples, seed);
    out["closed_form"] = reeb_energy_closed_form(d.dim());
  } else if (field == "normal") {
    const ScalarField f = d.angle_function();
    const UnitVectorField n = UnitVectorField::normalized_gradient(f).restricted(
        [f, exclusion](const SpherePoint& p) { return std::abs(f(p)) <= exclusion; });
    e = energy(n, d.dim(), samples, seed);
    out["exclusion"] = exclusion;
  } else {
    throw UsageError("unknown field '" + std::string(field) + "' (expected reeb or normal)");
  }
  out["value"] = e.value;
  out["std_error"] = e.std_error;
  out["samples"] = e.samples;
  out["rejected"] = e.rejected;
  return dump(out);
}

}  // namespace kontact
