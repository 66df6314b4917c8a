#include "focalkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "focalkit/curve_spec.hpp"
#include "focalkit/errors.hpp"
#include "focalkit/focal.hpp"
#include "focalkit/frenet.hpp"
#include "focalkit/slant.hpp"
#include "focalkit/stencil.hpp"

namespace focalkit::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> to_vec(const VectorN& v) { return {v.data(), v.data() + v.size()}; }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(fmt(v));
    row_strings(cells);
  }

  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::size_t width_;
  std::ostringstream out_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorCode::parse_error, "cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

json header(const char* command, const CurveSpec& spec, const Curve& c, const RunConfig& cfg) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"curve",
           {{"type", spec.type},
            {"name", spec.name},
            {"dim", c.dimension()},
            {"kind", to_string(c.kind())},
            {"domain", {c.domain().lo, c.domain().hi}}}},
          {"grid_points", cfg.grid_points}};
}

double default_tolerance(const Curve& c) { return c.kind() == CurveKind::analytic ? 1e-6 : 1e-4; }

json slant_json(const SlantReport& r) {
  return {{"k", r.k},
          {"is_slant", r.is_slant},
          {"excluded_perpendicular", r.excluded_perpendicular},
          {"degenerate_axis", r.degenerate},
          {"axis", to_vec(r.axis)},
          {"cos_theta", r.cos_theta},
          {"deviation", r.deviation}};
}

std::string default_prefix(const RunConfig& cfg, const char* command) {
  std::filesystem::path p(cfg.input_path);
  p.replace_extension();
  return p.string() + "." + command;
}

Execution exec_of(const RunConfig& cfg) { return cfg.serial ? Execution::serial : Execution::parallel; }

int analyze(const RunConfig& cfg, const CurveSpec& spec, const Curve& c, const std::string& prefix,
            std::ostream& log) {
  const int d = c.dimension();
  const auto grid = linspace(c.domain().lo, c.domain().hi, static_cast<std::size_t>(cfg.grid_points));
  const auto rows = curvature_table(c, grid, d, exec_of(cfg));

  std::vector<std::string> cols{"s"};
  for (int i = 1; i <= d; ++i) cols.push_back("x" + std::to_string(i));
  for (int i = 1; i < d; ++i) cols.push_back("kappa" + std::to_string(i));
  cols.insert(cols.end(), {"speed", "reduced_at"});
  Csv csv(cols);
  std::size_t reduced = 0;
  for (const auto& r : rows) {
    std::vector<double> v{r.s};
    const auto x = c.position(r.s);
    v.insert(v.end(), x.data(), x.data() + d);
    for (int i = 0; i < d - 1; ++i)
      v.push_back(i < static_cast<int>(r.curvatures.size()) ? r.curvatures[i] : std::nan(""));
    v.push_back(r.speed);
    v.push_back(r.reduced ? r.reduced_at : 0);
    if (r.reduced) ++reduced;
    csv.row(v);
  }
  write_file(prefix + ".csv", csv.str());

  auto doc = header("analyze", spec, c, cfg);
  doc["reduced_rows"] = reduced;
  int status = kSuccess;
  try {
    const auto cl = classify(c, grid, cfg.classify_tolerance, exec_of(cfg));
    doc["classification"] = {{"is_w_curve", cl.is_w_curve},
                             {"is_ccr", cl.is_ccr},
                             {"mean_curvatures", cl.mean_curvatures},
                             {"ratios", cl.ratios},
                             {"max_curvature_spread", cl.max_curvature_spread},
                             {"max_ratio_spread", cl.max_ratio_spread},
                             {"tolerance", cfg.classify_tolerance}};
  } catch (const GeometryError& e) {
    doc["classification"] = nullptr;
    doc["classification_error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    log << "classification skipped: " << e.what() << "\n";
  }
  if (reduced == rows.size()) {
    log << "every grid point has reduced osculating order\n";
    status = kNumericFailure;
  }
  write_json(prefix + ".json", doc);
  return status;
}

int focal(const RunConfig& cfg, const CurveSpec& spec, const Curve& c, const std::string& prefix,
          std::ostream& log) {
  const int d = c.dimension();
  const int m = d - 1;
  const auto grid = linspace(c.domain().lo, c.domain().hi, static_cast<std::size_t>(cfg.grid_points));
  const auto data = focal_curvatures(c, grid, exec_of(cfg));
  const auto residuals = scalar_frenet_residuals(data);

  std::vector<std::string> cols{"s"};
  for (int i = 1; i <= d; ++i) cols.push_back("C" + std::to_string(i));
  for (int i = 1; i <= m; ++i) cols.push_back("c" + std::to_string(i));
  cols.insert(cols.end(), {"A", "epsilon", "R_m", "vertex", "last_line_residual"});
  Csv csv(cols);
  std::size_t vertices = 0;
  double max_residual = 0.0;
  std::size_t residual_points = 0;
  for (std::size_t j = 0; j < data.size(); ++j) {
    const auto& f = data[j];
    std::vector<double> v{f.s};
    v.insert(v.end(), f.focal_point.data(), f.focal_point.data() + d);
    v.insert(v.end(), f.focal_curvatures.begin(), f.focal_curvatures.end());
    v.insert(v.end(), {f.A, static_cast<double>(f.epsilon), f.R_m, f.vertex ? 1.0 : 0.0, residuals[j]});
    if (f.vertex) ++vertices;
    if (std::isfinite(residuals[j])) {
      max_residual = std::max(max_residual, residuals[j]);
      ++residual_points;
    }
    csv.row(v);
  }
  write_file(prefix + ".csv", csv.str());

  auto doc = header("focal", spec, c, cfg);
  doc["vertices"] = vertices;
  // c_m vanishes identically on some curves (helices, W-curves in odd m);
  // the residual is then undefined everywhere.
  doc["last_line_points"] = residual_points;
  doc["max_last_line_residual"] = residual_points ? json(max_residual) : json(nullptr);
  int status = kSuccess;
  if (vertices == data.size()) {
    log << "focal curve is singular on the whole grid (A = 0)\n";
    doc["relations"] = nullptr;
    status = kNumericFailure;
  } else {
    try {
      const auto r = focal_relations_check(c, grid, exec_of(cfg));
      doc["relations"] = {{"m", r.m},
                          {"parity", r.parity},
                          {"points_checked", r.points_checked},
                          {"max_curvature_residual", r.max_curvature_residual},
                          {"mean_direct_curvatures", r.mean_direct_curvatures},
                          {"mean_predicted_curvatures", r.mean_predicted_curvatures},
                          {"max_chain_spread", r.max_chain_spread},
                          {"min_tangent_alignment", r.min_tangent_alignment},
                          {"min_normal_alignment", r.min_normal_alignment},
                          {"sign_mismatches", r.sign_mismatches},
                          {"epsilon_positive", r.epsilon_positive},
                          {"parity_pattern_holds", r.parity_pattern_holds}};
    } catch (const GeometryError& e) {
      doc["relations"] = nullptr;
      doc["relations_error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      log << "relations check skipped: " << e.what() << "\n";
    }
  }
  write_json(prefix + ".json", doc);
  return status;
}

int slant(const RunConfig& cfg, const CurveSpec& spec, const Curve& c, const std::string& prefix, std::ostream&) {
  const auto grid = linspace(c.domain().lo, c.domain().hi, static_cast<std::size_t>(cfg.grid_points));
  const double tol = cfg.tolerance.value_or(default_tolerance(c));
  auto doc = header("slant", spec, c, cfg);
  doc["tolerance"] = tol;
  json reports = json::array();
  if (cfg.k) {
    reports.push_back(slant_json(is_k_slant(c, *cfg.k, grid, tol, exec_of(cfg))));
  } else {
    for (const auto& r : slant_profile(c, grid, tol, exec_of(cfg))) reports.push_back(slant_json(r));
  }
  doc["reports"] = reports;
  write_json(prefix + ".json", doc);
  return kSuccess;
}

int verify(const RunConfig& cfg, const CurveSpec& spec, const Curve& c, const std::string& prefix,
           std::ostream& log) {
  const auto grid = linspace(c.domain().lo, c.domain().hi, static_cast<std::size_t>(cfg.grid_points));
  SlantTolerances tol;
  tol.source = cfg.tolerance.value_or(default_tolerance(c));
  tol.focal = cfg.focal_tolerance.value_or(1e-4);
  tol.axis_angle = cfg.axis_tolerance;

  std::vector<int> ks;
  if (cfg.k) {
    ks.push_back(*cfg.k);
  } else {
    for (const auto& r : slant_profile(c, grid, tol.source, exec_of(cfg)))
      if (r.is_slant) ks.push_back(r.k);
  }

  auto doc = header("verify", spec, c, cfg);
  doc["tolerances"] = {{"source", tol.source}, {"focal", tol.focal}, {"axis_angle", tol.axis_angle}};
  json checks = json::array();
  bool all = !ks.empty();
  for (int k : ks) {
    const auto r = verify_focal_slant(c, k, grid, tol, exec_of(cfg));
    checks.push_back({{"k", r.k},
                      {"m", r.m},
                      {"focal_k", r.focal_k},
                      {"case", to_string(r.theorem_case)},
                      {"source", slant_json(r.source)},
                      {"focal", slant_json(r.focal)},
                      {"source_is_slant", r.source_is_slant},
                      {"axis_angle", r.axis_angle},
                      {"axes_agree", r.axes_agree},
                      {"passed", r.passed},
                      {"note", r.note}});
    log << "k=" << r.k << " -> focal k'=" << r.focal_k << ": " << (r.passed ? "pass" : "FAIL") << "\n";
    all = all && r.passed;
  }
  if (ks.empty()) log << "source curve is not k-slant for any k\n";
  doc["checks"] = checks;
  doc["passed"] = all;
  write_json(prefix + ".json", doc);
  return all ? kSuccess : kVerificationFailed;
}

int synthesize(const RunConfig& cfg, const CurveSpec& spec, const std::string& prefix) {
  CurveSpec in = spec;
  if (cfg.step > 0.0) in.step = cfg.step;
  const Curve c = build_curve(in, cfg.seed);
  const auto grid = linspace(c.domain().lo, c.domain().hi, static_cast<std::size_t>(cfg.grid_points));
  CurveSpec out;
  out.type = "samples";
  out.dim = c.dimension();
  out.domain = c.domain();
  out.name = spec.name;
  for (double s : grid) {
    std::vector<double> row{s};
    const auto x = c.position(s);
    row.insert(row.end(), x.data(), x.data() + x.size());
    out.samples.push_back(std::move(row));
  }
  write_json(prefix + ".json", to_json(out));
  return kSuccess;
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::bad_parameters:
    case ErrorCode::invalid_profile:
    case ErrorCode::out_of_domain:
    case ErrorCode::order_unsupported:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "analyze") return Command::analyze;
  if (name == "focal") return Command::focal;
  if (name == "slant") return Command::slant;
  if (name == "verify") return Command::verify;
  if (name == "synthesize") return Command::synthesize;
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& log) {
  static constexpr const char* names[] = {"analyze", "focal", "slant", "verify", "synthesize"};
  const char* name = names[static_cast<int>(cfg.command)];
  try {
    if (cfg.grid_points < 16) throw GeometryError(ErrorCode::bad_parameters, "grid_points must be >= 16");
    for (auto t : {cfg.tolerance, cfg.focal_tolerance})
      if (t && !(*t > 0.0)) throw GeometryError(ErrorCode::bad_parameters, "tolerances must be > 0");
    if (!(cfg.axis_tolerance > 0.0) || !(cfg.classify_tolerance > 0.0))
      throw GeometryError(ErrorCode::bad_parameters, "tolerances must be > 0");

    CurveSpec spec = load_curve_spec(cfg.input_path);
    if (cfg.dim) {
      if (spec.dim && *spec.dim != *cfg.dim)
        throw GeometryError(ErrorCode::parse_error, "--dim contradicts the spec's 'dim'");
      spec.dim = cfg.dim;
    }
    const std::string prefix = cfg.output_path.empty() ? default_prefix(cfg, name) : cfg.output_path;

    if (cfg.command == Command::synthesize) {
      if (spec.type != "curvatures") throw GeometryError(ErrorCode::parse_error, "synthesize needs a curvatures spec");
      return synthesize(cfg, spec, prefix);
    }
    CurveSpec built = spec;
    if (cfg.step > 0.0) built.step = cfg.step;
    const Curve c = build_curve(built, cfg.seed);
    if (cfg.k && (*cfg.k < 1 || *cfg.k > c.dimension()))
      throw GeometryError(ErrorCode::bad_parameters, "--k must lie in 1..dim");
    switch (cfg.command) {
      case Command::analyze: return analyze(cfg, spec, c, prefix, log);
      case Command::focal: return focal(cfg, spec, c, prefix, log);
      case Command::slant: return slant(cfg, spec, c, prefix, log);
      case Command::verify: return verify(cfg, spec, c, prefix, log);
      case Command::synthesize: break;
    }
    return kSuccess;
  } catch (const GeometryError& e) {
    log << name << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? kInputError : kNumericFailure;
  } catch (const std::exception& e) {
    log << name << ": " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace focalkit::cli
