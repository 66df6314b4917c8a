#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "focalkit/cli.hpp"
#include "focalkit/curve_spec.hpp"
#include "support.hpp"

using namespace focalkit;
using namespace focalkit::cli;
using nlohmann::json;
namespace fsys = std::filesystem;

namespace {

const fsys::path& workdir() {
  static const fsys::path dir = [] {
    auto d = fsys::temp_directory_path() / ("focalkit_cli_" + std::to_string(::getpid()));
    fsys::create_directories(d);
    return d;
  }();
  return dir;
}

std::string put(const std::string& name, const std::string& text) {
  const auto p = workdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      csv.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    csv.rows.push_back(row);
  }
  return csv;
}

RunConfig config(Command cmd, const std::string& input, const std::string& out) {
  RunConfig c;
  c.command = cmd;
  c.input_path = input;
  c.output_path = (workdir() / out).string();
  return c;
}

int run_quiet(const RunConfig& c) {
  std::ostringstream log;
  return run(c, log);
}

const std::string kHelix = R"({"type": "helix", "params": [2, 1]})";

}  // namespace

TEST_CASE("verify: helix k = 1") {
  auto cfg = config(Command::verify, put("helix.json", kHelix), "helix_verify");
  cfg.k = 1;
  REQUIRE(run_quiet(cfg) == kSuccess);
  const auto doc = json::parse(slurp(cfg.output_path + ".json"));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["passed"] == true);
  const auto& check = doc["checks"][0];
  CHECK(check["focal_k"] == 3);
  CHECK(check["case"] == "i");
  const auto axis = check["focal"]["axis"].get<std::vector<double>>();
  CHECK(std::abs(std::abs(axis[2]) - 1.0) < 1e-6);
}

TEST_CASE("analyze: circle of radius 2") {
  auto cfg = config(Command::analyze, put("circle.json", R"({"type": "circle", "params": [2]})"), "circle");
  REQUIRE(run_quiet(cfg) == kSuccess);
  const auto csv = read_csv(cfg.output_path + ".csv");
  CHECK(csv.header == std::vector<std::string>{"s", "x1", "x2", "kappa1", "speed", "reduced_at"});
  REQUIRE(csv.rows.size() == 256);
  for (const auto& r : csv.rows) CHECK(std::abs(r[csv.col("kappa1")] - 0.5) < 1e-12);
  const auto doc = json::parse(slurp(cfg.output_path + ".json"));
  CHECK(doc["classification"]["is_w_curve"] == true);
}

TEST_CASE("slant: helix reports every k") {
  auto cfg = config(Command::slant, put("helix.json", kHelix), "helix_slant");
  REQUIRE(run_quiet(cfg) == kSuccess);
  const auto reports = json::parse(slurp(cfg.output_path + ".json"))["reports"];
  REQUIRE(reports.size() == 3);
  CHECK(reports[0]["is_slant"] == true);
  CHECK(reports[1]["excluded_perpendicular"] == true);
  CHECK(reports[1]["is_slant"] == false);
  CHECK(reports[2]["is_slant"] == true);
  cfg.k = 2;
  cfg.output_path += "_k2";
  REQUIRE(run_quiet(cfg) == kSuccess);
  CHECK(json::parse(slurp(cfg.output_path + ".json"))["reports"].size() == 1);
}

TEST_CASE("focal: helix columns and relations") {
  auto cfg = config(Command::focal, put("helix.json", kHelix), "helix_focal");
  REQUIRE(run_quiet(cfg) == kSuccess);
  const auto csv = read_csv(cfg.output_path + ".csv");
  for (const auto& r : csv.rows) {
    CHECK(std::abs(r[csv.col("c1")] - 2.5) < 1e-9);
    CHECK(std::abs(r[csv.col("A")] - 0.5) < 1e-6);
    CHECK(std::hypot(r[csv.col("C1")], r[csv.col("C2")]) == doctest::Approx(0.5).epsilon(1e-6));
  }
  const auto doc = json::parse(slurp(cfg.output_path + ".json"));
  CHECK(doc["relations"]["parity"] == "even");
  CHECK(doc["max_last_line_residual"].is_null());
}

TEST_CASE("exit codes") {
  auto expect = [](RunConfig cfg, int code) {
    std::ostringstream log;
    CHECK(run(cfg, log) == code);
    CHECK_FALSE(log.str().empty());
  };
  expect(config(Command::analyze, (workdir() / "missing.json").string(), "x"), kInputError);
  expect(config(Command::analyze, put("bad.json", "{not json"), "x"), kInputError);
  expect(config(Command::analyze, put("extra.json", R"({"type": "helix", "params": [2, 1], "color": 3})"), "x"),
         kInputError);
  expect(config(Command::analyze, put("type.json", R"({"type": "spiral"})"), "x"), kInputError);
  expect(config(Command::analyze, put("nodim.json", R"({"type": "wcurve", "params": [1, 1, 1, 2]})"), "x"),
         kInputError);
  expect(config(Command::analyze, put("dim.json", R"({"type": "helix", "dim": 4, "params": [2, 1]})"), "x"),
         kInputError);
  expect(config(Command::analyze, put("neg.json", R"({"type": "circle", "params": [-1]})"), "x"), kInputError);
  expect(config(Command::analyze, put("rows.json", R"({"type": "samples", "samples": [[0, 1, 2], [1, 2]]})"), "x"),
         kInputError);
  auto small = config(Command::analyze, put("helix.json", kHelix), "x");
  small.grid_points = 15;
  expect(small, kInputError);
  auto tol = config(Command::slant, put("helix.json", kHelix), "x");
  tol.tolerance = 0.0;
  expect(tol, kInputError);
  auto badk = config(Command::verify, put("helix.json", kHelix), "x");
  badk.k = 4;
  expect(badk, kInputError);
  expect(config(Command::synthesize, put("helix.json", kHelix), "x"), kInputError);

  // circle: the focal curve is a single point on the whole grid
  expect(config(Command::focal, put("circle.json", R"({"type": "circle", "params": [2]})"), "x"), kNumericFailure);
  // line: reduced order everywhere
  expect(config(Command::analyze,
                put("line.json", R"({"type": "samples", "samples": [[0,0,0],[1,1,1],[2,2,2],[3,3,3],[4,4,4],
                    [5,5,5],[6,6,6],[7,7,7],[8,8,8],[9,9,9],[10,10,10],[11,11,11],[12,12,12]]})"),
                "x"),
         kNumericFailure);
  // random curve: no slant index to verify
  auto rnd = config(Command::verify, put("random.json", R"({"type": "random", "dim": 3, "params": [4]})"), "x");
  expect(rnd, kVerificationFailed);
  rnd.k = 1;
  expect(rnd, kVerificationFailed);
}

TEST_CASE("--dim fills in a missing spec dimension") {
  auto cfg = config(Command::slant, put("w5.json", R"({"type": "wcurve", "params": [1, 1, 1, 2, 1]})"), "w5");
  cfg.dim = 5;
  REQUIRE(run_quiet(cfg) == kSuccess);
  const auto reports = json::parse(slurp(cfg.output_path + ".json"))["reports"];
  CHECK(reports.size() == 5);
  CHECK(reports[0]["is_slant"] == true);
}

TEST_CASE("outputs are byte-identical across runs and execution modes") {
  const auto input = put("salk.json", R"({"type": "salkowski", "params": [0.3333333333333333]})");
  for (auto cmd : {Command::analyze, Command::focal, Command::slant, Command::verify}) {
    auto a = config(cmd, input, "det_a");
    auto b = config(cmd, input, "det_b");
    auto c = config(cmd, input, "det_c");
    c.serial = true;
    const int ra = run_quiet(a), rb = run_quiet(b), rc = run_quiet(c);
    CHECK(ra == rb);
    CHECK(ra == rc);
    for (const char* ext : {".json", ".csv"}) {
      if (!fsys::exists(a.output_path + ext)) continue;
      CHECK(slurp(a.output_path + ext) == slurp(b.output_path + ext));
      CHECK(slurp(a.output_path + ext) == slurp(c.output_path + ext));
    }
  }
}

TEST_CASE("csv cells carry 17 significant digits") {
  auto cfg = config(Command::analyze, put("helix.json", kHelix), "digits");
  REQUIRE(run_quiet(cfg) == kSuccess);
  std::ifstream in(cfg.output_path + ".csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::getline(in, row);
  const std::string first = row.substr(0, row.find(','));
  CHECK(first == "0.024639942381096416");  // 2 pi / 255 rounded to 17 digits
}

TEST_CASE("synthesize then analyze reproduces the curvature columns") {
  json spec;
  spec["type"] = "curvatures";
  const int n = 256;
  const double L = 10.0;
  for (int j = 0; j < n; ++j) {
    const double s = L * j / (n - 1);
    spec["curvatures"].push_back({s, 0.4 + 0.1 * std::sin(s), 0.2 + 0.05 * std::cos(0.5 * s)});
  }
  auto syn = config(Command::synthesize, put("profile.json", spec.dump()), "synth");
  REQUIRE(run_quiet(syn) == kSuccess);
  const auto out = json::parse(slurp(syn.output_path + ".json"));
  CHECK(out["type"] == "samples");
  CHECK(out["samples"].size() == static_cast<std::size_t>(n));

  auto ana = config(Command::analyze, syn.output_path + ".json", "synth_analyze");
  REQUIRE(run_quiet(ana) == kSuccess);
  const auto csv = read_csv(ana.output_path + ".csv");
  REQUIRE(csv.rows.size() == static_cast<std::size_t>(n));
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    CHECK(csv.rows[j][0] == doctest::Approx(spec["curvatures"][j][0].get<double>()).epsilon(1e-14));
    for (int i = 1; i <= 2; ++i)
      worst = std::max(worst, std::abs(csv.rows[j][csv.col("kappa" + std::to_string(i))] -
                                       spec["curvatures"][j][i].get<double>()));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("curve spec round-trips through JSON") {
  const auto spec = parse_curve_spec(json::parse(
      R"({"type": "curvatures", "curvatures": [[0, 1, 0.5], [1, 1, 0.5]], "initial_point": [0, 0, 1],
          "step": 0.01, "name": "demo"})"));
  CHECK(spec_dimension(spec) == 3);
  const auto again = parse_curve_spec(to_json(spec));
  CHECK(again.curvatures == spec.curvatures);
  CHECK(again.initial_point == spec.initial_point);
  CHECK(again.step == spec.step);
  CHECK(again.name == "demo");
  const Curve c = build_curve(spec);
  CHECK(c.kind() == CurveKind::synthesized);
  CHECK((c.position(0.0) - test::vec({0, 0, 1})).norm() < 1e-15);
}

TEST_CASE("parse_command") {
  CHECK(parse_command("focal") == Command::focal);
  CHECK_FALSE(parse_command("plot").has_value());
}
