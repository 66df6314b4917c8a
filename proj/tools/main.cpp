#include <iostream>

#include <CLI11.hpp>

#include "focalkit/cli.hpp"

int main(int argc, char** argv) {
  using namespace focalkit::cli;
  CLI::App app{"focalkit: Frenet apparatus, focal curves and slant helices in E^n"};
  app.require_subcommand(1);

  RunConfig cfg;
  double tolerance = 0.0, focal_tolerance = 0.0;
  int k = 0, dim = 0;

  for (const char* name : {"analyze", "focal", "slant", "verify", "synthesize"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("-i,--input", cfg.input_path, "curve spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", cfg.output_path, "output prefix; .csv/.json are appended");
    sub->add_option("-n,--grid-points", cfg.grid_points, "uniform grid size (>= 16)")->capture_default_str();
    sub->add_option("--tolerance", tolerance, "slant deviation tolerance (1e-6 analytic, 1e-4 otherwise)");
    sub->add_option("--focal-tolerance", focal_tolerance, "slant deviation tolerance on the focal curve (1e-4)");
    sub->add_option("--axis-tolerance", cfg.axis_tolerance, "axis agreement, rad")->capture_default_str();
    sub->add_option("--classify-tolerance", cfg.classify_tolerance, "relative spread for W-curve/ccr")
        ->capture_default_str();
    sub->add_option("-k,--k", k, "slant index");
    sub->add_option("--dim", dim, "ambient dimension, when the spec leaves it open");
    sub->add_option("--seed", cfg.seed, "seed for random curves")->capture_default_str();
    sub->add_option("--step", cfg.step, "synthesis step (default: domain length / 4096)");
    sub->add_flag("--serial", cfg.serial, "run kernels on one thread");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  const auto* sub = app.get_subcommands().front();
  cfg.command = *parse_command(sub->get_name());
  if (sub->count("--tolerance")) cfg.tolerance = tolerance;
  if (sub->count("--focal-tolerance")) cfg.focal_tolerance = focal_tolerance;
  if (sub->count("--k")) cfg.k = k;
  if (sub->count("--dim")) cfg.dim = dim;
  return run(cfg, std::cerr);
}
