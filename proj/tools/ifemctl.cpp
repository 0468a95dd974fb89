// Command-line driver: mesh-refinement studies for the interface
// optimal-control solver.
//
//   ifemctl run --case 1 --n 32,64,128,256 --solver direct --out study.csv

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ifem/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interface optimal-control solver (immersed finite elements)"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a mesh-refinement study");

  ifem::RunConfig cli;
  std::string ns_text;
  std::string config_path;

  run->add_option("--config", config_path, "flat key=value config file; flags override it");
  run->add_option("--case", cli.case_id, "benchmark case id (1 or 2)");
  run->add_option("--constrained", cli.constrained,
                  "0/1 control bounds (default: case 2 constrained, case 1 not)");
  run->add_option("--alpha", cli.alpha, "control regularization weight (> 0)");
  run->add_option("--beta-plus", cli.beta_plus, "diffusion outside the interface");
  run->add_option("--beta-minus", cli.beta_minus, "diffusion inside the interface");
  run->add_option("--n", ns_text, "comma-separated mesh sizes, e.g. 32,64,128");
  run->add_option("--solver", cli.solver, "linear solver: cg | direct");
  run->add_option("--tol", cli.tolerance, "iterative solver relative tolerance");
  run->add_option("--enrichment", cli.enrichment, "flux-jump enrichment: on | off");
  run->add_option("--mode", cli.mode, "control update: pc | variational");
  run->add_option("--variant", cli.variant, "element variant: conforming | nonconforming");
  run->add_option("--timings", cli.timings,
                  "on | off; off writes zero wall seconds for reproducible files");
  run->add_option("--jobs", cli.jobs, "mesh sizes solved in parallel");
  run->add_option("--out", cli.out_study, "study CSV path");
  run->add_option("--control-out", cli.out_control, "control CSV prefix (per mesh size)");
  run->add_option("--iterations-out", cli.out_iterations,
                  "iteration log CSV prefix (per mesh size)");
  run->add_option("--vtk-out", cli.out_vtk, "VTK output prefix (per mesh size)");

  CLI11_PARSE(app, argc, argv);

  try {
    ifem::RunConfig cfg;
    if (!config_path.empty()) ifem::apply_config_file(config_path, cfg);

    // command-line flags override config-file values
    auto given = [&](const std::string& name) { return run->count(name) > 0; };
    if (given("--case")) cfg.case_id = cli.case_id;
    if (given("--constrained")) cfg.constrained = cli.constrained;
    if (given("--alpha")) cfg.alpha = cli.alpha;
    if (given("--beta-plus")) cfg.beta_plus = cli.beta_plus;
    if (given("--beta-minus")) cfg.beta_minus = cli.beta_minus;
    if (given("--n")) cfg.ns = ifem::parse_mesh_sizes(ns_text);
    if (given("--solver")) cfg.solver = cli.solver;
    if (given("--tol")) cfg.tolerance = cli.tolerance;
    if (given("--enrichment")) cfg.enrichment = cli.enrichment;
    if (given("--mode")) cfg.mode = cli.mode;
    if (given("--variant")) cfg.variant = cli.variant;
    if (given("--timings")) cfg.timings = cli.timings;
    if (given("--jobs")) cfg.jobs = cli.jobs;
    if (given("--out")) cfg.out_study = cli.out_study;
    if (given("--control-out")) cfg.out_control = cli.out_control;
    if (given("--iterations-out")) cfg.out_iterations = cli.out_iterations;
    if (given("--vtk-out")) cfg.out_vtk = cli.out_vtk;

    ifem::run_configured(cfg, std::cout);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
