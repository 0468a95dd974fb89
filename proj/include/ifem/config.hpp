#pragma once

// Run configuration shared by the command line and flat key=value config
// files. The CLI builds one of these; the library consumes it.

#include <string>
#include <vector>

#include "ifem/solver.hpp"
#include "ifem/space.hpp"

namespace ifem {

struct RunConfig {
  int case_id = 1;
  int constrained = -1;  // -1: case default (case 2 constrained, case 1 not)
  double alpha = 1.0;
  double beta_plus = 10.0;
  double beta_minus = 1.0;
  std::vector<int> ns = {32, 64, 128, 256};

  std::string solver = "cg";  // cg | direct
  double tolerance = 1e-12;
  std::string enrichment = "on";   // on | off
  std::string mode = "pc";         // pc | variational
  std::string variant = "conforming";  // conforming | nonconforming
  std::string timings = "on";      // on | off
  int jobs = 1;

  std::string out_study;       // study CSV
  std::string out_control;     // control CSV (per mesh size)
  std::string out_iterations;  // iteration log prefix (per mesh size)
  std::string out_vtk;         // VTK file prefix (per mesh size)
};

// Throws std::invalid_argument with a readable message on any bad value.
void validate_config(const RunConfig& cfg);

// Parses "32,64,128" into mesh sizes.
std::vector<int> parse_mesh_sizes(const std::string& text);

// Reads a flat key=value file ('#' comments, blank lines allowed). Keys match
// the long option names of the CLI. Unknown keys are an error.
void apply_config_file(const std::string& path, RunConfig& cfg);

}  // namespace ifem
