#pragma once

// Mesh-refinement study driver: runs the optimizer over a sequence of mesh
// sizes, evaluates the error norms, and reports them as CSV or a text table.

#include <string>
#include <vector>

#include "ifem/norms.hpp"

namespace ifem {

struct StudyRow {
  int case_id = 1;
  bool constrained = false;
  int n = 0;
  double h = 0.0;
  ErrorNorms err;
  int iterations = 0;
  double wall_seconds = 0.0;
};

struct StudyOptions {
  SolverConfig solver;
  bool enrichment = true;
  bool variational = false;
  SpaceVariant variant = SpaceVariant::Conforming;
  bool timings = true;  // off: wall_seconds is written as 0 for reproducible files
  int jobs = 1;
  std::string iteration_log_prefix;  // per-mesh logs <prefix>_n<k>.csv when set
  std::string control_csv_prefix;    // per-mesh control tables <prefix>_n<k>.csv
  std::string vtk_prefix;            // per-mesh <prefix>_n<k>.vtk + interface polyline
};

// Runs the validation gate on the manufactured data, then one optimization
// per mesh size (optionally in parallel). Rows come back ordered like `ns`.
std::vector<StudyRow> run_convergence_study(const ManufacturedCase& mcase,
                                            const std::vector<int>& ns,
                                            const StudyOptions& opts = {});

// Schema: case,constrained,N,h,e_y_l2,ord,e_p_l2,ord,e_u_l2,ord,
//         e_y_linf,ord,e_p_linf,ord,e_u_linf,ord,iterations,wall_seconds
// Order cells are empty on the first row.
void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows);

std::string format_study_table(const std::vector<StudyRow>& rows);

}  // namespace ifem
