// Python bindings for the interface optimal-control solver: case validation,
// single solves, and refinement studies, returning plain dictionaries.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifem/cases.hpp"
#include "ifem/norms.hpp"
#include "ifem/optimize.hpp"
#include "ifem/study.hpp"

namespace py = pybind11;
using namespace ifem;

namespace {

ManufacturedCase case_for(int case_id, int constrained) {
  if (constrained < 0) return get_case(case_id);
  return get_case(case_id, constrained != 0);
}

SolverConfig solver_for(const std::string& solver, double tolerance) {
  SolverConfig cfg;
  if (solver == "direct")
    cfg.method = SolverMethod::Direct;
  else if (solver == "cg")
    cfg.method = SolverMethod::Cg;
  else
    throw std::invalid_argument("solver must be 'direct' or 'cg'");
  cfg.rel_tolerance = tolerance;
  return cfg;
}

SpaceVariant variant_for(const std::string& variant) {
  if (variant == "conforming") return SpaceVariant::Conforming;
  if (variant == "nonconforming") return SpaceVariant::Nonconforming;
  throw std::invalid_argument("variant must be 'conforming' or 'nonconforming'");
}

py::dict errors_to_dict(const ErrorNorms& e) {
  py::dict d;
  d["y_l2"] = e.y_l2;
  d["p_l2"] = e.p_l2;
  d["u_l2"] = e.u_l2;
  d["y_linf"] = e.y_linf;
  d["p_linf"] = e.p_linf;
  d["u_linf"] = e.u_linf;
  return d;
}

py::dict solve_case(int case_id, int n, int constrained, const std::string& solver,
                    double tolerance, bool enrichment, const std::string& variant,
                    bool variational) {
  const ManufacturedCase mc = case_for(case_id, constrained);
  const SolverConfig scfg = solver_for(solver, tolerance);
  const SpaceVariant var = variant_for(variant);

  std::unique_ptr<ProblemSetup> setup;
  FixedPointResult res;
  ErrorNorms err;
  {
    py::gil_scoped_release release;
    setup = make_setup(mc, n, scfg, enrichment, var);
    FixedPointOptions fp;
    fp.variational = variational;
    res = fixed_point_solve(*setup, fp);
    const ProblemSetup& su = *setup;
    const auto& adjoint = res.adjoint;
    const auto u_post =
        postprocess_control(mc.alpha, mc.bounds, mc.control_shift,
                            [&su, &adjoint](Vec2 x) { return evaluate_nodal(su, adjoint, x); });
    err = error_norms(*setup, res.state, res.adjoint, u_post);
  }

  py::dict d;
  d["case"] = case_id;
  d["constrained"] = mc.constrained;
  d["n"] = n;
  d["h"] = setup->mesh.h;
  d["segments"] = setup->interface.size();
  d["iterations"] = res.iterations;
  d["converged"] = res.converged;
  d["cost"] = res.cost;
  d["final_change"] = res.final_change;
  d["control"] = res.control;
  py::list mids;
  for (int s = 0; s < setup->interface.size(); ++s) {
    const Vec2 m = setup->interface.midpoint[s];
    mids.append(py::make_tuple(m.x, m.y));
  }
  d["midpoints"] = mids;
  d["errors"] = errors_to_dict(err);
  return d;
}

py::list run_study(int case_id, const std::vector<int>& ns, int constrained,
                   const std::string& solver, double tolerance, bool enrichment,
                   const std::string& variant) {
  const ManufacturedCase mc = case_for(case_id, constrained);
  StudyOptions opts;
  opts.solver = solver_for(solver, tolerance);
  opts.enrichment = enrichment;
  opts.variant = variant_for(variant);
  opts.timings = false;

  std::vector<StudyRow> rows;
  {
    py::gil_scoped_release release;
    rows = run_convergence_study(mc, ns, opts);
  }

  py::list out;
  for (const StudyRow& r : rows) {
    py::dict d;
    d["case"] = r.case_id;
    d["constrained"] = r.constrained;
    d["n"] = r.n;
    d["h"] = r.h;
    d["iterations"] = r.iterations;
    d["errors"] = errors_to_dict(r.err);
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Immersed finite element solver for Neumann interface optimal control";
  m.attr("__version__") = "1.0.0";

  m.def(
      "validate_case",
      [](int case_id, int constrained) {
        const ManufacturedCase mc = case_for(case_id, constrained);
        py::gil_scoped_release release;
        validate_case(mc);
      },
      py::arg("case_id"), py::arg("constrained") = -1,
      "Finite-difference self-consistency gate for the manufactured data; raises on "
      "any violated identity.");

  m.def("solve_case", &solve_case, py::arg("case_id"), py::arg("n"),
        py::arg("constrained") = -1, py::arg("solver") = "direct",
        py::arg("tolerance") = 1e-12, py::arg("enrichment") = true,
        py::arg("variant") = "conforming", py::arg("variational") = false,
        "Solve one benchmark configuration; returns a dict with the control iterate, "
        "iteration data, and error norms.");

  m.def("run_study", &run_study, py::arg("case_id"), py::arg("ns"),
        py::arg("constrained") = -1, py::arg("solver") = "direct",
        py::arg("tolerance") = 1e-12, py::arg("enrichment") = true,
        py::arg("variant") = "conforming",
        "Run a mesh-refinement study; returns one dict per mesh size.");

  m.def("convergence_order", &convergence_order, py::arg("e_coarse"), py::arg("e_fine"),
        py::arg("h_coarse"), py::arg("h_fine"),
        "log(e_coarse/e_fine) / log(h_coarse/h_fine)");
}
