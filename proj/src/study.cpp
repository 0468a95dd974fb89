#include "ifem/study.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ifem/control.hpp"
#include "ifem/vtk.hpp"

namespace ifem {

namespace {

StudyRow run_one(const ManufacturedCase& mcase, int n, const StudyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  auto setup = make_setup(mcase, n, opts.solver, opts.enrichment, opts.variant);

  FixedPointOptions fp;
  fp.variational = opts.variational;
  if (!opts.iteration_log_prefix.empty())
    fp.log_path = opts.iteration_log_prefix + "_n" + std::to_string(n) + ".csv";
  const FixedPointResult res = fixed_point_solve(*setup, fp);

  // continuous control recovered from the adjoint via the projection rule
  const ProblemSetup& su = *setup;
  const auto& adjoint = res.adjoint;
  const auto u_post = postprocess_control(
      mcase.alpha, mcase.bounds, mcase.control_shift,
      [&su, &adjoint](Vec2 x) { return evaluate_nodal(su, adjoint, x); });

  StudyRow row;
  row.case_id = mcase.id;
  row.constrained = mcase.constrained;
  row.n = n;
  row.h = setup->mesh.h;
  row.err = error_norms(*setup, res.state, res.adjoint, u_post);
  row.iterations = res.iterations;

  const std::string tag = "_n" + std::to_string(n);
  if (!opts.control_csv_prefix.empty())
    write_control_csv(opts.control_csv_prefix + tag + ".csv", setup->interface, res.control);
  if (!opts.vtk_prefix.empty()) {
    std::vector<double> y_exact(setup->mesh.nodes.size()), p_exact(setup->mesh.nodes.size());
    for (std::size_t v = 0; v < setup->mesh.nodes.size(); ++v) {
      const Vec2 x = setup->mesh.nodes[v];
      const int side = mcase.levelset.phi(x) < 0.0 ? -1 : 1;
      y_exact[v] = mcase.exact_state(x, side);
      p_exact[v] = mcase.exact_adjoint(x, side);
    }
    write_vtk_mesh(opts.vtk_prefix + tag + ".vtk", setup->mesh,
                   {{"state", res.state.nodal},
                    {"adjoint", res.adjoint},
                    {"state_exact", y_exact},
                    {"adjoint_exact", p_exact}});
    const std::vector<double> u_post_mid =
        midpoint_interpolate(setup->interface, u_post);
    write_vtk_interface(opts.vtk_prefix + "_interface" + tag + ".vtk", setup->interface,
                        {{"control", res.control}, {"control_post", u_post_mid}});
  }

  if (opts.timings) {
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  }
  return row;
}

}  // namespace

std::vector<StudyRow> run_convergence_study(const ManufacturedCase& mcase,
                                            const std::vector<int>& ns,
                                            const StudyOptions& opts) {
  if (ns.empty()) throw std::invalid_argument("run_convergence_study: no mesh sizes");
  validate_case(mcase);  // data gate: never trust a study on inconsistent data

  std::vector<StudyRow> rows(ns.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < ns.size(); ++i) rows[i] = run_one(mcase, ns[i], opts);
    return rows;
  }

  std::vector<std::exception_ptr> errors(ns.size());
  std::vector<std::thread> pool;
  const std::size_t workers = std::min<std::size_t>(jobs, ns.size());
  // static partition: each row always computes in a single thread, so results
  // do not depend on scheduling
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < ns.size(); i += workers) {
        try {
          rows[i] = run_one(mcase, ns[i], opts);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return rows;
}

namespace {

void append_error_and_order(std::string& line, double err, double prev_err, double h,
                            double prev_h, bool first) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), ",%.6e", err);
  line += buf;
  if (first) {
    line += ",";
  } else {
    std::snprintf(buf, sizeof(buf), ",%.4f", convergence_order(prev_err, err, prev_h, h));
    line += buf;
  }
}

}  // namespace

void write_study_csv(const std::string& path, const std::vector<StudyRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_study_csv: cannot open " + path);
  std::fprintf(f,
               "case,constrained,N,h,e_y_l2,ord,e_p_l2,ord,e_u_l2,ord,"
               "e_y_linf,ord,e_p_linf,ord,e_u_linf,ord,iterations,wall_seconds\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StudyRow& r = rows[i];
    const bool first = (i == 0);
    const StudyRow& pr = rows[first ? i : i - 1];
    std::string line;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g", r.case_id, r.constrained ? 1 : 0, r.n,
                  r.h);
    line += buf;
    append_error_and_order(line, r.err.y_l2, pr.err.y_l2, r.h, pr.h, first);
    append_error_and_order(line, r.err.p_l2, pr.err.p_l2, r.h, pr.h, first);
    append_error_and_order(line, r.err.u_l2, pr.err.u_l2, r.h, pr.h, first);
    append_error_and_order(line, r.err.y_linf, pr.err.y_linf, r.h, pr.h, first);
    append_error_and_order(line, r.err.p_linf, pr.err.p_linf, r.h, pr.h, first);
    append_error_and_order(line, r.err.u_linf, pr.err.u_linf, r.h, pr.h, first);
    std::snprintf(buf, sizeof(buf), ",%d,%.3f", r.iterations, r.wall_seconds);
    line += buf;
    std::fprintf(f, "%s\n", line.c_str());
  }
  std::fclose(f);
}

std::string format_study_table(const std::vector<StudyRow>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%6s  %12s %6s  %12s %6s  %12s %6s  %5s  %8s\n", "N",
                "err(y) L2", "order", "err(p) L2", "order", "err(u) L2", "order", "its",
                "seconds");
  out += buf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StudyRow& r = rows[i];
    auto ord = [&](double e, double pe) {
      if (i == 0) return std::string("   -- ");
      char b[32];
      std::snprintf(b, sizeof(b), "%6.3f", convergence_order(pe, e, rows[i - 1].h, r.h));
      return std::string(b);
    };
    const StudyRow& pr = rows[i == 0 ? i : i - 1];
    std::snprintf(buf, sizeof(buf), "%6d  %12.4e %s  %12.4e %s  %12.4e %s  %5d  %8.2f\n",
                  r.n, r.err.y_l2, ord(r.err.y_l2, pr.err.y_l2).c_str(), r.err.p_l2,
                  ord(r.err.p_l2, pr.err.p_l2).c_str(), r.err.u_l2,
                  ord(r.err.u_l2, pr.err.u_l2).c_str(), r.iterations, r.wall_seconds);
    out += buf;
  }
  return out;
}

}  // namespace ifem
