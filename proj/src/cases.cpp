#include "ifem/cases.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifem {

namespace {

constexpr double kPi = 3.14159265358979323846;

// state: y+ = (9/4) r^4 + 3 x2^2,   y- = 2 x1 r^2  (their difference is the
// level-set polynomial, so the state is continuous across the interface)
double state(Vec2 x, int side) {
  const double r2 = x.x * x.x + x.y * x.y;
  return side > 0 ? 2.25 * r2 * r2 + 3.0 * x.y * x.y : 2.0 * x.x * r2;
}

Vec2 state_grad(Vec2 x, int side) {
  const double r2 = x.x * x.x + x.y * x.y;
  if (side > 0) return {9.0 * x.x * r2, 9.0 * x.y * r2 + 6.0 * x.y};
  return {6.0 * x.x * x.x + 2.0 * x.y * x.y, 4.0 * x.x * x.y};
}

// w vanishes on the outer boundary; phi * w vanishes on boundary + interface
double bubble(Vec2 x) { return (x.x * x.x - 1.0) * (x.y * x.y - 1.0); }

Vec2 bubble_grad(Vec2 x) {
  return {2.0 * x.x * (x.y * x.y - 1.0), 2.0 * x.y * (x.x * x.x - 1.0)};
}

// Laplacian of phi * w, expanded
double laplace_phi_bubble(Vec2 x) {
  const double x1 = x.x, x2 = x.y;
  const double x1_2 = x1 * x1, x1_3 = x1_2 * x1, x1_4 = x1_3 * x1, x1_5 = x1_4 * x1,
               x1_6 = x1_5 * x1;
  const double x2_2 = x2 * x2, x2_4 = x2_2 * x2_2, x2_6 = x2_4 * x2_2;
  return 4.5 * x1_6 - 4.0 * x1_5 + 121.5 * x1_4 * x2_2 - 81.0 * x1_4 -
         64.0 * x1_3 * x2_2 + 48.0 * x1_3 + 121.5 * x1_2 * x2_4 - 126.0 * x1_2 * x2_2 +
         30.0 * x1_2 - 12.0 * x1 * x2_4 + 48.0 * x1 * x2_2 - 16.0 * x1 + 4.5 * x2_6 -
         75.0 * x2_4 - 6.0 * x2_2 + 6.0;
}

}  // namespace

ManufacturedCase get_case(int id, bool constrained, double beta_plus, double beta_minus,
                          double alpha) {
  if (id != 1 && id != 2) throw std::invalid_argument("get_case: unknown case id");
  if (!(alpha > 0.0)) throw std::invalid_argument("get_case: alpha must be positive");
  if (!(beta_plus > 0.0) || !(beta_minus > 0.0))
    throw std::invalid_argument("get_case: diffusion coefficients must be positive");

  ManufacturedCase mc;
  mc.id = id;
  mc.constrained = constrained;
  mc.alpha = alpha;
  mc.beta_plus = beta_plus;
  mc.beta_minus = beta_minus;
  mc.levelset = waterdrop_levelset();

  mc.exact_state = state;
  mc.exact_state_grad = state_grad;

  const LevelSet ls = mc.levelset;
  // adjoint: p+ = beta- phi w, p- = beta+ phi w. The crossed coefficients make
  // both the value and the conormal flux continuous across the interface,
  // and p vanishes on the interface and the outer boundary.
  mc.exact_adjoint = [ls, beta_plus, beta_minus](Vec2 x, int side) {
    const double c = side > 0 ? beta_minus : beta_plus;
    return c * ls.phi(x) * bubble(x);
  };
  mc.exact_adjoint_grad = [ls, beta_plus, beta_minus](Vec2 x, int side) {
    const double c = side > 0 ? beta_minus : beta_plus;
    const double phi = ls.phi(x), w = bubble(x);
    const Vec2 gphi = ls.grad(x), gw = bubble_grad(x);
    return Vec2{c * (w * gphi.x + phi * gw.x), c * (w * gphi.y + phi * gw.y)};
  };

  if (id == 1) {
    mc.exact_control = [](Vec2) { return 0.0; };
    mc.control_shift = [](Vec2) { return 0.0; };
    if (constrained) mc.bounds = {true, -1.0, 1.0};  // inactive at the solution
  } else {
    mc.control_shift = [](Vec2 x) { return std::sin(2.0 * kPi * x.x); };
    if (constrained) {
      mc.bounds = {true, 0.0, 1.0};
      mc.exact_control = [](Vec2 x) { return std::max(0.0, std::sin(2.0 * kPi * x.x)); };
    } else {
      // without bounds the projection identity puts the control at the shift
      mc.exact_control = mc.control_shift;
    }
  }

  mc.rhs_f = [beta_plus, beta_minus](Vec2 x, int side) {
    const double r2 = x.x * x.x + x.y * x.y;
    return side > 0 ? -beta_plus * (36.0 * r2 + 6.0) : -16.0 * beta_minus * x.x;
  };
  mc.tracking_target = [beta_plus, beta_minus](Vec2 x, int side) {
    return state(x, side) + beta_plus * beta_minus * laplace_phi_bubble(x);
  };

  const auto u_star = mc.exact_control;
  mc.neumann_data = [ls, beta_plus, beta_minus, u_star](Vec2 x) {
    const Vec2 g = ls.grad(x);
    const double gn = norm(g);
    const Vec2 n{g.x / gn, g.y / gn};
    const double flux_jump =
        beta_minus * dot(state_grad(x, -1), n) - beta_plus * dot(state_grad(x, 1), n);
    return flux_jump - u_star(x);
  };
  mc.dirichlet_data = [](Vec2 x) { return state(x, 1); };
  return mc;
}

ManufacturedCase get_case(int id) { return get_case(id, id == 2); }

std::vector<Vec2> sample_interface_points(const LevelSet& ls, int count) {
  const Vec2 anchor{0.4, 0.0};
  if (!(ls.phi(anchor) < 0.0))
    throw std::runtime_error("sample_interface_points: anchor is not inside");
  std::vector<Vec2> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * kPi * (k + 0.137) / count;
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    double t0 = 0.0, t1 = 0.0;
    double f0 = ls.phi(anchor);
    for (int step = 1; step <= 400; ++step) {
      const double t = 0.005 * step;
      const double f = ls.phi(anchor + t * dir);
      if (f >= 0.0) {
        t1 = t;
        break;
      }
      t0 = t;
      f0 = f;
    }
    if (t1 == 0.0)
      throw std::runtime_error("sample_interface_points: ray never left the inside");
    for (int it = 0; it < 200 && t1 - t0 > 1e-15; ++it) {
      const double tm = 0.5 * (t0 + t1);
      const double fm = ls.phi(anchor + tm * dir);
      if (fm < 0.0) {
        t0 = tm;
        f0 = fm;
      } else {
        t1 = tm;
      }
    }
    (void)f0;
    pts.push_back(anchor + 0.5 * (t0 + t1) * dir);
  }
  return pts;
}

namespace {

void check(bool ok, const std::string& what, double value) {
  if (!ok)
    throw std::runtime_error("validate_case: " + what +
                             " violated (residual " + std::to_string(value) + ")");
}

// fourth-order five-point second derivative
double d2_fd(const std::function<double(double)>& f, double h) {
  return (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) /
         (12.0 * h * h);
}

}  // namespace

void validate_case(const ManufacturedCase& mc) {
  const LevelSet& ls = mc.levelset;
  const double h = 1e-3;

  // volume checks on a sample grid, keeping the finite-difference stencil
  // clearly on one side of the interface and inside the domain
  int n_minus = 0, n_plus = 0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const Vec2 x{-0.95 + i * 0.0475, -0.95 + j * 0.0475};
      const double phi = ls.phi(x);
      const double margin = std::abs(phi) / std::max(norm(ls.grad(x)), 1e-12);
      if (margin < 0.02) continue;
      const int side = phi > 0.0 ? 1 : -1;
      (side > 0 ? n_plus : n_minus) += 1;

      auto lap = [&](const SideFn& f) {
        return d2_fd([&](double t) { return f({x.x + t, x.y}, side); }, h) +
               d2_fd([&](double t) { return f({x.x, x.y + t}, side); }, h);
      };
      const double beta = side > 0 ? mc.beta_plus : mc.beta_minus;

      const double f_res = -beta * lap(mc.exact_state) - mc.rhs_f(x, side);
      check(std::abs(f_res) <= 1e-6 * std::max(1.0, std::abs(mc.rhs_f(x, side))),
            "state equation -div(beta grad y) = f", f_res);

      const double adj_res = beta * lap(mc.exact_adjoint) + mc.exact_state(x, side) -
                             mc.tracking_target(x, side);
      check(std::abs(adj_res) <= 1e-6 * std::max(1.0, std::abs(mc.tracking_target(x, side))),
            "adjoint equation -div(beta grad p) = y - y_d", adj_res);

      auto grad_fd = [&](const SideFn& f) {
        const double gx = (f({x.x - 2 * h, x.y}, side) - 8.0 * f({x.x - h, x.y}, side) +
                           8.0 * f({x.x + h, x.y}, side) - f({x.x + 2 * h, x.y}, side)) /
                          (12.0 * h);
        const double gy = (f({x.x, x.y - 2 * h}, side) - 8.0 * f({x.x, x.y - h}, side) +
                           8.0 * f({x.x, x.y + h}, side) - f({x.x, x.y + 2 * h}, side)) /
                          (12.0 * h);
        return Vec2{gx, gy};
      };
      const Vec2 gy_err = mc.exact_state_grad(x, side) - grad_fd(mc.exact_state);
      check(norm(gy_err) <= 1e-6, "state gradient formula", norm(gy_err));
      const Vec2 gp_err = mc.exact_adjoint_grad(x, side) - grad_fd(mc.exact_adjoint);
      check(norm(gp_err) <= 1e-6, "adjoint gradient formula", norm(gp_err));
    }
  }
  if (n_minus < 5 || n_plus < 5)
    throw std::runtime_error("validate_case: too few interior sample points");

  // interface checks
  for (const Vec2& x : sample_interface_points(ls, 24)) {
    const double jump_y = mc.exact_state(x, -1) - mc.exact_state(x, 1);
    check(std::abs(jump_y) <= 1e-8, "state continuity across the interface", jump_y);
    const double jump_p = mc.exact_adjoint(x, -1) - mc.exact_adjoint(x, 1);
    check(std::abs(jump_p) <= 1e-8, "adjoint continuity across the interface", jump_p);

    const Vec2 g = ls.grad(x);
    const Vec2 n = (1.0 / norm(g)) * g;
    const double p_flux = mc.beta_minus * dot(mc.exact_adjoint_grad(x, -1), n) -
                          mc.beta_plus * dot(mc.exact_adjoint_grad(x, 1), n);
    check(std::abs(p_flux) <= 1e-8, "adjoint flux continuity across the interface", p_flux);

    const double y_flux = mc.beta_minus * dot(mc.exact_state_grad(x, -1), n) -
                          mc.beta_plus * dot(mc.exact_state_grad(x, 1), n);
    const double flux_res = y_flux - (mc.exact_control(x) + mc.neumann_data(x));
    check(std::abs(flux_res) <= 1e-6, "state flux jump matches control plus data", flux_res);

    const double proj = project_box(
        mc.control_shift(x) - mc.exact_adjoint(x, 1) / mc.alpha, mc.bounds);
    check(std::abs(proj - mc.exact_control(x)) <= 1e-8,
          "projection identity for the exact control", proj - mc.exact_control(x));
  }
}

}  // namespace ifem
