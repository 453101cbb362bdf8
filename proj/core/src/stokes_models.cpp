#include "scfd/stokes_models.hpp"

#include <stdexcept>

namespace scfd {

namespace {

ParamCoeff inv_re() { return ParamCoeff::Re().inverse(); }
ParamCoeff hh() { return ParamCoeff::h(); }

// Integrand A dx + B dy over the boundary of a square minus the area term,
// all given as templates anchored at the evaluation point.
struct IntegralForm {
  DiffncePoly a;     // coefficient of dx
  DiffncePoly b;     // coefficient of dy
  DiffncePoly area;  // integrated over the interior
};

// Midpoint contour rule on the counter-clockwise square with corners
// (x0, y0) and (x0 + s, y0 + s) in index units; s must be even.
DiffncePoly midpoint_contour(const IntegralForm& f, int x0, int y0, int s) {
  const ParamCoeff len = ParamCoeff(long(s)) * hh();
  const int m = s / 2;
  DiffncePoly r;
  r.axpy(len, f.a, x0 + m, y0);              // bottom, dx > 0
  r.axpy(len, f.b, x0 + s, y0 + m);          // right, dy > 0
  r.axpy(-len, f.a, x0 + m, y0 + s);         // top, dx < 0
  r.axpy(-len, f.b, x0, y0 + m);             // left, dy < 0
  r.axpy(-(len * len), f.area, x0 + m, y0 + m);
  return r;
}

// Trapezoid rule for the integral of d (the derivative of base) over one
// cell in the given axis.
DiffncePoly trapezoid_relation(GridIndet d_indet, GridIndet base, int axis) {
  int da = axis == 0 ? 1 : 0, db = axis == 1 ? 1 : 0;
  ParamCoeff half_h = ParamCoeff::rational(1, 2) * hh();
  DiffncePoly r;
  r.add({d_indet, da, db}, half_h);
  r.add({d_indet, 0, 0}, half_h);
  r.add({base, da, db}, ParamCoeff(-1));
  r.add({base, 0, 0}, ParamCoeff(1));
  return r;
}

}  // namespace

std::vector<DiffPoly> stokes_system() {
  using enum DiffIndet;
  DiffPoly F1 = d(u, 1, 0) + d(v, 0, 1);
  DiffPoly F2 = d(p, 1, 0) - laplacian(d(u)) * inv_re() - d(f1);
  DiffPoly F3 = d(p, 0, 1) - laplacian(d(v)) * inv_re() - d(f2);
  return {F1, F2, F3};
}

std::vector<DiffPoly> involutive_system() {
  using enum DiffIndet;
  DiffPoly F1 = d(u, 1, 0) + d(v, 0, 1);
  DiffPoly F2 = d(p, 1, 0) - (d(u, 0, 2) - d(v, 1, 1)) * inv_re() - d(f1);
  DiffPoly F3 = d(p, 0, 1) - (d(v, 2, 0) + d(v, 0, 2)) * inv_re() - d(f2);
  DiffPoly F4 = d(p, 2, 0) + d(p, 0, 2) - d(f1, 1, 0) - d(f2, 0, 1);
  return {F1, F2, F3, F4};
}

DiffPoly integrability_condition() {
  auto F = stokes_system();
  return derivative(F[1], 1, 0) + derivative(F[2], 0, 1) + laplacian(F[0]) * inv_re();
}

std::vector<DiffncePoly> discretize() {
  using enum GridIndet;
  const ParamCoeff ir = inv_re();
  IntegralForm continuity{-g(v), g(u), {}};
  IntegralForm xmom{g(uy) * ir, g(p) - g(ux) * ir, g(f1)};
  IntegralForm ymom{-(g(p) - g(vy) * ir), -(g(vx) * ir), g(f2)};
  std::vector<DiffncePoly> out;
  for (const auto& f : {continuity, xmom, ymom}) out.push_back(midpoint_contour(f, 0, 0, 2));
  out.push_back(trapezoid_relation(ux, u, 0));
  out.push_back(trapezoid_relation(vx, v, 0));
  out.push_back(trapezoid_relation(uy, u, 1));
  out.push_back(trapezoid_relation(vy, v, 1));
  return out;
}

std::vector<DiffncePoly> discretized_system_literal() {
  const char* text[] = {
      "(u[j+2,k+1] - u[j,k+1])*2*h + (v[j+1,k+2] - v[j+1,k])*2*h",
      "1/Re*(uy[j+1,k] - uy[j+1,k+2])*2*h + (p[j+2,k+1] - 1/Re*ux[j+2,k+1])*2*h"
      " - (p[j,k+1] - 1/Re*ux[j,k+1])*2*h - 4*f1[j+1,k+1]*h^2",
      "-((p[j+1,k] - 1/Re*vy[j+1,k]) - (p[j+1,k+2] - 1/Re*vy[j+1,k+2]))*2*h"
      " + (-1/Re*vx[j+2,k+1] + 1/Re*vx[j,k+1])*2*h - 4*f2[j+1,k+1]*h^2",
      "(ux[j+1,k] + ux[j,k])/2*h - u[j+1,k] + u[j,k]",
      "(vx[j+1,k] + vx[j,k])/2*h - v[j+1,k] + v[j,k]",
      "(uy[j,k+1] + uy[j,k])/2*h - u[j,k+1] + u[j,k]",
      "(vy[j,k+1] + vy[j,k])/2*h - v[j,k+1] + v[j,k]",
  };
  std::vector<DiffncePoly> out;
  for (const char* t : text) out.push_back(parse_diffnce_poly(t));
  return out;
}

DiffncePoly delta1(GridIndet x) {
  DiffncePoly r = g(x, 2, 1) + g(x, 1, 2) + g(x, 1, 0) + g(x, 0, 1);
  r.add({x, 1, 1}, ParamCoeff(-4));
  return r * hh().pow(-2);
}

DiffncePoly delta2(GridIndet x) {
  DiffncePoly r = g(x, 4, 2) + g(x, 2, 4) + g(x, 2, 0) + g(x, 0, 2);
  r.add({x, 2, 2}, ParamCoeff(-4));
  return r * (ParamCoeff(4) * hh().pow(2)).inverse();
}

std::vector<DiffncePoly> scheme(SchemeKind kind) {
  using enum GridIndet;
  const ParamCoeff ir = inv_re();
  const ParamCoeff i2h = (ParamCoeff(2) * hh()).inverse();
  DiffncePoly F1 = (g(u, 2, 1) - g(u, 0, 1)) * i2h + (g(v, 1, 2) - g(v, 1, 0)) * i2h;
  DiffncePoly F2 = (g(p, 2, 1) - g(p, 0, 1)) * i2h - delta1(u) * ir - g(f1, 1, 1);
  DiffncePoly F3 = (g(p, 1, 2) - g(p, 1, 0)) * i2h - delta1(v) * ir - g(f2, 1, 1);
  DiffncePoly F4;
  if (kind == SchemeKind::Consistent)
    F4 = delta2(p) - (g(f1, 3, 2) - g(f1, 1, 2)) * i2h - (g(f2, 2, 3) - g(f2, 2, 1)) * i2h;
  else
    F4 = delta1(p) - (g(f1, 2, 1) - g(f1, 0, 1)) * i2h - (g(f2, 1, 2) - g(f2, 1, 0)) * i2h;
  return {F1, F2, F3, F4};
}

std::vector<std::pair<mpq_class, mpq_class>> scheme_base_points(SchemeKind kind) {
  std::vector<std::pair<mpq_class, mpq_class>> b(4, {1, 1});
  if (kind == SchemeKind::Consistent) b[3] = {2, 2};
  return b;
}

std::string scheme_name(SchemeKind kind) { return kind == SchemeKind::Consistent ? "consistent" : "compact"; }

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "consistent" || name == "paper" || name == "s-consistent") return SchemeKind::Consistent;
  if (name == "compact") return SchemeKind::Compact;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected consistent or compact)");
}

std::vector<DiffncePoly> derive_scheme_by_elimination() {
  using enum GridIndet;
  auto kept = eliminate(discretize(), {ux, uy, vx, vy});
  if (!same_module(kept, s_consistent_scheme()))
    throw std::runtime_error("elimination does not reproduce the scheme");
  return kept;
}

DiffncePoly poisson_from_quadrature() {
  using enum GridIndet;
  const ParamCoeff i2h = (ParamCoeff(2) * hh()).inverse();
  // p_x and p_y at an edge midpoint from the 2h relations with the midpoint rule.
  DiffncePoly px = (g(p, 1, 0) - g(p, -1, 0)) * i2h;
  DiffncePoly py = (g(p, 0, 1) - g(p, 0, -1)) * i2h;
  IntegralForm poisson{-(py - g(f2)), px - g(f1), {}};
  DiffncePoly r = midpoint_contour(poisson, 0, 0, 2);
  r *= (ParamCoeff(4) * hh().pow(2)).inverse();
  return normalize_shifts(r);
}

std::pair<int, int> stencil_width(const DiffncePoly& q) {
  return {q.max_a() - q.min_a(), q.max_b() - q.min_b()};
}

}  // namespace scfd
