#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "scfd/numerics.hpp"

namespace scfd::num {

std::string method_name(Method m) { return m == Method::Scheme ? "scheme" : "mac"; }

ErrorNorms field_errors(const GridField& f, const ManufacturedCase& c) {
  const auto& g = f.grid;
  ErrorNorms e;
  double su = 0, sv = 0, sp = 0, mean_speed = 0, max_speed_err = 0;
  std::size_t cnt = 0;
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k) {
      auto n = g.node(j, k);
      if (!f.solid.empty() && f.solid[n]) continue;
      double x = g.x(j), y = g.y(k);
      double ue = c.u.eval(x, y), ve = c.v.eval(x, y), pe = c.p.eval(x, y);
      double du = f.u[n] - ue, dv = f.v[n] - ve, dp = f.p[n] - pe;
      e.max_u = std::max(e.max_u, std::abs(du));
      e.max_v = std::max(e.max_v, std::abs(dv));
      e.max_p = std::max(e.max_p, std::abs(dp));
      su += du * du, sv += dv * dv, sp += dp * dp;
      double speed = std::hypot(ue, ve);
      mean_speed += speed;
      max_speed_err = std::max(max_speed_err, std::abs(std::hypot(f.u[n], f.v[n]) - speed));
      ++cnt;
    }
  if (cnt == 0) return e;
  e.l2_u = std::sqrt(su / cnt), e.l2_v = std::sqrt(sv / cnt), e.l2_p = std::sqrt(sp / cnt);
  mean_speed /= cnt;
  e.rel_velocity = mean_speed > 0 ? max_speed_err / mean_speed : max_speed_err;
  return e;
}

std::optional<double> loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
  if (h.size() != e.size() || h.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(e[i] > 1e-12) || !(h[i] > 0)) return std::nullopt;
    mx += std::log(h[i]), my += std::log(e[i]);
  }
  mx /= h.size(), my /= h.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(e[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? std::optional<double>(sxy / sxx) : std::nullopt;
}

PowerFit fit_power(const std::vector<double>& h, const std::vector<double>& e) {
  auto s = loglog_slope(h, e);
  if (!s) throw std::invalid_argument("error data not suitable for a power fit");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) mx += std::log(h[i]), my += std::log(e[i]);
  mx /= h.size(), my /= h.size();
  return {std::exp(my - *s * mx), *s};
}

namespace {

GridSpec level_grid(const GridSpec& base, int cells) {
  GridSpec g = base;
  g.nx = static_cast<int>(std::lround(cells * (base.x1 - base.x0))) + 1;
  g.ny = static_cast<int>(std::lround(cells * (base.y1 - base.y0))) + 1;
  return g;
}

LevelResult run_level(const CaseSpec& c, const ManufacturedCase& mc, Method m, int cells) {
  auto t0 = std::chrono::steady_clock::now();
  LevelResult lr;
  lr.cells = cells;
  GridSpec g = level_grid(c.grid, cells);
  lr.h = g.h();
  FlowProblem pb = manufactured_problem(mc, g);
  if (m == Method::Scheme) {
    auto sys = assemble(pb, c.mode, Ordering::Interleaved, c.scheme);
    auto sol = solve_sparse(sys, c.tolerance);
    lr.residual = sol.residual;
    lr.err = field_errors(to_field(sys, sol.x), mc);
  } else {
    auto r = mac_solve(pb, c.tolerance);
    lr.residual = r.residual;
    lr.err = field_errors(r.nodes, mc);
    lr.err.max_p = r.p_error;
  }
  lr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return lr;
}

}  // namespace

ConvergenceTable convergence_study(const CaseSpec& c, Method m) {
  if (c.levels.size() < 2) throw std::invalid_argument("convergence study needs at least two levels");
  auto mc = manufactured_case(c.name, c.Re);
  ConvergenceTable t;
  t.method = m;
  t.levels.resize(c.levels.size());
  const int nt = std::max(1, std::min<int>(thread_count(), static_cast<int>(c.levels.size())));
  std::vector<std::exception_ptr> errs(c.levels.size());
  auto work = [&](int b) {
    for (std::size_t i = b; i < c.levels.size(); i += nt) {
      try {
        t.levels[i] = run_level(c, mc, m, c.levels[i]);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int b = 0; b < nt; ++b) pool.emplace_back(work, b);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<double> h, eu, ev, ep, lu, lv;
  for (const auto& l : t.levels) {
    h.push_back(l.h);
    eu.push_back(l.err.max_u), ev.push_back(l.err.max_v), ep.push_back(l.err.max_p);
    lu.push_back(l.err.l2_u), lv.push_back(l.err.l2_v);
  }
  t.slope_u = loglog_slope(h, eu);
  t.slope_v = loglog_slope(h, ev);
  t.slope_p = loglog_slope(h, ep);
  t.slope_l2_u = loglog_slope(h, lu);
  t.slope_l2_v = loglog_slope(h, lv);
  return t;
}

Comparison compare_schemes(const CaseSpec& c) {
  Comparison out;
  out.Re = c.Re;
  out.scheme_table = convergence_study(c, Method::Scheme);
  out.mac_table = convergence_study(c, Method::Mac);
  std::vector<double> h, es, em;
  for (std::size_t i = 0; i < c.levels.size(); ++i) {
    h.push_back(out.scheme_table.levels[i].h);
    es.push_back(out.scheme_table.levels[i].err.rel_velocity);
    em.push_back(out.mac_table.levels[i].err.rel_velocity);
  }
  if (!loglog_slope(h, es) || !loglog_slope(h, em)) {
    out.skipped = true;
    return out;
  }
  out.scheme = fit_power(h, es);
  out.mac = fit_power(h, em);
  out.h_scheme = std::pow(c.budget / out.scheme.C, 1.0 / out.scheme.s);
  out.h_mac = std::pow(c.budget / out.mac.C, 1.0 / out.mac.s);
  out.ratio = out.h_scheme / out.h_mac;
  return out;
}

CaseSpec default_porous_case() {
  CaseSpec c;
  c.name = "porous";
  c.Re = 1;
  c.grid.x0 = 0, c.grid.x1 = 2, c.grid.y0 = 0, c.grid.y1 = 1;
  c.grid.nx = 65, c.grid.ny = 33;
  c.obstacles = {{0.55, 0.30, 0.12}, {0.80, 0.70, 0.12}, {1.00, 0.32, 0.12}, {1.20, 0.68, 0.12}, {1.45, 0.35, 0.12}};
  return c;
}

PorousResult porous_demo(const CaseSpec& c) {
  const GridSpec& g = c.grid;
  g.validate();
  FlowProblem pb;
  pb.grid = g;
  pb.Re = c.Re;
  const double x0 = g.x0, x1 = g.x1, y0 = g.y0, y1 = g.y1;
  const double tol = 1e-9 * g.h();
  pb.u_boundary = [=](double x, double y) {
    if (std::abs(x - x0) > tol && std::abs(x - x1) > tol) return 0.0;
    double eta = (y - y0) / (y1 - y0);
    return 4 * eta * (1 - eta);
  };
  pb.v_boundary = [](double, double) { return 0.0; };
  pb.f1 = pb.v_boundary;
  pb.f2 = pb.v_boundary;
  pb.p_reference = pb.v_boundary;
  pb.solid.assign(g.nodes(), 0);
  PorousResult out;
  for (int j = 1; j < g.nx - 1; ++j)
    for (int k = 1; k < g.ny - 1; ++k)
      for (const auto& o : c.obstacles)
        if (std::hypot(g.x(j) - o.cx, g.y(k) - o.cy) <= o.r) {
          pb.solid[g.node(j, k)] = 1;
          ++out.solid_nodes;
          break;
        }
  auto sys = assemble(pb, SolverMode::Coupled);
  auto sol = solve_sparse(sys, c.tolerance);
  out.residual = sol.residual;
  out.field = to_field(sys, sol.x);
  auto flux = [&](int j) {
    double s = 0;
    for (int k = 0; k < g.ny; ++k) s += (k == 0 || k == g.ny - 1 ? 0.5 : 1.0) * out.field.u[g.node(j, k)];
    return s * g.h();
  };
  out.flux_in = flux(1);
  out.flux_out = flux(g.nx - 2);
  out.imbalance = std::abs(out.flux_in - out.flux_out) / std::abs(out.flux_in);
  return out;
}

ResidualCheck modified_equation_check(SchemeKind kind, const ManufacturedCase& c,
                                      const std::vector<std::pair<double, double>>& points,
                                      const std::vector<int>& cells) {
  if (cells.size() < 2) throw std::invalid_argument("need at least two grid levels");
  const auto sch = scheme(kind);
  const auto base = scheme_base_points(kind);
  const auto flow = modified_equations(sch, base, 2, involutive_system());
  const std::size_t n = sch.size();
  ResidualCheck rc;
  for (int m : cells) rc.h.push_back(1.0 / m);
  rc.fitted.assign(n, {});
  rc.analytic.assign(n, {});
  rc.rel_error.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // raw grade 2 = scale * M_i[2] + sum_j L_ij(M_j[2]) on exact solutions
    DiffPoly g2 = flow.equations[i].grade(2) * flow.scales[i];
    for (std::size_t j = 0; j < n; ++j)
      if (!flow.couplings[i][j].empty()) g2 += apply_operator(flow.couplings[i][j], flow.equations[j].grade(2));
    const double ba = base[i].first.get_d(), bb = base[i].second.get_d();
    const int lead = flow.leading_grades[i];
    double gmax = 0;
    for (const auto& [x, y] : points) {
      Eigen::MatrixXd A(cells.size(), 2);
      Eigen::VectorXd r(cells.size());
      for (std::size_t l = 0; l < cells.size(); ++l) {
        double h = rc.h[l], s = 0;
        for (const auto& [t, k] : sch[i].terms()) {
          double px = x + (t.a - ba) * h, py = y + (t.b - bb) * h;
          double val = 0;
          switch (t.indet) {
            case GridIndet::u:
              val = c.u.eval(px, py);
              break;
            case GridIndet::v:
              val = c.v.eval(px, py);
              break;
            case GridIndet::p:
              val = c.p.eval(px, py);
              break;
            case GridIndet::f1:
              val = c.f1.eval(px, py);
              break;
            case GridIndet::f2:
              val = c.f2.eval(px, py);
              break;
            default:
              throw std::invalid_argument("scheme uses auxiliary unknowns");
          }
          s += k.evaluate(c.Re, h) * val;
        }
        r[Eigen::Index(l)] = s / std::pow(h, lead);
        A(Eigen::Index(l), 0) = h * h;
        A(Eigen::Index(l), 1) = std::pow(h, 4);
      }
      Eigen::Vector2d coef = A.colPivHouseholderQr().solve(r);
      rc.fitted[i].push_back(coef[0]);
      double an = evaluate(g2, c, x, y);
      rc.analytic[i].push_back(an);
      // size of the individual terms, so that cancelling sums are not
      // compared against rounding noise
      double mag = 0;
      for (const auto& [t, k] : g2.terms()) mag += std::abs(k.evaluate(c.Re, 1.0) * c.field(t.indet).eval(x, y, t.a, t.b));
      gmax = std::max(gmax, mag);
    }
    double worst = 0;
    for (std::size_t q = 0; q < points.size(); ++q)
      worst = std::max(worst, std::abs(rc.fitted[i][q] - rc.analytic[i][q]));
    rc.rel_error[i] = gmax > 0 ? worst / gmax : worst;
    rc.worst = std::max(rc.worst, rc.rel_error[i]);
  }
  return rc;
}

}  // namespace scfd::num
