#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "scfd/numerics.hpp"

namespace scfd::num {

FlowProblem manufactured_problem(const ManufacturedCase& c, const GridSpec& g) {
  FlowProblem pb;
  pb.grid = g;
  pb.Re = c.Re;
  pb.u_boundary = [c](double x, double y) { return c.u.eval(x, y); };
  pb.v_boundary = [c](double x, double y) { return c.v.eval(x, y); };
  pb.f1 = [c](double x, double y) { return c.f1.eval(x, y); };
  pb.f2 = [c](double x, double y) { return c.f2.eval(x, y); };
  pb.p_reference = [c](double x, double y) { return c.p.eval(x, y); };
  return pb;
}

int Stencil::reach() const {
  int r = 0;
  for (const auto& e : entries) r = std::max({r, std::abs(e.dj), std::abs(e.dk)});
  return r;
}

Stencil make_stencil(const DiffncePoly& g, const BasePoint& base, double Re, double h) {
  if (base.first.get_den() != 1 || base.second.get_den() != 1)
    throw std::invalid_argument("stencil base point must be a grid node");
  const int ba = static_cast<int>(base.first.get_num().get_si());
  const int bb = static_cast<int>(base.second.get_num().get_si());
  Stencil s;
  for (const auto& [t, c] : g.terms()) {
    int field = 0;
    switch (t.indet) {
      case GridIndet::u:
        field = 0;
        break;
      case GridIndet::v:
        field = 1;
        break;
      case GridIndet::p:
        field = 2;
        break;
      case GridIndet::f1:
        field = 3;
        break;
      case GridIndet::f2:
        field = 4;
        break;
      default:
        throw std::invalid_argument("stencil with auxiliary derivative unknowns");
    }
    s.entries.push_back({field, t.a - ba, t.b - bb, c.evaluate(Re, h)});
  }
  return s;
}

std::size_t SparseSystem::unknown(int field, int j, int k) const {
  const std::size_t n = grid.node(j, k);
  return ordering == Ordering::Interleaved ? 3 * n + field : field * grid.nodes() + n;
}

Eigen::SparseMatrix<double> SparseSystem::matrix() const {
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

namespace {

struct RowSink {
  std::vector<Eigen::Triplet<double>> t;
  std::vector<std::pair<std::size_t, double>> b;
  void add(std::size_t r, std::size_t c, double w) {
    if (w != 0.0) t.emplace_back(static_cast<int>(r), static_cast<int>(c), w);
  }
};

class Assembler {
 public:
  Assembler(const FlowProblem& pb, SolverMode mode, SchemeKind kind, SparseSystem& sys)
      : pb_(pb), g_(pb.grid), mode_(mode), kind_(kind), sys_(sys), h_(g_.h()) {
    auto sc = scheme(SchemeKind::Consistent);
    auto bc = scheme_base_points(SchemeKind::Consistent);
    auto cp = scheme(SchemeKind::Compact);
    auto bp = scheme_base_points(SchemeKind::Compact);
    for (int i = 0; i < 4; ++i) s_[i] = make_stencil(sc[i], bc[i], pb.Re, h_);
    s41_ = make_stencil(cp[3], bp[3], pb.Re, h_);
  }

  bool solid(int j, int k) const { return !pb_.solid.empty() && pb_.solid[g_.node(j, k)]; }

  void node(int j, int k, RowSink& out) {
    const double x = g_.x(j), y = g_.y(k);
    const auto ru = sys_.unknown(0, j, k), rv = sys_.unknown(1, j, k), rp = sys_.unknown(2, j, k);
    if (solid(j, k)) {
      out.add(ru, ru, 1.0);
      out.add(rv, rv, 1.0);
      solid_pressure(j, k, rp, out);
      return;
    }
    if (g_.on_boundary(j, k)) {
      out.add(ru, ru, 1.0);
      out.b.emplace_back(ru, pb_.u_boundary(x, y));
      out.add(rv, rv, 1.0);
      out.b.emplace_back(rv, pb_.v_boundary(x, y));
    } else {
      apply(s_[1], j, k, ru, out);
      apply(s_[2], j, k, rv, out);
    }
    if (g_.node(j, k) == sys_.gauge_node) {
      out.add(rp, rp, 1.0);
      out.b.emplace_back(rp, pb_.p_reference(x, y));
      return;
    }
    pressure_row(j, k, rp, out);
  }

 private:
  void apply(const Stencil& s, int j, int k, std::size_t r, RowSink& out) {
    double rhs = 0;
    for (const auto& e : s.entries) {
      int jj = j + e.dj, kk = k + e.dk;
      if (e.field < 3)
        out.add(r, sys_.unknown(e.field, jj, kk), e.w);
      else
        rhs -= e.w * (e.field == 3 ? pb_.f1 : pb_.f2)(g_.x(jj), g_.y(kk));
    }
    if (rhs != 0.0) out.b.emplace_back(r, rhs);
  }

  // Zero pressure gradient towards the first fluid neighbour, else p = 0.
  void solid_pressure(int j, int k, std::size_t r, RowSink& out) {
    out.add(r, r, 1.0);
    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : nb) {
      int jj = j + d[0], kk = k + d[1];
      if (jj < 0 || kk < 0 || jj >= g_.nx || kk >= g_.ny || solid(jj, kk)) continue;
      out.add(r, sys_.unknown(2, jj, kk), -1.0);
      return;
    }
  }

  // d/dn along axis from the boundary node inward, second order one-sided;
  // weights for the derivative along +axis.
  void one_sided_first(int field, int j, int k, int axis, int s, double scale, std::size_t r, RowSink& out) {
    const double w[3] = {-3.0, 4.0, -1.0};
    for (int c = 0; c < 3; ++c) {
      int jj = j + (axis == 0 ? s * c : 0), kk = k + (axis == 1 ? s * c : 0);
      out.add(r, sys_.unknown(field, jj, kk), scale * s * w[c] / (2 * h_));
    }
  }

  void one_sided_second(int field, int j, int k, int axis, int s, double scale, std::size_t r, RowSink& out) {
    const double w[4] = {2.0, -5.0, 4.0, -1.0};
    for (int c = 0; c < 4; ++c) {
      int jj = j + (axis == 0 ? s * c : 0), kk = k + (axis == 1 ? s * c : 0);
      out.add(r, sys_.unknown(field, jj, kk), scale * w[c] / (h_ * h_));
    }
  }

  void central_first(int field, int j, int k, int axis, double scale, std::size_t r, RowSink& out) {
    int dj = axis == 0, dk = axis == 1;
    out.add(r, sys_.unknown(field, j + dj, k + dk), scale / (2 * h_));
    out.add(r, sys_.unknown(field, j - dj, k - dk), -scale / (2 * h_));
  }

  void central_second(int field, int j, int k, int axis, double scale, std::size_t r, RowSink& out) {
    int dj = axis == 0, dk = axis == 1;
    out.add(r, sys_.unknown(field, j + dj, k + dk), scale / (h_ * h_));
    out.add(r, sys_.unknown(field, j, k), -2 * scale / (h_ * h_));
    out.add(r, sys_.unknown(field, j - dj, k - dk), scale / (h_ * h_));
  }

  int inward(int idx, int n) const { return idx == 0 ? 1 : (idx == n - 1 ? -1 : 0); }

  // Momentum component `axis` (0: x with u, f1; 1: y with v, f2) at a
  // boundary node, one-sided along every axis the node sits on, times w.
  void momentum(int j, int k, int axis, double w, std::size_t r, RowSink& out) {
    const int sx = inward(j, g_.nx), sy = inward(k, g_.ny);
    const int s[2] = {sx, sy};
    const int field = axis;
    if (s[axis] != 0)
      one_sided_first(2, j, k, axis, s[axis], w, r, out);
    else
      central_first(2, j, k, axis, w, r, out);
    for (int a = 0; a < 2; ++a) {
      if (s[a] != 0)
        one_sided_second(field, j, k, a, s[a], -w / pb_.Re, r, out);
      else
        central_second(field, j, k, a, -w / pb_.Re, r, out);
    }
    out.b.emplace_back(r, w * (axis == 0 ? pb_.f1 : pb_.f2)(g_.x(j), g_.y(k)));
  }

  void continuity_one_sided(int j, int k, std::size_t r, RowSink& out) {
    const int s[2] = {inward(j, g_.nx), inward(k, g_.ny)};
    for (int a = 0; a < 2; ++a) {
      if (s[a] != 0)
        one_sided_first(a, j, k, a, s[a], 1.0, r, out);
      else
        central_first(a, j, k, a, 1.0, r, out);
    }
  }

  void pressure_row(int j, int k, std::size_t r, RowSink& out) {
    const bool bx = j == 0 || j == g_.nx - 1, by = k == 0 || k == g_.ny - 1;
    if (bx && by) {
      // momentum along the inward diagonal
      momentum(j, k, 0, inward(j, g_.nx), r, out);
      momentum(j, k, 1, inward(k, g_.ny), r, out);
      return;
    }
    if (mode_ == SolverMode::Coupled) {
      if (bx)
        momentum(j, k, 0, 1.0, r, out);
      else if (by)
        momentum(j, k, 1, 1.0, r, out);
      else
        apply(s_[0], j, k, r, out);
      return;
    }
    if (bx || by) {
      continuity_one_sided(j, k, r, out);
      return;
    }
    const bool deep = j >= 2 && k >= 2 && j <= g_.nx - 3 && k <= g_.ny - 3;
    if (deep && kind_ == SchemeKind::Consistent) {
      apply(s_[3], j, k, r, out);
    } else {
      apply(s41_, j, k, r, out);
      if (kind_ == SchemeKind::Consistent) sys_.flagged[g_.node(j, k)] = 1;
    }
  }

  const FlowProblem& pb_;
  const GridSpec& g_;
  SolverMode mode_;
  SchemeKind kind_;
  SparseSystem& sys_;
  double h_;
  Stencil s_[4], s41_;
};

}  // namespace

SparseSystem assemble(const FlowProblem& pb, SolverMode mode, Ordering ordering, SchemeKind kind) {
  pb.grid.validate();
  if (!(pb.Re > 0)) throw std::invalid_argument("Re must be positive");
  if (!pb.solid.empty() && pb.solid.size() != pb.grid.nodes()) throw std::invalid_argument("mask size mismatch");
  SparseSystem sys;
  sys.grid = pb.grid;
  sys.ordering = ordering;
  sys.size = 3 * pb.grid.nodes();
  sys.rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sys.size));
  sys.flagged.assign(pb.grid.nodes(), 0);
  sys.solid = pb.solid;
  sys.gauge_node = mode == SolverMode::Coupled ? pb.grid.node(1, 1) : pb.grid.node(0, 2);
  if (!pb.solid.empty() && pb.solid[sys.gauge_node]) throw std::invalid_argument("gauge node lies in a solid");

  Assembler as(pb, mode, kind, sys);
  const int nx = pb.grid.nx, ny = pb.grid.ny;
  const int nt = std::max(1, std::min(thread_count(), nx));
  std::vector<RowSink> sinks(nt);
  auto work = [&](int b) {
    for (int j = b * nx / nt; j < (b + 1) * nx / nt; ++j)
      for (int k = 0; k < ny; ++k) as.node(j, k, sinks[b]);
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int b = 0; b < nt; ++b) pool.emplace_back(work, b);
    for (auto& t : pool) t.join();
  }
  for (auto& s : sinks) {
    sys.triplets.insert(sys.triplets.end(), s.t.begin(), s.t.end());
    for (const auto& [r, v] : s.b) sys.rhs[static_cast<Eigen::Index>(r)] += v;
  }
  return sys;
}

namespace {

double relative_residual(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  double nb = b.norm();
  double nr = (a * x - b).norm();
  return nb > 0 ? nr / nb : nr;
}

}  // namespace

SolveResult solve_sparse(const SparseSystem& s, double tolerance) {
  auto a = s.matrix();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) throw std::runtime_error("sparse factorization failed: " + lu.lastErrorMessage());
  SolveResult r;
  r.x = lu.solve(s.rhs);
  r.residual = relative_residual(a, r.x, s.rhs);
  while (r.residual > tolerance && r.refinements < 3) {
    Eigen::VectorXd d = lu.solve(s.rhs - a * r.x);
    r.x += d;
    r.residual = relative_residual(a, r.x, s.rhs);
    ++r.refinements;
  }
  if (!(r.residual <= tolerance) || !r.x.allFinite())
    throw std::runtime_error(fmt::format("linear solve did not reach tolerance {:.1e} (residual {:.3e})", tolerance,
                                         r.residual));
  return r;
}

SolveResult solve_dense(const SparseSystem& s) {
  auto a = s.matrix();
  Eigen::MatrixXd d(a);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(d);
  SolveResult r;
  r.x = lu.solve(s.rhs);
  r.residual = relative_residual(a, r.x, s.rhs);
  return r;
}

GridField to_field(const SparseSystem& s, const Eigen::VectorXd& x) {
  GridField f(s.grid);
  for (int j = 0; j < s.grid.nx; ++j)
    for (int k = 0; k < s.grid.ny; ++k) {
      auto n = s.grid.node(j, k);
      f.u[n] = x[static_cast<Eigen::Index>(s.unknown(0, j, k))];
      f.v[n] = x[static_cast<Eigen::Index>(s.unknown(1, j, k))];
      f.p[n] = x[static_cast<Eigen::Index>(s.unknown(2, j, k))];
    }
  f.flagged = s.flagged;
  f.solid = s.solid;
  return f;
}

double continuity_residual(const GridField& f) {
  const auto& g = f.grid;
  const double h = g.h();
  double m = 0;
  for (int j = 1; j < g.nx - 1; ++j)
    for (int k = 1; k < g.ny - 1; ++k) {
      if (!f.solid.empty() && f.solid[g.node(j, k)]) continue;
      double d = (f.u[g.node(j + 1, k)] - f.u[g.node(j - 1, k)] + f.v[g.node(j, k + 1)] - f.v[g.node(j, k - 1)]) /
                 (2 * h);
      m = std::max(m, std::abs(d));
    }
  return m;
}

}  // namespace scfd::num
