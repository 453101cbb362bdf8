#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "scfd/numerics.hpp"

namespace scfd::num {

MacResult mac_solve(const FlowProblem& pb, double tolerance) {
  const GridSpec& g = pb.grid;
  g.validate();
  if (!pb.solid.empty()) throw std::invalid_argument("MAC baseline does not support obstacles");
  const int Nx = g.nx - 1, Ny = g.ny - 1;
  const double h = g.h(), c = 1.0 / (h * h * pb.Re);
  const std::size_t nu = static_cast<std::size_t>(Nx + 1) * Ny, nv = static_cast<std::size_t>(Nx) * (Ny + 1);
  const std::size_t np = static_cast<std::size_t>(Nx) * Ny, n = nu + nv + np;
  auto iu = [&](int i, int j) { return static_cast<std::size_t>(i) * Ny + j; };
  auto iv = [&](int i, int j) { return nu + static_cast<std::size_t>(i) * (Ny + 1) + j; };
  auto ip = [&](int i, int j) { return nu + nv + static_cast<std::size_t>(i) * Ny + j; };
  std::vector<Eigen::Triplet<double>> t;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  auto add = [&](std::size_t r, std::size_t col, double w) { t.emplace_back(int(r), int(col), w); };

  // u on vertical faces (i h, (j + 1/2) h)
  for (int i = 0; i <= Nx; ++i)
    for (int j = 0; j < Ny; ++j) {
      auto r = iu(i, j);
      double x = g.x0 + i * h, y = g.y0 + (j + 0.5) * h;
      if (i == 0 || i == Nx) {
        add(r, r, 1);
        b[Eigen::Index(r)] = pb.u_boundary(x, y);
        continue;
      }
      double rhs = pb.f1(x, y);
      add(r, r, 4 * c);
      add(r, iu(i - 1, j), -c);
      add(r, iu(i + 1, j), -c);
      for (int dj : {-1, 1}) {
        int jj = j + dj;
        if (jj >= 0 && jj < Ny) {
          add(r, iu(i, jj), -c);
        } else {
          // ghost value 2 g - u reflects the wall value
          add(r, r, c);
          rhs += 2 * c * pb.u_boundary(x, jj < 0 ? g.y0 : g.y1);
        }
      }
      add(r, ip(i, j), 1 / h);
      add(r, ip(i - 1, j), -1 / h);
      b[Eigen::Index(r)] = rhs;
    }
  // v on horizontal faces ((i + 1/2) h, j h)
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j <= Ny; ++j) {
      auto r = iv(i, j);
      double x = g.x0 + (i + 0.5) * h, y = g.y0 + j * h;
      if (j == 0 || j == Ny) {
        add(r, r, 1);
        b[Eigen::Index(r)] = pb.v_boundary(x, y);
        continue;
      }
      double rhs = pb.f2(x, y);
      add(r, r, 4 * c);
      add(r, iv(i, j - 1), -c);
      add(r, iv(i, j + 1), -c);
      for (int di : {-1, 1}) {
        int ii = i + di;
        if (ii >= 0 && ii < Nx) {
          add(r, iv(ii, j), -c);
        } else {
          add(r, r, c);
          rhs += 2 * c * pb.v_boundary(ii < 0 ? g.x0 : g.x1, y);
        }
      }
      add(r, ip(i, j), 1 / h);
      add(r, ip(i, j - 1), -1 / h);
      b[Eigen::Index(r)] = rhs;
    }
  // continuity per cell, gauge in cell (0, 0)
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < Ny; ++j) {
      auto r = ip(i, j);
      if (i == 0 && j == 0) {
        add(r, r, 1);
        b[Eigen::Index(r)] = pb.p_reference(g.x0 + 0.5 * h, g.y0 + 0.5 * h);
        continue;
      }
      add(r, iu(i + 1, j), 1 / h);
      add(r, iu(i, j), -1 / h);
      add(r, iv(i, j + 1), 1 / h);
      add(r, iv(i, j), -1 / h);
    }

  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::SparseMatrix<double> a(dim, dim);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) throw std::runtime_error("MAC factorization failed: " + lu.lastErrorMessage());
  Eigen::VectorXd x = lu.solve(b);
  auto resid = [&]() { return (a * x - b).norm() / std::max(b.norm(), 1e-300); };
  double res = resid();
  for (int it = 0; it < 3 && res > tolerance; ++it) {
    x += lu.solve(b - a * x);
    res = resid();
  }
  if (!(res <= tolerance))
    throw std::runtime_error(fmt::format("MAC solve did not reach tolerance (residual {:.3e})", res));

  MacResult out;
  out.residual = res;
  out.nodes = GridField(g);
  auto U = [&](int i, int j) { return x[Eigen::Index(iu(i, j))]; };
  auto V = [&](int i, int j) { return x[Eigen::Index(iv(i, j))]; };
  auto P = [&](int i, int j) { return x[Eigen::Index(ip(i, j))]; };
  for (int i = 0; i <= Nx; ++i)
    for (int j = 0; j <= Ny; ++j) {
      auto nd = g.node(i, j);
      double xn = g.x(i), yn = g.y(j);
      out.nodes.u[nd] = (j == 0 || j == Ny) ? pb.u_boundary(xn, yn) : 0.5 * (U(i, j - 1) + U(i, j));
      out.nodes.v[nd] = (i == 0 || i == Nx) ? pb.v_boundary(xn, yn) : 0.5 * (V(i - 1, j) + V(i, j));
      double s = 0;
      int cnt = 0;
      for (int ci : {i - 1, i})
        for (int cj : {j - 1, j})
          if (ci >= 0 && ci < Nx && cj >= 0 && cj < Ny) s += P(ci, cj), ++cnt;
      out.nodes.p[nd] = s / cnt;
    }
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < Ny; ++j) {
      double d = (U(i + 1, j) - U(i, j) + V(i, j + 1) - V(i, j)) / h;
      if (!(i == 0 && j == 0)) out.max_divergence = std::max(out.max_divergence, std::abs(d));
      double pe = pb.p_reference(g.x0 + (i + 0.5) * h, g.y0 + (j + 0.5) * h);
      out.p_error = std::max(out.p_error, std::abs(P(i, j) - pe));
    }
  return out;
}

}  // namespace scfd::num
