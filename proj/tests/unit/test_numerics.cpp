#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "scfd/numerics.hpp"

using namespace scfd;
using namespace scfd::num;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

GridField solve_field(const FlowProblem& pb, SolverMode m, Ordering o = Ordering::Interleaved) {
  auto s = assemble(pb, m, o);
  return to_field(s, solve_sparse(s).x);
}

// Plane Poiseuille flow: quadratic velocity and linear pressure, which every
// stencil of the scheme differentiates exactly.
FlowProblem poiseuille(const GridSpec& g, double Re) {
  FlowProblem pb;
  pb.grid = g;
  pb.Re = Re;
  pb.u_boundary = [](double, double y) { return 4 * y * (1 - y); };
  pb.v_boundary = [](double, double) { return 0.0; };
  pb.f1 = pb.f2 = [](double, double) { return 0.0; };
  pb.p_reference = [Re](double x, double) { return -8 * x / Re; };
  return pb;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("scfd_test_" + name);
  std::filesystem::create_directories(p);
  return p;
}

std::size_t line_count(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string l; std::getline(in, l);) ++n;
  return n;
}

}  // namespace

TEST(Grid, Validation) {
  GridSpec g;
  g.nx = 4;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.nx = 9, g.ny = 5;
  EXPECT_THROW(g.validate(), std::invalid_argument);  // cells not square on the unit square
  g.x1 = 2;
  EXPECT_NO_THROW(g.validate());
  auto u = unit_square(8);
  EXPECT_EQ(u.nx, 9);
  EXPECT_DOUBLE_EQ(u.h(), 0.125);
  EXPECT_EQ(u.node(2, 3), 2u * 9 + 3);
  EXPECT_TRUE(u.on_boundary(0, 4));
  EXPECT_FALSE(u.on_boundary(1, 1));
}

TEST(Manufactured, SolvesTheStokesSystem) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pt(0, 1);
  for (double re : {0.01, 1.0, 50.0}) {
    auto c = manufactured_case("trig", re);
    for (int i = 0; i < 20; ++i) {
      double x = pt(rng), y = pt(rng);
      for (const auto& eq : involutive_system()) EXPECT_NEAR(evaluate(eq, c, x, y), 0, 1e-9 * (1 + 1 / re));
      for (const auto& eq : stokes_system()) EXPECT_NEAR(evaluate(eq, c, x, y), 0, 1e-9 * (1 + 1 / re));
    }
  }
}

TEST(Manufactured, DerivativesMatchFiniteDifferences) {
  auto c = manufactured_case("trig", 1);
  const double x = 0.3, y = 0.7, e = 1e-5;
  for (DiffIndet f : kDiffIndets) {
    const auto& a = c.field(f);
    EXPECT_NEAR(a.eval(x, y, 1, 0), (a.eval(x + e, y) - a.eval(x - e, y)) / (2 * e), 1e-6);
    EXPECT_NEAR(a.eval(x, y, 0, 1), (a.eval(x, y + e) - a.eval(x, y - e)) / (2 * e), 1e-6);
    EXPECT_NEAR(a.eval(x, y, 1, 1), (a.eval(x + e, y, 0, 1) - a.eval(x - e, y, 0, 1)) / (2 * e), 1e-6);
  }
  EXPECT_THROW(manufactured_case("vortex", 1), std::invalid_argument);
  EXPECT_THROW(manufactured_case("trig", 0), std::invalid_argument);
  EXPECT_THROW(evaluate(parse_diff_poly("h*u_x"), c, x, y), std::invalid_argument);
}

TEST(Assembly, SystemShape) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(8));
  auto s = assemble(pb, SolverMode::Coupled);
  EXPECT_EQ(s.size, 243u);
  auto a = s.matrix();
  EXPECT_EQ(a.rows(), 243);
  EXPECT_EQ(a.cols(), 243);
  EXPECT_EQ(s.rhs.size(), 243);
  EXPECT_EQ(s.unknown(2, 0, 0), 2u);
  auto b = assemble(pb, SolverMode::Coupled, Ordering::Blocked);
  EXPECT_EQ(b.unknown(2, 0, 0), 2u * 81);
  EXPECT_EQ(b.unknown(0, 1, 0), 9u);
}

TEST(Assembly, StencilFromSymbolicScheme) {
  auto s = scheme(SchemeKind::Consistent);
  auto b = scheme_base_points(SchemeKind::Consistent);
  auto st = make_stencil(s[0], b[0], 1.0, 0.25);
  EXPECT_EQ(st.reach(), 1);
  ASSERT_EQ(st.entries.size(), 4u);
  for (const auto& e : st.entries) EXPECT_DOUBLE_EQ(std::abs(e.w), 2.0);
  EXPECT_EQ(make_stencil(s[3], b[3], 1.0, 0.25).reach(), 2);
  EXPECT_THROW(make_stencil(s[0], {mpq_class(1, 2), 0}, 1.0, 0.25), std::invalid_argument);
}

TEST(Assembly, RejectsBadInput) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(8));
  pb.Re = -1;
  EXPECT_THROW(assemble(pb, SolverMode::Coupled), std::invalid_argument);
  pb.Re = 1;
  pb.solid.assign(pb.grid.nodes(), 0);
  pb.solid[pb.grid.node(1, 1)] = 1;
  EXPECT_THROW(assemble(pb, SolverMode::Coupled), std::invalid_argument);
  pb.solid.resize(3);
  EXPECT_THROW(assemble(pb, SolverMode::Coupled), std::invalid_argument);
}

TEST(Solve, ZeroCaseIsExact) {
  auto c = manufactured_case("zero", 1);
  for (auto m : {SolverMode::Coupled, SolverMode::Poisson}) {
    auto f = solve_field(manufactured_problem(c, unit_square(8)), m);
    for (std::size_t i = 0; i < f.u.size(); ++i) {
      EXPECT_NEAR(f.u[i], 0, 1e-12);
      EXPECT_NEAR(f.v[i], 0, 1e-12);
      EXPECT_NEAR(f.p[i], 1, 1e-12);
    }
  }
}

TEST(Solve, PoiseuilleIsReproduced) {
  GridSpec g;
  g.x1 = 2, g.nx = 17, g.ny = 9;
  for (auto m : {SolverMode::Coupled, SolverMode::Poisson}) {
    auto pb = poiseuille(g, 2.0);
    auto f = solve_field(pb, m);
    for (int j = 0; j < g.nx; ++j)
      for (int k = 0; k < g.ny; ++k) {
        auto n = g.node(j, k);
        EXPECT_NEAR(f.u[n], pb.u_boundary(g.x(j), g.y(k)), 1e-10);
        EXPECT_NEAR(f.v[n], 0, 1e-10);
        EXPECT_NEAR(f.p[n], pb.p_reference(g.x(j), g.y(k)), 1e-9);
      }
  }
}

TEST(Solve, SparseMatchesDense) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(8));
  for (auto m : {SolverMode::Coupled, SolverMode::Poisson}) {
    auto s = assemble(pb, m);
    auto a = solve_sparse(s), d = solve_dense(s);
    EXPECT_LT((a.x - d.x).norm() / d.x.norm(), 1e-10);
    EXPECT_LT(a.residual, 1e-10);
  }
}

TEST(Solve, OrderingDoesNotChangeTheSolution) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(16));
  auto a = solve_field(pb, SolverMode::Coupled, Ordering::Interleaved);
  auto b = solve_field(pb, SolverMode::Coupled, Ordering::Blocked);
  EXPECT_LT(max_abs_diff(a.u, b.u), 1e-10);
  EXPECT_LT(max_abs_diff(a.v, b.v), 1e-10);
  EXPECT_LT(max_abs_diff(a.p, b.p), 1e-10);
}

// Exchanging x and y (with u <-> v, f1 <-> f2) maps solutions to solutions.
TEST(Solve, SwapSymmetry) {
  auto c = manufactured_case("trig", 1);
  auto g = unit_square(16);
  auto pb = manufactured_problem(c, g);
  FlowProblem sw = pb;
  sw.u_boundary = [&](double x, double y) { return pb.v_boundary(y, x); };
  sw.v_boundary = [&](double x, double y) { return pb.u_boundary(y, x); };
  sw.f1 = [&](double x, double y) { return pb.f2(y, x); };
  sw.f2 = [&](double x, double y) { return pb.f1(y, x); };
  sw.p_reference = [&](double x, double y) { return pb.p_reference(y, x); };
  auto a = solve_field(pb, SolverMode::Coupled);
  auto b = solve_field(sw, SolverMode::Coupled);
  double m = 0;
  for (int j = 0; j < g.nx; ++j)
    for (int k = 0; k < g.ny; ++k) {
      m = std::max(m, std::abs(a.u[g.node(j, k)] - b.v[g.node(k, j)]));
      m = std::max(m, std::abs(a.v[g.node(j, k)] - b.u[g.node(k, j)]));
      m = std::max(m, std::abs(a.p[g.node(j, k)] - b.p[g.node(k, j)]));
    }
  EXPECT_LT(m, 1e-9);  // solution error, residual tolerance is 1e-10
}

TEST(Solve, CoupledModeSatisfiesDiscreteContinuity) {
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(16));
  auto f = solve_field(pb, SolverMode::Coupled);
  EXPECT_TRUE(f.finite());
  EXPECT_LT(continuity_residual(f), 1e-8);
}

TEST(Mac, ZeroCaseAndDivergence) {
  auto z = mac_solve(manufactured_problem(manufactured_case("zero", 1), unit_square(8)));
  for (std::size_t i = 0; i < z.nodes.u.size(); ++i) {
    EXPECT_NEAR(z.nodes.u[i], 0, 1e-12);
    EXPECT_NEAR(z.nodes.v[i], 0, 1e-12);
  }
  auto t = mac_solve(manufactured_problem(manufactured_case("trig", 1), unit_square(16)));
  EXPECT_LT(t.max_divergence, 1e-9);
  EXPECT_LT(t.residual, 1e-10);
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(8));
  pb.solid.assign(pb.grid.nodes(), 0);
  EXPECT_THROW(mac_solve(pb), std::invalid_argument);
}

TEST(Study, SlopeHelpers) {
  std::vector<double> h = {0.1, 0.05, 0.025}, e;
  for (double x : h) e.push_back(3 * x * x);
  EXPECT_NEAR(*loglog_slope(h, e), 2, 1e-12);
  auto f = fit_power(h, e);
  EXPECT_NEAR(f.C, 3, 1e-10);
  EXPECT_NEAR(f.s, 2, 1e-12);
  EXPECT_FALSE(loglog_slope(h, {1e-14, 1e-15, 1e-16}).has_value());
  EXPECT_THROW(fit_power(h, {0, 0, 0}), std::invalid_argument);
}

TEST(Study, SecondOrderConvergence) {
  CaseSpec c;
  c.levels = {8, 16, 32};
  auto s = convergence_study(c, Method::Scheme);
  ASSERT_EQ(s.levels.size(), 3u);
  ASSERT_TRUE(s.slope_u && s.slope_v);
  EXPECT_GT(*s.slope_u, 1.85);
  EXPECT_LT(*s.slope_u, 2.15);
  EXPECT_GT(*s.slope_v, 1.85);
  EXPECT_LT(*s.slope_v, 2.15);
  auto m = convergence_study(c, Method::Mac);
  ASSERT_TRUE(m.slope_u);
  EXPECT_NEAR(*m.slope_u, 2, 0.15);
  auto j = nlohmann::json::parse(table_json(s));
  EXPECT_EQ(j.at("levels").size(), 3u);
}

TEST(Study, ThreadCountDoesNotChangeResults) {
  CaseSpec c;
  c.levels = {8, 12, 16};
  unsetenv("SCFD_THREADS");
  EXPECT_EQ(thread_count(), 1);
  auto a = convergence_study(c, Method::Scheme);
  setenv("SCFD_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3);
  auto b = convergence_study(c, Method::Scheme);
  setenv("SCFD_THREADS", "1000", 1);
  EXPECT_EQ(thread_count(), 64);
  unsetenv("SCFD_THREADS");
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    EXPECT_EQ(a.levels[i].err.max_u, b.levels[i].err.max_u);
    EXPECT_EQ(a.levels[i].err.max_p, b.levels[i].err.max_p);
  }
}

TEST(Cases, ParseAndRoundTrip) {
  auto c = parse_case(R"({"name": "trig", "Re": 0.5, "mode": "pressure-poisson", "scheme": "compact",
                          "levels": [8, 16], "grid": {"domain": [0, 2, 0, 1], "nx": 33, "ny": 17}})");
  EXPECT_EQ(c.mode, SolverMode::Poisson);
  EXPECT_EQ(c.scheme, SchemeKind::Compact);
  EXPECT_DOUBLE_EQ(c.Re, 0.5);
  EXPECT_EQ(c.grid.nx, 33);
  EXPECT_DOUBLE_EQ(c.grid.x1, 2);
  auto d = parse_case(case_json(c));
  EXPECT_EQ(d.mode, c.mode);
  EXPECT_EQ(d.levels, c.levels);
  EXPECT_EQ(d.grid.ny, c.grid.ny);
  auto p = parse_case(R"({"name": "porous"})");
  EXPECT_FALSE(p.obstacles.empty());
}

TEST(Cases, ParseErrors) {
  for (const char* bad : {"{", R"({"Re": -1})", R"({"levels": [2, 4]})", R"({"mode": "explicit"})",
                          R"({"grid": {"domain": [0, 1]}})", R"({"tolerance": 0})", R"({"Re": "one"})"}) {
    EXPECT_THROW(parse_case(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(load_case("/nonexistent/case.json"), std::invalid_argument);
  EXPECT_THROW(solver_mode_from_name("implicit"), std::invalid_argument);
  EXPECT_EQ(solver_mode_from_name(solver_mode_name(SolverMode::Poisson)), SolverMode::Poisson);
}

TEST(Output, Writers) {
  auto dir = temp_dir("writers");
  auto pb = manufactured_problem(manufactured_case("trig", 1), unit_square(8));
  auto f = solve_field(pb, SolverMode::Coupled);
  write_field_csv(f, (dir / "f.csv").string());
  EXPECT_EQ(line_count(dir / "f.csv"), f.grid.nodes() + 1);
  write_field_vtk(f, (dir / "f.vtk").string());
  std::ifstream vtk(dir / "f.vtk");
  std::stringstream ss;
  ss << vtk.rdbuf();
  EXPECT_NE(ss.str().find("STRUCTURED_POINTS"), std::string::npos);
  EXPECT_NE(ss.str().find("DIMENSIONS 9 9 1"), std::string::npos);
  CaseSpec c;
  c.levels = {8, 16};
  auto t = convergence_study(c, Method::Scheme);
  write_table_csv(t, (dir / "t.csv").string());
  EXPECT_EQ(line_count(dir / "t.csv"), 3u);
  write_gnuplot({(dir / "t.csv").string()}, (dir / "t.gp").string());
  EXPECT_GT(line_count(dir / "t.gp"), 0u);
  EXPECT_FALSE(table_text(t).empty());
  EXPECT_THROW(write_field_csv(f, "/nonexistent/dir/f.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
