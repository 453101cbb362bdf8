// Floating point solvers for the steady Stokes problem on a uniform grid:
// the collocated scheme assembled from the symbolic stencils, a staggered
// MAC baseline, convergence studies and the obstacle channel demo.
#pragma once

#include <Eigen/Sparse>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scfd/consistency.hpp"
#include "scfd/difference_algebra.hpp"
#include "scfd/differential_algebra.hpp"
#include "scfd/stokes_models.hpp"

namespace scfd::num {

// ------------------------------------------------------------------ grid

struct GridSpec {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int nx = 17, ny = 17;  // node counts

  double h() const { return (x1 - x0) / (nx - 1); }
  double x(int j) const { return x0 + j * h(); }
  double y(int k) const { return y0 + k * h(); }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t node(int j, int k) const { return static_cast<std::size_t>(j) * ny + k; }
  bool on_boundary(int j, int k) const { return j == 0 || k == 0 || j == nx - 1 || k == ny - 1; }
  // Throws std::invalid_argument unless nx, ny >= 5 and cells are square.
  void validate() const;
};

GridSpec unit_square(int cells);

struct GridField {
  GridSpec grid;
  std::vector<double> u, v, p;      // node(j, k) layout
  std::vector<std::uint8_t> solid;  // obstacle mask, empty if none
  std::vector<std::uint8_t> flagged;  // rows using the first-layer closure

  explicit GridField(const GridSpec& g = {});
  bool finite() const;
};

// ------------------------------------------------------ analytic fields

// amp * sin(wx x + qx pi/2) * sin(wy y + qy pi/2).
struct TrigProduct {
  double amp = 0;
  double wx = 0, wy = 0;
  int qx = 0, qy = 0;
  double eval(double x, double y, int dx = 0, int dy = 0) const;
};

struct AnalyticField {
  double constant = 0;
  std::vector<TrigProduct> terms;
  double eval(double x, double y, int dx = 0, int dy = 0) const;
  AnalyticField& add(const AnalyticField& o, double scale = 1);
};

struct ManufacturedCase {
  std::string name;
  double Re = 1;
  AnalyticField u, v, p, f1, f2;
  const AnalyticField& field(DiffIndet x) const;
};

// "trig" or "zero"; throws std::invalid_argument otherwise.
ManufacturedCase manufactured_case(const std::string& name, double Re);

// Value of a linear differential polynomial on the analytic fields;
// coefficients must be h-free.
double evaluate(const DiffPoly& g, const ManufacturedCase& c, double x, double y);

// ---------------------------------------------------------------- cases

enum class SolverMode { Coupled, Poisson };
enum class Ordering { Interleaved, Blocked };

SolverMode solver_mode_from_name(const std::string& name);
std::string solver_mode_name(SolverMode m);

struct Obstacle {
  double cx = 0, cy = 0, r = 0;
};

struct CaseSpec {
  std::string name = "trig";  // manufactured case, or "porous"
  double Re = 1;
  GridSpec grid;
  SolverMode mode = SolverMode::Coupled;
  SchemeKind scheme = SchemeKind::Consistent;
  double tolerance = 1e-10;
  std::vector<int> levels = {8, 16, 32, 64};  // cells per unit length
  double budget = 0.15;
  std::vector<double> re_values;  // compare: extra Reynolds numbers
  std::vector<Obstacle> obstacles;
};

CaseSpec parse_case(const std::string& json_text);
CaseSpec load_case(const std::string& path);
std::string case_json(const CaseSpec& c);

// ------------------------------------------------------------- assembly

using ScalarFn = std::function<double(double, double)>;

struct FlowProblem {
  GridSpec grid;
  double Re = 1;
  ScalarFn u_boundary, v_boundary, f1, f2;
  ScalarFn p_reference;  // value imposed at the gauge node
  std::vector<std::uint8_t> solid;
};

FlowProblem manufactured_problem(const ManufacturedCase& c, const GridSpec& g);

// A scheme polynomial evaluated at (Re, h): weights on u, v, p and on the
// forcing, offsets relative to the base point.
struct Stencil {
  struct Entry {
    int field = 0;  // 0 u, 1 v, 2 p, 3 f1, 4 f2
    int dj = 0, dk = 0;
    double w = 0;
  };
  std::vector<Entry> entries;
  int reach() const;  // largest |offset|
};

Stencil make_stencil(const DiffncePoly& g, const BasePoint& base, double Re, double h);

struct SparseSystem {
  GridSpec grid;
  Ordering ordering = Ordering::Interleaved;
  std::size_t size = 0;
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs;
  std::vector<std::uint8_t> flagged;  // per node; p row uses the first-layer closure
  std::vector<std::uint8_t> solid;
  std::size_t gauge_node = 0;

  // field 0 u, 1 v, 2 p.
  std::size_t unknown(int field, int j, int k) const;
  Eigen::SparseMatrix<double> matrix() const;
};

// Throws std::invalid_argument for invalid grids.
// Poisson mode with the compact kind uses the 3x3 Poisson stencil on every
// interior node.
SparseSystem assemble(const FlowProblem& pb, SolverMode mode, Ordering ordering = Ordering::Interleaved,
                      SchemeKind kind = SchemeKind::Consistent);

// ---------------------------------------------------------------- solve

struct SolveResult {
  Eigen::VectorXd x;
  double residual = 0;  // ||A x - b|| / ||b|| (absolute if b = 0)
  int refinements = 0;
};

// Sparse LU with iterative refinement; throws std::runtime_error on
// factorization failure or if the tolerance is not reached.
SolveResult solve_sparse(const SparseSystem& s, double tolerance = 1e-10);
SolveResult solve_dense(const SparseSystem& s);

GridField to_field(const SparseSystem& s, const Eigen::VectorXd& x);

// Max over interior nodes of |continuity stencil|.
double continuity_residual(const GridField& f);

// --------------------------------------------------------------- MAC

struct MacResult {
  GridField nodes;     // interpolated to nodes
  double residual = 0;  // linear solver residual
  double max_divergence = 0;  // over cells
  double p_error = 0;  // max error at cell centres (trig case only)
};

MacResult mac_solve(const FlowProblem& pb, double tolerance = 1e-10);

// -------------------------------------------------------------- studies

enum class Method { Scheme, Mac };
std::string method_name(Method m);

struct ErrorNorms {
  double max_u = 0, max_v = 0, max_p = 0;
  double l2_u = 0, l2_v = 0, l2_p = 0;
  double rel_velocity = 0;  // max ||V_h| - |V|| / mean |V|
};

ErrorNorms field_errors(const GridField& f, const ManufacturedCase& c);

struct LevelResult {
  int cells = 0;
  double h = 0;
  ErrorNorms err;
  double residual = 0;
  double seconds = 0;
};

struct ConvergenceTable {
  Method method = Method::Scheme;
  std::vector<LevelResult> levels;
  // Least-squares log-log slopes; empty when errors are at rounding level.
  std::optional<double> slope_u, slope_v, slope_p, slope_l2_u, slope_l2_v;
};

std::optional<double> loglog_slope(const std::vector<double>& h, const std::vector<double>& e);

// Runs the grid levels of the case; threads from SCFD_THREADS.
ConvergenceTable convergence_study(const CaseSpec& c, Method m);

struct PowerFit {
  double C = 0, s = 0;
};
PowerFit fit_power(const std::vector<double>& h, const std::vector<double>& e);

struct Comparison {
  bool skipped = false;
  double Re = 1;
  PowerFit scheme, mac;
  double h_scheme = 0, h_mac = 0, ratio = 0;
  ConvergenceTable scheme_table, mac_table;
};

Comparison compare_schemes(const CaseSpec& c);

struct PorousResult {
  GridField field;
  double flux_in = 0, flux_out = 0, imbalance = 0;  // relative
  double residual = 0;
  std::size_t solid_nodes = 0;
};

// Channel [0,2]x[0,1] with parabolic inflow/outflow and circular solids.
CaseSpec default_porous_case();
PorousResult porous_demo(const CaseSpec& c);

// Scheme residual on the exact solution, divided by h^leading_grade.
struct ResidualCheck {
  std::vector<double> h;
  // [equation][point]: fitted C of C h^2 + D h^4 and the analytic grade-2 value
  std::vector<std::vector<double>> fitted, analytic;
  std::vector<double> rel_error;  // per equation, max |C - g2| / max sum of |grade-2 terms|
  double worst = 0;
};

ResidualCheck modified_equation_check(SchemeKind kind, const ManufacturedCase& c,
                                      const std::vector<std::pair<double, double>>& points,
                                      const std::vector<int>& cells);

// ----------------------------------------------------------------- io

void write_field_csv(const GridField& f, const std::string& path);
void write_field_vtk(const GridField& f, const std::string& path);
void write_table_csv(const ConvergenceTable& t, const std::string& path);
void write_gnuplot(const std::vector<std::string>& csv_files, const std::string& path);
std::string table_text(const ConvergenceTable& t);
std::string table_json(const ConvergenceTable& t);
std::string comparison_json(const Comparison& c);

int thread_count();  // SCFD_THREADS, default 1

}  // namespace scfd::num
