#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "scfd/numerics.hpp"

namespace scfd::num {

using json = nlohmann::json;

void GridSpec::validate() const {
  if (nx < 5 || ny < 5) throw std::invalid_argument(fmt::format("grid {}x{} too small, need at least 5x5", nx, ny));
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("empty domain");
  double hx = (x1 - x0) / (nx - 1), hy = (y1 - y0) / (ny - 1);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy)) throw std::invalid_argument("grid cells are not square");
}

GridSpec unit_square(int cells) {
  GridSpec g;
  g.nx = g.ny = cells + 1;
  return g;
}

GridField::GridField(const GridSpec& g)
    : grid(g), u(g.nodes(), 0.0), v(g.nodes(), 0.0), p(g.nodes(), 0.0), flagged(g.nodes(), 0) {}

bool GridField::finite() const {
  for (const auto* a : {&u, &v, &p})
    for (double x : *a)
      if (!std::isfinite(x)) return false;
  return true;
}

namespace {

// sin(t + q pi/2) without the rounding of adding the phase.
double phased_sin(double t, int q) {
  switch (((q % 4) + 4) % 4) {
    case 0:
      return std::sin(t);
    case 1:
      return std::cos(t);
    case 2:
      return -std::sin(t);
    default:
      return -std::cos(t);
  }
}

}  // namespace

double TrigProduct::eval(double x, double y, int dx, int dy) const {
  return amp * std::pow(wx, dx) * std::pow(wy, dy) * phased_sin(wx * x, qx + dx) * phased_sin(wy * y, qy + dy);
}

double AnalyticField::eval(double x, double y, int dx, int dy) const {
  double s = (dx == 0 && dy == 0) ? constant : 0.0;
  for (const auto& t : terms) s += t.eval(x, y, dx, dy);
  return s;
}

AnalyticField& AnalyticField::add(const AnalyticField& o, double scale) {
  constant += scale * o.constant;
  for (auto t : o.terms) {
    t.amp *= scale;
    terms.push_back(t);
  }
  return *this;
}

const AnalyticField& ManufacturedCase::field(DiffIndet x) const {
  switch (x) {
    case DiffIndet::u:
      return u;
    case DiffIndet::v:
      return v;
    case DiffIndet::p:
      return p;
    case DiffIndet::f1:
      return f1;
    default:
      return f2;
  }
}

ManufacturedCase manufactured_case(const std::string& name, double Re) {
  if (!(Re > 0)) throw std::invalid_argument("Re must be positive");
  ManufacturedCase c;
  c.name = name;
  c.Re = Re;
  const double pi = std::numbers::pi;
  if (name == "zero") {
    c.p.constant = 1.0;
    return c;
  }
  if (name != "trig") throw std::invalid_argument("unknown manufactured case '" + name + "'");
  // sin = phase 0, cos = phase 1
  c.u.terms = {{1.0, pi, pi, 0, 1}};
  c.v.terms = {{-1.0, pi, pi, 1, 0}};
  c.p.terms = {{1.0, pi, pi, 1, 1}};
  // f = grad p - lap(u, v) / Re, lap of each product is -2 pi^2 times it.
  c.f1.terms = {{-pi, pi, pi, 0, 1}, {2 * pi * pi / Re, pi, pi, 0, 1}};
  c.f2.terms = {{-pi, pi, pi, 1, 0}, {-2 * pi * pi / Re, pi, pi, 1, 0}};
  return c;
}

double evaluate(const DiffPoly& g, const ManufacturedCase& c, double x, double y) {
  double s = 0;
  for (const auto& [t, k] : g.terms()) {
    if (k.depends_on_h()) throw std::invalid_argument("coefficient depends on h");
    s += k.evaluate(c.Re, 1.0) * c.field(t.indet).eval(x, y, t.a, t.b);
  }
  return s;
}

SolverMode solver_mode_from_name(const std::string& name) {
  if (name == "coupled") return SolverMode::Coupled;
  if (name == "poisson" || name == "pressure-poisson") return SolverMode::Poisson;
  throw std::invalid_argument("unknown solver mode '" + name + "'");
}

std::string solver_mode_name(SolverMode m) { return m == SolverMode::Coupled ? "coupled" : "poisson"; }

CaseSpec parse_case(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("case file: ") + e.what());
  }
  CaseSpec c;
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (c.name == "porous") c = default_porous_case();
  try {
    if (j.contains("Re")) c.Re = j.at("Re").get<double>();
    if (j.contains("mode")) c.mode = solver_mode_from_name(j.at("mode").get<std::string>());
    if (j.contains("scheme")) c.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<int>>();
    if (j.contains("budget")) c.budget = j.at("budget").get<double>();
    if (j.contains("re_values")) c.re_values = j.at("re_values").get<std::vector<double>>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("domain")) {
        auto d = g.at("domain").get<std::vector<double>>();
        if (d.size() != 4) throw std::invalid_argument("grid.domain needs [x0, x1, y0, y1]");
        c.grid.x0 = d[0], c.grid.x1 = d[1], c.grid.y0 = d[2], c.grid.y1 = d[3];
      }
      if (g.contains("nx")) c.grid.nx = g.at("nx").get<int>();
      if (g.contains("ny")) c.grid.ny = g.at("ny").get<int>();
    }
    if (j.contains("obstacles")) {
      c.obstacles.clear();
      for (const auto& o : j.at("obstacles")) c.obstacles.push_back({o.at("x").get<double>(), o.at("y").get<double>(),
                                                                   o.at("r").get<double>()});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("case file: ") + e.what());
  }
  if (!(c.Re > 0)) throw std::invalid_argument("case file: Re must be positive");
  if (!(c.tolerance > 0)) throw std::invalid_argument("case file: tolerance must be positive");
  if (!(c.budget > 0)) throw std::invalid_argument("case file: budget must be positive");
  for (int n : c.levels)
    if (n < 4) throw std::invalid_argument("case file: levels need at least 4 cells");
  c.grid.validate();
  return c;
}

CaseSpec load_case(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open case file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case(ss.str());
}

std::string case_json(const CaseSpec& c) {
  json j;
  j["name"] = c.name;
  j["Re"] = c.Re;
  j["mode"] = solver_mode_name(c.mode);
  j["scheme"] = scheme_name(c.scheme);
  j["tolerance"] = c.tolerance;
  j["levels"] = c.levels;
  j["budget"] = c.budget;
  j["re_values"] = c.re_values;
  j["grid"] = {{"domain", {c.grid.x0, c.grid.x1, c.grid.y0, c.grid.y1}}, {"nx", c.grid.nx}, {"ny", c.grid.ny}};
  json obs = json::array();
  for (const auto& o : c.obstacles) obs.push_back({{"x", o.cx}, {"y", o.cy}, {"r", o.r}});
  j["obstacles"] = obs;
  return j.dump(2);
}

int thread_count() {
  const char* s = std::getenv("SCFD_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  long n = std::strtol(s, &end, 10);
  if (end == s || n < 1) return 1;
  return static_cast<int>(std::min(n, 64L));
}

}  // namespace scfd::num
