#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "scfd/numerics.hpp"

namespace scfd::num {

using json = nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string slope_str(const std::optional<double>& s) { return s ? fmt::format("{:.4f}", *s) : "undefined"; }

json slope_json(const std::optional<double>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

void write_field_csv(const GridField& f, const std::string& path) {
  auto out = open_out(path);
  const auto& g = f.grid;
  out << "x,y,u,v,p,solid,flagged\n";
  for (int k = 0; k < g.ny; ++k)
    for (int j = 0; j < g.nx; ++j) {
      auto n = g.node(j, k);
      out << fmt::format("{:.12g},{:.12g},{:.17g},{:.17g},{:.17g},{},{}\n", g.x(j), g.y(k), f.u[n], f.v[n], f.p[n],
                         f.solid.empty() ? 0 : int(f.solid[n]), f.flagged.empty() ? 0 : int(f.flagged[n]));
    }
}

void write_field_vtk(const GridField& f, const std::string& path) {
  auto out = open_out(path);
  const auto& g = f.grid;
  out << "# vtk DataFile Version 3.0\nsteady Stokes fields\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << fmt::format("DIMENSIONS {} {} 1\nORIGIN {:.12g} {:.12g} 0\nSPACING {:.12g} {:.12g} 1\n", g.nx, g.ny, g.x0,
                     g.y0, g.h(), g.h());
  out << fmt::format("POINT_DATA {}\n", g.nodes());
  // x varies fastest in VTK point order
  out << "VECTORS velocity double\n";
  for (int k = 0; k < g.ny; ++k)
    for (int j = 0; j < g.nx; ++j) out << fmt::format("{:.12g} {:.12g} 0\n", f.u[g.node(j, k)], f.v[g.node(j, k)]);
  out << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (int k = 0; k < g.ny; ++k)
    for (int j = 0; j < g.nx; ++j) out << fmt::format("{:.12g}\n", f.p[g.node(j, k)]);
  if (!f.solid.empty()) {
    out << "SCALARS solid int 1\nLOOKUP_TABLE default\n";
    for (int k = 0; k < g.ny; ++k)
      for (int j = 0; j < g.nx; ++j) out << int(f.solid[g.node(j, k)]) << "\n";
  }
}

void write_table_csv(const ConvergenceTable& t, const std::string& path) {
  auto out = open_out(path);
  out << "method,cells,h,max_u,max_v,max_p,l2_u,l2_v,l2_p,rel_velocity,residual,seconds\n";
  for (const auto& l : t.levels)
    out << fmt::format("{},{},{:.12g},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.3e},{:.4f}\n",
                       method_name(t.method), l.cells, l.h, l.err.max_u, l.err.max_v, l.err.max_p, l.err.l2_u,
                       l.err.l2_v, l.err.l2_p, l.err.rel_velocity, l.residual, l.seconds);
}

void write_gnuplot(const std::vector<std::string>& csv_files, const std::string& path) {
  auto out = open_out(path);
  out << "set datafile separator ','\nset logscale xy\nset key top left\nset xlabel 'h'\n"
         "set ylabel 'max error'\nset terminal pngcairo size 800,600\nset output 'convergence.png'\n";
  std::string cmd = "plot ";
  for (std::size_t i = 0; i < csv_files.size(); ++i) {
    if (i) cmd += ", \\\n     ";
    cmd += fmt::format("'{0}' every ::1 using 3:4 with linespoints title '{0} u', '{0}' every ::1 using 3:5 "
                       "with linespoints title '{0} v'",
                       csv_files[i]);
  }
  out << cmd << "\n";
}

std::string table_text(const ConvergenceTable& t) {
  std::string s = fmt::format("{:>6} {:>10} {:>12} {:>12} {:>12} {:>12} {:>9}\n", "cells", "h", "max|u|", "max|v|",
                              "max|p|", "rel|V|", "seconds");
  for (const auto& l : t.levels)
    s += fmt::format("{:>6} {:>10.6f} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>9.3f}\n", l.cells, l.h, l.err.max_u,
                     l.err.max_v, l.err.max_p, l.err.rel_velocity, l.seconds);
  s += fmt::format("{} slopes: u {}, v {}, p {} (L2: u {}, v {})\n", method_name(t.method), slope_str(t.slope_u),
                   slope_str(t.slope_v), slope_str(t.slope_p), slope_str(t.slope_l2_u), slope_str(t.slope_l2_v));
  return s;
}

namespace {

json table_obj(const ConvergenceTable& t) {
  json j;
  j["method"] = method_name(t.method);
  json lv = json::array();
  for (const auto& l : t.levels)
    lv.push_back({{"cells", l.cells},
                  {"h", l.h},
                  {"max_u", l.err.max_u},
                  {"max_v", l.err.max_v},
                  {"max_p", l.err.max_p},
                  {"l2_u", l.err.l2_u},
                  {"l2_v", l.err.l2_v},
                  {"l2_p", l.err.l2_p},
                  {"rel_velocity", l.err.rel_velocity},
                  {"residual", l.residual}});
  j["levels"] = lv;
  j["slopes"] = {{"u", slope_json(t.slope_u)},
                 {"v", slope_json(t.slope_v)},
                 {"p", slope_json(t.slope_p)},
                 {"l2_u", slope_json(t.slope_l2_u)},
                 {"l2_v", slope_json(t.slope_l2_v)}};
  return j;
}

}  // namespace

std::string table_json(const ConvergenceTable& t) { return table_obj(t).dump(2); }

std::string comparison_json(const Comparison& c) {
  json j;
  j["Re"] = c.Re;
  j["skipped"] = c.skipped;
  if (!c.skipped) {
    j["scheme_fit"] = {{"C", c.scheme.C}, {"s", c.scheme.s}};
    j["mac_fit"] = {{"C", c.mac.C}, {"s", c.mac.s}};
    j["h_scheme"] = c.h_scheme;
    j["h_mac"] = c.h_mac;
    j["ratio"] = c.ratio;
  }
  j["scheme"] = table_obj(c.scheme_table);
  j["mac"] = table_obj(c.mac_table);
  return j.dump(2);
}

}  // namespace scfd::num
