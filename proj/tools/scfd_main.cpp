// scfd: derive, check and exercise finite difference schemes for steady 2D
// Stokes flow.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"
#include "scfd/consistency.hpp"
#include "scfd/numerics.hpp"
#include "scfd/stokes_models.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace scfd;

namespace {

constexpr int kOk = 0, kFailure = 1, kUsage = 2, kInconsistent = 3;

struct Options {
  std::string scheme = "consistent";
  int order = 2;
  std::string case_file;
  std::string out_dir = ".";
  std::string format = "text";
  std::string mode;
};

std::string diff_list(const std::vector<DiffPoly>& v, const std::string& fmt_) {
  std::string s;
  if (fmt_ == "latex") {
    s = "\\begin{array}{l}\n";
    for (const auto& p : v) s += to_latex(p) + " = 0\\\\\n";
    return s + "\\end{array}\n";
  }
  for (std::size_t i = 0; i < v.size(); ++i) s += fmt::format("  F{}: {}\n", i + 1, to_string(v[i]));
  return s;
}

std::string diffnce_list(const std::vector<DiffncePoly>& v, const std::string& fmt_) {
  std::string s;
  if (fmt_ == "latex") {
    s = "\\begin{array}{l}\n";
    for (const auto& p : v) s += to_latex(p) + " = 0\\\\\n";
    return s + "\\end{array}\n";
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    s += fmt::format("  [{}] {}   (leader {})\n", i + 1, to_string(v[i]),
                     grid_term_name(v[i].leader(diffnce_ranking_default())));
  return s;
}

json diff_json(const std::vector<DiffPoly>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back({{"text", to_string(p)}, {"leader", term_name(p.leader(diff_ranking_pot()))}});
  return a;
}

json diffnce_json(const std::vector<DiffncePoly>& v) {
  json a = json::array();
  for (const auto& p : v)
    a.push_back({{"text", to_string(p)}, {"leader", grid_term_name(p.leader(diffnce_ranking_default()))}});
  return a;
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

fs::path out_dir(const Options& o) {
  fs::path d(o.out_dir);
  fs::create_directories(d);
  return d;
}

int cmd_derive(const Options& o) {
  const auto pot = diff_ranking_pot();
  auto F = stokes_system();
  GroebnerOptions track;
  track.track_cofactors = true;
  auto gb = groebner_complete(F, pot, track);
  auto inv = involutive_system();
  bool match = gb.basis.size() == inv.size();
  for (std::size_t i = 0; match && i < inv.size(); ++i)
    match = gb.basis[i].leader(pot) == inv[i].leader(pot) && proportional(gb.basis[i], inv[i], true);
  bool cof_ok = true;
  for (std::size_t i = 0; i < gb.basis.size(); ++i) {
    DiffPoly s;
    for (std::size_t j = 0; j < F.size(); ++j) s += apply_operator(gb.cofactors[i][j], F[j]);
    cof_ok = cof_ok && s == gb.basis[i];
  }
  bool intcon = integrability_condition() == inv[3];
  auto disc = discretize();
  auto elim = derive_scheme_by_elimination();
  auto sch = s_consistent_scheme();
  bool same = same_module(elim, sch);

  if (o.format == "json") {
    json j;
    j["involutive_form"] = diff_json(inv);
    j["groebner_basis"] = diff_json(gb.basis);
    j["matches_involutive_form"] = match;
    j["cofactor_identities"] = cof_ok;
    j["integrability_condition"] = {{"text", to_string(integrability_condition())}, {"equals_F4", intcon}};
    j["discretized_system"] = diffnce_json(disc);
    j["elimination"] = diffnce_json(elim);
    j["scheme"] = diffnce_json(sch);
    j["elimination_equals_scheme"] = same;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Involutive form (POT, x > y, u > v > p > f1 > f2):\n" << diff_list(inv, o.format);
    std::cout << fmt::format("Groebner completion matches: {}; cofactor identities hold: {}\n", match, cof_ok);
    std::cout << fmt::format("F2_x + F3_y + (F1_xx + F1_yy)/Re = {}  [{}]\n", to_string(integrability_condition()),
                             intcon ? "equals F4" : "MISMATCH");
    std::cout << "Discretized integral form:\n" << diffnce_list(disc, o.format);
    std::cout << "Elimination of ux, uy, vx, vy:\n" << diffnce_list(elim, o.format);
    std::cout << "Scheme:\n" << diffnce_list(sch, o.format);
    std::cout << fmt::format("elimination generates the scheme module: {}\n", same);
  }
  return match && cof_ok && intcon && same ? kOk : kFailure;
}

int cmd_check(const Options& o) {
  auto kind = scheme_from_name(o.scheme);
  auto rep = check_s_consistency(scheme(kind), involutive_system());
  auto eq = check_groebner_equivalence(scheme(kind));
  if (o.format == "json") {
    json j = json::parse(report_json(rep));
    j["scheme"] = scheme_name(kind);
    j["groebner_equivalence"] = {{"strict", eq.strict},
                                 {"scheme_size", eq.scheme_size},
                                 {"completion_size", eq.completion_size},
                                 {"no_new_elements", eq.no_new_elements}};
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "latex") {
    std::cout << report_latex(rep);
  } else {
    std::cout << "scheme: " << scheme_name(kind) << "\n" << report_text(rep);
    std::cout << fmt::format("completion adds no elements: {} ({} -> {})\n", eq.no_new_elements, eq.scheme_size,
                             eq.completion_size);
    std::cout << fmt::format("s-consistent: {}\n", rep.s_consistent);
  }
  return rep.s_consistent ? kOk : kInconsistent;
}

int cmd_modified(const Options& o) {
  if (o.order < 0 || o.order > 8) throw std::invalid_argument("--order must be between 0 and 8");
  auto kind = scheme_from_name(o.scheme);
  auto sch = scheme(kind);
  auto base = scheme_base_points(kind);
  auto flow = modified_equations(sch, base, o.order, involutive_system());
  auto resid = integrability_residual(expand_scheme(sch, base, o.order), o.order, involutive_system());
  const auto top = diff_ranking_top();
  if (o.format == "json") {
    json j = json::parse(flow_json(flow));
    j["scheme"] = scheme_name(kind);
    j["integrability_residual"] = json::parse(taylor_json(resid));
    std::cout << j.dump(2) << "\n";
  } else if (o.format == "latex") {
    std::cout << flow_latex(flow);
    for (const auto& [k, p] : resid.grades) std::cout << fmt::format("R_{{{}}} = {}\n", k, to_latex(p, top));
  } else {
    std::cout << "modified equations (" << scheme_name(kind) << "):\n" << flow_text(flow);
    std::cout << "integrability residual:\n";
    if (resid.grades.empty()) std::cout << "  0\n";
    for (const auto& [k, p] : resid.grades) std::cout << fmt::format("  h^{}: {}\n", k, to_string(p, top));
  }
  return kOk;
}

num::CaseSpec load(const Options& o, const std::string& fallback) {
  num::CaseSpec c;
  if (!o.case_file.empty())
    c = num::load_case(o.case_file);
  else if (fallback == "porous")
    c = num::default_porous_case();
  if (!o.mode.empty()) c.mode = num::solver_mode_from_name(o.mode);
  return c;
}

int cmd_solve(const Options& o, bool explicit_scheme) {
  auto c = load(o, "trig");
  if (explicit_scheme) c.scheme = scheme_from_name(o.scheme);
  auto mc = num::manufactured_case(c.name, c.Re);
  auto pb = num::manufactured_problem(mc, c.grid);
  auto sys = num::assemble(pb, c.mode, num::Ordering::Interleaved, c.scheme);
  auto sol = num::solve_sparse(sys, c.tolerance);
  auto f = num::to_field(sys, sol.x);
  auto err = num::field_errors(f, mc);
  auto d = out_dir(o);
  num::write_field_csv(f, (d / "solution.csv").string());
  num::write_field_vtk(f, (d / "solution.vtk").string());
  std::size_t flagged = 0;
  for (auto b : f.flagged) flagged += b;
  if (o.format == "json") {
    json j = {{"case", json::parse(num::case_json(c))},
              {"residual", sol.residual},
              {"max_error", {{"u", err.max_u}, {"v", err.max_v}, {"p", err.max_p}}},
              {"continuity_residual", num::continuity_residual(f)},
              {"first_layer_rows", flagged}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("{} grid, Re = {}, mode {}: residual {:.2e}\n", fmt::format("{}x{}", c.grid.nx, c.grid.ny),
                             c.Re, num::solver_mode_name(c.mode), sol.residual);
    std::cout << fmt::format("max error u {:.4e}  v {:.4e}  p {:.4e}\n", err.max_u, err.max_v, err.max_p);
    std::cout << fmt::format("continuity residual {:.3e}; first-layer closure rows: {}\n",
                             num::continuity_residual(f), flagged);
    std::cout << "wrote " << (d / "solution.csv").string() << ", " << (d / "solution.vtk").string() << "\n";
  }
  return kOk;
}

int cmd_converge(const Options& o) {
  auto c = load(o, "trig");
  auto d = out_dir(o);
  std::vector<std::string> files;
  json all = json::array();
  for (auto m : {num::Method::Scheme, num::Method::Mac}) {
    auto t = num::convergence_study(c, m);
    std::string name = "convergence_" + num::method_name(m) + ".csv";
    num::write_table_csv(t, (d / name).string());
    files.push_back(name);
    if (o.format == "json")
      all.push_back(json::parse(num::table_json(t)));
    else
      std::cout << num::table_text(t);
  }
  num::write_gnuplot(files, (d / "convergence.gp").string());
  if (o.format == "json") std::cout << all.dump(2) << "\n";
  return kOk;
}

int cmd_compare(const Options& o) {
  auto c = load(o, "trig");
  std::vector<double> res = {c.Re};
  for (double r : c.re_values)
    if (r != c.Re) res.push_back(r);
  json all = json::array();
  auto d = out_dir(o);
  for (double re : res) {
    c.Re = re;
    auto cmp = num::compare_schemes(c);
    all.push_back(json::parse(num::comparison_json(cmp)));
    if (o.format != "json") {
      if (cmp.skipped)
        std::cout << fmt::format("Re = {}: both methods exact, comparison skipped\n", re);
      else
        std::cout << fmt::format("Re = {}: h at {:.0f}% error: scheme {:.4f}, MAC {:.4f}, ratio {:.4f}\n", re,
                                 100 * c.budget, cmp.h_scheme, cmp.h_mac, cmp.ratio);
    }
  }
  write_text(d / "comparison.json", all.dump(2) + "\n");
  if (o.format == "json") std::cout << all.dump(2) << "\n";
  return kOk;
}

int cmd_porous(const Options& o) {
  auto c = load(o, "porous");
  auto r = num::porous_demo(c);
  auto d = out_dir(o);
  num::write_field_csv(r.field, (d / "porous.csv").string());
  num::write_field_vtk(r.field, (d / "porous.vtk").string());
  if (o.format == "json") {
    json j = {{"flux_in", r.flux_in},   {"flux_out", r.flux_out},       {"imbalance", r.imbalance},
              {"residual", r.residual}, {"solid_nodes", r.solid_nodes}, {"finite", r.field.finite()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("{}x{} grid, {} solid nodes, residual {:.2e}\n", c.grid.nx, c.grid.ny, r.solid_nodes,
                             r.residual);
    std::cout << fmt::format("flux in {:.6f}, out {:.6f}, imbalance {:.3f}%\n", r.flux_in, r.flux_out,
                             100 * r.imbalance);
  }
  return r.field.finite() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite difference schemes for steady 2D Stokes flow"};
  app.require_subcommand(1);
  Options o;
  auto scheme_opt = [&](CLI::App* s) {
    return s->add_option("--scheme", o.scheme, "consistent (alias paper) or compact")
        ->check(CLI::IsMember({"consistent", "paper", "s-consistent", "compact"}));
  };
  auto format_opt = [&](CLI::App* s) {
    s->add_option("--format", o.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
  };
  auto case_opts = [&](CLI::App* s) {
    s->add_option("--case", o.case_file, "JSON case file")->check(CLI::ExistingFile);
    s->add_option("--out", o.out_dir, "output directory");
    s->add_option("--mode", o.mode, "coupled or poisson")->check(CLI::IsMember({"coupled", "poisson"}));
  };

  auto* derive = app.add_subcommand("derive", "completion, discretization, elimination");
  format_opt(derive);
  auto* check = app.add_subcommand("check", "weak and strong consistency");
  scheme_opt(check);
  format_opt(check);
  auto* modified = app.add_subcommand("modified", "modified equations and integrability residual");
  scheme_opt(modified);
  format_opt(modified);
  modified->add_option("--order", o.order, "highest grade");
  auto* solve = app.add_subcommand("solve", "solve a case and write fields");
  auto* solve_scheme = scheme_opt(solve);
  format_opt(solve);
  case_opts(solve);
  auto* converge = app.add_subcommand("converge", "convergence study for scheme and MAC");
  format_opt(converge);
  case_opts(converge);
  auto* compare = app.add_subcommand("compare", "grid spacing needed for an error budget");
  format_opt(compare);
  case_opts(compare);
  auto* porous = app.add_subcommand("porous", "channel flow through circular obstacles");
  format_opt(porous);
  case_opts(porous);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (*derive) return cmd_derive(o);
    if (*check) return cmd_check(o);
    if (*modified) return cmd_modified(o);
    if (*solve) return cmd_solve(o, solve_scheme->count() > 0);
    if (*converge) return cmd_converge(o);
    if (*compare) return cmd_compare(o);
    if (*porous) return cmd_porous(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
