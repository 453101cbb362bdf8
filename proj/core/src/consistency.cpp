#include "scfd/consistency.hpp"

#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"

namespace scfd {

namespace {

using json = nlohmann::json;

OperatorPoly compose(const OperatorPoly& x, const OperatorPoly& y) {
  OperatorPoly r;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) operator_add(r, a.first + b.first, a.second + b.second, ca * cb);
  return r;
}

OperatorPoly op_axpy(OperatorPoly x, const ParamCoeff& c, const OperatorPoly& y) {
  for (const auto& [ab, k] : y) operator_add(x, ab.first, ab.second, c * k);
  return x;
}

// Operators over the inputs of a tracked basis: sum_m q[m] o cof[m][j].
std::vector<OperatorPoly> pull_back(const std::vector<OperatorPoly>& q,
                                    const std::vector<std::vector<OperatorPoly>>& cof, std::size_t n_inputs) {
  std::vector<OperatorPoly> out(n_inputs);
  for (std::size_t m = 0; m < q.size(); ++m) {
    if (q[m].empty()) continue;
    for (std::size_t j = 0; j < n_inputs; ++j) {
      if (cof[m][j].empty()) continue;
      out[j] = op_axpy(out[j], ParamCoeff(1), compose(q[m], cof[m][j]));
    }
  }
  return out;
}

TaylorForm shift_grades(const TaylorForm& t, int by) {
  TaylorForm r;
  r.truncation = t.truncation + by;
  for (const auto& [k, p] : t.grades) r.grades[k + by] = p;
  return r;
}

void set_grade(TaylorForm& t, int k, DiffPoly p) {
  if (p.is_zero())
    t.grades.erase(k);
  else
    t.grades[k] = std::move(p);
}

std::string leader_name(const DiffncePoly& p) {
  return p.is_zero() ? "0" : grid_term_name(p.leader(diffnce_ranking_default()));
}

}  // namespace

TaylorForm series_apply(const OperatorPoly& op, const TaylorForm& t) {
  TaylorForm r;
  r.truncation = t.truncation;
  for (const auto& [ab, c] : op)
    if (c.depends_on_h()) throw std::logic_error("series operator with h-dependent coefficient");
  for (const auto& [k, p] : t.grades) set_grade(r, k, apply_operator(op, p));
  return r;
}

TaylorForm series_add(const TaylorForm& a, const TaylorForm& b, const ParamCoeff& scale) {
  TaylorForm r = a;
  r.truncation = std::min(a.truncation, b.truncation);
  for (const auto& [k, p] : b.grades) set_grade(r, k, r.grade(k) + p * scale);
  for (auto it = r.grades.begin(); it != r.grades.end();)
    it = it->first > r.truncation ? r.grades.erase(it) : std::next(it);
  return r;
}

// ------------------------------------------------------------------- weak

std::vector<WConsistencyPair> check_w_consistency(const std::vector<DiffncePoly>& scheme,
                                                  const std::vector<DiffPoly>& targets) {
  if (scheme.size() != targets.size())
    throw std::invalid_argument("scheme and target system differ in size");
  const auto pot = diff_ranking_pot();
  std::vector<WConsistencyPair> out;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    WConsistencyPair w;
    w.index = i;
    TaylorForm t = continuous_limit(scheme[i], 0, 0, 0);
    w.implied = t.leading();
    w.grade = t.leading_grade().value_or(0);
    w.target = targets[i];
    if (proportional(w.implied, w.target, true)) {
      w.exact = true;
      const auto& [t0, c0] = *w.implied.terms().begin();
      w.factor = c0 / w.target.coeff(t0);
    } else {
      std::vector<DiffPoly> others;
      for (std::size_t j = 0; j < targets.size(); ++j)
        if (j != i) others.push_back(targets[j]);
      auto gb = groebner_complete(others, pot).basis;
      DiffPoly rg = normal_form(w.implied, gb, pot), rf = normal_form(w.target, gb, pot);
      if (!rf.is_zero() && proportional(rg, rf, true)) {
        w.modulo_others = true;
        const auto& [t0, c0] = *rg.terms().begin();
        w.factor = c0 / rf.coeff(t0);
      }
    }
    w.pass = (w.exact || w.modulo_others) && w.grade >= 0;
    out.push_back(std::move(w));
  }
  return out;
}

// ----------------------------------------------------------------- strong

ConsistencyReport check_s_consistency(const std::vector<DiffncePoly>& scheme, const std::vector<DiffPoly>& diff_basis,
                                      const std::vector<DiffPoly>& targets) {
  const auto pot = diff_ranking_pot();
  ConsistencyReport rep;
  const auto& tg = targets.empty() ? diff_basis : targets;
  if (tg.size() == scheme.size()) {
    rep.pairs = check_w_consistency(scheme, tg);
    rep.w_consistent = true;
    for (const auto& p : rep.pairs) rep.w_consistent = rep.w_consistent && p.pass;
  }
  auto dgb = groebner_complete(diff_basis, pot).basis;
  rep.difference_basis = groebner_difference(scheme).basis;
  rep.s_consistent = true;
  for (const auto& el : rep.difference_basis) {
    ImpliedRecord rec;
    rec.element = el;
    TaylorForm t = continuous_limit(el, 0, 0, 0);
    rec.implied = t.leading();
    rec.grade = t.leading_grade().value_or(0);
    rec.normal_form = normal_form(rec.implied, dgb, pot);
    rec.member = rec.normal_form.is_zero();
    rec.implied_monic = rec.implied.monic(pot);
    rec.normal_form_monic = rec.normal_form.monic(pot);
    if (!rec.member) {
      rep.s_consistent = false;
      rep.witnesses.push_back(rep.records.size());
    }
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

GroebnerEquivalence check_groebner_equivalence(const std::vector<DiffncePoly>& scheme) {
  const auto r = diffnce_ranking_default();
  GroebnerEquivalence e;
  e.strict = is_groebner(scheme, r, true);
  e.scheme_size = 0;
  for (const auto& p : scheme)
    if (!p.is_zero()) ++e.scheme_size;
  auto gb = groebner_difference(scheme, r).basis;
  e.completion_size = gb.size();
  e.no_new_elements = e.completion_size <= e.scheme_size;
  for (const auto& p : gb) e.completion_leaders.push_back(leader_name(p));
  return e;
}

// --------------------------------------------------------------- modified

std::vector<TaylorForm> expand_scheme(const std::vector<DiffncePoly>& scheme, const std::vector<BasePoint>& base,
                                      int order) {
  if (scheme.size() != base.size()) throw std::invalid_argument("one base point per scheme equation required");
  std::vector<TaylorForm> out;
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    TaylorForm t = continuous_limit(scheme[i], base[i].first, base[i].second, order);
    out.push_back(shift_grades(t, -t.leading_grade().value_or(0)));
  }
  return out;
}

ModifiedFlow modified_equations(const std::vector<DiffncePoly>& scheme, const std::vector<BasePoint>& base, int order,
                                const std::vector<DiffPoly>& diff_basis, const DiffRanking& canonical) {
  const std::size_t n = scheme.size();
  if (diff_basis.size() != n) throw std::invalid_argument("scheme and differential basis differ in size");
  if (order < 0) throw std::invalid_argument("negative order");
  const auto pot = diff_ranking_pot();
  ModifiedFlow flow;
  flow.order = order;
  for (std::size_t i = 0; i < n; ++i) {
    TaylorForm t = continuous_limit(scheme[i], base[i].first, base[i].second, order);
    flow.leading_grades.push_back(t.leading_grade().value_or(0));
    flow.raw.push_back(shift_grades(t, -flow.leading_grades.back()));
  }

  // Grade 0: raw_i = lambda_i F_i + sum_j L_ij F_j.
  std::vector<std::vector<OperatorPoly>> L(n, std::vector<OperatorPoly>(n));
  GroebnerOptions track;
  track.track_cofactors = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<DiffPoly> others;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(diff_basis[j]), idx.push_back(j);
    DiffPoly g0 = flow.raw[i].grade(0);
    if (proportional(g0, diff_basis[i], true)) {
      const auto& [t0, c0] = *g0.terms().begin();
      flow.scales.push_back(c0 / diff_basis[i].coeff(t0));
      continue;
    }
    auto gr = groebner_complete(others, pot, track);
    std::vector<OperatorPoly> qa, qb;
    DiffPoly rg = normal_form(g0, gr.basis, pot, &qa);
    DiffPoly rf = normal_form(diff_basis[i], gr.basis, pot, &qb);
    if (rf.is_zero() || !proportional(rg, rf, true))
      throw std::invalid_argument(fmt::format("scheme equation {} is not weakly consistent with its partner", i + 1));
    const auto& [t0, c0] = *rg.terms().begin();
    ParamCoeff lambda = c0 / rf.coeff(t0);
    flow.scales.push_back(lambda);
    std::vector<OperatorPoly> q(qa.size());
    for (std::size_t m = 0; m < qa.size(); ++m) q[m] = op_axpy(qa[m], -lambda, qb[m]);
    auto li = pull_back(q, gr.cofactors, others.size());
    DiffPoly check = diff_basis[i] * lambda;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      L[i][idx[k]] = li[k];
      check += apply_operator(li[k], diff_basis[idx[k]]);
    }
    if (!(check == g0)) throw std::logic_error("grade-0 decomposition failed");
  }

  // M_i = (raw_i - sum_j L_ij M_j) / lambda_i in dependency order.
  std::vector<int> state(n, 0);
  std::vector<TaylorForm> M(n);
  std::function<void(std::size_t)> build = [&](std::size_t i) {
    if (state[i] == 2) return;
    if (state[i] == 1) throw std::invalid_argument("cyclic grade-0 dependence between scheme equations");
    state[i] = 1;
    TaylorForm m = flow.raw[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (L[i][j].empty()) continue;
      build(j);
      m = series_add(m, series_apply(L[i][j], M[j]), ParamCoeff(-1));
    }
    TaylorForm scaled;
    scaled.truncation = m.truncation;
    ParamCoeff inv = flow.scales[i].inverse();
    for (const auto& [k, p] : m.grades) set_grade(scaled, k, p * inv);
    if (!(scaled.grade(0) == diff_basis[i])) throw std::logic_error("grade-0 rewrite did not reach the basis element");
    M[i] = std::move(scaled);
    state[i] = 2;
  };
  for (std::size_t i = 0; i < n; ++i) build(i);
  flow.couplings = L;

  // Higher grades: normal form modulo the basis, pushing the removed
  // multiples of F_j onto higher grades through M_j.
  auto cgb = groebner_complete(diff_basis, canonical, track);
  for (int gr = 1; gr <= order; ++gr) {
    std::vector<TaylorForm> old = M;
    for (std::size_t i = 0; i < n; ++i) {
      DiffPoly s = old[i].grade(gr);
      if (s.is_zero()) continue;
      std::vector<OperatorPoly> q;
      DiffPoly nf = normal_form(s, cgb.basis, canonical, &q);
      set_grade(M[i], gr, nf);
      auto Q = pull_back(q, cgb.cofactors, n);
      for (std::size_t j = 0; j < n; ++j) {
        if (Q[j].empty()) continue;
        for (int g2 = 1; gr + g2 <= order; ++g2) {
          DiffPoly corr = apply_operator(Q[j], old[j].grade(g2));
          if (!corr.is_zero()) set_grade(M[i], gr + g2, M[i].grade(gr + g2) - corr);
        }
      }
    }
  }
  flow.equations = std::move(M);
  return flow;
}

TaylorForm integrability_combination(const std::vector<TaylorForm>& e, int order) {
  if (e.size() != 4) throw std::invalid_argument("integrability combination needs four expansions");
  ParamCoeff ir = ParamCoeff::Re().inverse();
  OperatorPoly dx{{{1, 0}, ParamCoeff(1)}}, dy{{{0, 1}, ParamCoeff(1)}};
  OperatorPoly lap{{{2, 0}, ir}, {{0, 2}, ir}};
  TaylorForm r;
  r.truncation = order;
  r = series_add(r, series_apply(dx, e[1]));
  r = series_add(r, series_apply(dy, e[2]));
  r = series_add(r, series_apply(lap, e[0]));
  r = series_add(r, e[3], ParamCoeff(-1));
  r.truncation = order;
  return r;
}

TaylorForm integrability_residual(const std::vector<TaylorForm>& e, int order, const std::vector<DiffPoly>& diff_basis,
                                  const DiffRanking& canonical) {
  TaylorForm R = integrability_combination(e, order);
  const auto pot = diff_ranking_pot();
  std::vector<DiffPoly> lead;
  for (const auto& t : e) lead.push_back(t.grade(0));
  GroebnerOptions track;
  track.track_cofactors = true;
  auto gr = groebner_complete(lead, pot, track);
  std::vector<OperatorPoly> q;
  normal_form(R.grade(0), gr.basis, pot, &q);
  auto K = pull_back(q, gr.cofactors, lead.size());
  for (std::size_t j = 0; j < e.size(); ++j)
    if (!K[j].empty()) R = series_add(R, series_apply(K[j], e[j]), ParamCoeff(-1));
  auto cgb = groebner_complete(diff_basis, canonical).basis;
  TaylorForm out;
  out.truncation = order;
  for (const auto& [k, p] : R.grades)
    if (k <= order) set_grade(out, k, normal_form(p, cgb, canonical));
  return out;
}

// ----------------------------------------------------------------- output

namespace {

json poly_json(const DiffPoly& p, const DiffRanking& r) {
  json j;
  j["text"] = to_string(p, r);
  j["leader"] = p.is_zero() ? "" : term_name(p.leader(r));
  json terms = json::array();
  for (const auto& [t, c] : p.sorted(r)) terms.push_back({{"term", term_name(t)}, {"coeff", c.to_string()}});
  j["terms"] = terms;
  return j;
}

json diffnce_json(const DiffncePoly& p) {
  const auto r = diffnce_ranking_default();
  json j;
  j["text"] = to_string(p, r);
  j["leader"] = leader_name(p);
  return j;
}

}  // namespace

std::string taylor_json(const TaylorForm& t, const DiffRanking& r) {
  json j;
  j["truncation"] = t.truncation;
  json g = json::object();
  for (const auto& [k, p] : t.grades) g[std::to_string(k)] = poly_json(p, r);
  j["grades"] = g;
  return j.dump(2);
}

std::string report_json(const ConsistencyReport& rep) {
  const auto pot = diff_ranking_pot();
  json j;
  j["w_consistent"] = rep.w_consistent;
  j["s_consistent"] = rep.s_consistent;
  json pairs = json::array();
  for (const auto& p : rep.pairs) {
    pairs.push_back({{"index", p.index + 1},
                     {"implied", poly_json(p.implied, pot)},
                     {"grade", p.grade},
                     {"target", poly_json(p.target, pot)},
                     {"exact", p.exact},
                     {"modulo_others", p.modulo_others},
                     {"factor", p.factor ? p.factor->to_string() : ""},
                     {"pass", p.pass}});
  }
  j["pairs"] = pairs;
  json recs = json::array();
  for (const auto& rc : rep.records) {
    recs.push_back({{"element", diffnce_json(rc.element)},
                    {"implied", poly_json(rc.implied, pot)},
                    {"grade", rc.grade},
                    {"normal_form", poly_json(rc.normal_form, pot)},
                    {"member", rc.member}});
  }
  j["difference_basis"] = recs;
  j["witnesses"] = rep.witnesses;
  return j.dump(2);
}

std::string report_text(const ConsistencyReport& rep) {
  const auto pot = diff_ranking_pot();
  std::string s;
  s += fmt::format("weak consistency: {}\n", rep.w_consistent ? "yes" : "no");
  for (const auto& p : rep.pairs)
    s += fmt::format("  pair {}: {} (implied h^{}: {}){}\n", p.index + 1, p.pass ? "ok" : "FAILS", p.grade,
                     to_string(p.implied, pot), p.exact ? "" : (p.modulo_others ? " [modulo other equations]" : ""));
  s += fmt::format("difference Groebner basis: {} elements\n", rep.difference_basis.size());
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& rc = rep.records[i];
    s += fmt::format("  [{}] leader {}: implies h^{} {} -> {}\n", i + 1, leader_name(rc.element), rc.grade,
                     to_string(rc.implied_monic, pot),
                     rc.member ? "in ideal" : "NOT in ideal, normal form " + to_string(rc.normal_form_monic, pot));
  }
  s += fmt::format("strong consistency: {}\n", rep.s_consistent ? "yes" : "no");
  return s;
}

std::string report_latex(const ConsistencyReport& rep) {
  const auto pot = diff_ranking_pot();
  std::string s = "\\begin{array}{ll}\n";
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& rc = rep.records[i];
    s += fmt::format("{} & \\rhd\\; {}{} \\\\\n", to_latex(rc.element), to_latex(rc.implied_monic, pot),
                     rc.member ? "" : "\\;(\\notin)");
  }
  s += "\\end{array}\n";
  return s;
}

std::string flow_text(const ModifiedFlow& f, const DiffRanking& r) {
  std::string s;
  for (std::size_t i = 0; i < f.equations.size(); ++i) {
    s += fmt::format("equation {}:\n", i + 1);
    for (const auto& [k, p] : f.equations[i].grades) s += fmt::format("  h^{}: {}\n", k, to_string(p, r));
    s += fmt::format("  + O(h^{})\n", f.order + 1);
  }
  return s;
}

std::string flow_json(const ModifiedFlow& f, const DiffRanking& r) {
  json j;
  j["order"] = f.order;
  json eqs = json::array();
  for (std::size_t i = 0; i < f.equations.size(); ++i) {
    json e;
    e["reduced"] = json::parse(taylor_json(f.equations[i], r));
    e["raw"] = json::parse(taylor_json(f.raw[i], r));
    e["leading_grade"] = f.leading_grades[i];
    eqs.push_back(e);
  }
  j["equations"] = eqs;
  return j.dump(2);
}

std::string flow_latex(const ModifiedFlow& f, const DiffRanking& r) {
  std::string s = "\\left\\lbrace\n\\begin{array}{rl}\n";
  for (std::size_t i = 0; i < f.equations.size(); ++i) {
    std::string line;
    for (const auto& [k, p] : f.equations[i].grades) {
      std::string term = to_latex(p, r);
      if (k == 0)
        line = term;
      else
        line += fmt::format(" + h^{{{}}}\\left({}\\right)", k, term);
    }
    s += fmt::format("\\tilde{{F}}^{{({})}}:=& {} + \\mathcal{{O}}(h^{{{}}})=0\\,,\\\\\n", i + 1, line, f.order + 1);
  }
  s += "\\end{array}\n\\right.\n";
  return s;
}

}  // namespace scfd
