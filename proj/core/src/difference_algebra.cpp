#include "scfd/difference_algebra.hpp"

#include <cctype>
#include <stdexcept>

#include <fmt/format.h>

#include "scfd/poly_io.hpp"

namespace scfd {

namespace {
const std::vector<GridIndet> kOrder(std::begin(kGridIndets), std::end(kGridIndets));

std::string offset_str(char axis, int k) {
  if (k == 0) return std::string(1, axis);
  return fmt::format("{}{}{}", axis, k > 0 ? "+" : "-", std::abs(k));
}
}  // namespace

DiffnceRanking diffnce_ranking_default() { return DiffnceRanking(kOrder, RankScheme::PositionOverTerm); }

DiffncePoly g(GridIndet x, int a, int b) { return DiffncePoly(GridTerm{x, a, b}); }

std::string grid_indet_name(GridIndet x) {
  static const char* names[] = {"ux", "uy", "vx", "vy", "u", "v", "p", "f1", "f2"};
  return names[static_cast<int>(x)];
}

GridIndet grid_indet_from_name(std::string_view name) {
  for (auto x : kGridIndets)
    if (grid_indet_name(x) == name) return x;
  throw std::invalid_argument("unknown grid indeterminate '" + std::string(name) + "'");
}

std::string grid_term_name(const GridTerm& t) {
  return grid_indet_name(t.indet) + "[" + offset_str('j', t.a) + "," + offset_str('k', t.b) + "]";
}

std::string grid_term_latex(const GridTerm& t) {
  std::string base;
  switch (t.indet) {
    case GridIndet::ux: base = "{u_x}"; break;
    case GridIndet::uy: base = "{u_y}"; break;
    case GridIndet::vx: base = "{v_x}"; break;
    case GridIndet::vy: base = "{v_y}"; break;
    case GridIndet::f1: base = "f^{(1)}"; break;
    case GridIndet::f2: base = "f^{(2)}"; break;
    default: base = grid_indet_name(t.indet);
  }
  return base + "_{" + offset_str('j', t.a) + "," + offset_str('k', t.b) + "}";
}

namespace {

int parse_offset(std::string_view s, char axis, std::string_view whole) {
  auto bad = [&]() {
    throw std::invalid_argument("bad grid index in '" + std::string(whole) + "'");
  };
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || s[i] != axis) bad();
  ++i;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return 0;
  int sign = 1;
  if (s[i] == '+')
    sign = 1;
  else if (s[i] == '-')
    sign = -1;
  else
    bad();
  ++i;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t st = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (st == i) bad();
  int v = std::stoi(std::string(s.substr(st, i - st)));
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i != s.size()) bad();
  return sign * v;
}

}  // namespace

GridTerm parse_grid_term(std::string_view text) {
  auto lb = text.find('[');
  if (lb == std::string_view::npos) return GridTerm{grid_indet_from_name(text), 0, 0};
  auto rb = text.find(']', lb);
  auto comma = text.find(',', lb);
  if (rb == std::string_view::npos || comma == std::string_view::npos || comma > rb || rb + 1 != text.size())
    throw std::invalid_argument("bad grid term '" + std::string(text) + "'");
  GridTerm t{grid_indet_from_name(text.substr(0, lb)), 0, 0};
  t.a = parse_offset(text.substr(lb + 1, comma - lb - 1), 'j', text);
  t.b = parse_offset(text.substr(comma + 1, rb - comma - 1), 'k', text);
  return t;
}

std::string to_string(const DiffncePoly& p, const DiffnceRanking& r) {
  return format_poly<GridIndet>(p, r, grid_term_name);
}

std::string to_latex(const DiffncePoly& p, const DiffnceRanking& r) {
  return format_poly_latex<GridIndet>(p, r, grid_term_latex);
}

DiffncePoly parse_diffnce_poly(std::string_view text) { return parse_poly<GridIndet>(text, parse_grid_term); }

DiffncePoly shift(const DiffncePoly& p, int da, int db) { return p.shifted(da, db); }

DiffncePoly normalize_shifts(const DiffncePoly& p) {
  if (p.is_zero()) return p;
  return p.shifted(-p.min_a(), -p.min_b());
}

DiffncePoly swap_jk(const DiffncePoly& p) {
  DiffncePoly r;
  for (const auto& [t, c] : p.terms()) {
    GridIndet x = t.indet;
    switch (x) {
      case GridIndet::u: x = GridIndet::v; break;
      case GridIndet::v: x = GridIndet::u; break;
      case GridIndet::f1: x = GridIndet::f2; break;
      case GridIndet::f2: x = GridIndet::f1; break;
      case GridIndet::ux: x = GridIndet::vy; break;
      case GridIndet::vy: x = GridIndet::ux; break;
      case GridIndet::uy: x = GridIndet::vx; break;
      case GridIndet::vx: x = GridIndet::uy; break;
      default: break;
    }
    r.add(GridTerm{x, t.b, t.a}, c);
  }
  return r;
}

DiffncePoly normal_form(const DiffncePoly& p, const std::vector<DiffncePoly>& basis, const DiffnceRanking& r) {
  std::vector<DiffncePoly> nb;
  nb.reserve(basis.size());
  for (const auto& b : basis) nb.push_back(normalize_shifts(b));
  return normalize_shifts(normal_form(normalize_shifts(p), nb, r, nullptr));
}

bool is_member(const DiffncePoly& p, const std::vector<DiffncePoly>& gb, const DiffnceRanking& r) {
  return normal_form(p, gb, r).is_zero();
}

GroebnerResult<GridIndet> groebner_difference(const std::vector<DiffncePoly>& gens, const DiffnceRanking& r) {
  GroebnerOptions opt;
  opt.normalize_shifts = true;
  return groebner_complete(gens, r, opt);
}

std::vector<DiffncePoly> eliminate(const std::vector<DiffncePoly>& polys, const std::set<GridIndet>& drop,
                                   const DiffnceRanking& r) {
  if (r.scheme() != RankScheme::PositionOverTerm)
    throw std::invalid_argument("elimination requires a position-over-term ranking");
  bool seen_kept = false;
  for (auto x : r.order()) {
    bool dropped = drop.count(x) > 0;
    if (dropped && seen_kept)
      throw std::invalid_argument("ranking is not an elimination ranking for " + grid_indet_name(x));
    if (!dropped) seen_kept = true;
  }
  auto gb = groebner_difference(polys, r).basis;
  std::vector<DiffncePoly> out;
  for (const auto& p : gb) {
    bool free = true;
    for (auto x : drop)
      if (p.uses(x)) free = false;
    if (free) out.push_back(p);
  }
  return out;
}

bool same_module(const std::vector<DiffncePoly>& a, const std::vector<DiffncePoly>& b, const DiffnceRanking& r) {
  auto ga = groebner_difference(a, r).basis;
  auto gb = groebner_difference(b, r).basis;
  for (const auto& p : a)
    if (!is_member(p, gb, r)) return false;
  for (const auto& p : b)
    if (!is_member(p, ga, r)) return false;
  return true;
}

// ------------------------------------------------------------- TaylorForm

std::optional<int> TaylorForm::leading_grade() const {
  if (grades.empty()) return std::nullopt;
  return grades.begin()->first;
}

DiffPoly TaylorForm::leading() const { return grades.empty() ? DiffPoly() : grades.begin()->second; }

DiffPoly TaylorForm::grade(int k) const {
  auto it = grades.find(k);
  return it == grades.end() ? DiffPoly() : it->second;
}

std::string to_string(const TaylorForm& t, const DiffRanking& r) {
  if (t.grades.empty()) return "0";
  std::string s;
  for (const auto& [k, p] : t.grades) {
    if (!s.empty()) s += "\n";
    s += fmt::format("h^{}: {}", k, to_string(p, r));
  }
  return s;
}

DiffTerm continuous_term(GridIndet x) {
  switch (x) {
    case GridIndet::ux: return {DiffIndet::u, 1, 0};
    case GridIndet::uy: return {DiffIndet::u, 0, 1};
    case GridIndet::vx: return {DiffIndet::v, 1, 0};
    case GridIndet::vy: return {DiffIndet::v, 0, 1};
    case GridIndet::u: return {DiffIndet::u, 0, 0};
    case GridIndet::v: return {DiffIndet::v, 0, 0};
    case GridIndet::p: return {DiffIndet::p, 0, 0};
    case GridIndet::f1: return {DiffIndet::f1, 0, 0};
    case GridIndet::f2: return {DiffIndet::f2, 0, 0};
  }
  throw std::logic_error("bad grid indeterminate");
}

namespace {

struct ExpansionEntry {
  DiffTerm base;
  mpq_class alpha, beta;  // offsets from the base point
  std::vector<mpq_class> alpha_pow;  // alpha^m / m!
  std::vector<mpq_class> beta_pow;
  ParamCoeff coeff;
  int order = 0;
  int series_max = -1000000;
  std::map<int, ParamCoeff> series;
};

void extend(std::vector<mpq_class>& pw, const mpq_class& x, int upto) {
  while (int(pw.size()) <= upto) {
    int m = int(pw.size());
    pw.push_back(m == 0 ? mpq_class(1) : pw.back() * x / m);
  }
}

}  // namespace

TaylorForm continuous_limit(const DiffncePoly& p, const mpq_class& base_a, const mpq_class& base_b, int order) {
  if (order < 0) throw std::invalid_argument("negative expansion order");
  TaylorForm out;
  if (p.is_zero()) {
    out.truncation = order;
    return out;
  }
  std::vector<ExpansionEntry> entries;
  int lowest = 0;
  bool first = true;
  for (const auto& [t, c] : p.terms()) {
    ExpansionEntry e;
    e.base = continuous_term(t.indet);
    e.coeff = c;
    e.order = *c.h_order();
    lowest = first ? e.order : std::min(lowest, e.order);
    first = false;
    e.alpha = t.a - base_a;
    e.beta = t.b - base_b;
    entries.push_back(std::move(e));
  }

  auto grade_at = [&](int G) {
    DiffPoly r;
    for (auto& e : entries) {
      if (G < e.order) continue;
      if (e.series_max < G) {
        e.series = e.coeff.h_series(G + 4);
        e.series_max = G + 4;
      }
      for (const auto& [k, ck] : e.series) {
        if (k > G) break;
        int n_tot = G - k;
        extend(e.alpha_pow, e.alpha, n_tot);
        extend(e.beta_pow, e.beta, n_tot);
        for (int m = 0; m <= n_tot; ++m) {
          mpq_class w = e.alpha_pow[m] * e.beta_pow[n_tot - m];
          if (w == 0) continue;
          r.add(e.base.shifted(m, n_tot - m), ck * ParamCoeff(w));
        }
      }
    }
    return r;
  };

  constexpr int kSearch = 256;
  int lead = 0;
  bool found = false;
  for (int G = lowest; G <= lowest + kSearch; ++G) {
    DiffPoly q = grade_at(G);
    if (!q.is_zero()) {
      out.grades[G] = std::move(q);
      lead = G;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("continuous limit: no nonzero grade within search range");
  for (int G = lead + 1; G <= lead + order; ++G) {
    DiffPoly q = grade_at(G);
    if (!q.is_zero()) out.grades[G] = std::move(q);
  }
  out.truncation = lead + order;
  return out;
}

DiffPoly implied_polynomial(const DiffncePoly& p) { return continuous_limit(p, 0, 0, 0).leading(); }

// ------------------------------------------------------------ StencilOp

DiffncePoly StencilOp::apply(const DiffncePoly& p) const {
  DiffncePoly r;
  for (const auto& [k, w] : weights) r.axpy(w, p, axis == 0 ? k : 0, axis == 1 ? k : 0);
  return r;
}

StencilOp central_diff_op(int axis, int derivative, int m) {
  if (axis != 0 && axis != 1) throw std::invalid_argument("axis must be 0 or 1");
  const ParamCoeff h = ParamCoeff::h();
  StencilOp op;
  op.axis = axis;
  auto w = [&](long n, long dn, int hp) { return ParamCoeff::rational(n, dn) / h.pow(hp); };
  if (derivative == 1 && m == 1) {
    op.weights = {{1, w(1, 2, 1)}, {-1, w(-1, 2, 1)}};
  } else if (derivative == 2 && m == 1) {
    op.weights = {{1, w(1, 1, 2)}, {0, w(-2, 1, 2)}, {-1, w(1, 1, 2)}};
  } else if (derivative == 1 && m == 2) {
    op.weights = {{2, w(-1, 12, 1)}, {1, w(8, 12, 1)}, {-1, w(-8, 12, 1)}, {-2, w(1, 12, 1)}};
  } else if (derivative == 2 && m == 2) {
    op.weights = {{2, w(-1, 12, 2)}, {1, w(16, 12, 2)}, {0, w(-30, 12, 2)}, {-1, w(16, 12, 2)}, {-2, w(-1, 12, 2)}};
  } else {
    throw std::invalid_argument(
        fmt::format("central difference of derivative order {} with m = {} is not supported", derivative, m));
  }
  return op;
}

}  // namespace scfd
