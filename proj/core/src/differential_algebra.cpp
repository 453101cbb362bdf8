#include "scfd/differential_algebra.hpp"

#include <stdexcept>

#include "scfd/poly_io.hpp"

namespace scfd {

namespace {
const std::vector<DiffIndet> kOrder(std::begin(kDiffIndets), std::end(kDiffIndets));
}

DiffRanking diff_ranking_pot() { return DiffRanking(kOrder, RankScheme::PositionOverTerm); }
DiffRanking diff_ranking_top() { return DiffRanking(kOrder, RankScheme::TermOverPosition); }

DiffPoly d(DiffIndet x, int dx, int dy) {
  if (dx < 0 || dy < 0) throw std::invalid_argument("negative derivative order");
  return DiffPoly(DiffTerm{x, dx, dy});
}

DiffPoly derivative(const DiffPoly& g, int dx, int dy) {
  if (dx < 0 || dy < 0) throw std::invalid_argument("negative derivative order");
  return g.shifted(dx, dy);
}

DiffPoly laplacian(const DiffPoly& g) { return g.shifted(2, 0) + g.shifted(0, 2); }

std::string indet_name(DiffIndet x) {
  switch (x) {
    case DiffIndet::u: return "u";
    case DiffIndet::v: return "v";
    case DiffIndet::p: return "p";
    case DiffIndet::f1: return "f1";
    case DiffIndet::f2: return "f2";
  }
  return "?";
}

DiffIndet diff_indet_from_name(std::string_view name) {
  for (auto x : kDiffIndets)
    if (indet_name(x) == name) return x;
  throw std::invalid_argument("unknown differential indeterminate '" + std::string(name) + "'");
}

std::string term_name(const DiffTerm& t) {
  std::string s = indet_name(t.indet);
  if (t.a + t.b == 0) return s;
  return s + "_" + std::string(t.a, 'x') + std::string(t.b, 'y');
}

std::string term_latex(const DiffTerm& t) {
  std::string s;
  switch (t.indet) {
    case DiffIndet::f1: s = "f^{(1)}"; break;
    case DiffIndet::f2: s = "f^{(2)}"; break;
    default: s = indet_name(t.indet);
  }
  if (t.a + t.b == 0) return s;
  return s + "_{" + std::string(t.a, 'x') + std::string(t.b, 'y') + "}";
}

DiffTerm parse_diff_term(std::string_view text) {
  auto us = text.find('_');
  DiffTerm t{diff_indet_from_name(text.substr(0, us)), 0, 0};
  if (us == std::string_view::npos) return t;
  auto der = text.substr(us + 1);
  if (der.empty()) throw std::invalid_argument("empty derivative in '" + std::string(text) + "'");
  for (char ch : der) {
    if (ch == 'x')
      ++t.a;
    else if (ch == 'y')
      ++t.b;
    else
      throw std::invalid_argument("bad derivative variable in '" + std::string(text) + "'");
  }
  return t;
}

std::string to_string(const DiffPoly& g, const DiffRanking& r) {
  return format_poly<DiffIndet>(g, r, term_name);
}

std::string to_latex(const DiffPoly& g, const DiffRanking& r) {
  return format_poly_latex<DiffIndet>(g, r, term_latex);
}

DiffPoly parse_diff_poly(std::string_view text) { return parse_poly<DiffIndet>(text, parse_diff_term); }

DiffPoly swap_xy(const DiffPoly& g) {
  DiffPoly r;
  for (const auto& [t, c] : g.terms()) {
    DiffIndet x = t.indet;
    switch (x) {
      case DiffIndet::u: x = DiffIndet::v; break;
      case DiffIndet::v: x = DiffIndet::u; break;
      case DiffIndet::f1: x = DiffIndet::f2; break;
      case DiffIndet::f2: x = DiffIndet::f1; break;
      default: break;
    }
    r.add(DiffTerm{x, t.b, t.a}, c);
  }
  return r;
}

bool is_member(const DiffPoly& f, const std::vector<DiffPoly>& gb, const DiffRanking& r) {
  return normal_form(f, gb, r).is_zero();
}

bool proportional(const DiffPoly& a, const DiffPoly& b, bool h_free) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  const auto& [t0, c0] = *a.terms().begin();
  ParamCoeff cb = b.coeff(t0);
  if (cb.is_zero()) return false;
  ParamCoeff lambda = c0 / cb;
  if (h_free && lambda.depends_on_h()) return false;
  return a == b * lambda;
}

}  // namespace scfd
