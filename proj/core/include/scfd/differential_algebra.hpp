// Linear differential polynomials in u, v, p, f1, f2 over Q(Re, h).
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scfd/linear_module.hpp"

namespace scfd {

enum class DiffIndet { u = 0, v = 1, p = 2, f1 = 3, f2 = 4 };

inline constexpr DiffIndet kDiffIndets[] = {DiffIndet::u, DiffIndet::v, DiffIndet::p, DiffIndet::f1,
                                            DiffIndet::f2};

// Term (indet, dx, dy) is the derivative d^dx/dx^dx d^dy/dy^dy of indet.
using DiffTerm = IndexedTerm<DiffIndet>;
using DiffPoly = LinearPoly<DiffIndet>;
using DiffRanking = Ranking<DiffIndet>;

// u > v > p > f1 > f2 by position, then lex on (dx, dy) with x > y.
DiffRanking diff_ranking_pot();
// Lex on (dx, dy) first, then the same indeterminate order.
DiffRanking diff_ranking_top();

// Shorthand for building polynomials: d(DiffIndet::u, 1, 0) is u_x.
DiffPoly d(DiffIndet x, int dx = 0, int dy = 0);

DiffPoly derivative(const DiffPoly& g, int dx, int dy);
// Laplacian applied to g.
DiffPoly laplacian(const DiffPoly& g);

std::string indet_name(DiffIndet x);
DiffIndet diff_indet_from_name(std::string_view name);

// "u_xxy" style names; f1 without derivative is "f1".
std::string term_name(const DiffTerm& t);
std::string term_latex(const DiffTerm& t);
DiffTerm parse_diff_term(std::string_view text);

std::string to_string(const DiffPoly& g, const DiffRanking& r = diff_ranking_pot());
std::string to_latex(const DiffPoly& g, const DiffRanking& r = diff_ranking_pot());
DiffPoly parse_diff_poly(std::string_view text);

// Exchange x <-> y, u <-> v, f1 <-> f2; p is fixed.
DiffPoly swap_xy(const DiffPoly& g);

// Membership test against a Groebner basis (normal form is zero).
bool is_member(const DiffPoly& f, const std::vector<DiffPoly>& gb, const DiffRanking& r = diff_ranking_pot());

// Same polynomial up to a nonzero factor in Q(Re, h); `h_free` additionally
// requires the factor not to depend on h.
bool proportional(const DiffPoly& a, const DiffPoly& b, bool h_free = false);

}  // namespace scfd
