// Linear difference polynomials on the uniform grid and their continuous
// limits.
#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scfd/differential_algebra.hpp"
#include "scfd/linear_module.hpp"

namespace scfd {

// ux..vy are auxiliary grid functions standing for the first derivatives.
enum class GridIndet { ux = 0, uy, vx, vy, u, v, p, f1, f2 };

inline constexpr GridIndet kGridIndets[] = {GridIndet::ux, GridIndet::uy, GridIndet::vx,
                                            GridIndet::vy, GridIndet::u,  GridIndet::v,
                                            GridIndet::p,  GridIndet::f1, GridIndet::f2};

// Term (indet, a, b) is the value of indet at grid node (j + a, k + b).
using GridTerm = IndexedTerm<GridIndet>;
using DiffncePoly = LinearPoly<GridIndet>;
using DiffnceRanking = Ranking<GridIndet>;

// ux > uy > vx > vy > u > v > p > f1 > f2 by position, then lex on the
// shifts with j > k.
DiffnceRanking diffnce_ranking_default();

DiffncePoly g(GridIndet x, int a = 0, int b = 0);

std::string grid_indet_name(GridIndet x);
GridIndet grid_indet_from_name(std::string_view name);
std::string grid_term_name(const GridTerm& t);   // "u[j+2,k+1]"
std::string grid_term_latex(const GridTerm& t);  // "u_{j+2,k+1}"
GridTerm parse_grid_term(std::string_view text);

std::string to_string(const DiffncePoly& g, const DiffnceRanking& r = diffnce_ranking_default());
std::string to_latex(const DiffncePoly& g, const DiffnceRanking& r = diffnce_ranking_default());
DiffncePoly parse_diffnce_poly(std::string_view text);

DiffncePoly shift(const DiffncePoly& g, int da, int db);
// Shifted so that the smallest j-shift and k-shift are both 0.
DiffncePoly normalize_shifts(const DiffncePoly& g);

// Exchange j <-> k, u <-> v, f1 <-> f2, ux <-> vy, uy <-> vx.
DiffncePoly swap_jk(const DiffncePoly& g);

DiffncePoly normal_form(const DiffncePoly& g, const std::vector<DiffncePoly>& basis,
                        const DiffnceRanking& r = diffnce_ranking_default());
bool is_member(const DiffncePoly& g, const std::vector<DiffncePoly>& gb,
               const DiffnceRanking& r = diffnce_ranking_default());

// Reduced Groebner basis with shift normalisation.
GroebnerResult<GridIndet> groebner_difference(const std::vector<DiffncePoly>& gens,
                                              const DiffnceRanking& r = diffnce_ranking_default());

// Basis elements free of `drop`. Every dropped indeterminate must rank
// above every kept one; throws std::invalid_argument otherwise.
std::vector<DiffncePoly> eliminate(const std::vector<DiffncePoly>& polys, const std::set<GridIndet>& drop,
                                   const DiffnceRanking& r = diffnce_ranking_default());

// Both sets generate the same module (mutual normal forms vanish).
bool same_module(const std::vector<DiffncePoly>& a, const std::vector<DiffncePoly>& b,
                 const DiffnceRanking& r = diffnce_ranking_default());

// Expansion sum_k h^k T_k with h-free differential polynomials T_k.
struct TaylorForm {
  std::map<int, DiffPoly> grades;  // only nonzero grades are stored
  int truncation = 0;              // grades above this are not computed

  std::optional<int> leading_grade() const;
  // Lowest nonzero grade polynomial; zero polynomial if none.
  DiffPoly leading() const;
  DiffPoly grade(int k) const;
  bool operator==(const TaylorForm& o) const { return grades == o.grades && truncation == o.truncation; }
};

std::string to_string(const TaylorForm& t, const DiffRanking& r = diff_ranking_pot());

// Grid term -> differential term (ux becomes u_x and so on).
DiffTerm continuous_term(GridIndet x);

// Taylor expansion of g about the grid point (j + base_a, k + base_b),
// computed from the lowest nonzero grade L through grade L + order.
TaylorForm continuous_limit(const DiffncePoly& g, const mpq_class& base_a, const mpq_class& base_b, int order);

// Lowest-grade polynomial of the expansion (the implied differential
// polynomial); independent of the base point.
DiffPoly implied_polynomial(const DiffncePoly& g);

// Central difference operator along one axis, as (offset, weight) pairs.
// derivative 1 or 2; m = 1 gives second order, m = 2 fourth order.
struct StencilOp {
  int axis = 0;  // 0: j (x), 1: k (y)
  std::vector<std::pair<int, ParamCoeff>> weights;
  DiffncePoly apply(const DiffncePoly& g) const;
};
StencilOp central_diff_op(int axis, int derivative, int m);

}  // namespace scfd
