#include <gtest/gtest.h>

#include <map>
#include <random>

#include "scfd/difference_algebra.hpp"
#include "scfd/stokes_models.hpp"

using namespace scfd;

namespace {

// Bivariate polynomial with rational coefficients, used as an exact test
// field: Taylor expansions of difference polynomials are finite on it.
using Poly2 = std::map<std::pair<int, int>, mpq_class>;

Poly2 diff(const Poly2& p, int dx, int dy) {
  Poly2 r;
  for (const auto& [e, c] : p) {
    if (e.first < dx || e.second < dy) continue;
    mpq_class k = c;
    for (int i = 0; i < dx; ++i) k *= e.first - i;
    for (int i = 0; i < dy; ++i) k *= e.second - i;
    r[{e.first - dx, e.second - dy}] += k;
  }
  return r;
}

mpq_class eval(const Poly2& p, const mpq_class& x, const mpq_class& y) {
  mpq_class s = 0;
  for (const auto& [e, c] : p) {
    mpq_class t = c;
    for (int i = 0; i < e.first; ++i) t *= x;
    for (int i = 0; i < e.second; ++i) t *= y;
    s += t;
  }
  return s;
}

struct Fields {
  std::map<DiffIndet, Poly2> f;
  mpq_class value(const DiffTerm& t, const mpq_class& x, const mpq_class& y) const {
    return eval(diff(f.at(t.indet), t.a, t.b), x, y);
  }
};

Fields random_fields(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> c(-5, 5);
  Fields out;
  for (DiffIndet x : kDiffIndets) {
    Poly2 p;
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) p[{a, b}] = mpq_class(c(rng), 3);
    out.f[x] = p;
  }
  return out;
}

// Exact value of g on the grid centred so that node (j + base) sits at (x0, y0).
mpq_class grid_value(const DiffncePoly& g, const Fields& fl, const mpq_class& re, const mpq_class& h,
                     const mpq_class& ba, const mpq_class& bb, const mpq_class& x0, const mpq_class& y0) {
  mpq_class s = 0;
  for (const auto& [t, c] : g.terms()) {
    DiffTerm dt = continuous_term(t.indet);
    mpq_class x = x0 + (t.a - ba) * h, y = y0 + (t.b - bb) * h;
    s += c.evaluate(re, h) * fl.value(dt, x, y);
  }
  return s;
}

mpq_class series_value(const TaylorForm& tf, const Fields& fl, const mpq_class& re, const mpq_class& h,
                       const mpq_class& x0, const mpq_class& y0) {
  mpq_class s = 0;
  for (const auto& [k, poly] : tf.grades) {
    mpq_class hk = 1;
    if (k >= 0)
      for (int i = 0; i < k; ++i) hk *= h;
    else
      for (int i = 0; i < -k; ++i) hk /= h;
    for (const auto& [t, c] : poly.terms()) s += hk * c.evaluate(re, mpq_class(0)) * fl.value(t, x0, y0);
  }
  return s;
}

}  // namespace

TEST(DifferenceAlgebra, TermNamesRoundTrip) {
  for (const char* s : {"u[j,k]", "p[j+2,k+1]", "ux[j-1,k]", "f2[j,k-3]"}) {
    EXPECT_EQ(grid_term_name(parse_grid_term(s)), s);
  }
  EXPECT_THROW(parse_grid_term("w[j,k]"), std::invalid_argument);
  EXPECT_THROW(parse_diffnce_poly("u[j,k"), std::invalid_argument);
}

TEST(DifferenceAlgebra, NormalizeShiftsAndSwap) {
  DiffncePoly p = parse_diffnce_poly("u[j-1,k+2] - ux[j+1,k-3]/h + f1[j,k]");
  DiffncePoly n = normalize_shifts(p);
  EXPECT_EQ(n.min_a(), 0);
  EXPECT_EQ(n.min_b(), 0);
  EXPECT_EQ(n, shift(p, 1, 3));
  DiffncePoly s = swap_jk(p);
  EXPECT_EQ(s, parse_diffnce_poly("v[j+2,k-1] - vy[j-3,k+1]/h + f2[j,k]"));
  EXPECT_EQ(swap_jk(s), p);
}

// Taylor expansion checked against exact evaluation on random polynomial
// fields at two step sizes; the truncated series is exact for them.
TEST(DifferenceAlgebra, ContinuousLimitPolynomialOracle) {
  std::mt19937 rng(11);
  std::vector<DiffncePoly> polys = discretize();
  for (auto k : {SchemeKind::Consistent, SchemeKind::Compact})
    for (const auto& s : scheme(k)) polys.push_back(s);
  const mpq_class re(3, 2), x0(1, 3), y0(-2, 7);
  const std::pair<mpq_class, mpq_class> bases[] = {{0, 0}, {1, 1}, {mpq_class(1, 2), 2}};
  for (const auto& g : polys)
    for (const auto& [ba, bb] : bases) {
      Fields fl = random_fields(rng, 5);
      TaylorForm tf = continuous_limit(g, ba, bb, 8);
      for (const mpq_class h : {mpq_class(1, 5), mpq_class(2, 9)}) {
        EXPECT_EQ(series_value(tf, fl, re, h, x0, y0), grid_value(g, fl, re, h, ba, bb, x0, y0))
            << to_string(g);
      }
    }
}

TEST(DifferenceAlgebra, ImpliedPolynomialIndependentOfBase) {
  for (const auto& s : scheme(SchemeKind::Consistent)) {
    DiffPoly a = continuous_limit(s, 0, 0, 0).leading();
    DiffPoly b = continuous_limit(s, 1, 2, 0).leading();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, implied_polynomial(s));
  }
}

TEST(DifferenceAlgebra, ZeroPolynomialHasNoGrades) {
  TaylorForm t = continuous_limit(DiffncePoly(), 0, 0, 2);
  EXPECT_FALSE(t.leading_grade().has_value());
  EXPECT_TRUE(t.leading().is_zero());
}

TEST(DifferenceAlgebra, CentralDifferenceWeights) {
  auto d1 = central_diff_op(0, 1, 1);
  ASSERT_EQ(d1.weights.size(), 2u);
  EXPECT_EQ(d1.apply(g(GridIndet::u)), parse_diffnce_poly("(u[j+1,k] - u[j-1,k])/(2*h)"));
  auto d2 = central_diff_op(1, 2, 2);
  EXPECT_EQ(d2.apply(g(GridIndet::p)),
            parse_diffnce_poly("(-p[j,k+2] + 16*p[j,k+1] - 30*p[j,k] + 16*p[j,k-1] - p[j,k-2])/(12*h^2)"));
  // fourth order: the h^2 error term vanishes
  TaylorForm t = continuous_limit(central_diff_op(0, 1, 2).apply(g(GridIndet::u)), 0, 0, 4);
  EXPECT_EQ(t.grade(0), d(DiffIndet::u, 1, 0));
  EXPECT_TRUE(t.grade(2).is_zero());
  EXPECT_FALSE(t.grade(4).is_zero());
  EXPECT_THROW(central_diff_op(0, 3, 1), std::invalid_argument);
}

TEST(DifferenceAlgebra, EliminationRequiresBlockRanking) {
  auto polys = discretize();
  auto kept = eliminate(polys, {GridIndet::ux, GridIndet::uy, GridIndet::vx, GridIndet::vy});
  for (const auto& k : kept)
    for (GridIndet x : {GridIndet::ux, GridIndet::uy, GridIndet::vx, GridIndet::vy}) EXPECT_FALSE(k.uses(x));
  EXPECT_THROW(eliminate(polys, {GridIndet::p}), std::invalid_argument);
}

TEST(DifferenceAlgebra, GroebnerIsShiftNormalisedAndReduced) {
  auto gb = groebner_difference(scheme(SchemeKind::Compact));
  auto r = diffnce_ranking_default();
  for (const auto& b : gb.basis) {
    EXPECT_EQ(b.min_a(), 0);
    EXPECT_EQ(b.min_b(), 0);
    EXPECT_TRUE(b.leading_coeff(r).is_one());
  }
  for (const auto& s : scheme(SchemeKind::Compact)) EXPECT_TRUE(is_member(s, gb.basis));
  EXPECT_TRUE(same_module(gb.basis, scheme(SchemeKind::Compact)));
  EXPECT_FALSE(same_module(gb.basis, scheme(SchemeKind::Consistent)));
}

TEST(DifferenceAlgebra, PrintingRoundTrips) {
  for (const auto& s : discretize()) EXPECT_EQ(parse_diffnce_poly(to_string(s)), s);
}
