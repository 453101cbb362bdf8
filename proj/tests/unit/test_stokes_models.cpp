#include <gtest/gtest.h>

#include "reference_values.hpp"
#include "scfd/stokes_models.hpp"

using namespace scfd;

TEST(StokesModels, SystemsMatchReference) {
  auto s = stokes_system();
  auto inv = involutive_system();
  ASSERT_EQ(s.size(), ref::kStokes.size());
  ASSERT_EQ(inv.size(), ref::kInvolutive.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], parse_diff_poly(ref::kStokes[i]));
  for (std::size_t i = 0; i < inv.size(); ++i) EXPECT_EQ(inv[i], parse_diff_poly(ref::kInvolutive[i]));
}

TEST(StokesModels, DiscretizationMatchesReference) {
  auto got = discretize();
  ASSERT_EQ(got.size(), ref::kDiscretized.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], parse_diffnce_poly(ref::kDiscretized[i])) << i;
  auto lit = discretized_system_literal();
  ASSERT_EQ(lit.size(), got.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(lit[i], got[i]) << i;
}

TEST(StokesModels, SchemeMatchesReference) {
  auto s = scheme(SchemeKind::Consistent);
  ASSERT_EQ(s.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s[i], parse_diffnce_poly(ref::kScheme[i])) << i;
  auto c = scheme(SchemeKind::Compact);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(c[i], s[i]);
  EXPECT_EQ(c[3], parse_diffnce_poly(ref::kCompactPoisson));
}

TEST(StokesModels, EliminationYieldsTheScheme) {
  auto e = derive_scheme_by_elimination();
  EXPECT_TRUE(same_module(e, scheme(SchemeKind::Consistent)));
}

TEST(StokesModels, PoissonFromQuadratureIsWideStencil) {
  EXPECT_EQ(poisson_from_quadrature(), scheme(SchemeKind::Consistent)[3]);
}

TEST(StokesModels, StencilWidths) {
  auto s = scheme(SchemeKind::Consistent);
  EXPECT_EQ(stencil_width(s[0]), std::make_pair(2, 2));
  EXPECT_EQ(stencil_width(s[3]), std::make_pair(4, 4));
  EXPECT_EQ(stencil_width(scheme(SchemeKind::Compact)[3]), std::make_pair(2, 2));
}

TEST(StokesModels, LaplaciansHaveContinuousLimit) {
  for (GridIndet x : {GridIndet::u, GridIndet::p}) {
    DiffPoly lap = laplacian(DiffPoly(continuous_term(x)));
    EXPECT_EQ(implied_polynomial(delta1(x)), lap);
    EXPECT_EQ(implied_polynomial(delta2(x)), lap);
    EXPECT_EQ(stencil_width(delta2(x)), std::make_pair(4, 4));
  }
}

TEST(StokesModels, SwapSymmetry) {
  for (auto k : {SchemeKind::Consistent, SchemeKind::Compact}) {
    auto s = scheme(k);
    EXPECT_EQ(swap_jk(s[0]), s[0]);
    EXPECT_EQ(swap_jk(s[1]), s[2]);
    EXPECT_EQ(swap_jk(s[3]), s[3]);
  }
  auto inv = involutive_system();
  EXPECT_EQ(swap_xy(inv[3]), inv[3]);
}

TEST(StokesModels, BasePointsAreStencilCentres) {
  auto b = scheme_base_points(SchemeKind::Consistent);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b[0], std::make_pair(mpq_class(1), mpq_class(1)));
  EXPECT_EQ(b[3], std::make_pair(mpq_class(2), mpq_class(2)));
  EXPECT_EQ(scheme_base_points(SchemeKind::Compact)[3], std::make_pair(mpq_class(1), mpq_class(1)));
}

TEST(StokesModels, SchemeNames) {
  EXPECT_EQ(scheme_from_name("paper"), SchemeKind::Consistent);
  EXPECT_EQ(scheme_from_name("s-consistent"), SchemeKind::Consistent);
  EXPECT_EQ(scheme_from_name("compact"), SchemeKind::Compact);
  EXPECT_EQ(scheme_from_name(scheme_name(SchemeKind::Compact)), SchemeKind::Compact);
  EXPECT_THROW(scheme_from_name("upwind"), std::invalid_argument);
}
