// Reference polynomials, transcribed term by term. Tests parse
// these and compare them with computed results.
#pragma once

#include <array>

namespace ref {

// Involutive form of the Stokes system.
inline constexpr std::array<const char*, 4> kInvolutive = {
    "u_x + v_y",
    "p_x - (u_yy - v_xy)/Re - f1",
    "p_y - (v_xx + v_yy)/Re - f2",
    "p_xx + p_yy - f1_x - f2_y",
};
inline constexpr std::array<const char*, 4> kInvolutiveLeaders = {"u_x", "u_yy", "v_xx", "p_xx"};

inline constexpr std::array<const char*, 3> kStokes = {
    "u_x + v_y",
    "p_x - (u_xx + u_yy)/Re - f1",
    "p_y - (v_xx + v_yy)/Re - f2",
};

// Discretized integral form on the 2h x 2h contour.
inline constexpr std::array<const char*, 7> kDiscretized = {
    "(u[j+2,k+1] - u[j,k+1])*2*h + (v[j+1,k+2] - v[j+1,k])*2*h",
    "1/Re*(uy[j+1,k] - uy[j+1,k+2])*2*h + (p[j+2,k+1] - 1/Re*ux[j+2,k+1])*2*h"
    " - (p[j,k+1] - 1/Re*ux[j,k+1])*2*h - 4*f1[j+1,k+1]*h^2",
    "-((p[j+1,k] - 1/Re*vy[j+1,k]) - (p[j+1,k+2] - 1/Re*vy[j+1,k+2]))*2*h"
    " + (-1/Re*vx[j+2,k+1] + 1/Re*vx[j,k+1])*2*h - 4*f2[j+1,k+1]*h^2",
    "(ux[j+1,k] + ux[j,k])/2*h - u[j+1,k] + u[j,k]",
    "(vx[j+1,k] + vx[j,k])/2*h - v[j+1,k] + v[j,k]",
    "(uy[j,k+1] + uy[j,k])/2*h - u[j,k+1] + u[j,k]",
    "(vy[j,k+1] + vy[j,k])/2*h - v[j,k+1] + v[j,k]",
};

// The s-consistent scheme, Laplacians written out.
inline constexpr std::array<const char*, 4> kScheme = {
    "(u[j+2,k+1] - u[j,k+1])/(2*h) + (v[j+1,k+2] - v[j+1,k])/(2*h)",
    "(p[j+2,k+1] - p[j,k+1])/(2*h)"
    " - 1/Re*(u[j+2,k+1] + u[j+1,k+2] - 4*u[j+1,k+1] + u[j+1,k] + u[j,k+1])/h^2 - f1[j+1,k+1]",
    "(p[j+1,k+2] - p[j+1,k])/(2*h)"
    " - 1/Re*(v[j+2,k+1] + v[j+1,k+2] - 4*v[j+1,k+1] + v[j+1,k] + v[j,k+1])/h^2 - f2[j+1,k+1]",
    "(p[j+4,k+2] + p[j+2,k+4] - 4*p[j+2,k+2] + p[j+2,k] + p[j,k+2])/(4*h^2)"
    " - (f1[j+3,k+2] - f1[j+1,k+2])/(2*h) - (f2[j+2,k+3] - f2[j+2,k+1])/(2*h)",
};

// Compact Poisson replacement.
inline constexpr const char* kCompactPoisson =
    "(p[j+2,k+1] + p[j+1,k+2] - 4*p[j+1,k+1] + p[j+1,k] + p[j,k+1])/h^2"
    " - (f1[j+2,k+1] - f1[j,k+1])/(2*h) - (f2[j+1,k+2] - f2[j+1,k])/(2*h)";

// Raw Taylor expansions about the stencil centres: grade 0 and grade 2.
inline constexpr std::array<const char*, 4> kTaylor0 = {
    "u_x + v_y",
    "p_x - u_xx/Re - u_yy/Re - f1",
    "p_y - v_xx/Re - v_yy/Re - f2",
    "p_xx + p_yy - f1_x - f2_y",
};
inline constexpr std::array<const char*, 4> kTaylor2 = {
    "u_xxx/6 + v_yyy/6",
    "p_xxx/6 - u_xxxx/(12*Re) - u_yyyy/(12*Re)",
    "p_yyy/6 - v_xxxx/(12*Re) - v_yyyy/(12*Re)",
    "-f1_xxx/6 - f2_yyy/6 + p_xxxx/3 + p_yyyy/3",
};

// Second order modified flow of the s-consistent scheme.
inline constexpr std::array<const char*, 4> kModified0 = {
    "u_x + v_y",
    "p_x + v_xy/Re - u_yy/Re - f1",
    "p_y - v_xx/Re - v_yy/Re - f2",
    "p_xx + p_yy - f1_x - f2_y",
};
inline constexpr std::array<const char*, 4> kModified2 = {
    "Re*f2_y/6 - Re*p_yy/6 + v_yyy/3",
    "f1_xx/6 + f1_yy/4 + f2_xy/4 - p_xyy/2 + u_yyyy/(6*Re)",
    "-f1_xy/12 + f2_xx/12 - f2_yy/6 + p_yyy/3 - v_yyyy/(6*Re)",
    "f1_xxx/6 - f1_xyy/3 + f2_xxy/3 - f2_yyy/2 + 2*p_yyyy/3",
};

// Reference modified flow of the compact variant. The first line lacks
// the Re*f2_y/6 term although the first equation is the same polynomial as
// in the s-consistent scheme.
inline constexpr std::array<const char*, 4> kModifiedCompact2 = {
    "-Re*p_yy/6 + v_yyy/3",
    "f1_xx/6 + f1_yy/4 + f2_xy/4 - p_xyy/2 + u_yyyy/(6*Re)",
    "-f1_xy/12 + f2_xx/12 - f2_yy/6 + p_yyy/3 - v_yyyy/(6*Re)",
    "-f1_xxx/12 - f1_xyy/12 + f2_xxy/12 - f2_yyy/4 + p_yyyy/6",
};

// Spurious differential consequences of the compact variant.
inline constexpr const char* kF5 = "f1_xxxxx + f1_xyyyy + f2_xxxxy + f2_yyyyy";
inline constexpr const char* kF6 = "f1_xxx - f1_xyy + f2_xxy - f2_yyy + 2*p_yyyy";

// Grade-2 integrability residual of the compact variant.
inline constexpr const char* kCompactResidual2 = "f1_xxx/4 - f1_xyy/4 + f2_xxy/4 - f2_yyy/4 + p_yyyy/2";

}  // namespace ref
