// The steady 2D Stokes system, its involutive form and the finite difference
// schemes derived from the integral form.
#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "scfd/difference_algebra.hpp"
#include "scfd/differential_algebra.hpp"

namespace scfd {

// u_x + v_y, p_x - Δu/Re - f1, p_y - Δv/Re - f2.
std::vector<DiffPoly> stokes_system();

// Reduced involutive form: continuity, x-momentum reduced modulo
// continuity, y-momentum, and the pressure Poisson equation.
std::vector<DiffPoly> involutive_system();

// F2_x + F3_y + (F1_xx + F1_yy)/Re built from the Stokes system.
DiffPoly integrability_condition();

// Integral form on the 2h x 2h contour with lower left corner (j, k):
// midpoint rule on the contour, trapezoid rule for the derivative
// relations, centre value times area for the forcing. Returns the three
// contour relations followed by the four trapezoid relations.
std::vector<DiffncePoly> discretize();

// The same seven polynomials written out term by term.
std::vector<DiffncePoly> discretized_system_literal();

enum class SchemeKind { Consistent, Compact };

// F~1..F~4 (Consistent) or F~1, F~2, F~3, F~4_1 (Compact), shift-normalised.
std::vector<DiffncePoly> scheme(SchemeKind kind);
inline std::vector<DiffncePoly> s_consistent_scheme() { return scheme(SchemeKind::Consistent); }
inline std::vector<DiffncePoly> compact_poisson_variant() { return scheme(SchemeKind::Compact); }

// Centre of each scheme equation in index units relative to (j, k).
std::vector<std::pair<mpq_class, mpq_class>> scheme_base_points(SchemeKind kind);

std::string scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

// Discrete Laplacians: Δ1 on the 3x3 stencil, Δ2 with spacing 2h, both
// anchored at (j, k) like the scheme.
DiffncePoly delta1(GridIndet x);
DiffncePoly delta2(GridIndet x);

// Eliminates ux, uy, vx, vy from discretize() and returns the polynomials
// free of them. Throws std::runtime_error if they do not generate the same
// module as s_consistent_scheme().
std::vector<DiffncePoly> derive_scheme_by_elimination();

// Poisson equation from the integral form of F4 on the same contour with
// midpoint p-fluxes taken over 2h; shift-normalised and divided by 4h^2.
DiffncePoly poisson_from_quadrature();

// Stencil span (largest minus smallest shift) along each axis.
std::pair<int, int> stencil_width(const DiffncePoly& p);

}  // namespace scfd
