// Weak and strong consistency of difference schemes, modified equations and
// the integrability residual.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scfd/difference_algebra.hpp"
#include "scfd/differential_algebra.hpp"

namespace scfd {

using BasePoint = std::pair<mpq_class, mpq_class>;

struct WConsistencyPair {
  std::size_t index = 0;
  DiffPoly implied;  // lowest grade of the continuous limit
  int grade = 0;
  DiffPoly target;
  bool exact = false;          // implied = lambda * target with h-free lambda
  bool modulo_others = false;  // same, modulo the module of the other targets
  std::optional<ParamCoeff> factor;
  bool pass = false;
};

// Pairs scheme[i] with targets[i].
std::vector<WConsistencyPair> check_w_consistency(const std::vector<DiffncePoly>& scheme,
                                                  const std::vector<DiffPoly>& targets);

struct ImpliedRecord {
  DiffncePoly element;  // difference basis element
  DiffPoly implied;     // its implied differential polynomial
  int grade = 0;
  DiffPoly normal_form;  // modulo the differential basis
  bool member = false;
  // Monic forms (POT) used to compare witnesses.
  DiffPoly implied_monic;
  DiffPoly normal_form_monic;
};

struct ConsistencyReport {
  std::vector<WConsistencyPair> pairs;
  bool w_consistent = false;
  std::vector<DiffncePoly> difference_basis;
  std::vector<ImpliedRecord> records;  // one per difference basis element
  std::vector<std::size_t> witnesses;  // indices into records with member == false
  bool s_consistent = false;
};

// Completes the scheme to a difference Groebner basis and checks that every
// implied polynomial lies in the module generated by diff_basis (which must
// be a differential Groebner basis under the POT ranking). Pairs scheme
// equations with `targets` for the weak check; targets default to diff_basis.
ConsistencyReport check_s_consistency(const std::vector<DiffncePoly>& scheme,
                                      const std::vector<DiffPoly>& diff_basis,
                                      const std::vector<DiffPoly>& targets = {});

struct GroebnerEquivalence {
  bool strict = false;  // S-polynomials reduce to zero by the scheme itself
  std::size_t scheme_size = 0;
  std::size_t completion_size = 0;
  bool no_new_elements = false;  // the completion has no more elements than the scheme
  std::vector<std::string> completion_leaders;
};

GroebnerEquivalence check_groebner_equivalence(const std::vector<DiffncePoly>& scheme);

// Raw Taylor expansions about the given base points, grades normalised so
// the leading grade of each is 0.
std::vector<TaylorForm> expand_scheme(const std::vector<DiffncePoly>& scheme, const std::vector<BasePoint>& base,
                                      int order);

struct ModifiedFlow {
  std::vector<TaylorForm> equations;  // grade 0 equals diff_basis[i]
  std::vector<TaylorForm> raw;        // unreduced expansions
  std::vector<int> leading_grades;    // h-power removed from each raw expansion
  std::vector<ParamCoeff> scales;     // raw grade 0 = scale * diff_basis[i] + sum_j couplings[i][j](diff_basis[j])
  std::vector<std::vector<OperatorPoly>> couplings;
  int order = 0;
};

// Canonical modified equations: each expansion is rewritten so its grade 0
// is the paired basis element and every higher grade is in normal form
// modulo diff_basis under `canonical` (term-over-position by default).
// Throws std::invalid_argument if a scheme equation is not weakly
// consistent with its partner.
ModifiedFlow modified_equations(const std::vector<DiffncePoly>& scheme, const std::vector<BasePoint>& base,
                                int order, const std::vector<DiffPoly>& diff_basis,
                                const DiffRanking& canonical = diff_ranking_top());

// Integrability combination d_x E2 + d_y E3 + (d_xx + d_yy) E1 / Re - E4 of
// four expansions, with the part that is a consequence of the expansions'
// leading grades removed, reduced grade by grade modulo diff_basis.
TaylorForm integrability_residual(const std::vector<TaylorForm>& expansions, int order,
                                  const std::vector<DiffPoly>& diff_basis,
                                  const DiffRanking& canonical = diff_ranking_top());

// Plain combination without any reduction.
TaylorForm integrability_combination(const std::vector<TaylorForm>& expansions, int order);

// Grade-wise helpers on truncated series.
TaylorForm series_apply(const OperatorPoly& op, const TaylorForm& t);
TaylorForm series_add(const TaylorForm& a, const TaylorForm& b, const ParamCoeff& scale = ParamCoeff(1));

// Output.
std::string report_text(const ConsistencyReport& r);
std::string report_json(const ConsistencyReport& r);
std::string report_latex(const ConsistencyReport& r);
std::string flow_text(const ModifiedFlow& f, const DiffRanking& r = diff_ranking_top());
std::string flow_json(const ModifiedFlow& f, const DiffRanking& r = diff_ranking_top());
std::string flow_latex(const ModifiedFlow& f, const DiffRanking& r = diff_ranking_top());
std::string taylor_json(const TaylorForm& t, const DiffRanking& r = diff_ranking_top());

}  // namespace scfd
