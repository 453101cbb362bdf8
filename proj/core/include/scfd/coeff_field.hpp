// Exact arithmetic in the rational function field Q(Re, h).
#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scfd {

// Exponent pair of a monomial Re^re * h^h.
struct BiExp {
  int re = 0;
  int h = 0;
  friend bool operator==(const BiExp&, const BiExp&) = default;
  int degree() const { return re + h; }
};

// Graded lexicographic comparison with Re > h. Returns true if a is bigger.
bool grlex_greater(const BiExp& a, const BiExp& b);

// Polynomial in Q[Re, h]. Terms are kept sorted in descending grlex order
// with nonzero coefficients.
class BiPoly {
 public:
  using Term = std::pair<BiExp, mpq_class>;

  BiPoly() = default;
  BiPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit BiPoly(const mpq_class& c);
  static BiPoly monomial(const mpq_class& c, int re_exp, int h_exp);
  static BiPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  mpq_class constant_term() const;

  int degree_re() const;
  int degree_h() const;
  int valuation_re() const;  // smallest Re exponent, 0 for the zero polynomial
  int valuation_h() const;
  bool depends_on_re() const { return degree_re() > 0; }
  bool depends_on_h() const { return degree_h() > 0; }

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);
  BiPoly& operator*=(const mpq_class& c);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(BiPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const BiPoly& a, const BiPoly& b);

  // Exact quotient, nullopt if b does not divide a.
  std::optional<BiPoly> divide_exact(const BiPoly& b) const;
  // Multiply by Re^-re * h^-h; requires the monomial to divide every term.
  BiPoly shift_down(int re_exp, int h_exp) const;

  // Coefficient of h^k as a polynomial in Re only.
  BiPoly h_coefficient(int k) const;
  // Rational content: positive gcd of numerators over lcm of denominators.
  mpq_class content() const;

  mpq_class evaluate(const mpq_class& re, const mpq_class& h) const;
  double evaluate(double re, double h) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
  void normalize();
};

// Normalised gcd: a primitive integer polynomial with positive leading
// coefficient. gcd(0, 0) = 0.
BiPoly gcd(const BiPoly& a, const BiPoly& b);

// Element of Q(Re, h) in canonical form num/den.
class ParamCoeff {
 public:
  ParamCoeff() : num_(), den_(1) {}
  ParamCoeff(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ParamCoeff(int c) : num_(long(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit ParamCoeff(const mpq_class& c) : num_(c), den_(1) {}
  explicit ParamCoeff(const BiPoly& p) : num_(p), den_(1) {}

  // Throws std::domain_error on a zero denominator.
  static ParamCoeff fraction(const BiPoly& num, const BiPoly& den);
  static ParamCoeff Re();
  static ParamCoeff h();
  static ParamCoeff rational(long n, long d);
  static ParamCoeff parse(std::string_view text);

  const BiPoly& numerator() const { return num_; }
  const BiPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_monomial() const { return num_.is_monomial() && den_.is_monomial(); }
  bool depends_on_h() const { return num_.depends_on_h() || den_.depends_on_h(); }
  bool depends_on_re() const { return num_.depends_on_re() || den_.depends_on_re(); }
  std::optional<mpq_class> as_rational() const;

  ParamCoeff operator-() const;
  ParamCoeff& operator+=(const ParamCoeff& o);
  ParamCoeff& operator-=(const ParamCoeff& o);
  ParamCoeff& operator*=(const ParamCoeff& o);
  ParamCoeff& operator/=(const ParamCoeff& o);
  friend ParamCoeff operator+(ParamCoeff a, const ParamCoeff& b) { return a += b; }
  friend ParamCoeff operator-(ParamCoeff a, const ParamCoeff& b) { return a -= b; }
  friend ParamCoeff operator*(ParamCoeff a, const ParamCoeff& b) { return a *= b; }
  friend ParamCoeff operator/(ParamCoeff a, const ParamCoeff& b) { return a /= b; }
  friend bool operator==(const ParamCoeff& a, const ParamCoeff& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  ParamCoeff inverse() const;
  ParamCoeff pow(int e) const;

  // Order of the leading term in h; nullopt stands for +infinity (zero).
  std::optional<int> h_order() const;

  // Exact evaluation; throws std::domain_error at a pole.
  mpq_class evaluate(const mpq_class& re, const mpq_class& h) const;
  double evaluate(double re, double h) const;
  // Substitute Re, keep h symbolic.
  ParamCoeff substitute_re(const mpq_class& re) const;

  // Laurent coefficients c_k (free of h) with c = sum c_k h^k, for
  // k from h_order() up to max_power inclusive.
  std::map<int, ParamCoeff> h_series(int max_power) const;

  std::string to_string() const;
  std::string to_latex() const;
  // Numerator (with sign, parenthesised if it has several terms) and
  // denominator ("" when 1, parenthesised when composite) for printing
  // a coefficient around a symbol as num*symbol/den.
  std::pair<std::string, std::string> display_parts() const;
  // LaTeX numerator and denominator, same convention.
  std::pair<std::string, std::string> latex_parts() const;
  // True if the printed form needs parentheses when used as a factor.
  bool needs_parens() const;

 private:
  BiPoly num_;
  BiPoly den_;
  void canonicalize();
};

}  // namespace scfd
