#include "scfd/coeff_field.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include <fmt/format.h>

namespace scfd {

bool grlex_greater(const BiExp& a, const BiExp& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.re > b.re;
}

namespace {

struct ExpLess {
  bool operator()(const BiExp& a, const BiExp& b) const { return grlex_greater(a, b); }
};

mpq_class int_pow(const mpq_class& base, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Univariate polynomials over Q, index = degree, no trailing zeros.
using UPoly = std::vector<mpq_class>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return p.empty() ? -1 : int(p.size()) - 1; }

UPoly sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// Division with remainder over Q.
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  UPoly q;
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, 0);
  while (deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    mpq_class t = a.back() / b.back();
    q[shift] = t;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= t * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly monic(UPoly p) {
  if (p.empty()) return p;
  mpq_class lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw std::logic_error("inexact univariate division");
  return q;
}

// Bivariate polynomial viewed as a polynomial in Re with coefficients in Q[h].
using RPoly = std::vector<UPoly>;

void trim(RPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

RPoly to_rpoly(const BiPoly& p) {
  RPoly r(p.degree_re() + 1);
  for (const auto& [e, c] : p.terms()) {
    auto& u = r[e.re];
    if (int(u.size()) <= e.h) u.resize(e.h + 1, 0);
    u[e.h] += c;
  }
  for (auto& u : r) trim(u);
  trim(r);
  return r;
}

BiPoly from_rpoly(const RPoly& r) {
  std::vector<BiPoly::Term> terms;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j)
      if (r[i][j] != 0) terms.push_back({BiExp{int(i), int(j)}, r[i][j]});
  return BiPoly::from_terms(std::move(terms));
}

UPoly rcontent(const RPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    g = ugcd(g, c);
    if (deg(g) == 0) break;
  }
  return g;
}

RPoly rdiv(const RPoly& p, const UPoly& c) {
  RPoly r;
  for (const auto& u : p) r.push_back(u.empty() ? UPoly{} : exact_div(u, c));
  return r;
}

// Pseudo-remainder of a by b in Re.
RPoly prem(RPoly a, const RPoly& b) {
  const UPoly& lcb = b.back();
  int db = int(b.size()) - 1;
  while (!a.empty() && int(a.size()) - 1 >= db) {
    int shift = int(a.size()) - 1 - db;
    UPoly lca = a.back();
    for (auto& u : a) u = mul(u, lcb);
    for (int i = 0; i <= db; ++i) a[i + shift] = sub(a[i + shift], mul(lca, b[i]));
    trim(a);
  }
  return a;
}

BiPoly make_primitive(const BiPoly& p) {
  if (p.is_zero()) return p;
  mpq_class c = p.content();
  if (p.leading().second < 0) c = -c;
  return p * mpq_class(1 / c);
}

}  // namespace

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(long c) {
  if (c != 0) terms_.push_back({BiExp{}, mpq_class(c)});
}

BiPoly::BiPoly(const mpq_class& c) {
  if (c != 0) terms_.push_back({BiExp{}, c});
}

BiPoly BiPoly::monomial(const mpq_class& c, int re_exp, int h_exp) {
  if (re_exp < 0 || h_exp < 0) throw std::invalid_argument("negative exponent in polynomial");
  BiPoly p;
  if (c != 0) p.terms_.push_back({BiExp{re_exp, h_exp}, c});
  return p;
}

BiPoly BiPoly::from_terms(std::vector<Term> terms) {
  BiPoly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void BiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

bool BiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == BiExp{});
}

mpq_class BiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first == BiExp{}) return terms_.back().second;
  return 0;
}

int BiPoly::degree_re() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.re);
  return d;
}

int BiPoly::degree_h() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.h);
  return d;
}

int BiPoly::valuation_re() const {
  if (terms_.empty()) return 0;
  int v = terms_[0].first.re;
  for (const auto& t : terms_) v = std::min(v, t.first.re);
  return v;
}

int BiPoly::valuation_h() const {
  if (terms_.empty()) return 0;
  int v = terms_[0].first.h;
  for (const auto& t : terms_) v = std::min(v, t.first.h);
  return v;
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) { return *this += -o; }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  std::map<BiExp, mpq_class, ExpLess> acc;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) acc[BiExp{ea.re + eb.re, ea.h + eb.h}] += ca * cb;
  std::vector<BiPoly::Term> terms(acc.begin(), acc.end());
  return BiPoly::from_terms(std::move(terms));
}

BiPoly& BiPoly::operator*=(const BiPoly& o) { return *this = *this * o; }

BiPoly& BiPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].first == b.terms_[i].first) || a.terms_[i].second != b.terms_[i].second)
      return false;
  return true;
}

std::optional<BiPoly> BiPoly::divide_exact(const BiPoly& b) const {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  BiPoly r = *this;
  std::vector<Term> q;
  const auto& [eb, cb] = b.leading();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.leading();
    if (er.re < eb.re || er.h < eb.h) return std::nullopt;
    BiPoly t = monomial(cr / cb, er.re - eb.re, er.h - eb.h);
    q.push_back(t.terms_[0]);
    r -= t * b;
  }
  return from_terms(std::move(q));
}

BiPoly BiPoly::shift_down(int re_exp, int h_exp) const {
  BiPoly r = *this;
  for (auto& t : r.terms_) {
    t.first.re -= re_exp;
    t.first.h -= h_exp;
    if (t.first.re < 0 || t.first.h < 0) throw std::logic_error("shift_down below zero exponent");
  }
  r.normalize();
  return r;
}

BiPoly BiPoly::h_coefficient(int k) const {
  std::vector<Term> out;
  for (const auto& [e, c] : terms_)
    if (e.h == k) out.push_back({BiExp{e.re, 0}, c});
  return from_terms(std::move(out));
}

mpq_class BiPoly::content() const {
  if (terms_.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpq_class BiPoly::evaluate(const mpq_class& re, const mpq_class& h) const {
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) s += c * int_pow(re, e.re) * int_pow(h, e.h);
  return s;
}

double BiPoly::evaluate(double re, double h) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < e.re; ++i) t *= re;
    for (int i = 0; i < e.h; ++i) t *= h;
    s += t;
  }
  return s;
}

namespace {

std::string monomial_string(const BiExp& e) {
  std::string s;
  auto add = [&](const char* name, int k) {
    if (k == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (k > 1) s += "^" + std::to_string(k);
  };
  add("Re", e.re);
  add("h", e.h);
  return s;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    std::string body;
    std::string mono = monomial_string(e);
    if (mono.empty())
      body = rational_string(a);
    else if (a == 1)
      body = mono;
    else
      body = rational_string(a) + "*" + mono;
    if (first)
      s += (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

// ------------------------------------------------------------------- gcd

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero()) return make_primitive(b);
  if (b.is_zero()) return make_primitive(a);
  BiExp ma{a.valuation_re(), a.valuation_h()};
  BiExp mb{b.valuation_re(), b.valuation_h()};
  BiPoly mono = BiPoly::monomial(1, std::min(ma.re, mb.re), std::min(ma.h, mb.h));
  if (a.is_monomial() || b.is_monomial()) return mono;

  BiPoly a1 = a.shift_down(ma.re, ma.h);
  BiPoly b1 = b.shift_down(mb.re, mb.h);
  if (a1.is_constant() || b1.is_constant()) return mono;

  RPoly pa = to_rpoly(a1), pb = to_rpoly(b1);
  UPoly ca = rcontent(pa), cb = rcontent(pb);
  UPoly c = ugcd(ca, cb);
  pa = rdiv(pa, ca);
  pb = rdiv(pb, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  RPoly g;
  if (pb.size() == 1) {
    g = {UPoly{1}};
  } else {
    while (true) {
      RPoly r = prem(pa, pb);
      if (r.empty()) {
        g = pb;
        break;
      }
      if (r.size() == 1) {
        g = {UPoly{1}};
        break;
      }
      pa = std::move(pb);
      pb = rdiv(r, rcontent(r));
    }
  }
  RPoly cg;
  for (const auto& u : g) cg.push_back(mul(u, c));
  return make_primitive(from_rpoly(cg) * mono);
}

// ------------------------------------------------------------ ParamCoeff

ParamCoeff ParamCoeff::fraction(const BiPoly& num, const BiPoly& den) {
  if (den.is_zero()) throw std::domain_error("division by zero in coefficient field");
  ParamCoeff c;
  c.num_ = num;
  c.den_ = den;
  c.canonicalize();
  return c;
}

ParamCoeff ParamCoeff::Re() { return ParamCoeff(BiPoly::monomial(1, 1, 0)); }
ParamCoeff ParamCoeff::h() { return ParamCoeff(BiPoly::monomial(1, 0, 1)); }

ParamCoeff ParamCoeff::rational(long n, long d) {
  if (d == 0) throw std::domain_error("division by zero in coefficient field");
  mpq_class q(n, d);
  q.canonicalize();
  return ParamCoeff(q);
}

void ParamCoeff::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("division by zero in coefficient field");
  if (num_.is_zero()) {
    den_ = BiPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    BiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  mpq_class c = den_.content();
  if (den_.leading().second < 0) c = -c;
  if (c != 1) {
    mpq_class inv = 1 / c;
    num_ *= inv;
    den_ *= inv;
  }
}

bool ParamCoeff::is_one() const { return den_ == BiPoly(1) && num_ == BiPoly(1); }

std::optional<mpq_class> ParamCoeff::as_rational() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_term() / den_.constant_term();
}

ParamCoeff ParamCoeff::operator-() const {
  ParamCoeff r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamCoeff& ParamCoeff::operator+=(const ParamCoeff& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

ParamCoeff& ParamCoeff::operator-=(const ParamCoeff& o) { return *this += -o; }

ParamCoeff& ParamCoeff::operator*=(const ParamCoeff& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = ParamCoeff();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

ParamCoeff& ParamCoeff::operator/=(const ParamCoeff& o) { return *this *= o.inverse(); }

ParamCoeff ParamCoeff::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in coefficient field");
  return fraction(den_, num_);
}

ParamCoeff ParamCoeff::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  ParamCoeff r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::optional<int> ParamCoeff::h_order() const {
  if (is_zero()) return std::nullopt;
  return num_.valuation_h() - den_.valuation_h();
}

mpq_class ParamCoeff::evaluate(const mpq_class& re, const mpq_class& h) const {
  mpq_class d = den_.evaluate(re, h);
  if (d == 0) throw std::domain_error("pole at evaluation point");
  return num_.evaluate(re, h) / d;
}

double ParamCoeff::evaluate(double re, double h) const {
  double d = den_.evaluate(re, h);
  if (d == 0) throw std::domain_error("pole at evaluation point");
  return num_.evaluate(re, h) / d;
}

ParamCoeff ParamCoeff::substitute_re(const mpq_class& re) const {
  auto sub = [&](const BiPoly& p) {
    std::vector<BiPoly::Term> out;
    for (const auto& [e, c] : p.terms()) out.push_back({BiExp{0, e.h}, c * int_pow(re, e.re)});
    return BiPoly::from_terms(std::move(out));
  };
  return fraction(sub(num_), sub(den_));
}

std::map<int, ParamCoeff> ParamCoeff::h_series(int max_power) const {
  std::map<int, ParamCoeff> out;
  if (is_zero()) return out;
  int m = num_.valuation_h(), n = den_.valuation_h();
  BiPoly nn = num_.shift_down(0, m), dd = den_.shift_down(0, n);
  int base = m - n;
  ParamCoeff d0(dd.h_coefficient(0));
  std::vector<ParamCoeff> s;
  for (int k = 0; base + k <= max_power; ++k) {
    ParamCoeff acc(nn.h_coefficient(k));
    for (int i = 1; i <= k; ++i) {
      BiPoly di = dd.h_coefficient(i);
      if (!di.is_zero()) acc -= ParamCoeff(di) * s[k - i];
    }
    s.push_back(acc / d0);
    if (!s.back().is_zero()) out[base + k] = s.back();
  }
  return out;
}

namespace {

// Splits a nonzero primitive-denominator fraction into sign*a/b * P / D.
struct PrintParts {
  mpq_class scale;  // rational factor pulled out of the numerator
  BiPoly num;       // primitive integer polynomial, positive leading coefficient
  BiPoly den;       // canonical denominator
};

PrintParts split(const BiPoly& num, const BiPoly& den) {
  mpq_class c = num.content();
  if (num.leading().second < 0) c = -c;
  return {c, num * mpq_class(1 / c), den};
}

bool single_symbol(const BiPoly& p) {
  if (!p.is_monomial() || p.leading().second != 1) return false;
  const BiExp e = p.leading().first;
  return (e.re > 0) != (e.h > 0);
}

}  // namespace

std::string ParamCoeff::to_string() const {
  if (is_zero()) return "0";
  PrintParts pp = split(num_, den_);
  mpz_class a = pp.scale.get_num(), b = pp.scale.get_den();
  bool poly_num = !(pp.num == BiPoly(1));
  bool multi = pp.num.terms().size() > 1;
  std::string s;
  if (!poly_num) {
    s = a.get_str();
  } else {
    std::string body = pp.num.to_string();
    if (a == 1)
      s = body;
    else if (a == -1)
      s = "-" + (multi ? "(" + body + ")" : body);
    else
      s = a.get_str() + "*" + (multi ? "(" + body + ")" : body);
    if (multi && (b != 1 || !pp.den.is_constant()) && a == 1) s = "(" + s + ")";
  }
  bool den_poly = !pp.den.is_constant();
  if (!den_poly) {
    if (b != 1) s += "/" + b.get_str();
    return s;
  }
  std::string dbody = pp.den.to_string();
  bool dmulti = pp.den.terms().size() > 1;
  if (b == 1 && single_symbol(pp.den))
    s += "/" + dbody;
  else if (b == 1)
    s += "/(" + dbody + ")";
  else
    s += "/(" + b.get_str() + "*" + (dmulti ? "(" + dbody + ")" : dbody) + ")";
  return s;
}

std::pair<std::string, std::string> ParamCoeff::display_parts() const {
  if (is_zero()) return {"0", ""};
  PrintParts pp = split(num_, den_);
  mpz_class a = pp.scale.get_num(), b = pp.scale.get_den();
  std::string num;
  if (pp.num == BiPoly(1)) {
    num = a.get_str();
  } else {
    std::string body = pp.num.to_string();
    if (pp.num.terms().size() > 1) body = "(" + body + ")";
    if (a == 1)
      num = body;
    else if (a == -1)
      num = "-" + body;
    else
      num = a.get_str() + "*" + body;
  }
  std::string den;
  if (pp.den.is_constant()) {
    if (b != 1) den = b.get_str();
  } else {
    std::string dbody = pp.den.to_string();
    bool dmulti = pp.den.terms().size() > 1;
    if (b == 1 && single_symbol(pp.den))
      den = dbody;
    else if (b == 1)
      den = "(" + dbody + ")";
    else
      den = "(" + b.get_str() + "*" + (dmulti ? "(" + dbody + ")" : dbody) + ")";
  }
  return {num, den};
}

bool ParamCoeff::needs_parens() const {
  std::string s = to_string();
  int depth = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && (s[i] == '+' || s[i] == '-')) return true;
  }
  return false;
}

namespace {

std::string latex_poly(const BiPoly& p) {
  std::string s = p.to_string();
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 2, "Re") == 0) {
      out += "\\mathrm{Re}";
      ++i;
    } else if (s[i] == '*') {
      out += " ";
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

std::pair<std::string, std::string> ParamCoeff::latex_parts() const {
  if (is_zero()) return {"0", ""};
  PrintParts pp = split(num_, den_);
  mpz_class a = pp.scale.get_num(), b = pp.scale.get_den();
  std::string num;
  if (pp.num == BiPoly(1)) {
    num = a.get_str();
  } else {
    std::string body = latex_poly(pp.num);
    if (pp.num.terms().size() > 1) body = "(" + body + ")";
    if (a == 1)
      num = body;
    else if (a == -1)
      num = "-" + body;
    else
      num = a.get_str() + " " + body;
  }
  BiPoly den = pp.den * mpq_class(b);
  return {num, den == BiPoly(1) ? std::string() : latex_poly(den)};
}

std::string ParamCoeff::to_latex() const {
  if (is_zero()) return "0";
  PrintParts pp = split(num_, den_);
  mpz_class a = pp.scale.get_num(), b = pp.scale.get_den();
  bool neg = a < 0;
  mpz_class aa = abs(a);
  std::string num;
  if (pp.num == BiPoly(1))
    num = aa.get_str();
  else if (aa == 1)
    num = latex_poly(pp.num);
  else
    num = aa.get_str() + (pp.num.terms().size() > 1 ? "(" + latex_poly(pp.num) + ")"
                                                     : " " + latex_poly(pp.num));
  BiPoly den = pp.den * mpq_class(b);
  std::string s = den == BiPoly(1) ? num : "\\frac{" + num + "}{" + latex_poly(den) + "}";
  return neg ? "-" + s : s;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ParamCoeff run() {
    ParamCoeff v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(
        fmt::format("cannot parse coefficient '{}': {} at position {}", s_, what, pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ParamCoeff expr() {
    ParamCoeff v = term();
    while (true) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }
  ParamCoeff term() {
    ParamCoeff v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        ParamCoeff d = unary();
        if (d.is_zero()) throw std::domain_error("division by zero in coefficient field");
        v /= d;
      } else {
        return v;
      }
    }
  }
  ParamCoeff unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }
  ParamCoeff power() {
    ParamCoeff base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return base.pow(neg ? -e : e);
    }
    return base;
  }
  ParamCoeff atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      ParamCoeff v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "Re") == 0) {
      pos_ += 2;
      return ParamCoeff::Re();
    }
    if (s_[pos_] == 'h' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return ParamCoeff::h();
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits(s_.substr(start, pos_ - start));
      mpz_class den = 1;
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        size_t fs = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        digits += std::string(s_.substr(fs, pos_ - fs));
        for (size_t i = fs; i < pos_; ++i) den *= 10;
      }
      mpq_class q{mpz_class(digits, 10), den};
      q.canonicalize();
      return ParamCoeff(q);
    }
    fail("unexpected character");
  }
};

}  // namespace

ParamCoeff ParamCoeff::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace scfd
