// Text and LaTeX rendering and parsing of LinearPoly, parameterised by the
// naming of single terms.
#pragma once

#include <cctype>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "scfd/linear_module.hpp"

namespace scfd {

template <class Indet>
std::string format_poly(const LinearPoly<Indet>& g, const Ranking<Indet>& r,
                        const std::function<std::string(const IndexedTerm<Indet>&)>& name) {
  if (g.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [t, c] : g.sorted(r)) {
    auto [num, den] = c.display_parts();
    bool neg = num[0] == '-';
    if (neg) num.erase(0, 1);
    std::string body = num == "1" ? name(t) : num + "*" + name(t);
    if (!den.empty()) body += "/" + den;
    if (first)
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

template <class Indet>
std::string format_poly_latex(const LinearPoly<Indet>& g, const Ranking<Indet>& r,
                              const std::function<std::string(const IndexedTerm<Indet>&)>& name) {
  if (g.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [t, c] : g.sorted(r)) {
    auto [num, den] = c.latex_parts();
    bool neg = num[0] == '-';
    if (neg) num.erase(0, 1);
    std::string body;
    if (den.empty())
      body = (num == "1" ? "" : num + " ") + name(t);
    else
      body = "\\frac{" + num + "}{" + den + "} " + name(t);
    if (first)
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
    first = false;
  }
  return s;
}

namespace detail {

// Recursive-descent parser for linear expressions. Identifiers Re and h are
// parameters; any other identifier (optionally followed by a bracketed
// index part) is handed to `term_of`.
template <class Indet>
class LinearParser {
 public:
  using Poly = LinearPoly<Indet>;
  using TermOf = std::function<IndexedTerm<Indet>(std::string_view)>;

  LinearParser(std::string_view s, TermOf term_of) : s_(s), term_of_(std::move(term_of)) {}

  Poly run() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    if (v.scalar && !v.c.is_zero()) fail("constant term in a linear polynomial");
    return v.scalar ? Poly() : v.p;
  }

 private:
  struct Value {
    bool scalar = true;
    ParamCoeff c;
    Poly p;
  };
  std::string_view s_;
  std::size_t pos_ = 0;
  TermOf term_of_;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(s_) + "': " + what +
                                " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  Value add(Value a, const Value& b, bool minus) {
    if (a.scalar && b.scalar) {
      a.c = minus ? a.c - b.c : a.c + b.c;
      return a;
    }
    if ((a.scalar && !a.c.is_zero()) || (b.scalar && !b.c.is_zero())) fail("mixing constants and terms");
    Poly r = a.scalar ? Poly() : a.p;
    if (!b.scalar) r.axpy(ParamCoeff(minus ? -1 : 1), b.p);
    return Value{false, {}, r};
  }
  Value mul(Value a, const Value& b) {
    if (a.scalar && b.scalar) return Value{true, a.c * b.c, {}};
    if (!a.scalar && !b.scalar) fail("product of two terms is not linear");
    return a.scalar ? Value{false, {}, b.p * a.c} : Value{false, {}, a.p * b.c};
  }
  Value expr() {
    Value v = term();
    while (true) {
      if (accept('+'))
        v = add(v, term(), false);
      else if (accept('-'))
        v = add(v, term(), true);
      else
        return v;
    }
  }
  Value term() {
    Value v = unary();
    while (true) {
      if (accept('*')) {
        v = mul(v, unary());
      } else if (accept('/')) {
        Value d = unary();
        if (!d.scalar) fail("division by a term");
        if (d.c.is_zero()) throw std::domain_error("division by zero in coefficient field");
        v = mul(v, Value{true, d.c.inverse(), {}});
      } else {
        return v;
      }
    }
  }
  Value unary() {
    if (accept('-')) {
      Value v = unary();
      return mul(v, Value{true, ParamCoeff(-1), {}});
    }
    if (accept('+')) return unary();
    return power();
  }
  Value power() {
    Value base = atom();
    if (accept('^')) {
      if (!base.scalar) fail("power of a term");
      bool neg = accept('-');
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(st, pos_ - st)));
      base.c = base.c.pow(neg ? -e : e);
    }
    return base;
  }
  Value atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return Value{true, ParamCoeff::parse(s_.substr(st, pos_ - st)), {}};
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '[') {
        while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
        if (pos_ == s_.size()) fail("unterminated index");
        ++pos_;
      }
      std::string_view id = s_.substr(st, pos_ - st);
      if (id == "Re") return Value{true, ParamCoeff::Re(), {}};
      if (id == "h") return Value{true, ParamCoeff::h(), {}};
      return Value{false, {}, Poly(term_of_(id))};
    }
    fail("unexpected character");
  }
};

}  // namespace detail

template <class Indet>
LinearPoly<Indet> parse_poly(std::string_view text,
                             const std::function<IndexedTerm<Indet>(std::string_view)>& term_of) {
  return detail::LinearParser<Indet>(text, term_of).run();
}

}  // namespace scfd
