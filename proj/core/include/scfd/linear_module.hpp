// Linear polynomials over Q(Re, h) in a free module generated by indexed
// indeterminates, together with rankings, reduction and Buchberger completion.
// The same engine serves derivatives (indices >= 0) and shifts (indices in Z).
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scfd/coeff_field.hpp"

namespace scfd {

// Indeterminate `indet` with multi-index (a, b): a derivative order or a
// shift along the first and second axis.
template <class Indet>
struct IndexedTerm {
  Indet indet{};
  int a = 0;
  int b = 0;
  friend bool operator==(const IndexedTerm&, const IndexedTerm&) = default;
  friend bool operator<(const IndexedTerm& l, const IndexedTerm& r) {
    if (l.indet != r.indet) return static_cast<int>(l.indet) < static_cast<int>(r.indet);
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  }
  IndexedTerm shifted(int da, int db) const { return {indet, a + da, b + db}; }
  bool divides(const IndexedTerm& o) const { return indet == o.indet && a <= o.a && b <= o.b; }
};

enum class RankScheme {
  PositionOverTerm,  // compare indeterminates first, then multi-indices
  TermOverPosition,  // compare multi-indices first, then indeterminates
};

// Admissible ranking on IndexedTerm. `order` lists indeterminates from the
// highest to the lowest. Multi-indices are compared lexicographically with
// the first axis dominant unless `second_axis_first`, optionally graded.
template <class Indet>
class Ranking {
 public:
  Ranking() = default;
  Ranking(std::vector<Indet> order, RankScheme scheme, bool graded = false,
          bool second_axis_first = false)
      : order_(std::move(order)), scheme_(scheme), graded_(graded), second_first_(second_axis_first) {
    pos_.fill(-1);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_.at(static_cast<int>(order_[i])) = int(i);
  }

  const std::vector<Indet>& order() const { return order_; }
  RankScheme scheme() const { return scheme_; }
  bool graded() const { return graded_; }
  bool second_axis_first() const { return second_first_; }

  // Negative if x < y, zero if equal, positive if x > y.
  int compare(const IndexedTerm<Indet>& x, const IndexedTerm<Indet>& y) const {
    int cp = position_compare(x.indet, y.indet);
    int ct = index_compare(x, y);
    if (scheme_ == RankScheme::PositionOverTerm) return cp != 0 ? cp : ct;
    return ct != 0 ? ct : cp;
  }
  bool greater(const IndexedTerm<Indet>& x, const IndexedTerm<Indet>& y) const {
    return compare(x, y) > 0;
  }

 private:
  std::vector<Indet> order_;
  std::array<int, 32> pos_{};
  RankScheme scheme_ = RankScheme::PositionOverTerm;
  bool graded_ = false;
  bool second_first_ = false;

  int position_compare(Indet x, Indet y) const {
    int px = pos_.at(static_cast<int>(x)), py = pos_.at(static_cast<int>(y));
    if (px < 0 || py < 0) throw std::invalid_argument("indeterminate missing from ranking");
    return px == py ? 0 : (px < py ? 1 : -1);
  }
  int index_compare(const IndexedTerm<Indet>& x, const IndexedTerm<Indet>& y) const {
    if (graded_ && x.a + x.b != y.a + y.b) return x.a + x.b > y.a + y.b ? 1 : -1;
    int x1 = second_first_ ? x.b : x.a, y1 = second_first_ ? y.b : y.a;
    int x2 = second_first_ ? x.a : x.b, y2 = second_first_ ? y.a : y.b;
    if (x1 != y1) return x1 > y1 ? 1 : -1;
    if (x2 != y2) return x2 > y2 ? 1 : -1;
    return 0;
  }
};

template <class Indet>
class LinearPoly {
 public:
  using Term = IndexedTerm<Indet>;
  using TermMap = std::map<Term, ParamCoeff>;

  LinearPoly() = default;
  LinearPoly(const Term& t, ParamCoeff c = ParamCoeff(1)) { add(t, std::move(c)); }  // NOLINT

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  ParamCoeff coeff(const Term& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? ParamCoeff() : it->second;
  }

  LinearPoly& add(const Term& t, const ParamCoeff& c) {
    if (c.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  // this += c * shift(o, da, db)
  LinearPoly& axpy(const ParamCoeff& c, const LinearPoly& o, int da = 0, int db = 0) {
    if (c.is_zero()) return *this;
    for (const auto& [t, k] : o.terms_) add(t.shifted(da, db), c * k);
    return *this;
  }

  LinearPoly operator-() const {
    LinearPoly r = *this;
    for (auto& [t, c] : r.terms_) c = -c;
    return r;
  }
  LinearPoly& operator+=(const LinearPoly& o) { return axpy(ParamCoeff(1), o); }
  LinearPoly& operator-=(const LinearPoly& o) { return axpy(ParamCoeff(-1), o); }
  LinearPoly& operator*=(const ParamCoeff& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [t, k] : terms_) k *= c;
    return *this;
  }
  friend LinearPoly operator+(LinearPoly a, const LinearPoly& b) { return a += b; }
  friend LinearPoly operator-(LinearPoly a, const LinearPoly& b) { return a -= b; }
  friend LinearPoly operator*(LinearPoly a, const ParamCoeff& c) { return a *= c; }
  friend LinearPoly operator*(const ParamCoeff& c, LinearPoly a) { return a *= c; }
  friend bool operator==(const LinearPoly& a, const LinearPoly& b) { return a.terms_ == b.terms_; }

  LinearPoly shifted(int da, int db) const {
    LinearPoly r;
    for (const auto& [t, c] : terms_) r.terms_.emplace(t.shifted(da, db), c);
    return r;
  }

  int min_a() const {
    int m = 0;
    bool first = true;
    for (const auto& [t, c] : terms_) m = first ? t.a : std::min(m, t.a), first = false;
    return m;
  }
  int min_b() const {
    int m = 0;
    bool first = true;
    for (const auto& [t, c] : terms_) m = first ? t.b : std::min(m, t.b), first = false;
    return m;
  }
  int max_a() const {
    int m = 0;
    bool first = true;
    for (const auto& [t, c] : terms_) m = first ? t.a : std::max(m, t.a), first = false;
    return m;
  }
  int max_b() const {
    int m = 0;
    bool first = true;
    for (const auto& [t, c] : terms_) m = first ? t.b : std::max(m, t.b), first = false;
    return m;
  }

  // Leading term under a ranking; throws on the zero polynomial.
  const Term& leader(const Ranking<Indet>& r) const {
    if (terms_.empty()) throw std::domain_error("leader of the zero polynomial");
    const Term* best = nullptr;
    for (const auto& [t, c] : terms_)
      if (!best || r.greater(t, *best)) best = &t;
    return *best;
  }
  const ParamCoeff& leading_coeff(const Ranking<Indet>& r) const { return terms_.at(leader(r)); }

  // Scaled so the leading coefficient is 1.
  LinearPoly monic(const Ranking<Indet>& r) const {
    if (is_zero()) return *this;
    return *this * leading_coeff(r).inverse();
  }

  // Terms sorted by descending rank.
  std::vector<std::pair<Term, ParamCoeff>> sorted(const Ranking<Indet>& r) const {
    std::vector<std::pair<Term, ParamCoeff>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [&](const auto& x, const auto& y) { return r.greater(x.first, y.first); });
    return v;
  }

  bool depends_on_h() const {
    for (const auto& [t, c] : terms_)
      if (c.depends_on_h()) return true;
    return false;
  }

  bool uses(Indet x) const {
    for (const auto& [t, c] : terms_)
      if (t.indet == x) return true;
    return false;
  }

 private:
  TermMap terms_;
};

// Operator sum_{(a,b)} c_ab * S^(a,b) where S is a derivative or a shift.
using OperatorPoly = std::map<std::pair<int, int>, ParamCoeff>;

inline void operator_add(OperatorPoly& op, int a, int b, const ParamCoeff& c) {
  if (c.is_zero()) return;
  auto [it, ins] = op.try_emplace({a, b}, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) op.erase(it);
  }
}

template <class Indet>
LinearPoly<Indet> apply_operator(const OperatorPoly& op, const LinearPoly<Indet>& g) {
  LinearPoly<Indet> r;
  for (const auto& [ab, c] : op) r.axpy(c, g, ab.first, ab.second);
  return r;
}

// Polynomial together with its expression as a combination of the inputs.
template <class Indet>
struct Tracked {
  LinearPoly<Indet> poly;
  std::vector<OperatorPoly> cof;  // empty when tracking is off

  void axpy(const ParamCoeff& c, const Tracked& o, int da, int db) {
    poly.axpy(c, o.poly, da, db);
    if (cof.empty()) return;
    for (std::size_t i = 0; i < cof.size(); ++i)
      for (const auto& [ab, k] : o.cof[i]) operator_add(cof[i], ab.first + da, ab.second + db, c * k);
  }
  void scale(const ParamCoeff& c) {
    poly *= c;
    for (auto& op : cof) {
      for (auto& [ab, k] : op) k *= c;
    }
  }
  void shift(int da, int db) {
    if (da == 0 && db == 0) return;
    poly = poly.shifted(da, db);
    for (auto& op : cof) {
      OperatorPoly n;
      for (const auto& [ab, k] : op) n.emplace(std::make_pair(ab.first + da, ab.second + db), k);
      op = std::move(n);
    }
  }
};

// Full reduction of g by a basis: no term of the result is a multiple of a
// basis leader. `quotients`, when given, receives the operator applied to
// each basis element so that g = sum_i quotients[i](basis[i]) + result.
template <class Indet>
LinearPoly<Indet> normal_form(const LinearPoly<Indet>& g, const std::vector<LinearPoly<Indet>>& basis,
                              const Ranking<Indet>& r, std::vector<OperatorPoly>* quotients = nullptr) {
  std::vector<IndexedTerm<Indet>> leads;
  std::vector<ParamCoeff> inv;
  for (const auto& b : basis) {
    if (b.is_zero()) {
      leads.push_back({});
      inv.push_back(ParamCoeff());
      continue;
    }
    leads.push_back(b.leader(r));
    inv.push_back(b.coeff(leads.back()).inverse());
  }
  if (quotients) quotients->assign(basis.size(), OperatorPoly{});
  LinearPoly<Indet> rest = g, out;
  while (!rest.is_zero()) {
    const auto t = rest.leader(r);
    const ParamCoeff c = rest.coeff(t);
    std::size_t k = 0;
    for (; k < basis.size(); ++k)
      if (!basis[k].is_zero() && leads[k].divides(t)) break;
    if (k < basis.size()) {
      ParamCoeff q = c * inv[k];
      int da = t.a - leads[k].a, db = t.b - leads[k].b;
      rest.axpy(-q, basis[k], da, db);
      if (quotients) operator_add((*quotients)[k], da, db, q);
    } else {
      out.add(t, c);
      rest.add(t, -c);
    }
  }
  return out;
}

template <class Indet>
std::optional<LinearPoly<Indet>> s_polynomial(const LinearPoly<Indet>& f, const LinearPoly<Indet>& g,
                                              const Ranking<Indet>& r) {
  const auto lf = f.leader(r), lg = g.leader(r);
  if (lf.indet != lg.indet) return std::nullopt;
  int ma = std::max(lf.a, lg.a), mb = std::max(lf.b, lg.b);
  LinearPoly<Indet> s;
  s.axpy(f.coeff(lf).inverse(), f, ma - lf.a, mb - lf.b);
  s.axpy(-g.coeff(lg).inverse(), g, ma - lg.a, mb - lg.b);
  return s;
}

struct GroebnerOptions {
  bool normalize_shifts = false;  // Laurent semantics: min shifts moved to 0
  bool track_cofactors = false;
  std::size_t max_elements = 400;
};

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t elements_added = 0;
};

template <class Indet>
struct GroebnerResult {
  std::vector<LinearPoly<Indet>> basis;  // reduced, monic, descending leaders
  // cofactors[i][j]: operator applied to input j in basis[i]; empty unless tracked
  std::vector<std::vector<OperatorPoly>> cofactors;
  GroebnerStats stats;
};

namespace detail {

template <class Indet>
void normalize_tracked(Tracked<Indet>& t, bool on) {
  if (!on || t.poly.is_zero()) return;
  t.shift(-t.poly.min_a(), -t.poly.min_b());
}

template <class Indet>
void monic_tracked(Tracked<Indet>& t, const Ranking<Indet>& r) {
  if (t.poly.is_zero()) return;
  t.scale(t.poly.leading_coeff(r).inverse());
}

template <class Indet>
Tracked<Indet> reduce_tracked(Tracked<Indet> g, const std::vector<Tracked<Indet>>& basis,
                              const Ranking<Indet>& r, std::size_t skip) {
  std::vector<LinearPoly<Indet>> polys;
  for (std::size_t i = 0; i < basis.size(); ++i)
    polys.push_back(i == skip ? LinearPoly<Indet>() : basis[i].poly);
  std::vector<OperatorPoly> q;
  bool track = !g.cof.empty();
  LinearPoly<Indet> rem = normal_form(g.poly, polys, r, track ? &q : nullptr);
  if (track) {
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (const auto& [ab, c] : q[k]) g.axpy(-c, basis[k], ab.first, ab.second);
    // g.poly now equals rem up to rounding of the map; keep the direct result.
  }
  g.poly = std::move(rem);
  return g;
}

}  // namespace detail

// Buchberger completion with full interreduction. The pair order is fixed
// (lowest S-polynomial multiple first), so output is deterministic.
template <class Indet>
GroebnerResult<Indet> groebner_complete(const std::vector<LinearPoly<Indet>>& gens, const Ranking<Indet>& r,
                                        const GroebnerOptions& opt = {}) {
  using T = Tracked<Indet>;
  GroebnerResult<Indet> res;
  std::vector<T> G;
  std::vector<long> ids;
  long next_id = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    T t{gens[i], {}};
    if (opt.track_cofactors) {
      t.cof.assign(gens.size(), OperatorPoly{});
      t.cof[i][{0, 0}] = ParamCoeff(1);
    }
    detail::normalize_tracked(t, opt.normalize_shifts);
    detail::monic_tracked(t, r);
    G.push_back(std::move(t));
    ids.push_back(next_id++);
  }

  auto interreduce = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < G.size(); ++i) {
        T n = detail::reduce_tracked(G[i], G, r, i);
        detail::normalize_tracked(n, opt.normalize_shifts);
        detail::monic_tracked(n, r);
        if (n.poly == G[i].poly) continue;
        changed = true;
        if (n.poly.is_zero()) {
          G.erase(G.begin() + long(i));
          ids.erase(ids.begin() + long(i));
        } else {
          G[i] = std::move(n);
          ids[i] = next_id++;
        }
        break;
      }
    }
  };

  std::set<std::pair<long, long>> done;
  bool verifying = false;
  while (true) {
    interreduce();
    // Candidate pairs in ascending order of their lcm multiple.
    struct Cand {
      IndexedTerm<Indet> lcm;
      std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < G.size(); ++i)
      for (std::size_t j = i + 1; j < G.size(); ++j) {
        auto li = G[i].poly.leader(r), lj = G[j].poly.leader(r);
        if (li.indet != lj.indet) continue;
        if (!verifying && done.count({ids[i], ids[j]})) continue;
        cands.push_back({{li.indet, std::max(li.a, lj.a), std::max(li.b, lj.b)}, i, j});
      }
    std::stable_sort(cands.begin(), cands.end(),
                     [&](const Cand& x, const Cand& y) { return r.greater(y.lcm, x.lcm); });
    bool added = false;
    for (const auto& c : cands) {
      const T& f = G[c.i];
      const T& g = G[c.j];
      auto lf = f.poly.leader(r), lg = g.poly.leader(r);
      T s{{}, {}};
      if (opt.track_cofactors) s.cof.assign(gens.size(), OperatorPoly{});
      s.axpy(f.poly.coeff(lf).inverse(), f, c.lcm.a - lf.a, c.lcm.b - lf.b);
      s.axpy(-g.poly.coeff(lg).inverse(), g, c.lcm.a - lg.a, c.lcm.b - lg.b);
      ++res.stats.pairs_reduced;
      T n = detail::reduce_tracked(std::move(s), G, r, G.size());
      done.insert({ids[c.i], ids[c.j]});
      if (n.poly.is_zero()) {
        ++res.stats.zero_reductions;
        continue;
      }
      detail::normalize_tracked(n, opt.normalize_shifts);
      detail::monic_tracked(n, r);
      G.push_back(std::move(n));
      ids.push_back(next_id++);
      ++res.stats.elements_added;
      if (G.size() > opt.max_elements) throw std::runtime_error("Groebner completion exceeded element limit");
      added = true;
      break;
    }
    if (added) {
      verifying = false;
      continue;
    }
    if (verifying) break;
    verifying = true;  // one full pass over all pairs of the final set
  }

  std::vector<std::size_t> idx(G.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return r.greater(G[x].poly.leader(r), G[y].poly.leader(r)); });
  for (auto i : idx) {
    res.basis.push_back(G[i].poly);
    if (opt.track_cofactors) res.cofactors.push_back(G[i].cof);
  }
  return res;
}

// Strict test: every S-polynomial of the given set reduces to zero by the
// set itself (after optional shift normalisation of the members).
template <class Indet>
bool is_groebner(const std::vector<LinearPoly<Indet>>& set, const Ranking<Indet>& r, bool normalize_shifts = false) {
  std::vector<LinearPoly<Indet>> G;
  for (const auto& g : set) {
    if (g.is_zero()) continue;
    G.push_back(normalize_shifts ? g.shifted(-g.min_a(), -g.min_b()) : g);
  }
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      auto s = s_polynomial(G[i], G[j], r);
      if (s && !normal_form(*s, G, r).is_zero()) return false;
    }
  return true;
}

}  // namespace scfd
