#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "floq/errors.hpp"
#include "floq/gaussint.hpp"

namespace floq {

// Variable ids: 0 is the spectral variable lambda, j >= 1 is v_j. The total
// order lambda < v_1 < v_2 < ... is just the id order.
using VarId = std::uint32_t;
inline constexpr VarId kLambda = 0;
constexpr VarId var_v(std::uint32_t j) { return j; }

inline std::string var_name(VarId v) { return v == kLambda ? "l" : "v" + std::to_string(v); }

// Power product with sparse exponents. Zero exponents are never stored.
class Monomial {
 public:
  Monomial() = default;  // the unit monomial

  static Monomial var(VarId v, std::uint32_t e = 1) {
    Monomial t;
    if (e > 0) t.factors_.emplace_back(v, e);
    return t;
  }

  bool is_unit() const { return factors_.empty(); }

  std::uint32_t degree_of(VarId v) const {
    for (const auto& [var, exp] : factors_)
      if (var == v) return exp;
    return 0;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [var, exp] : factors_) d += exp;
    return d;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first))
        r.factors_.push_back(*a++);
      else if (a == factors_.end() || b->first < a->first)
        r.factors_.push_back(*b++);
      else {
        r.factors_.emplace_back(a->first, a->second + b->second);
        ++a, ++b;
      }
    }
    return r;
  }

  // Drops variable v entirely (used when collecting lambda coefficients).
  Monomial without(VarId v) const {
    Monomial r;
    for (const auto& f : factors_)
      if (f.first != v) r.factors_.push_back(f);
    return r;
  }

  // Graded lexicographic: total degree first, ties resolved on the exponent of
  // the smallest variable id (lambda-major), so equal-degree terms group by
  // lambda power.
  static int compare(const Monomial& a, const Monomial& b) {
    std::uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto pa = a.factors_.begin(), pb = b.factors_.begin();
    while (pa != a.factors_.end() && pb != b.factors_.end()) {
      if (pa->first != pb->first) {
        // The side owning the smaller variable id has a positive exponent
        // where the other has zero.
        return pa->first < pb->first ? 1 : -1;
      }
      if (pa->second != pb->second) return pa->second < pb->second ? -1 : 1;
      ++pa, ++pb;
    }
    if (pa != a.factors_.end()) return 1;
    if (pb != b.factors_.end()) return -1;
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

  const std::vector<std::pair<VarId, std::uint32_t>>& factors() const { return factors_; }

  // Variables ascending, lambda printed last: "v1*v2^2*l^3".
  std::string to_string() const {
    std::string s;
    auto append = [&s](VarId v, std::uint32_t e) {
      if (!s.empty()) s += "*";
      s += var_name(v);
      if (e > 1) s += "^" + std::to_string(e);
    };
    for (const auto& [var, exp] : factors_)
      if (var != kLambda) append(var, exp);
    if (std::uint32_t e = degree_of(kLambda)) append(kLambda, e);
    return s;
  }

 private:
  std::vector<std::pair<VarId, std::uint32_t>> factors_;  // sorted by id, exps > 0
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(a, b) < 0;
  }
};

// Sparse multivariate polynomial over Z[i] in canonical form: the term map
// holds no zero coefficients, so equality is structural.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, GaussInt, MonomialLess>;

  MultiPoly() = default;  // zero
  MultiPoly(GaussInt c) { add_term(Monomial{}, c); }  // NOLINT: constants embed
  MultiPoly(int c) : MultiPoly(GaussInt(c)) {}        // NOLINT

  static MultiPoly constant(GaussInt c) { return MultiPoly(std::move(c)); }
  static MultiPoly variable(VarId v) {
    MultiPoly p;
    p.add_term(Monomial::var(v), GaussInt(1));
    return p;
  }
  static MultiPoly lambda() { return variable(kLambda); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [t, c] : terms_) d = std::max(d, t.total_degree());
    return d;
  }

  std::uint32_t degree_in(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& [t, c] : terms_) d = std::max(d, t.degree_of(v));
    return d;
  }

  GaussInt coeff(const Monomial& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? GaussInt(0) : it->second;
  }

  GaussInt constant_term() const { return coeff(Monomial{}); }

  // Coefficient of lambda^power as a polynomial in the remaining variables.
  MultiPoly coeff_of_lambda(std::uint32_t power) const {
    MultiPoly r;
    for (const auto& [t, c] : terms_)
      if (t.degree_of(kLambda) == power) r.add_term(t.without(kLambda), c);
    return r;
  }

  std::set<VarId> variables() const {
    std::set<VarId> vs;
    for (const auto& [t, c] : terms_)
      for (const auto& [var, exp] : t.factors()) vs.insert(var);
    return vs;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const {
    MultiPoly r;
    for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ta, ca] : a.terms_)
      for (const auto& [tb, cb] : b.terms_) r.add_term(ta * tb, ca * cb);
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(const GaussInt& c, const MultiPoly& p) {
    MultiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [t, pc] : p.terms_) r.terms_.emplace(t, c * pc);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& p, const GaussInt& c) { return c * p; }

  MultiPoly pow(std::uint32_t e) const {
    MultiPoly r = constant(GaussInt(1));
    for (std::uint32_t j = 0; j < e; ++j) r *= *this;
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Floating evaluation. Terms are combined by pairwise summation in monomial
  // order, so the result is independent of anything but the polynomial itself.
  Cplx eval(const std::map<VarId, Cplx>& assign) const {
    std::vector<Cplx> vals;
    vals.reserve(terms_.size());
    for (const auto& [t, c] : terms_) {
      Cplx x = c.to_cplx();
      for (const auto& [var, exp] : t.factors()) {
        auto it = assign.find(var);
        if (it == assign.end())
          fail(errc::missing_assignment, "no value assigned to " + var_name(var));
        for (std::uint32_t j = 0; j < exp; ++j) x *= it->second;
      }
      vals.push_back(x);
    }
    return pairwise_sum(vals, 0, vals.size());
  }

  // Exact evaluation over Z[i]; the substrate for decidable solution checks.
  GaussInt eval_exact(const std::map<VarId, GaussInt>& assign) const {
    GaussInt acc(0);
    for (const auto& [t, c] : terms_) {
      GaussInt x = c;
      for (const auto& [var, exp] : t.factors()) {
        auto it = assign.find(var);
        if (it == assign.end())
          fail(errc::missing_assignment, "no value assigned to " + var_name(var));
        for (std::uint32_t j = 0; j < exp; ++j) x *= it->second;
      }
      acc += x;
    }
    return acc;
  }

  // Simultaneous substitution of variables by polynomials; untouched
  // variables stay themselves.
  MultiPoly substitute(const std::map<VarId, MultiPoly>& subs) const {
    MultiPoly r;
    for (const auto& [t, c] : terms_) {
      MultiPoly term = constant(c);
      for (const auto& [var, exp] : t.factors()) {
        auto it = subs.find(var);
        MultiPoly base = it == subs.end() ? variable(var) : it->second;
        term *= base.pow(exp);
      }
      r += term;
    }
    return r;
  }

  // Canonical text: terms in descending graded-lex order, coefficients in the
  // "(a+bi)" form, e.g. "(1+1i)*v1*l^2 + (-2+0i)".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      s += it->second.to_string();
      if (!it->first.is_unit()) s += "*" + it->first.to_string();
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.to_string();
  }

 private:
  static Cplx pairwise_sum(const std::vector<Cplx>& v, std::size_t lo, std::size_t hi) {
    if (hi == lo) return {0.0, 0.0};
    if (hi - lo == 1) return v[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
  }

  void add_term(const Monomial& t, const GaussInt& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermMap terms_;
};

}  // namespace floq
