#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

/// Exponent vector; doubles as a derivative multi-index.
using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

inline Exponents unit_exponents(std::size_t n, std::size_t i) {
  Exponents e(n, 0);
  e.at(i) = 1;
  return e;
}

/// All exponent vectors in n variables with total degree <= max_total,
/// ordered by total degree, then lexicographically descending.
inline std::vector<Exponents> exponents_up_to(std::size_t n, unsigned max_total) {
  std::vector<Exponents> out;
  for (unsigned deg = 0; deg <= max_total; ++deg) {
    Exponents e(n, 0);
    // enumerate compositions of deg into n parts
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
      if (var + 1 == n) {
        e[var] = left;
        out.push_back(e);
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        e[var] = k;
        self(self, var + 1, left - k);
      }
    };
    if (n == 0) {
      if (deg == 0) out.push_back(e);
      continue;
    }
    rec(rec, 0, deg);
  }
  return out;
}

class Poly {
 public:
  using Terms = std::map<Exponents, Rational>;

  explicit Poly(std::size_t n_vars = 0) : n_(n_vars) {}

  static Poly constant(std::size_t n, const Rational& q) {
    Poly p(n);
    p.add_term(Exponents(n, 0), q);
    return p;
  }
  static Poly variable(std::size_t n, std::size_t i) {
    Poly p(n);
    p.add_term(unit_exponents(n, i), Rational(1));
    return p;
  }
  static Poly monomial(const Exponents& e, const Rational& q = Rational(1)) {
    Poly p(e.size());
    p.add_term(e, q);
    return p;
  }

  std::size_t n_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponents& e, const Rational& q) {
    if (e.size() != n_) throw VariableCountMismatch("monomial has " + std::to_string(e.size()) + " exponents, polynomial has " + std::to_string(n_) + " variables");
    if (sgn(q) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, q);
    if (!inserted) {
      it->second += q;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  /// Highest total degree of a term; 0 for the zero polynomial.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, q] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  /// Lowest total degree of a term; 0 for the zero polynomial.
  unsigned low_degree() const {
    if (terms_.empty()) return 0;
    unsigned d = ~0u;
    for (const auto& [e, q] : terms_) d = std::min(d, total_degree(e));
    return d;
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, q] : o.terms_) add_term(e, q);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, q] : o.terms_) add_term(e, -q);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, q] : terms_) q *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly out(a.n_);
    Exponents e(a.n_);
    for (const auto& [ea, qa] : a.terms_)
      for (const auto& [eb, qb] : b.terms_) {
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, qa * qb);
      }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

 private:
  void check(const Poly& o) const {
    if (o.n_ != n_) throw VariableCountMismatch("polynomials have different variable counts");
  }

  std::size_t n_;
  Terms terms_;
};

/// d^alpha p.
inline Poly derivative(const Poly& p, const Exponents& alpha) {
  if (alpha.size() != p.n_vars()) throw VariableCountMismatch("derivative multi-index has the wrong length");
  Poly out(p.n_vars());
  Exponents e(p.n_vars());
  for (const auto& [beta, q] : p.terms()) {
    Rational c = q;
    bool zero = false;
    for (std::size_t i = 0; i < beta.size() && !zero; ++i) {
      if (beta[i] < alpha[i]) {
        zero = true;
        break;
      }
      for (unsigned k = 0; k < alpha[i]; ++k) c *= beta[i] - k;
      e[i] = beta[i] - alpha[i];
    }
    if (!zero) out.add_term(e, c);
  }
  return out;
}

inline Poly pow(const Poly& p, unsigned k) {
  Poly out = Poly::constant(p.n_vars(), Rational(1));
  for (unsigned i = 0; i < k; ++i) out = out * p;
  return out;
}

/// p(images[0], ..., images[n-1]); the images may live in a different ring.
inline Poly substitute(const Poly& p, const std::vector<Poly>& images, std::size_t target_vars) {
  if (images.size() != p.n_vars()) throw VariableCountMismatch("substitution needs one image per variable");
  for (const auto& im : images)
    if (im.n_vars() != target_vars) throw VariableCountMismatch("substitution images have inconsistent variable counts");
  Poly out(target_vars);
  // cache powers per variable
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& [e, q] : p.terms()) {
    Poly term = Poly::constant(target_vars, q);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(target_vars, Rational(1)));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      if (e[i] > 0) term = term * pw[e[i]];
    }
    out += term;
  }
  return out;
}

/// Drops every term of total degree >= bound.
inline Poly truncate_degree(const Poly& p, unsigned bound) {
  Poly out(p.n_vars());
  for (const auto& [e, q] : p.terms())
    if (total_degree(e) < bound) out.add_term(e, q);
  return out;
}

/// Human-readable form, e.g. "1/2*x0^2*x1 - 3".
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, q] = *it;
    Rational mag = abs(q);
    s += first ? (sgn(q) < 0 ? "-" : "") : (sgn(q) < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      s += to_string(mag);
    else if (mag == 1)
      s += mono;
    else
      s += to_string(mag) + "*" + mono;
  }
  return s;
}

}  // namespace hochschild
