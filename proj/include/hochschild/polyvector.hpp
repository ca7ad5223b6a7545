#pragma once

// Polyvector fields with polynomial coefficients, the HKR map, the linear
// action and exact averaging over rotations in a coordinate plane.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/linear_action.hpp"
#include "hochschild/multidiff.hpp"
#include "hochschild/poly.hpp"

namespace hochschild {

/// Strictly increasing variable indices i_1 < ... < i_k.
using WedgeIndices = std::vector<std::size_t>;

/// sum_I X^I d_{i_1} ^ ... ^ d_{i_k}
class PolyvectorField {
 public:
  using Components = std::map<WedgeIndices, Poly>;

  PolyvectorField(std::size_t degree = 0, std::size_t n_vars = 0) : k_(degree), n_(n_vars) {}

  static PolyvectorField function(const Poly& p) {
    PolyvectorField x(0, p.n_vars());
    x.add(WedgeIndices{}, p);
    return x;
  }

  /// sum_i comps[i] d_i
  static PolyvectorField vector_field(const std::vector<Poly>& comps) {
    PolyvectorField x(1, comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) x.add({i}, comps[i]);
    return x;
  }

  std::size_t degree() const { return k_; }
  std::size_t n_vars() const { return n_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Poly component(const WedgeIndices& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Poly(n_) : it->second;
  }

  /// Adds coeff * d_{idx[0]} ^ ... ; indices in any order, sorted with sign.
  void add(WedgeIndices idx, const Poly& coeff) {
    if (idx.size() != k_) throw ArityMismatch("wedge has " + std::to_string(idx.size()) + " factors, field has degree " + std::to_string(k_));
    if (coeff.n_vars() != n_) throw VariableCountMismatch("coefficient has the wrong variable count");
    for (auto i : idx)
      if (i >= n_) throw VariableCountMismatch("wedge index out of range");
    bool odd = false;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          odd = !odd;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return;
    if (coeff.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(idx, odd ? -coeff : coeff);
    if (!inserted) {
      if (odd)
        it->second -= coeff;
      else
        it->second += coeff;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  unsigned coefficient_degree() const {
    unsigned r = 0;
    for (const auto& [i, c] : comps_) r = std::max(r, c.degree());
    return r;
  }

  PolyvectorField& operator+=(const PolyvectorField& o) {
    check(o);
    for (const auto& [i, c] : o.comps_) add(i, c);
    return *this;
  }
  PolyvectorField& operator-=(const PolyvectorField& o) {
    check(o);
    for (const auto& [i, c] : o.comps_) add(i, -c);
    return *this;
  }
  PolyvectorField& operator*=(const Rational& q) {
    if (sgn(q) == 0) {
      comps_.clear();
      return *this;
    }
    for (auto& [i, c] : comps_) c *= q;
    return *this;
  }
  friend PolyvectorField operator+(PolyvectorField a, const PolyvectorField& b) { return a += b; }
  friend PolyvectorField operator-(PolyvectorField a, const PolyvectorField& b) { return a -= b; }
  friend PolyvectorField operator*(const Rational& q, PolyvectorField a) { return a *= q; }
  friend bool operator==(const PolyvectorField& a, const PolyvectorField& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.comps_ == b.comps_;
  }

 private:
  void check(const PolyvectorField& o) const {
    if (o.k_ != k_) throw ArityMismatch("fields have different degrees");
    if (o.n_ != n_) throw VariableCountMismatch("fields have different variable counts");
  }

  std::size_t k_;
  std::size_t n_;
  Components comps_;
};

inline PolyvectorField wedge(const PolyvectorField& x, const PolyvectorField& y) {
  if (x.n_vars() != y.n_vars()) throw VariableCountMismatch("fields have different variable counts");
  PolyvectorField out(x.degree() + y.degree(), x.n_vars());
  for (const auto& [i, a] : x.components())
    for (const auto& [j, b] : y.components()) {
      WedgeIndices idx = i;
      idx.insert(idx.end(), j.begin(), j.end());
      out.add(std::move(idx), a * b);
    }
  return out;
}

/// U(X)(f_1..f_k) = (1/k!) sum_sigma sgn(sigma) X^{I} d_{i_sigma(1)} f_1 ... d_{i_sigma(k)} f_k
inline MultiDiffCochain hkr_map(const PolyvectorField& x) {
  const std::size_t k = x.degree(), n = x.n_vars();
  MultiDiffCochain out(k, n);
  const Rational scale = 1 / factorial(static_cast<unsigned>(k));
  std::vector<std::size_t> perm(k);
  for (const auto& [idx, c] : x.components()) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) ++inversions;
      SlotSymbols slots;
      for (std::size_t s = 0; s < k; ++s) slots.push_back(unit_exponents(n, idx[perm[s]]));
      out.add_term(slots, ((inversions % 2 == 0) ? scale : Rational(-scale)) * c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

namespace detail {

/// Transforms X by a matrix with polynomial entries living in a ring with
/// `target_vars` >= n variables: coefficients are substituted by
/// x_m -> sum_l m_inv[m][l] x_l and each d_i -> sum_l m[l][i] d_l.
inline std::map<WedgeIndices, Poly> transform_polyvector(const PolyvectorField& x,
                                                         const std::vector<std::vector<Poly>>& m,
                                                         const std::vector<std::vector<Poly>>& m_inv,
                                                         std::size_t target_vars) {
  const std::size_t n = x.n_vars(), k = x.degree();
  std::vector<Poly> images;
  for (std::size_t j = 0; j < n; ++j) {
    Poly p(target_vars);
    for (std::size_t l = 0; l < n; ++l) p += m_inv[j][l] * Poly::variable(target_vars, l);
    images.push_back(std::move(p));
  }
  std::map<WedgeIndices, Poly> out;
  auto accumulate = [&](WedgeIndices idx, const Poly& c) {
    bool odd = false;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          odd = !odd;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return;
    auto [it, inserted] = out.try_emplace(idx, Poly(target_vars));
    if (odd)
      it->second -= c;
    else
      it->second += c;
    if (it->second.is_zero()) out.erase(it);
  };
  for (const auto& [idx, c] : x.components()) {
    Poly coeff = substitute(c, images, target_vars);
    WedgeIndices key(k);
    std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t s, const Poly& w) {
      if (s == k) {
        accumulate(key, w);
        return;
      }
      for (std::size_t l = 0; l < n; ++l) {
        const Poly& e = m[l][idx[s]];
        if (e.is_zero()) continue;
        key[s] = l;
        rec(s + 1, w * e);
      }
    };
    rec(0, coeff);
  }
  return out;
}

inline std::vector<std::vector<Poly>> constant_entries(const Matrix& m, std::size_t vars) {
  std::vector<std::vector<Poly>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(Poly::constant(vars, m(i, j)));
  return out;
}

/// (1/2pi) int cos^a sin^b
inline Rational circle_moment(unsigned a, unsigned b) {
  if (a % 2 == 1 || b % 2 == 1) return Rational(0);
  auto dfact = [](int v) {
    Rational r(1);
    for (; v > 1; v -= 2) r *= v;
    return r;
  };
  return dfact(static_cast<int>(a) - 1) * dfact(static_cast<int>(b) - 1) / dfact(static_cast<int>(a + b));
}

}  // namespace detail

/// g . X for a single invertible matrix; on vector fields this is g X(g^{-1} . f).
inline PolyvectorField act_matrix(const Matrix& g, const Matrix& g_inv, const PolyvectorField& x) {
  const std::size_t n = x.n_vars();
  if (g.rows() != n || g.cols() != n) throw VariableCountMismatch("field and matrix have different variable counts");
  auto comps = detail::transform_polyvector(x, detail::constant_entries(g, n), detail::constant_entries(g_inv, n), n);
  PolyvectorField out(x.degree(), n);
  for (const auto& [idx, c] : comps) out.add(idx, c);
  return out;
}

inline PolyvectorField act_linear(const LinearAction& action, std::size_t g, const PolyvectorField& x) {
  if (x.n_vars() != action.n_vars()) throw VariableCountMismatch("field and action have different variable counts");
  if (g >= action.order()) throw BadElementIndex("group element index out of range");
  return act_matrix(action.element(g), action.element_inverse(g), x);
}

/// Rotation by the angle with cosine c and sine s in the (i, j) plane.
inline Matrix plane_rotation(std::size_t n, std::size_t i, std::size_t j, const Rational& c, const Rational& s) {
  Matrix r = Matrix::identity(n);
  r(i, i) = c;
  r(i, j) = -s;
  r(j, i) = s;
  r(j, j) = c;
  return r;
}

/// Average of R_theta . X over the circle of rotations in the (i, j) plane,
/// integrated exactly in cos and sin.
inline PolyvectorField circle_average_polyvector(const PolyvectorField& x, std::size_t i, std::size_t j) {
  const std::size_t n = x.n_vars();
  if (i == j || i >= n || j >= n) throw DimensionMismatch("rotation plane needs two distinct variables");
  // ring with two extra variables c = cos, s = sin
  const std::size_t vars = n + 2;
  const Poly c = Poly::variable(vars, n), s = Poly::variable(vars, n + 1);
  auto rot = [&](bool inverse) {
    std::vector<std::vector<Poly>> m(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m[a].push_back(Poly::constant(vars, Rational(a == b ? 1 : 0)));
    m[i][i] = c;
    m[j][j] = c;
    m[i][j] = inverse ? s : -s;
    m[j][i] = inverse ? -s : s;
    return m;
  };
  auto comps = detail::transform_polyvector(x, rot(false), rot(true), vars);
  PolyvectorField out(x.degree(), n);
  for (const auto& [idx, p] : comps) {
    Poly avg(n);
    for (const auto& [e, q] : p.terms()) {
      Rational w = detail::circle_moment(e[n], e[n + 1]);
      if (sgn(w) == 0) continue;
      avg.add_term(Exponents(e.begin(), e.begin() + n), q * w);
    }
    out.add(idx, avg);
  }
  return out;
}

inline std::string to_string(const PolyvectorField& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [idx, c] : x.components()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    for (std::size_t t = 0; t < idx.size(); ++t) s += (t == 0 ? " d" : "^d") + std::to_string(idx[t]);
  }
  return s;
}

}  // namespace hochschild
