#pragma once

// Hochschild cochains over a finite-dimensional algebra with values in a
// bimodule: the differential, the Gerstenhaber bracket, the lifted group
// action and the averaging projector.

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "hochschild/algebra.hpp"
#include "hochschild/errors.hpp"
#include "hochschild/linalg.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

inline constexpr std::size_t kMaxCochainDegree = 8;
inline constexpr std::size_t kMaxCochainEntries = std::size_t{1} << 22;

/// Number of entries of a degree-n cochain, after checking the resource caps.
inline std::size_t cochain_size(std::size_t d, std::size_t n, std::size_t m) {
  if (n > kMaxCochainDegree)
    throw ResourceLimit("cochain degree " + std::to_string(n) + " exceeds the cap of " + std::to_string(kMaxCochainDegree));
  std::size_t s = m;
  for (std::size_t i = 0; i < n; ++i) {
    s *= d;
    if (s > kMaxCochainEntries) throw ResourceLimit("cochain tensor too large (degree " + std::to_string(n) + ")");
  }
  return s;
}

/// A degree-n multilinear map A^{(x)n} -> N stored densely. Entry
/// (t, r) is coordinate r of phi(e_{i_1}, ..., e_{i_n}) where t is the
/// lexicographic index of (i_1, ..., i_n), i_1 most significant.
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t degree, std::size_t algebra_dim, std::size_t module_dim)
      : degree_(degree), d_(algebra_dim), m_(module_dim),
        tuples_(cochain_size(algebra_dim, degree, module_dim) / module_dim),
        coeffs_(tuples_ * module_dim) {}

  static Cochain basis(std::size_t degree, std::size_t d, std::size_t m, std::size_t index) {
    Cochain c(degree, d, m);
    c.coeffs_.at(index) = 1;
    return c;
  }

  static Cochain from_vector(std::size_t degree, std::size_t d, std::size_t m, const SparseVector& v) {
    Cochain c(degree, d, m);
    for (const auto& [i, q] : v.entries()) c.coeffs_.at(i) = q;
    return c;
  }

  std::size_t degree() const { return degree_; }
  std::size_t algebra_dim() const { return d_; }
  std::size_t module_dim() const { return m_; }
  std::size_t tuples() const { return tuples_; }
  std::size_t size() const { return coeffs_.size(); }

  Rational& at(std::size_t tuple, std::size_t r) { return coeffs_[tuple * m_ + r]; }
  const Rational& at(std::size_t tuple, std::size_t r) const { return coeffs_[tuple * m_ + r]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Vector value(std::size_t tuple) const {
    return Vector(coeffs_.begin() + tuple * m_, coeffs_.begin() + (tuple + 1) * m_);
  }

  SparseVector to_sparse() const { return SparseVector::from_dense(coeffs_); }

  bool is_zero() const {
    for (const auto& q : coeffs_)
      if (sgn(q) != 0) return false;
    return true;
  }

  bool same_shape(const Cochain& o) const { return degree_ == o.degree_ && d_ == o.d_ && m_ == o.m_; }

  Cochain& operator+=(const Cochain& o) {
    require_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    require_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Cochain& operator*=(const Rational& s) {
    for (auto& q : coeffs_) q *= s;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
  friend Cochain operator-(Cochain a) { return a *= Rational(-1); }

  friend bool operator==(const Cochain& a, const Cochain& b) { return a.same_shape(b) && a.coeffs_ == b.coeffs_; }

 private:
  void require_shape(const Cochain& o) const {
    if (!same_shape(o)) throw DimensionMismatch("cochain shapes differ");
  }

  std::size_t degree_ = 0, d_ = 1, m_ = 1, tuples_ = 1;
  std::vector<Rational> coeffs_ = std::vector<Rational>(1);
};

namespace detail {

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Digits of a lexicographic tuple index, most significant first.
inline std::vector<std::size_t> tuple_digits(std::size_t index, std::size_t d, std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t s = n; s-- > 0;) {
    t[s] = index % d;
    index /= d;
  }
  return t;
}

inline std::size_t tuple_index(const std::size_t* digits, std::size_t count, std::size_t d) {
  std::size_t idx = 0;
  for (std::size_t s = 0; s < count; ++s) idx = idx * d + digits[s];
  return idx;
}

inline void check_pair(const FiniteDimAlgebra& a, const Bimodule& n, const Cochain& phi) {
  if (n.algebra_dim() != a.dim()) throw DimensionMismatch("bimodule is over an algebra of different dimension");
  if (phi.algebra_dim() != a.dim() || phi.module_dim() != n.dim())
    throw DimensionMismatch("cochain dimensions do not match the (algebra, bimodule) pair");
}

}  // namespace detail

/// (delta phi)(a_0..a_n) = a_0 phi(a_1..a_n) + (-1)^{n+1} phi(a_0..a_{n-1}) a_n
///                        + sum_i (-1)^{i+1} phi(.., a_i a_{i+1}, ..)
inline Cochain differential(const FiniteDimAlgebra& a, const Bimodule& nmod, const Cochain& phi) {
  detail::check_pair(a, nmod, phi);
  const std::size_t d = a.dim(), m = nmod.dim(), n = phi.degree();
  Cochain out(n + 1, d, m);
  std::vector<std::size_t> t(n + 1), inner(n);
  const Rational last_sign = (n % 2 == 0) ? Rational(-1) : Rational(1);
  for (std::size_t idx = 0; idx < out.tuples(); ++idx) {
    t = detail::tuple_digits(idx, d, n + 1);
    // a_0 . phi(a_1..a_n)
    std::size_t tail = detail::tuple_index(t.data() + 1, n, d);
    const Matrix& left = nmod.left(t[0]);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; s < m; ++s)
        if (sgn(left(r, s)) != 0 && sgn(phi.at(tail, s)) != 0) out.at(idx, r) += left(r, s) * phi.at(tail, s);
    // phi(a_0..a_{n-1}) . a_n
    std::size_t head = detail::tuple_index(t.data(), n, d);
    const Matrix& right = nmod.right(t[n]);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; s < m; ++s)
        if (sgn(right(r, s)) != 0 && sgn(phi.at(head, s)) != 0) out.at(idx, r) += last_sign * right(r, s) * phi.at(head, s);
    // inner products
    for (std::size_t i = 0; i < n; ++i) {
      Rational sign = (i % 2 == 0) ? Rational(-1) : Rational(1);
      for (std::size_t s = 0; s < i; ++s) inner[s] = t[s];
      for (std::size_t s = i + 1; s < n; ++s) inner[s] = t[s + 1];
      for (std::size_t k = 0; k < d; ++k) {
        const Rational& ck = a.c(t[i], t[i + 1], k);
        if (sgn(ck) == 0) continue;
        inner[i] = k;
        std::size_t j = detail::tuple_index(inner.data(), n, d);
        for (std::size_t r = 0; r < m; ++r)
          if (sgn(phi.at(j, r)) != 0) out.at(idx, r) += sign * ck * phi.at(j, r);
      }
    }
  }
  return out;
}

/// The multiplication mu_0 as a degree-2 cochain with values in A.
inline Cochain multiplication_cochain(const FiniteDimAlgebra& a) {
  std::size_t d = a.dim();
  Cochain mu(2, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) mu.at(i * d + j, k) = a.c(i, j, k);
  return mu;
}

/// Partial composition phi o_i psi (slot i is 1-based), values in A.
inline Cochain partial_composition(const Cochain& phi, const Cochain& psi, std::size_t slot) {
  const std::size_t d = phi.algebra_dim(), p = phi.degree(), q = psi.degree();
  if (psi.algebra_dim() != d) throw DimensionMismatch("partial composition over different algebras");
  if (phi.module_dim() != d || psi.module_dim() != d) throw ModuleNotAlgebra("composition requires values in the algebra");
  if (slot < 1 || slot > p) throw DimensionMismatch("composition slot out of range");
  const std::size_t deg = p + q - 1;
  Cochain out(deg, d, d);
  std::vector<std::size_t> t, outer(p);
  for (std::size_t idx = 0; idx < out.tuples(); ++idx) {
    t = detail::tuple_digits(idx, d, deg);
    std::size_t inner = detail::tuple_index(t.data() + (slot - 1), q, d);
    for (std::size_t s = 0; s + 1 < slot; ++s) outer[s] = t[s];
    for (std::size_t s = slot; s < p; ++s) outer[s] = t[s + q - 1];
    for (std::size_t k = 0; k < d; ++k) {
      const Rational& w = psi.at(inner, k);
      if (sgn(w) == 0) continue;
      outer[slot - 1] = k;
      std::size_t j = detail::tuple_index(outer.data(), p, d);
      for (std::size_t r = 0; r < d; ++r)
        if (sgn(phi.at(j, r)) != 0) out.at(idx, r) += w * phi.at(j, r);
    }
  }
  return out;
}

/// Gerstenhaber composition phi o psi = sum_i (-1)^{(i-1)(q-1)} phi o_i psi.
inline Cochain gerstenhaber_composition(const Cochain& phi, const Cochain& psi) {
  const std::size_t d = phi.algebra_dim(), p = phi.degree(), q = psi.degree();
  if (phi.module_dim() != d || psi.module_dim() != d) throw ModuleNotAlgebra("composition requires values in the algebra");
  if (psi.algebra_dim() != d) throw DimensionMismatch("composition over different algebras");
  if (p + q == 0) throw DimensionMismatch("composition of two degree-0 cochains has negative degree");
  Cochain out(p + q - 1, d, d);
  for (std::size_t i = 1; i <= p; ++i) {
    Cochain part = partial_composition(phi, psi, i);
    bool odd = ((i - 1) % 2 == 1) && (q % 2 == 0);  // (i-1)(q-1) odd
    if (odd)
      out -= part;
    else
      out += part;
  }
  return out;
}

/// [phi, psi] = phi o psi - (-1)^{(p-1)(q-1)} psi o phi.
inline Cochain gerstenhaber_bracket(const Cochain& phi, const Cochain& psi) {
  const std::size_t p = phi.degree(), q = psi.degree();
  if (phi.algebra_dim() != psi.algebra_dim()) throw DimensionMismatch("bracket of cochains over different algebras");
  if (phi.module_dim() != phi.algebra_dim() || psi.module_dim() != psi.algebra_dim())
    throw ModuleNotAlgebra("the Gerstenhaber bracket requires N = A");
  bool odd = (p % 2 == 0) && (q % 2 == 0);  // (p-1)(q-1) odd
  Cochain out = gerstenhaber_composition(phi, psi);
  Cochain rev = gerstenhaber_composition(psi, phi);
  return odd ? out + rev : out - rev;
}

/// A finite group acting by algebra automorphisms on A and compatible
/// isomorphisms on N, with its multiplication table.
class GroupAction {
 public:
  struct Element {
    Matrix on_algebra;
    Matrix on_module;
  };

  std::size_t order() const { return elements_.size(); }
  const Element& element(std::size_t g) const { return elements_.at(g); }
  const Matrix& algebra_inverse(std::size_t g) const { return algebra_inverse_.at(g); }
  std::size_t identity_index() const { return identity_; }
  std::size_t product(std::size_t g, std::size_t h) const { return table_.at(g).at(h); }
  std::size_t inverse_index(std::size_t g) const { return inverse_.at(g); }
  const std::vector<std::vector<std::size_t>>& mult_table() const { return table_; }
  /// Element indices that generate the group.
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::size_t algebra_dim() const { return d_; }
  std::size_t module_dim() const { return m_; }

 private:
  friend GroupAction make_group_action(const FiniteDimAlgebra&, const Bimodule&, std::vector<Element>,
                                       std::vector<std::vector<std::size_t>>, std::vector<std::size_t>);
  std::size_t d_ = 0, m_ = 0, identity_ = 0;
  std::vector<Element> elements_;
  std::vector<Matrix> algebra_inverse_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_, generators_;
};

/// Validates automorphisms, bimodule compatibility, the group table and the
/// representation property. An empty generator list means "all elements".
inline GroupAction make_group_action(const FiniteDimAlgebra& a, const Bimodule& nmod,
                                     std::vector<GroupAction::Element> elements,
                                     std::vector<std::vector<std::size_t>> table,
                                     std::vector<std::size_t> generators = {}) {
  const std::size_t d = a.dim(), m = nmod.dim(), order = elements.size();
  if (order == 0) throw InvalidGroupAction("group must have at least one element");
  if (table.size() != order) throw InvalidGroupAction("multiplication table must be |G| x |G|");
  for (const auto& row : table) {
    if (row.size() != order) throw InvalidGroupAction("multiplication table must be |G| x |G|");
    for (auto v : row)
      if (v >= order) throw InvalidGroupAction("multiplication table entry out of range");
  }
  GroupAction act;
  act.d_ = d;
  act.m_ = m;
  std::vector<Matrix> lefts, rights;
  for (std::size_t k = 0; k < d; ++k) {
    lefts.push_back(nmod.left(k));
    rights.push_back(nmod.right(k));
  }
  for (std::size_t g = 0; g < order; ++g) {
    const auto& e = elements[g];
    if (e.on_algebra.rows() != d || e.on_algebra.cols() != d || e.on_module.rows() != m || e.on_module.cols() != m)
      throw DimensionMismatch("group element matrices have the wrong shape");
    if (!check_automorphism(a, e.on_algebra))
      throw InvalidGroupAction("element " + std::to_string(g) + " is not an algebra automorphism");
    if (!inverse(e.on_module)) throw InvalidGroupAction("element " + std::to_string(g) + " is not invertible on the module");
    // g(a . n) = g(a) . g(n) and g(n . a) = g(n) . g(a), on basis elements.
    for (std::size_t i = 0; i < d; ++i) {
      Vector gi = e.on_algebra.column(i);
      if (e.on_module * nmod.left(i) != detail::combine(lefts, gi, m) * e.on_module ||
          e.on_module * nmod.right(i) != detail::combine(rights, gi, m) * e.on_module)
        throw InvalidGroupAction("element " + std::to_string(g) + " is not compatible with the bimodule structure");
    }
    act.algebra_inverse_.push_back(*inverse(e.on_algebra));
  }
  // group axioms
  std::size_t id = order;
  for (std::size_t g = 0; g < order && id == order; ++g) {
    bool ok = true;
    for (std::size_t h = 0; h < order && ok; ++h) ok = table[g][h] == h && table[h][g] == h;
    if (ok) id = g;
  }
  if (id == order) throw InvalidGroupAction("multiplication table has no identity");
  act.inverse_.assign(order, order);
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h)
      if (table[g][h] == id && table[h][g] == id) act.inverse_[g] = h;
    if (act.inverse_[g] == order) throw InvalidGroupAction("element " + std::to_string(g) + " has no inverse in the table");
  }
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h) {
      for (std::size_t k = 0; k < order; ++k)
        if (table[table[g][h]][k] != table[g][table[h][k]]) throw InvalidGroupAction("multiplication table is not associative");
      const auto& gh = elements[table[g][h]];
      if (elements[g].on_algebra * elements[h].on_algebra != gh.on_algebra ||
          elements[g].on_module * elements[h].on_module != gh.on_module)
        throw InvalidGroupAction("matrices do not represent the multiplication table");
    }
  for (auto g : generators)
    if (g >= order) throw BadElementIndex("generator index out of range");
  if (generators.empty())
    for (std::size_t g = 0; g < order; ++g) generators.push_back(g);
  act.identity_ = id;
  act.elements_ = std::move(elements);
  act.table_ = std::move(table);
  act.generators_ = std::move(generators);
  return act;
}

/// Closes a set of generators under multiplication (breadth-first, so the
/// element order is deterministic) and validates the result.
inline GroupAction generate_group_action(const FiniteDimAlgebra& a, const Bimodule& nmod,
                                         const std::vector<GroupAction::Element>& generators,
                                         std::size_t max_order = 4096) {
  std::vector<GroupAction::Element> elems{{Matrix::identity(a.dim()), Matrix::identity(nmod.dim())}};
  auto find = [&](const GroupAction::Element& e) -> std::size_t {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i].on_algebra == e.on_algebra && elems[i].on_module == e.on_module) return i;
    return elems.size();
  };
  for (const auto& g : generators) {
    if (g.on_algebra.rows() != a.dim() || g.on_algebra.cols() != a.dim() || g.on_module.rows() != nmod.dim() ||
        g.on_module.cols() != nmod.dim())
      throw DimensionMismatch("generator matrices have the wrong shape");
  }
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t g = frontier.front();
    frontier.pop_front();
    for (const auto& s : generators) {
      GroupAction::Element e{elems[g].on_algebra * s.on_algebra, elems[g].on_module * s.on_module};
      if (find(e) == elems.size()) {
        if (elems.size() >= max_order) throw ResourceLimit("generated group exceeds " + std::to_string(max_order) + " elements");
        elems.push_back(std::move(e));
        frontier.push_back(elems.size() - 1);
      }
    }
  }
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t g = 0; g < elems.size(); ++g)
    for (std::size_t h = 0; h < elems.size(); ++h) {
      std::size_t k = find({elems[g].on_algebra * elems[h].on_algebra, elems[g].on_module * elems[h].on_module});
      if (k == elems.size()) throw InvalidGroupAction("generated set is not closed (matrices of infinite order?)");
      table[g][h] = k;
    }
  std::vector<std::size_t> gens;
  for (const auto& s : generators) gens.push_back(find(s));
  return make_group_action(a, nmod, std::move(elems), std::move(table), std::move(gens));
}

/// Action on N = A (module matrices equal the algebra matrices).
inline GroupAction generate_group_action(const FiniteDimAlgebra& a, const std::vector<Matrix>& generators) {
  std::vector<GroupAction::Element> gens;
  for (const auto& g : generators) gens.push_back({g, g});
  return generate_group_action(a, regular_bimodule(a), gens);
}

/// (g . phi)(a_1..a_n) = rho_N(g) phi(g^{-1} a_1, ..., g^{-1} a_n)
inline Cochain act_on_cochain(const GroupAction& action, std::size_t g, const Cochain& phi) {
  if (g >= action.order()) throw BadElementIndex("group element index " + std::to_string(g) + " out of range");
  if (phi.algebra_dim() != action.algebra_dim() || phi.module_dim() != action.module_dim())
    throw DimensionMismatch("cochain does not match the group action dimensions");
  const std::size_t d = phi.algebra_dim(), m = phi.module_dim(), n = phi.degree();
  const Matrix& ginv = action.algebra_inverse(g);
  std::vector<Rational> cur = phi.coeffs(), next(cur.size());
  // mode product on each argument slot: T'(..i..) = sum_j ginv(j, i) T(..j..)
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t stride = detail::ipow(d, n - 1 - s) * m;
    for (auto& q : next) q = 0;
    for (std::size_t base = 0; base < cur.size(); ++base) {
      std::size_t digit = (base / stride) % d;
      if (digit != 0) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const Rational& w = ginv(j, i);
          if (sgn(w) == 0) continue;
          const Rational& src = cur[base + j * stride];
          if (sgn(src) != 0) next[base + i * stride] += w * src;
        }
    }
    std::swap(cur, next);
  }
  const Matrix& rn = action.element(g).on_module;
  Cochain out(n, d, m);
  for (std::size_t t = 0; t < out.tuples(); ++t)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = 0; s < m; ++s)
        if (sgn(rn(r, s)) != 0 && sgn(cur[t * m + s]) != 0) out.at(t, r) += rn(r, s) * cur[t * m + s];
  return out;
}

/// Reynolds projector (1/|G|) sum_g g . phi onto invariant cochains.
inline Cochain average(const GroupAction& action, const Cochain& phi) {
  Cochain sum(phi.degree(), phi.algebra_dim(), phi.module_dim());
  for (std::size_t g = 0; g < action.order(); ++g) sum += act_on_cochain(action, g, phi);
  sum *= Rational(1, static_cast<unsigned long>(action.order()));
  return sum;
}

inline bool is_invariant(const GroupAction& action, const Cochain& phi) {
  for (auto g : action.generators())
    if (act_on_cochain(action, g, phi) != phi) return false;
  return true;
}

}  // namespace hochschild
