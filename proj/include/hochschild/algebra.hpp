#pragma once

// Finite-dimensional unital associative algebras and bimodules over Q,
// given by structure data and validated on construction.

#include <cstddef>
#include <string>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/linalg.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

using Vector = std::vector<Rational>;

/// Rank-3 structure tensor c[i][j][k]: e_i e_j = sum_k c_ij^k e_k.
using StructureTensor = std::vector<std::vector<std::vector<Rational>>>;

class FiniteDimAlgebra {
 public:
  std::size_t dim() const { return dim_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const Vector& unit() const { return unit_; }

  StructureTensor structure() const {
    StructureTensor s(dim_, std::vector<std::vector<Rational>>(dim_, std::vector<Rational>(dim_)));
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) s[i][j][k] = c(i, j, k);
    return s;
  }

  /// Matrix of left multiplication by e_i (column j = e_i e_j).
  const Matrix& left(std::size_t i) const { return left_[i]; }
  /// Matrix of right multiplication by e_i (column j = e_j e_i).
  const Matrix& right(std::size_t i) const { return right_[i]; }

  bool commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != c(j, i, k)) return false;
    return true;
  }

  friend bool operator==(const FiniteDimAlgebra& a, const FiniteDimAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_ && a.unit_ == b.unit_;
  }

 private:
  friend FiniteDimAlgebra make_algebra(const StructureTensor&, const Vector&);
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
  Vector unit_;
  std::vector<Matrix> left_, right_;
};

inline Vector multiply(const FiniteDimAlgebra& a, const Vector& x, const Vector& y) {
  std::size_t d = a.dim();
  if (x.size() != d || y.size() != d) throw DimensionMismatch("multiply: vectors must have length " + std::to_string(d));
  Vector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(y[j]) == 0) continue;
      Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(a.c(i, j, k)) != 0) out[k] += xy * a.c(i, j, k);
    }
  }
  return out;
}

inline Vector basis_vector(std::size_t d, std::size_t i) {
  Vector v(d);
  v.at(i) = 1;
  return v;
}

/// Validates associativity and the unit axioms.
inline FiniteDimAlgebra make_algebra(const StructureTensor& structure, const Vector& unit) {
  std::size_t d = structure.size();
  if (d == 0) throw DimensionMismatch("algebra dimension must be positive");
  for (const auto& plane : structure) {
    if (plane.size() != d) throw DimensionMismatch("structure array must be d x d x d");
    for (const auto& row : plane)
      if (row.size() != d) throw DimensionMismatch("structure array must be d x d x d");
  }
  if (unit.size() != d) throw DimensionMismatch("unit must have length " + std::to_string(d));

  FiniteDimAlgebra a;
  a.dim_ = d;
  a.unit_ = unit;
  a.c_.resize(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) a.c_[(i * d + j) * d + k] = structure[i][j][k];

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m) {
          Rational lhs, rhs;
          for (std::size_t k = 0; k < d; ++k) {
            lhs += a.c(i, j, k) * a.c(k, l, m);
            rhs += a.c(j, l, k) * a.c(i, k, m);
          }
          if (lhs != rhs) throw NotAssociative(i, j, l);
        }

  for (std::size_t j = 0; j < d; ++j) {
    Vector e = basis_vector(d, j);
    if (multiply(a, unit, e) != e || multiply(a, e, unit) != e)
      throw NotUnital("unit axiom fails at basis index " + std::to_string(j));
  }

  for (std::size_t i = 0; i < d; ++i) {
    Matrix l(d, d), r(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        l(k, j) = a.c(i, j, k);
        r(k, j) = a.c(j, i, k);
      }
    a.left_.push_back(std::move(l));
    a.right_.push_back(std::move(r));
  }
  return a;
}

/// Bimodule structure on Q^m: left(i) and right(i) are the actions of e_i.
class Bimodule {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t algebra_dim() const { return left_.size(); }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const Matrix& right(std::size_t i) const { return right_[i]; }
  /// True when this is the regular bimodule of the algebra it was built from.
  bool is_regular() const { return regular_; }

 private:
  friend Bimodule make_bimodule(const FiniteDimAlgebra&, std::vector<Matrix>, std::vector<Matrix>);
  friend Bimodule regular_bimodule(const FiniteDimAlgebra&);
  std::size_t dim_ = 0;
  std::vector<Matrix> left_, right_;
  bool regular_ = false;
};

namespace detail {

inline Matrix combine(const std::vector<Matrix>& ms, const Vector& coeffs, std::size_t m) {
  Matrix out(m, m);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) out(r, c) += coeffs[i] * ms[i](r, c);
  }
  return out;
}

}  // namespace detail

/// Validates that left/right are commuting unital representations.
inline Bimodule make_bimodule(const FiniteDimAlgebra& a, std::vector<Matrix> left, std::vector<Matrix> right) {
  std::size_t d = a.dim();
  if (left.size() != d || right.size() != d) throw DimensionMismatch("bimodule needs one left and one right matrix per basis element");
  std::size_t m = left.front().rows();
  if (m == 0) throw DimensionMismatch("bimodule dimension must be positive");
  for (std::size_t i = 0; i < d; ++i)
    if (left[i].rows() != m || left[i].cols() != m || right[i].rows() != m || right[i].cols() != m)
      throw DimensionMismatch("bimodule action matrices must be m x m");

  Matrix id = Matrix::identity(m);
  if (detail::combine(left, a.unit(), m) != id) throw NotAModule("unit does not act as identity on the left");
  if (detail::combine(right, a.unit(), m) != id) throw NotAModule("unit does not act as identity on the right");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector prod = multiply(a, basis_vector(d, i), basis_vector(d, j));
      // (e_i e_j) . n = e_i . (e_j . n)
      if (detail::combine(left, prod, m) != left[i] * left[j])
        throw NotAModule("left action is not multiplicative at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      // n . (e_i e_j) = (n . e_i) . e_j
      if (detail::combine(right, prod, m) != right[j] * right[i])
        throw NotAModule("right action is not multiplicative at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      if (left[i] * right[j] != right[j] * left[i])
        throw NotAModule("left and right actions do not commute at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  Bimodule b;
  b.dim_ = m;
  b.left_ = std::move(left);
  b.right_ = std::move(right);
  return b;
}

/// N = A with left and right multiplication.
inline Bimodule regular_bimodule(const FiniteDimAlgebra& a) {
  Bimodule b;
  b.dim_ = a.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    b.left_.push_back(a.left(i));
    b.right_.push_back(a.right(i));
  }
  b.regular_ = true;
  return b;
}

/// True iff g is invertible, fixes the unit and is multiplicative on basis pairs.
inline bool check_automorphism(const FiniteDimAlgebra& a, const Matrix& g) {
  std::size_t d = a.dim();
  if (g.rows() != d || g.cols() != d) throw DimensionMismatch("automorphism matrix must be d x d");
  if (!inverse(g)) return false;
  if (g.apply(a.unit()) != a.unit()) return false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector gi = g.column(i), gj = g.column(j);
      Vector lhs = g.apply(multiply(a, basis_vector(d, i), basis_vector(d, j)));
      if (lhs != multiply(a, gi, gj)) return false;
    }
  return true;
}

// Standard small algebras used by the tests, the CLI examples and the docs.
namespace algebras {

/// Q itself.
inline FiniteDimAlgebra ground_field() { return make_algebra({{{Rational(1)}}}, {Rational(1)}); }

/// Q[x]/(x^n), basis 1, x, ..., x^{n-1}.
inline FiniteDimAlgebra truncated_polynomial(std::size_t n) {
  StructureTensor s(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) s[i][j][i + j] = 1;
  return make_algebra(s, basis_vector(n, 0));
}

inline FiniteDimAlgebra dual_numbers() { return truncated_polynomial(2); }

/// Q[Z/2], basis e, t with t^2 = e.
inline FiniteDimAlgebra group_algebra_z2() {
  StructureTensor s(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
  s[0][0][0] = 1;
  s[0][1][1] = 1;
  s[1][0][1] = 1;
  s[1][1][0] = 1;
  return make_algebra(s, {Rational(1), Rational(0)});
}

/// M_2(Q) in the matrix-unit basis E11, E12, E21, E22.
inline FiniteDimAlgebra matrix_algebra_2x2() {
  StructureTensor s(4, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4)));
  auto idx = [](std::size_t r, std::size_t c) { return 2 * r + c; };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          if (j == k) s[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
  return make_algebra(s, {Rational(1), Rational(0), Rational(0), Rational(1)});
}

}  // namespace algebras

}  // namespace hochschild
