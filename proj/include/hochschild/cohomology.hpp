#pragma once

// Hochschild cohomology of finite-dimensional (algebra, bimodule) pairs by
// exact elimination on the matrices of the differential.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hochschild/cochain.hpp"
#include "hochschild/linalg.hpp"

namespace hochschild {

/// Matrix of delta: HC^n -> HC^{n+1} in the lexicographic cochain basis.
/// Column j is the differential of the j-th basis cochain.
inline SparseMatrix differential_matrix(const FiniteDimAlgebra& a, const Bimodule& nmod, std::size_t n) {
  if (nmod.algebra_dim() != a.dim()) throw DimensionMismatch("bimodule is over an algebra of different dimension");
  const std::size_t d = a.dim(), m = nmod.dim();
  const std::size_t in_size = cochain_size(d, n, m), out_tuples = cochain_size(d, n + 1, m) / m;
  SparseMatrix mat;
  mat.rows = out_tuples * m;
  mat.columns.resize(in_size);
  std::vector<std::vector<SparseVector::Entry>> cols(in_size);
  const Rational last_sign = (n % 2 == 0) ? Rational(-1) : Rational(1);
  std::vector<std::size_t> t, inner(n);
  std::map<std::size_t, Rational> row;
  for (std::size_t idx = 0; idx < out_tuples; ++idx) {
    t = detail::tuple_digits(idx, d, n + 1);
    std::size_t tail = detail::tuple_index(t.data() + 1, n, d);
    std::size_t head = detail::tuple_index(t.data(), n, d);
    for (std::size_t r = 0; r < m; ++r) {
      row.clear();
      const Matrix& left = nmod.left(t[0]);
      const Matrix& right = nmod.right(t[n]);
      for (std::size_t s = 0; s < m; ++s) {
        if (sgn(left(r, s)) != 0) row[tail * m + s] += left(r, s);
        if (sgn(right(r, s)) != 0) row[head * m + s] += last_sign * right(r, s);
      }
      for (std::size_t i = 0; i < n; ++i) {
        Rational sign = (i % 2 == 0) ? Rational(-1) : Rational(1);
        for (std::size_t s = 0; s < i; ++s) inner[s] = t[s];
        for (std::size_t s = i + 1; s < n; ++s) inner[s] = t[s + 1];
        for (std::size_t k = 0; k < d; ++k) {
          const Rational& ck = a.c(t[i], t[i + 1], k);
          if (sgn(ck) == 0) continue;
          inner[i] = k;
          row[detail::tuple_index(inner.data(), n, d) * m + r] += sign * ck;
        }
      }
      for (auto& [col, q] : row)
        if (sgn(q) != 0) cols[col].emplace_back(idx * m + r, q);
    }
  }
  for (std::size_t j = 0; j < in_size; ++j)
    for (auto& [i, q] : cols[j]) mat.columns[j].push_back(i, std::move(q));
  return mat;
}

/// Cycles, boundaries and quotient representatives of one degree of a
/// complex, all as coordinate vectors of that degree.
struct Subquotient {
  std::vector<SparseVector> cycles;
  std::vector<SparseVector> boundaries;
  /// boundaries[i] = incoming * boundary_witnesses[i]
  std::vector<SparseVector> boundary_witnesses;
  std::vector<SparseVector> representatives;
};

/// ker(outgoing) / im(incoming). `incoming` may be null (degree 0).
inline Subquotient subquotient(const SparseMatrix& outgoing, const SparseMatrix* incoming) {
  Subquotient sq;
  sq.cycles = kernel_basis(outgoing);
  EchelonBasis quotient;
  if (incoming) {
    EchelonBasis image;
    for (std::size_t j = 0; j < incoming->cols(); ++j) {
      auto r = image.insert(incoming->columns[j]);
      if (!r.residual.empty()) {
        sq.boundaries.push_back(incoming->columns[j]);
        sq.boundary_witnesses.push_back(SparseVector::unit(j));
      }
    }
    for (const auto& b : sq.boundaries) quotient.insert(b);
  }
  for (const auto& z : sq.cycles) {
    auto r = quotient.insert(z);
    if (!r.residual.empty()) sq.representatives.push_back(std::move(r.residual));
  }
  return sq;
}

/// HH^n with explicit bases. Invariant: dim = |cocycle_basis| - |coboundary_basis|
/// = |class_representatives|.
struct CohomologySpace {
  std::size_t degree = 0;
  std::vector<Cochain> cocycle_basis;
  std::vector<Cochain> coboundary_basis;
  /// coboundary_basis[i] = differential(coboundary_witnesses[i])
  std::vector<Cochain> coboundary_witnesses;
  std::vector<Cochain> class_representatives;
  std::size_t dim = 0;
};

inline CohomologySpace cohomology(const FiniteDimAlgebra& a, const Bimodule& nmod, std::size_t n) {
  const std::size_t d = a.dim(), m = nmod.dim();
  SparseMatrix out = differential_matrix(a, nmod, n);
  std::optional<SparseMatrix> in;
  if (n > 0) in = differential_matrix(a, nmod, n - 1);
  Subquotient sq = subquotient(out, in ? &*in : nullptr);
  CohomologySpace hs;
  hs.degree = n;
  for (const auto& v : sq.cycles) hs.cocycle_basis.push_back(Cochain::from_vector(n, d, m, v));
  for (const auto& v : sq.boundaries) hs.coboundary_basis.push_back(Cochain::from_vector(n, d, m, v));
  for (const auto& v : sq.boundary_witnesses) hs.coboundary_witnesses.push_back(Cochain::from_vector(n - 1, d, m, v));
  for (const auto& v : sq.representatives) hs.class_representatives.push_back(Cochain::from_vector(n, d, m, v));
  hs.dim = hs.class_representatives.size();
  return hs;
}

/// Finds psi of degree n-1 with delta psi = phi. When `constraint` is given,
/// psi is searched in its span (coordinates in that basis, so "none" means
/// no solution inside the subspace).
inline std::optional<Cochain> solve_coboundary(const FiniteDimAlgebra& a, const Bimodule& nmod, const Cochain& phi,
                                               const std::vector<Cochain>* constraint = nullptr) {
  if (phi.degree() == 0) throw DimensionMismatch("coboundary solving needs degree >= 1");
  detail::check_pair(a, nmod, phi);
  const std::size_t n = phi.degree(), d = a.dim(), m = nmod.dim();
  SparseMatrix columns;
  if (constraint) {
    columns.rows = phi.size();
    for (const auto& b : *constraint) {
      if (b.degree() != n - 1 || b.algebra_dim() != d || b.module_dim() != m)
        throw DimensionMismatch("constraint basis element has the wrong shape");
      columns.columns.push_back(differential(a, nmod, b).to_sparse());
    }
  } else {
    columns = differential_matrix(a, nmod, n - 1);
  }
  EchelonBasis eb;
  for (const auto& c : columns.columns) eb.insert(c);
  auto x = eb.solve(phi.to_sparse());
  if (!x) return std::nullopt;
  if (!constraint) return Cochain::from_vector(n - 1, d, m, *x);
  Cochain psi(n - 1, d, m);
  for (const auto& [i, q] : x->entries()) psi += q * (*constraint)[i];
  return psi;
}

struct DerivationDims {
  std::size_t derivations = 0;
  std::size_t inner = 0;
};

/// Der(A, N) = ker delta_1, InnDer(A, N) = im delta_0.
inline DerivationDims derivation_quotient(const FiniteDimAlgebra& a, const Bimodule& nmod) {
  SparseMatrix d1 = differential_matrix(a, nmod, 1);
  SparseMatrix d0 = differential_matrix(a, nmod, 0);
  return {d1.cols() - rank(d1), rank(d0)};
}

}  // namespace hochschild
