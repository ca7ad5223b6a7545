#pragma once

// Invariant exterior algebra (Lambda^k g/h)^H of a Lie pair (g, h) with
// connected or finite isotropy.

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hochschild/algebra.hpp"
#include "hochschild/errors.hpp"
#include "hochschild/linalg.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

/// f[i][j][k]: [e_i, e_j] = sum_k f[i][j][k] e_k
using LieBrackets = std::vector<std::vector<std::vector<Rational>>>;

enum class IsotropyKind { Connected, FiniteGroup };

struct Isotropy {
  IsotropyKind kind = IsotropyKind::Connected;
  /// FiniteGroup: generators; the group is their closure.
  std::vector<Matrix> matrices;

  static Isotropy connected() { return {}; }
  static Isotropy finite(std::vector<Matrix> m) { return {IsotropyKind::FiniteGroup, std::move(m)}; }
};

class LiePair {
 public:
  std::size_t g_dim() const { return dim_; }
  std::size_t h_dim() const { return h_.size(); }
  const LieBrackets& brackets() const { return f_; }
  const std::vector<Vector>& h_basis() const { return h_; }
  const Isotropy& isotropy() const { return iso_; }
  /// FiniteGroup: every element of the generated group.
  const std::vector<Matrix>& group() const { return group_; }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (sgn(y[j]) == 0) continue;
        Rational w = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) out[k] += w * f_[i][j][k];
      }
    }
    return out;
  }

  /// ad(x) as a matrix: column j is [x, e_j].
  Matrix ad(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vector ej(dim_);
      ej[j] = 1;
      Vector v = bracket(x, ej);
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = v[k];
    }
    return m;
  }

 private:
  friend LiePair make_lie_pair(const LieBrackets&, const std::vector<Vector>&, const Isotropy&, std::size_t);
  std::size_t dim_ = 0;
  LieBrackets f_;
  std::vector<Vector> h_;
  Isotropy iso_;
  std::vector<Matrix> group_;
};

namespace detail {

inline Vector mat_vec(const Matrix& m, const Vector& v) {
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline bool in_span(const EchelonBasis& span, const Vector& v) {
  return span.contains(SparseVector::from_dense(v));
}

inline std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

}  // namespace detail

/// Validates antisymmetry, Jacobi, the subalgebra property and (finite case)
/// that every generator is an automorphism preserving h.
inline LiePair make_lie_pair(const LieBrackets& f, const std::vector<Vector>& h_basis, const Isotropy& iso,
                             std::size_t max_group_order = 4096) {
  const std::size_t d = f.size();
  for (const auto& row : f) {
    if (row.size() != d) throw DimensionMismatch("brackets must be a d x d x d array");
    for (const auto& v : row)
      if (v.size() != d) throw DimensionMismatch("brackets must be a d x d x d array");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (f[i][j][k] != -f[j][i][k])
          throw NotAntisymmetric("bracket is not antisymmetric at " + detail::triple(i, j, k));

  LiePair p;
  p.dim_ = d;
  p.f_ = f;
  auto e = [d](std::size_t i) {
    Vector v(d);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        Vector s = p.bracket(p.bracket(e(i), e(j)), e(k));
        Vector t = p.bracket(p.bracket(e(j), e(k)), e(i));
        Vector u = p.bracket(p.bracket(e(k), e(i)), e(j));
        for (std::size_t c = 0; c < d; ++c)
          if (sgn(s[c] + t[c] + u[c]) != 0) throw JacobiFails("Jacobi identity fails on basis triple " + detail::triple(i, j, k));
      }

  EchelonBasis hspan;
  for (const auto& v : h_basis) {
    if (v.size() != d) throw DimensionMismatch("h basis vector has the wrong length");
    if (hspan.insert(SparseVector::from_dense(v)).residual.empty()) throw DimensionMismatch("h basis is linearly dependent");
  }
  for (std::size_t a = 0; a < h_basis.size(); ++a)
    for (std::size_t b = a + 1; b < h_basis.size(); ++b)
      if (!detail::in_span(hspan, p.bracket(h_basis[a], h_basis[b])))
        throw NotSubalgebra("[h_" + std::to_string(a) + ", h_" + std::to_string(b) + "] is not in h");
  p.h_ = h_basis;
  p.iso_ = iso;

  if (iso.kind == IsotropyKind::FiniteGroup) {
    for (std::size_t g = 0; g < iso.matrices.size(); ++g) {
      const Matrix& m = iso.matrices[g];
      if (m.rows() != d || m.cols() != d) throw DimensionMismatch("isotropy matrix has the wrong size");
      if (!inverse(m)) throw NotAutomorphism("isotropy matrix " + std::to_string(g) + " is singular");
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (detail::mat_vec(m, p.bracket(e(i), e(j))) != p.bracket(m.column(i), m.column(j)))
            throw NotAutomorphism("isotropy matrix " + std::to_string(g) + " does not preserve [e_" + std::to_string(i) +
                                  ", e_" + std::to_string(j) + "]");
      for (const auto& v : h_basis)
        if (!detail::in_span(hspan, detail::mat_vec(m, v)))
          throw NotAutomorphism("isotropy matrix " + std::to_string(g) + " does not preserve h");
    }
    // closure
    p.group_.push_back(Matrix::identity(d));
    std::deque<std::size_t> frontier{0};
    auto find = [&](const Matrix& m) {
      for (std::size_t i = 0; i < p.group_.size(); ++i)
        if (p.group_[i] == m) return i;
      return p.group_.size();
    };
    while (!frontier.empty()) {
      std::size_t g = frontier.front();
      frontier.pop_front();
      for (const auto& s : iso.matrices) {
        Matrix x = p.group_[g] * s;
        if (find(x) == p.group_.size()) {
          if (p.group_.size() >= max_group_order) throw ResourceLimit("isotropy group is too large or infinite");
          p.group_.push_back(std::move(x));
          frontier.push_back(p.group_.size() - 1);
        }
      }
    }
  }
  return p;
}

/// Operators induced on g/h in the basis of a fixed complement.
struct QuotientData {
  std::size_t dim = 0;
  /// Connected: ad(h_a) on g/h; FiniteGroup: each generator on g/h.
  std::vector<Matrix> operators;
};

inline QuotientData quotient_operators(const LiePair& p) {
  const std::size_t d = p.g_dim(), r = p.h_dim(), q = d - r;
  // basis B = (h_1..h_r, c_1..c_q) with c's unit vectors completing h
  EchelonBasis span;
  Matrix b(d, d);
  for (std::size_t a = 0; a < r; ++a) {
    span.insert(SparseVector::from_dense(p.h_basis()[a]));
    for (std::size_t i = 0; i < d; ++i) b(i, a) = p.h_basis()[a][i];
  }
  std::size_t col = r;
  for (std::size_t i = 0; i < d && col < d; ++i)
    if (!span.insert(SparseVector::unit(i)).residual.empty()) b(i, col++) = 1;
  Matrix binv = *inverse(b);
  auto induced = [&](const Matrix& l) {
    Matrix lb = binv * l * b;
    Matrix out(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) out(i, j) = lb(r + i, r + j);
    return out;
  };
  QuotientData qd;
  qd.dim = q;
  if (p.isotropy().kind == IsotropyKind::Connected) {
    for (const auto& h : p.h_basis()) qd.operators.push_back(induced(p.ad(h)));
  } else {
    for (const auto& m : p.isotropy().matrices) qd.operators.push_back(induced(m));
  }
  return qd;
}

/// Increasing k-subsets of {0..q-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t q, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > q) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == q - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

/// Derivation extension of an operator to Lambda^k.
inline Matrix exterior_derivation(const Matrix& l, std::size_t k) {
  const std::size_t q = l.rows();
  auto subsets = k_subsets(q, k);
  std::map<std::vector<std::size_t>, std::size_t> pos;
  for (std::size_t i = 0; i < subsets.size(); ++i) pos[subsets[i]] = i;
  Matrix out(subsets.size(), subsets.size());
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    const auto& s = subsets[c];
    for (std::size_t slot = 0; slot < k; ++slot)
      for (std::size_t i = 0; i < q; ++i) {
        const Rational& w = l(i, s[slot]);
        if (sgn(w) == 0) continue;
        auto t = s;
        t[slot] = i;
        // sort with sign; repeated index kills the term
        bool odd = false, repeated = false;
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b + 1 < k - a; ++b)
            if (t[b] > t[b + 1]) {
              std::swap(t[b], t[b + 1]);
              odd = !odd;
            }
        for (std::size_t a = 0; a + 1 < k; ++a)
          if (t[a] == t[a + 1]) repeated = true;
        if (repeated) continue;
        out(pos.at(t), c) += odd ? Rational(-w) : w;
      }
  }
  return out;
}

/// Lambda^k of a matrix: entries are k x k minors.
inline Matrix compound_matrix(const Matrix& m, std::size_t k) {
  auto subsets = k_subsets(m.rows(), k);
  Matrix out(subsets.size(), subsets.size());
  for (std::size_t r = 0; r < subsets.size(); ++r)
    for (std::size_t c = 0; c < subsets.size(); ++c) {
      Matrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(subsets[r][i], subsets[c][j]);
      out(r, c) = determinant(minor);
    }
  return out;
}

inline constexpr std::size_t kMaxQuotientDim = 12;

/// dim (Lambda^k g/h)^H for k = 0..max_degree.
inline std::vector<std::size_t> invariant_exterior_dims(const LiePair& p, std::size_t max_degree) {
  const std::size_t q = p.g_dim() - p.h_dim();
  if (q > kMaxQuotientDim) throw ResourceLimit("dim g/h = " + std::to_string(q) + " exceeds " + std::to_string(kMaxQuotientDim));
  QuotientData qd = quotient_operators(p);
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    if (k > q) {
      dims.push_back(0);
      continue;
    }
    const std::size_t size = k_subsets(q, k).size();
    std::vector<Matrix> blocks;
    for (const auto& op : qd.operators) {
      if (p.isotropy().kind == IsotropyKind::Connected)
        blocks.push_back(exterior_derivation(op, k));
      else
        blocks.push_back(compound_matrix(op, k) - Matrix::identity(size));
    }
    dims.push_back(blocks.empty() ? size : size - rank(vstack(blocks)));
  }
  return dims;
}

namespace lie_algebras {

inline LieBrackets zero_brackets(std::size_t d) {
  return LieBrackets(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
}

/// [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
inline LieBrackets so3() {
  auto f = zero_brackets(3);
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    f[i][j][k] = 1;
    f[j][i][k] = -1;
  }
  return f;
}

/// [e1,e2]=e3, e3 central
inline LieBrackets heisenberg() {
  auto f = zero_brackets(3);
  f[0][1][2] = 1;
  f[1][0][2] = -1;
  return f;
}

}  // namespace lie_algebras

}  // namespace hochschild
