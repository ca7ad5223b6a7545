#pragma once

// Exact linear algebra over the rationals: dense matrices, sparse vectors and
// an incremental echelon basis that doubles as kernel/image/solve engine.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Sparse vector with strictly increasing indices and no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;

  static SparseVector unit(std::size_t i) {
    SparseVector v;
    v.entries_.emplace_back(i, Rational(1));
    return v;
  }

  static SparseVector from_dense(const std::vector<Rational>& d) {
    SparseVector v;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (sgn(d[i]) != 0) v.entries_.emplace_back(i, d[i]);
    return v;
  }

  std::vector<Rational> to_dense(std::size_t n) const {
    std::vector<Rational> d(n);
    for (const auto& [i, q] : entries_) {
      if (i >= n) throw DimensionMismatch("sparse index beyond dense length");
      d[i] = q;
    }
    return d;
  }

  /// Appends an entry; indices must arrive in strictly increasing order.
  void push_back(std::size_t i, Rational q) {
    if (sgn(q) != 0) entries_.emplace_back(i, std::move(q));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Rational get(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : Rational(0);
  }

  /// this += a * other
  void axpy(const Rational& a, const SparseVector& other) {
    if (sgn(a) == 0 || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto p = entries_.begin();
    auto q = other.entries_.begin();
    while (p != entries_.end() || q != other.entries_.end()) {
      if (q == other.entries_.end() || (p != entries_.end() && p->first < q->first)) {
        merged.push_back(std::move(*p++));
      } else if (p == entries_.end() || q->first < p->first) {
        merged.emplace_back(q->first, a * q->second);
        ++q;
      } else {
        Rational s = p->second + a * q->second;
        if (sgn(s) != 0) merged.emplace_back(p->first, std::move(s));
        ++p;
        ++q;
      }
    }
    entries_ = std::move(merged);
  }

  void scale(const Rational& a) {
    if (sgn(a) == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second *= a;
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Column-major sparse matrix.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseVector> columns;

  std::size_t cols() const { return columns.size(); }

  Matrix to_dense() const {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [i, q] : columns[j].entries()) m(i, j) = q;
    return m;
  }

  static SparseMatrix from_dense(const Matrix& m) {
    SparseMatrix s;
    s.rows = m.rows();
    for (std::size_t j = 0; j < m.cols(); ++j) s.columns.push_back(SparseVector::from_dense(m.column(j)));
    return s;
  }

  SparseVector apply(const SparseVector& x) const {
    SparseVector out;
    for (const auto& [j, q] : x.entries()) out.axpy(q, columns.at(j));
    return out;
  }
};

/// Incremental row-echelon basis of a subspace of Q^dim.
///
/// Every stored vector has a pivot (its first nonzero index) normalized to 1,
/// and carries the combination of inserted inputs that produced it. Pivoting
/// is by first nonzero entry, so results depend only on insertion order.
class EchelonBasis {
 public:
  struct Reduction {
    SparseVector residual;
    /// residual = input + sum_k combo[k] * (k-th inserted vector)
    SparseVector combo;
  };

  /// Reduces v against the basis.
  Reduction reduce(SparseVector v) const {
    SparseVector combo;
    std::size_t pos = 0;
    while (true) {
      const auto& es = v.entries();
      auto it = std::lower_bound(es.begin(), es.end(), pos,
                                 [](const SparseVector::Entry& e, std::size_t k) { return e.first < k; });
      std::unordered_map<std::size_t, std::size_t>::const_iterator piv = pivot_row_.end();
      for (; it != es.end(); ++it) {
        piv = pivot_row_.find(it->first);
        if (piv != pivot_row_.end()) break;
      }
      if (it == es.end()) break;
      std::size_t idx = it->first;
      Rational coef = -it->second;
      const Row& row = rows_[piv->second];
      v.axpy(coef, row.vec);
      combo.axpy(coef, row.combo);
      pos = idx + 1;
    }
    return {std::move(v), std::move(combo)};
  }

  /// Inserts the next input vector. Returns the reduction; its residual is
  /// zero iff the input was dependent, in which case combo (plus the input's
  /// own unit coefficient) is a linear relation among inputs.
  Reduction insert(const SparseVector& v) {
    std::size_t id = inputs_++;
    Reduction r = reduce(v);
    r.combo.axpy(Rational(1), SparseVector::unit(id));
    if (!r.residual.empty()) {
      std::size_t pivot = r.residual.entries().front().first;
      Rational inv = 1 / r.residual.entries().front().second;
      Row row{r.residual, r.combo};
      row.vec.scale(inv);
      row.combo.scale(inv);
      pivot_row_.emplace(pivot, rows_.size());
      rows_.push_back(std::move(row));
      pivots_.push_back(pivot);
      independent_inputs_.push_back(id);
    }
    return r;
  }

  /// Coefficients x over inserted inputs with sum_k x_k input_k = b, if any.
  std::optional<SparseVector> solve(const SparseVector& b) const {
    Reduction r = reduce(b);
    if (!r.residual.empty()) return std::nullopt;
    r.combo.scale(Rational(-1));
    return r.combo;
  }

  bool contains(const SparseVector& b) const { return reduce(b).residual.empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t inputs() const { return inputs_; }
  const std::vector<std::size_t>& independent_inputs() const { return independent_inputs_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const SparseVector& basis_vector(std::size_t r) const { return rows_.at(r).vec; }

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  std::vector<Row> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> independent_inputs_;
  std::unordered_map<std::size_t, std::size_t> pivot_row_;
  std::size_t inputs_ = 0;
};

/// Kernel basis of a sparse matrix, in column coordinates. One vector per
/// dependent column, in column order.
inline std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  EchelonBasis eb;
  std::vector<SparseVector> ker;
  for (const auto& col : m.columns) {
    auto r = eb.insert(col);
    if (r.residual.empty()) ker.push_back(std::move(r.combo));
  }
  return ker;
}

inline std::size_t rank(const SparseMatrix& m) {
  EchelonBasis eb;
  for (const auto& col : m.columns) eb.insert(col);
  return eb.rank();
}

inline std::size_t rank(const Matrix& m) { return rank(SparseMatrix::from_dense(m)); }

inline std::vector<SparseVector> kernel_basis(const Matrix& m) { return kernel_basis(SparseMatrix::from_dense(m)); }

/// Stacks matrices with equal column counts on top of each other.
inline Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  std::size_t cols = blocks.front().cols(), rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionMismatch("vstack column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  std::size_t n = m.rows();
  // Gauss-Jordan on [m | I], rows as working vectors.
  Matrix a = m, inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational s = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline Rational determinant(const Matrix& m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  std::size_t n = m.rows();
  Matrix a = m;
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Fraction-free (Bareiss) elimination on an integer-scaled copy; returns
/// the rank. Independent of EchelonBasis, used as a cross-check route.
inline std::size_t bareiss_rank(const Matrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace hochschild
