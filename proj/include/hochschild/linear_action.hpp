#pragma once

// Finite subgroups of GL_n(Q) acting on polynomials by (g . f)(v) = f(g^{-1} v).

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/linalg.hpp"
#include "hochschild/poly.hpp"

namespace hochschild {

class LinearAction {
 public:
  std::size_t n_vars() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const Matrix& element(std::size_t g) const { return elements_.at(g); }
  const Matrix& element_inverse(std::size_t g) const { return inverses_.at(g); }
  std::size_t product(std::size_t g, std::size_t h) const { return table_.at(g).at(h); }
  const std::vector<std::vector<std::size_t>>& mult_table() const { return table_; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  std::size_t identity_index() const { return 0; }

  /// Index of a matrix in the group, or order() if absent.
  std::size_t find(const Matrix& m) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i] == m) return i;
    return elements_.size();
  }

 private:
  friend LinearAction make_linear_action(std::size_t, const std::vector<Matrix>&, std::size_t);
  std::size_t n_ = 0;
  std::vector<Matrix> elements_, inverses_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> generators_;
};

/// Closes the generators into a finite group (identity first, breadth-first).
inline LinearAction make_linear_action(std::size_t n_vars, const std::vector<Matrix>& generators,
                                       std::size_t max_order = 1024) {
  LinearAction act;
  act.n_ = n_vars;
  for (const auto& g : generators) {
    if (g.rows() != n_vars || g.cols() != n_vars) throw DimensionMismatch("linear action matrices must be n x n");
    if (!inverse(g)) throw InvalidGroupAction("linear action generator is not invertible");
  }
  act.elements_.push_back(Matrix::identity(n_vars));
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t g = frontier.front();
    frontier.pop_front();
    for (const auto& s : generators) {
      Matrix e = act.elements_[g] * s;
      if (act.find(e) == act.elements_.size()) {
        if (act.elements_.size() >= max_order)
          throw ResourceLimit("linear group exceeds " + std::to_string(max_order) + " elements (infinite order?)");
        act.elements_.push_back(std::move(e));
        frontier.push_back(act.elements_.size() - 1);
      }
    }
  }
  const std::size_t order = act.elements_.size();
  act.table_.assign(order, std::vector<std::size_t>(order));
  for (std::size_t g = 0; g < order; ++g) {
    act.inverses_.push_back(*inverse(act.elements_[g]));
    for (std::size_t h = 0; h < order; ++h) act.table_[g][h] = act.find(act.elements_[g] * act.elements_[h]);
  }
  for (const auto& s : generators) act.generators_.push_back(act.find(s));
  return act;
}

namespace detail {

/// Images of the variables under v -> m v, i.e. x_j -> sum_l m(j, l) x_l.
inline std::vector<Poly> linear_images(const Matrix& m) {
  std::vector<Poly> images;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    Poly p(m.cols());
    for (std::size_t l = 0; l < m.cols(); ++l) p.add_term(unit_exponents(m.cols(), l), m(j, l));
    images.push_back(std::move(p));
  }
  return images;
}

}  // namespace detail

/// (g . f)(v) = f(g^{-1} v) for a single invertible matrix g.
inline Poly act_matrix(const Matrix& g_inv, const Poly& f) {
  if (g_inv.rows() != f.n_vars() || g_inv.cols() != f.n_vars())
    throw VariableCountMismatch("polynomial and matrix have different variable counts");
  return substitute(f, detail::linear_images(g_inv), f.n_vars());
}

inline Poly act_linear(const LinearAction& action, std::size_t g, const Poly& f) {
  if (f.n_vars() != action.n_vars()) throw VariableCountMismatch("polynomial and action have different variable counts");
  if (g >= action.order()) throw BadElementIndex("group element index out of range");
  return act_matrix(action.element_inverse(g), f);
}

}  // namespace hochschild
