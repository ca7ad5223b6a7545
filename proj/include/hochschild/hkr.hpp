#pragma once

// Truncated solving of delta psi = phi for multidifferential cochains and the
// decomposition phi = U(X) + delta psi of polynomial cocycles.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/linalg.hpp"
#include "hochschild/linear_action.hpp"
#include "hochschild/multidiff.hpp"
#include "hochschild/polyvector.hpp"

namespace hochschild {

/// Window for truncated solves: per-slot derivative order and coefficient degree.
struct TruncationBounds {
  unsigned max_order = 2;
  unsigned max_coeff_degree = 2;

  TruncationBounds doubled() const { return {std::max(1u, 2 * max_order), std::max(1u, 2 * max_coeff_degree)}; }
  friend bool operator==(const TruncationBounds&, const TruncationBounds&) = default;
};

inline std::string to_string(const TruncationBounds& b) {
  return "(order <= " + std::to_string(b.max_order) + ", coefficient degree <= " + std::to_string(b.max_coeff_degree) + ")";
}

/// Cochain of a given degree as a coordinate vector over (slot symbols, coefficient monomial).
class SymbolIndexer {
 public:
  std::size_t index(const SlotSymbols& slots, const Exponents& mono) {
    auto [it, inserted] = ids_.try_emplace({slots, mono}, ids_.size());
    return it->second;
  }

  SparseVector encode(const MultiDiffCochain& phi) {
    std::map<std::size_t, Rational> entries;
    for (const auto& [slots, c] : phi.terms())
      for (const auto& [e, q] : c.terms()) entries[index(slots, e)] = q;
    SparseVector v;
    for (auto& [i, q] : entries) v.push_back(i, std::move(q));
    return v;
  }

  std::size_t size() const { return ids_.size(); }

 private:
  std::map<std::pair<SlotSymbols, Exponents>, std::size_t> ids_;
};

/// All monomial cochains coeff-monomial * d^{a_1} (x) ... (x) d^{a_k} inside the window.
inline std::vector<MultiDiffCochain> truncated_basis(std::size_t n_vars, std::size_t degree, const TruncationBounds& b) {
  auto orders = exponents_up_to(n_vars, b.max_order);
  auto monos = exponents_up_to(n_vars, b.max_coeff_degree);
  std::size_t count = monos.size();
  for (std::size_t s = 0; s < degree; ++s) {
    count *= orders.size();
    if (count > (1u << 16)) throw ResourceLimit("truncated cochain basis too large for window " + to_string(b));
  }
  std::vector<MultiDiffCochain> basis;
  basis.reserve(count);
  std::vector<std::size_t> digits(degree, 0);
  while (true) {
    SlotSymbols slots;
    for (auto d : digits) slots.push_back(orders[d]);
    for (const auto& m : monos) {
      MultiDiffCochain c(degree, n_vars);
      c.add_term(slots, Poly::monomial(m));
      basis.push_back(std::move(c));
    }
    std::size_t pos = degree;
    while (pos > 0 && ++digits[pos - 1] == orders.size()) digits[--pos] = 0;
    if (pos == 0) break;
  }
  return basis;
}

/// Solves delta psi = phi with psi of a fixed degree inside a window,
/// optionally among cochains invariant under a finite linear group.
class TruncatedCoboundarySolver {
 public:
  TruncatedCoboundarySolver(std::size_t n_vars, std::size_t psi_degree, const TruncationBounds& bounds,
                            const LinearAction* action = nullptr)
      : n_(n_vars), degree_(psi_degree), bounds_(bounds) {
    if (action && action->n_vars() != n_vars) throw VariableCountMismatch("action and cochains have different variable counts");
    auto raw = truncated_basis(n_vars, psi_degree, bounds);
    if (action) {
      SymbolIndexer idx;
      EchelonBasis span;
      for (const auto& b : raw) {
        MultiDiffCochain avg = average_linear(*action, b);
        if (avg.is_zero()) continue;
        if (!span.insert(idx.encode(avg)).residual.empty()) basis_.push_back(std::move(avg));
      }
    } else {
      basis_ = std::move(raw);
    }
    for (const auto& b : basis_) image_.insert(indexer_.encode(poly_differential(b)));
  }

  std::optional<MultiDiffCochain> solve(const MultiDiffCochain& phi) {
    if (phi.degree() != degree_ + 1) throw ArityMismatch("target has the wrong degree for this solver");
    if (phi.n_vars() != n_) throw VariableCountMismatch("target has the wrong variable count");
    auto x = image_.solve(indexer_.encode(phi));
    if (!x) return std::nullopt;
    MultiDiffCochain psi(degree_, n_);
    for (const auto& [i, q] : x->entries()) psi += q * basis_[i];
    return psi;
  }

  const TruncationBounds& bounds() const { return bounds_; }
  std::size_t basis_size() const { return basis_.size(); }

 private:
  std::size_t n_, degree_;
  TruncationBounds bounds_;
  std::vector<MultiDiffCochain> basis_;
  SymbolIndexer indexer_;
  EchelonBasis image_;
};

/// Reuses solvers across calls with the same (n, degree, window). All solves
/// through one cache share the same action (or none).
class SolverCache {
 public:
  explicit SolverCache(const LinearAction* action = nullptr) : action_(action) {}

  TruncatedCoboundarySolver& get(std::size_t n_vars, std::size_t psi_degree, const TruncationBounds& b) {
    auto key = std::make_tuple(n_vars, psi_degree, b.max_order, b.max_coeff_degree);
    auto it = solvers_.find(key);
    if (it == solvers_.end())
      it = solvers_.emplace(key, std::make_unique<TruncatedCoboundarySolver>(n_vars, psi_degree, b, action_)).first;
    return *it->second;
  }

  const LinearAction* action() const { return action_; }

 private:
  const LinearAction* action_;
  std::map<std::tuple<std::size_t, std::size_t, unsigned, unsigned>, std::unique_ptr<TruncatedCoboundarySolver>> solvers_;
};

/// Solve with one automatic retry at doubled bounds. Returns the solution and the window that produced it.
inline std::optional<std::pair<MultiDiffCochain, TruncationBounds>> solve_with_retry(const MultiDiffCochain& phi,
                                                                                     const TruncationBounds& bounds,
                                                                                     SolverCache& cache) {
  if (phi.degree() == 0) throw ArityMismatch("coboundary solving needs degree >= 1");
  for (const auto& b : {bounds, bounds.doubled()}) {
    auto psi = cache.get(phi.n_vars(), phi.degree() - 1, b).solve(phi);
    if (psi) return std::make_pair(std::move(*psi), b);
  }
  return std::nullopt;
}

/// Smallest window containing the symbols of phi.
inline TruncationBounds bounds_for(const MultiDiffCochain& phi) {
  return {std::max(1u, phi.max_order()), phi.coefficient_degree()};
}

/// Reads X off a skew-symmetric first-order symbol: X^I = k! * coefficient at the sorted unit tuple.
/// Throws if the symbol is not a first-order multiderivation.
inline PolyvectorField polyvector_from_skew(const MultiDiffCochain& skew) {
  const std::size_t k = skew.degree(), n = skew.n_vars();
  PolyvectorField x(k, n);
  const Rational kf = factorial(static_cast<unsigned>(k));
  for (const auto& [slots, c] : skew.terms()) {
    WedgeIndices idx;
    for (const auto& a : slots) {
      if (total_degree(a) != 1) {
        MultiDiffCochain witness(k, n);
        witness.add_term(slots, c);
        throw Error("skew-symmetrized cocycle is not a first-order multiderivation; offending term " + to_string(witness));
      }
      idx.push_back(static_cast<std::size_t>(std::find(a.begin(), a.end(), 1u) - a.begin()));
    }
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] >= idx[i + 1]) increasing = false;
    if (increasing) x.add(idx, kf * c);
  }
  if (!(hkr_map(x) == skew)) throw Error("skew-symmetrized cocycle is not of the form U(X)");
  return x;
}

struct HkrDecomposition {
  PolyvectorField field;
  MultiDiffCochain psi;
  /// window in which psi was found
  TruncationBounds bounds;
};

/// phi = U(X) + delta psi for a cocycle phi. X is read from the skew-symmetric
/// part; psi comes from a truncated solve (invariant when the cache carries an action).
inline HkrDecomposition hkr_decompose(const MultiDiffCochain& phi, const TruncationBounds& bounds, SolverCache& cache) {
  if (!poly_differential(phi).is_zero()) throw NotACocycle("hkr_decompose: input is not a Hochschild cocycle");
  HkrDecomposition out;
  out.bounds = bounds;
  out.field = polyvector_from_skew(skew_symmetrize(phi));
  if (phi.degree() == 0) {
    out.psi = MultiDiffCochain(0, phi.n_vars());
    return out;
  }
  MultiDiffCochain residual = phi - hkr_map(out.field);
  if (residual.is_zero()) {
    out.psi = MultiDiffCochain(phi.degree() - 1, phi.n_vars());
    return out;
  }
  auto sol = solve_with_retry(residual, bounds, cache);
  if (!sol)
    throw NoSolutionWithinBounds("no psi with delta psi = phi - U(X) within " + to_string(bounds.doubled()) +
                                 "; residual has order " + std::to_string(residual.max_order()) + ", coefficient degree " +
                                 std::to_string(residual.coefficient_degree()) + ", " +
                                 std::to_string(residual.terms().size()) + " terms");
  out.psi = std::move(sol->first);
  out.bounds = sol->second;
  return out;
}

inline HkrDecomposition hkr_decompose(const MultiDiffCochain& phi, const TruncationBounds& bounds,
                                      const LinearAction* action = nullptr) {
  SolverCache cache(action);
  return hkr_decompose(phi, bounds, cache);
}

inline HkrDecomposition hkr_decompose(const MultiDiffCochain& phi) { return hkr_decompose(phi, bounds_for(phi)); }

}  // namespace hochschild
