#pragma once

// Formal deformations mu_0 + l mu_1 + l^2 mu_2 + ... of the polynomial
// algebra, handled order by order as finite lists of bidifferential cochains.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/hkr.hpp"
#include "hochschild/linear_action.hpp"
#include "hochschild/multidiff.hpp"
#include "hochschild/polyvector.hpp"

namespace hochschild {

class FormalDeformation {
 public:
  /// mu_0 alone.
  explicit FormalDeformation(std::size_t n_vars = 0) : n_(n_vars) {}

  std::size_t n_vars() const { return n_; }
  std::size_t order() const { return terms_.size(); }
  const std::vector<MultiDiffCochain>& terms() const { return terms_; }
  const std::optional<LinearAction>& invariance() const { return invariance_; }

  /// mu_i; mu_0 is the multiplication, terms above the order are zero.
  MultiDiffCochain mu(std::size_t i) const {
    if (i == 0) return MultiDiffCochain::multiplication(n_);
    if (i <= terms_.size()) return terms_[i - 1];
    return MultiDiffCochain(2, n_);
  }

 private:
  friend FormalDeformation make_deformation(std::size_t, std::vector<MultiDiffCochain>, std::optional<LinearAction>);
  std::size_t n_;
  std::vector<MultiDiffCochain> terms_;
  std::optional<LinearAction> invariance_;
};

/// Validates degrees, variable counts and (if tagged) invariance of every term.
inline FormalDeformation make_deformation(std::size_t n_vars, std::vector<MultiDiffCochain> terms,
                                          std::optional<LinearAction> invariance = std::nullopt) {
  if (invariance && invariance->n_vars() != n_vars) throw VariableCountMismatch("invariance action has the wrong variable count");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].degree() != 2) throw ArityMismatch("mu_" + std::to_string(i + 1) + " is not a bidifferential cochain");
    if (terms[i].n_vars() != n_vars) throw VariableCountMismatch("mu_" + std::to_string(i + 1) + " has the wrong variable count");
    if (invariance && !is_invariant(*invariance, terms[i]))
      throw InvalidGroupAction("mu_" + std::to_string(i + 1) + " is not invariant under the tagged action");
  }
  FormalDeformation d(n_vars);
  d.terms_ = std::move(terms);
  d.invariance_ = std::move(invariance);
  return d;
}

inline FormalDeformation extend(const FormalDeformation& d, const MultiDiffCochain& next) {
  auto terms = d.terms();
  terms.push_back(next);
  return make_deformation(d.n_vars(), std::move(terms), d.invariance());
}

inline bool same_group(const LinearAction& a, const LinearAction& b) {
  if (a.n_vars() != b.n_vars() || a.order() != b.order()) return false;
  for (std::size_t g = 0; g < a.order(); ++g)
    if (b.find(a.element(g)) == b.order()) return false;
  return true;
}

/// l^j coefficient of mu(mu(f,g),h) - mu(f,mu(g,h)) = sum_{a+b=j} mu_a o mu_b.
inline MultiDiffCochain associativity_defect(const FormalDeformation& d, std::size_t j) {
  if (j < 1 || j > d.order())
    throw OrderOutOfRange("defect order " + std::to_string(j) + " outside 1.." + std::to_string(d.order()));
  MultiDiffCochain out(3, d.n_vars());
  for (std::size_t a = 0; a <= j; ++a) out += gerstenhaber_composition(d.mu(a), d.mu(j - a));
  return out;
}

inline bool associative_to_order(const FormalDeformation& d, std::size_t k) {
  for (std::size_t j = 1; j <= k; ++j)
    if (!associativity_defect(d, j).is_zero()) return false;
  return true;
}

/// R_{k+1} = -1/2 sum_{l=1}^{k} [mu_l, mu_{k+1-l}] for D associative to its order k.
inline MultiDiffCochain obstruction(const FormalDeformation& d) {
  const std::size_t k = d.order();
  for (std::size_t j = 1; j <= k; ++j)
    if (!associativity_defect(d, j).is_zero())
      throw NotAssociativeToOrder("deformation fails associativity at order " + std::to_string(j) + " (claimed order " +
                                  std::to_string(k) + ")");
  MultiDiffCochain r(3, d.n_vars());
  for (std::size_t l = 1; l <= k; ++l) r += gerstenhaber_bracket(d.mu(l), d.mu(k + 1 - l));
  r *= Rational(-1, 2);
  return r;
}

enum class ContinuationStatus { Continued, Obstructed };

inline const char* to_string(ContinuationStatus s) { return s == ContinuationStatus::Continued ? "continued" : "obstructed"; }

struct ContinuationResult {
  ContinuationStatus status = ContinuationStatus::Obstructed;
  MultiDiffCochain obstruction;
  /// mu_{k+1} on success
  std::optional<MultiDiffCochain> next;
  /// window of the successful solve, or the largest window tried
  TruncationBounds bounds;
  /// whether delta mu = -R has a solution among invariant cochains / among all cochains
  bool invariant_solvable = false;
  bool unconstrained_solvable = false;
  std::string diagnostic;
};

/// Solves delta mu_{k+1} = -R_{k+1} in the truncated window (invariant when the
/// deformation is tagged) and verifies the extended defect vanishes.
inline ContinuationResult continue_deformation(const FormalDeformation& d, const TruncationBounds& bounds) {
  ContinuationResult res;
  res.obstruction = obstruction(d);
  res.bounds = bounds;
  const LinearAction* act = d.invariance() ? &*d.invariance() : nullptr;
  MultiDiffCochain target = -res.obstruction;

  std::optional<std::pair<MultiDiffCochain, TruncationBounds>> sol;
  if (target.is_zero()) {
    sol = std::make_pair(MultiDiffCochain(2, d.n_vars()), bounds);
  } else {
    SolverCache cache(act);
    sol = solve_with_retry(target, bounds, cache);
  }
  std::optional<std::pair<MultiDiffCochain, TruncationBounds>> free_sol = sol;
  if (act && !sol) {
    SolverCache cache;
    free_sol = solve_with_retry(target, bounds, cache);
  }
  res.invariant_solvable = sol.has_value();
  res.unconstrained_solvable = free_sol.has_value();
  if (!sol) {
    res.bounds = bounds.doubled();
    res.diagnostic = std::string("no ") + (act ? "invariant " : "") + "solution of delta mu = -R within " +
                     to_string(res.bounds) + "; R is a nonzero class in the truncated " + (act ? "invariant " : "") +
                     "complex";
    if (act) res.diagnostic += free_sol ? "; a non-invariant solution exists" : "; no non-invariant solution either";
    return res;
  }
  res.bounds = sol->second;
  FormalDeformation extended = extend(d, sol->first);
  if (!associativity_defect(extended, extended.order()).is_zero())
    throw Error("continuation produced a nonzero associativity defect");
  res.status = ContinuationStatus::Continued;
  res.next = std::move(sol->first);
  return res;
}

inline ContinuationResult continue_deformation(const FormalDeformation& d) {
  return continue_deformation(d, bounds_for(obstruction(d)));
}

/// exp(l^{k+1}[T, .]) applied to D, cut at order k+1: mu'_{k+1} = mu_{k+1} + [T, mu_0].
inline FormalDeformation apply_equivalence(const FormalDeformation& d, const MultiDiffCochain& t, std::size_t k) {
  if (t.degree() != 1) throw ArityMismatch("equivalence generator must have degree 1");
  std::vector<MultiDiffCochain> terms;
  for (std::size_t j = 1; j <= k + 1; ++j) terms.push_back(d.mu(j));
  terms[k] += gerstenhaber_bracket(t, d.mu(0));
  auto tag = d.invariance();
  if (tag && !is_invariant(*tag, t)) tag.reset();
  return make_deformation(d.n_vars(), std::move(terms), std::move(tag));
}

enum class EquivalenceStatus { Found, NoEquivalenceWithinBounds };

inline const char* to_string(EquivalenceStatus s) {
  return s == EquivalenceStatus::Found ? "found" : "no_equivalence_within_bounds";
}

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::NoEquivalenceWithinBounds;
  std::optional<MultiDiffCochain> generator;
  /// HKR part of mu_{k+1} - mu~_{k+1}; nonzero certifies a nonzero class
  PolyvectorField residual_class;
  bool certified_nonzero = false;
  TruncationBounds bounds;
  std::string diagnostic;
};

/// For D, D~ agreeing through order k: finds T with delta T = mu_{k+1} - mu~_{k+1}.
inline EquivalenceResult equivalence_step(const FormalDeformation& d, const FormalDeformation& dt, std::size_t k,
                                          const TruncationBounds& bounds) {
  if (d.n_vars() != dt.n_vars()) throw VariableCountMismatch("deformations have different variable counts");
  for (std::size_t j = 1; j <= k; ++j)
    if (!(d.mu(j) == dt.mu(j)))
      throw OrderOutOfRange("deformations differ at order " + std::to_string(j) + " <= " + std::to_string(k));
  MultiDiffCochain diff = d.mu(k + 1) - dt.mu(k + 1);
  if (!poly_differential(diff).is_zero())
    throw NotACocycle("mu_{k+1} - mu~_{k+1} is not a cocycle; the inputs are not associative to order k+1");
  const LinearAction* act = nullptr;
  if (d.invariance() && dt.invariance() && same_group(*d.invariance(), *dt.invariance())) act = &*d.invariance();

  EquivalenceResult res;
  res.bounds = bounds;
  res.residual_class = polyvector_from_skew(skew_symmetrize(diff));
  res.certified_nonzero = !res.residual_class.is_zero();

  std::optional<std::pair<MultiDiffCochain, TruncationBounds>> sol;
  if (diff.is_zero()) {
    sol = std::make_pair(MultiDiffCochain(1, d.n_vars()), bounds);
  } else if (!res.certified_nonzero) {
    SolverCache cache(act);
    sol = solve_with_retry(diff, bounds, cache);
  }
  if (!sol) {
    res.bounds = bounds.doubled();
    res.diagnostic = res.certified_nonzero
                         ? "difference has nonzero HKR part " + to_string(res.residual_class) + "; not a coboundary"
                         : "no " + std::string(act ? "invariant " : "") + "T within " + to_string(res.bounds);
    return res;
  }
  res.bounds = sol->second;
  FormalDeformation moved = apply_equivalence(d, sol->first, k);
  for (std::size_t j = 1; j <= k + 1; ++j)
    if (!(moved.mu(j) == dt.mu(j))) throw Error("equivalence transformation does not reproduce the target deformation");
  res.status = EquivalenceStatus::Found;
  res.generator = std::move(sol->first);
  return res;
}

/// mu_k(f, g) = 1/(2^k k!) sum pi^{i_1 j_1} ... pi^{i_k j_k} d_{i_1..i_k} f d_{j_1..j_k} g
inline MultiDiffCochain moyal_term(std::size_t k, const Matrix& pi) {
  const std::size_t n = pi.rows();
  if (pi.cols() != n) throw DimensionMismatch("Poisson matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (pi(i, j) != -pi(j, i)) throw NotAntisymmetric("Poisson matrix is not antisymmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  if (k == 0) return MultiDiffCochain::multiplication(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(pi(i, j)) != 0) pairs.emplace_back(i, j);
  MultiDiffCochain out(2, n);
  Rational scale = 1 / factorial(static_cast<unsigned>(k));
  for (std::size_t i = 0; i < k; ++i) scale /= 2;
  std::vector<std::size_t> choice(k, 0);
  if (pairs.empty()) return out;
  while (true) {
    Exponents a(n, 0), b(n, 0);
    Rational w = scale;
    for (auto c : choice) {
      ++a[pairs[c].first];
      ++b[pairs[c].second];
      w *= pi(pairs[c].first, pairs[c].second);
    }
    out.add_term({a, b}, Poly::constant(n, w));
    std::size_t pos = k;
    while (pos > 0 && ++choice[pos - 1] == pairs.size()) choice[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

/// Moyal terms mu_1..mu_k as a deformation.
inline FormalDeformation moyal_deformation(const Matrix& pi, std::size_t k, std::optional<LinearAction> invariance = std::nullopt) {
  std::vector<MultiDiffCochain> terms;
  for (std::size_t i = 1; i <= k; ++i) terms.push_back(moyal_term(i, pi));
  return make_deformation(pi.rows(), std::move(terms), std::move(invariance));
}

}  // namespace hochschild
