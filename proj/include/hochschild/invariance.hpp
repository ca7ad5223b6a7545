#pragma once

// Cohomology of invariant cochains HH_G versus invariant classes (HH)^G, and
// the comparison map between them.

#include <cstddef>
#include <optional>
#include <vector>

#include "hochschild/cochain.hpp"
#include "hochschild/cohomology.hpp"
#include "hochschild/linalg.hpp"

namespace hochschild {

namespace detail {

inline void check_action(const GroupAction& action, const FiniteDimAlgebra& a, const Bimodule& nmod) {
  if (action.algebra_dim() != a.dim() || action.module_dim() != nmod.dim())
    throw DimensionMismatch("group action does not match the (algebra, bimodule) pair");
}

/// Basis of HC^n_G as the kernel of (average - id), in standard coordinates.
inline std::vector<SparseVector> invariant_coordinates(const GroupAction& action, std::size_t d, std::size_t m,
                                                       std::size_t n) {
  const std::size_t size = cochain_size(d, n, m);
  SparseMatrix proj;
  proj.rows = size;
  for (std::size_t j = 0; j < size; ++j) {
    Cochain e = Cochain::basis(n, d, m, j);
    proj.columns.push_back((average(action, e) - e).to_sparse());
  }
  return kernel_basis(proj);
}

}  // namespace detail

/// One degree of the invariant complex.
struct InvariantComplexSlice {
  std::size_t degree = 0;
  std::vector<Cochain> invariant_basis;
  /// delta restricted to HC^n_G, columns in HC^{n+1}_G coordinates.
  SparseMatrix restricted_differential;
};

inline InvariantComplexSlice invariant_subcomplex(const GroupAction& action, const FiniteDimAlgebra& a,
                                                  const Bimodule& nmod, std::size_t n) {
  detail::check_action(action, a, nmod);
  const std::size_t d = a.dim(), m = nmod.dim();
  auto here = detail::invariant_coordinates(action, d, m, n);
  auto next = detail::invariant_coordinates(action, d, m, n + 1);
  EchelonBasis next_basis;
  for (const auto& v : next) next_basis.insert(v);
  SparseMatrix delta = differential_matrix(a, nmod, n);

  InvariantComplexSlice slice;
  slice.degree = n;
  slice.restricted_differential.rows = next.size();
  for (const auto& v : here) {
    slice.invariant_basis.push_back(Cochain::from_vector(n, d, m, v));
    auto coords = next_basis.solve(delta.apply(v));
    if (!coords) throw InvalidGroupAction("differential does not preserve invariant cochains");
    slice.restricted_differential.columns.push_back(std::move(*coords));
  }
  return slice;
}

/// HH^n_G: cohomology of the invariant subcomplex, bases as full cochains.
inline CohomologySpace invariant_cohomology(const GroupAction& action, const FiniteDimAlgebra& a,
                                            const Bimodule& nmod, std::size_t n) {
  InvariantComplexSlice here = invariant_subcomplex(action, a, nmod, n);
  std::optional<InvariantComplexSlice> prev;
  if (n > 0) prev = invariant_subcomplex(action, a, nmod, n - 1);
  Subquotient sq = subquotient(here.restricted_differential, prev ? &prev->restricted_differential : nullptr);

  const std::size_t d = a.dim(), m = nmod.dim();
  auto expand = [&](const SparseVector& coords, const std::vector<Cochain>& basis, std::size_t deg) {
    Cochain c(deg, d, m);
    for (const auto& [i, q] : coords.entries()) c += q * basis[i];
    return c;
  };
  CohomologySpace hs;
  hs.degree = n;
  for (const auto& v : sq.cycles) hs.cocycle_basis.push_back(expand(v, here.invariant_basis, n));
  for (const auto& v : sq.boundaries) hs.coboundary_basis.push_back(expand(v, here.invariant_basis, n));
  for (const auto& v : sq.boundary_witnesses) hs.coboundary_witnesses.push_back(expand(v, prev->invariant_basis, n - 1));
  for (const auto& v : sq.representatives) hs.class_representatives.push_back(expand(v, here.invariant_basis, n));
  hs.dim = hs.class_representatives.size();
  return hs;
}

/// Expresses cocycles of degree n in the quotient basis of HH^n.
class ClassCoordinates {
 public:
  explicit ClassCoordinates(const CohomologySpace& hs) : boundaries_(hs.coboundary_basis.size()), dim_(hs.dim) {
    for (const auto& b : hs.coboundary_basis) basis_.insert(b.to_sparse());
    for (const auto& r : hs.class_representatives) basis_.insert(r.to_sparse());
  }

  /// Coordinates of the class of a cocycle; nullopt if it is not in ker delta.
  std::optional<std::vector<Rational>> of(const Cochain& cocycle) const {
    auto x = basis_.solve(cocycle.to_sparse());
    if (!x) return std::nullopt;
    std::vector<Rational> out(dim_);
    for (const auto& [i, q] : x->entries())
      if (i >= boundaries_) out[i - boundaries_] = q;
    return out;
  }

  bool is_coboundary(const Cochain& c) const {
    auto coords = of(c);
    if (!coords) return false;
    for (const auto& q : *coords)
      if (sgn(q) != 0) return false;
    return true;
  }

 private:
  EchelonBasis basis_;
  std::size_t boundaries_;
  std::size_t dim_;
};

/// (HH^n)^G: the classes fixed by the induced action.
struct InvariantClassSpace {
  std::size_t degree = 0;
  CohomologySpace classes;
  /// Induced action on HH^n in representative coordinates, one per generator.
  std::vector<Matrix> induced_generators;
  /// Basis of the fixed subspace, in representative coordinates.
  std::vector<std::vector<Rational>> fixed_coordinates;
  /// The same basis as cocycles.
  std::vector<Cochain> representatives;
  std::size_t dim = 0;
};

inline InvariantClassSpace invariant_classes(const GroupAction& action, const FiniteDimAlgebra& a,
                                             const Bimodule& nmod, std::size_t n) {
  detail::check_action(action, a, nmod);
  InvariantClassSpace out;
  out.degree = n;
  out.classes = cohomology(a, nmod, n);
  const CohomologySpace& hs = out.classes;
  ClassCoordinates coords(hs);
  const std::size_t h = hs.dim;

  std::vector<Matrix> blocks;
  for (auto g : action.generators()) {
    // well-definedness: coboundaries go to coboundaries, cocycles to cocycles
    for (const auto& b : hs.coboundary_basis)
      if (!coords.is_coboundary(act_on_cochain(action, g, b)))
        throw InvalidGroupAction("induced action does not preserve coboundaries");
    Matrix rho(h, h);
    for (std::size_t j = 0; j < h; ++j) {
      auto c = coords.of(act_on_cochain(action, g, hs.class_representatives[j]));
      if (!c) throw InvalidGroupAction("induced action does not preserve cocycles");
      for (std::size_t i = 0; i < h; ++i) rho(i, j) = (*c)[i];
    }
    out.induced_generators.push_back(rho);
    blocks.push_back(rho - Matrix::identity(h));
  }
  if (h > 0) {
    std::vector<SparseVector> fixed;
    if (blocks.empty()) {
      for (std::size_t i = 0; i < h; ++i) fixed.push_back(SparseVector::unit(i));
    } else {
      fixed = kernel_basis(vstack(blocks));
    }
    for (const auto& v : fixed) {
      auto dense = v.to_dense(h);
      Cochain rep(n, a.dim(), nmod.dim());
      for (std::size_t i = 0; i < h; ++i)
        if (sgn(dense[i]) != 0) rep += dense[i] * hs.class_representatives[i];
      out.fixed_coordinates.push_back(std::move(dense));
      out.representatives.push_back(std::move(rep));
    }
  }
  out.dim = out.fixed_coordinates.size();
  return out;
}

/// The comparison map iota: HH^n_G -> (HH^n)^G as an explicit matrix.
struct IotaReport {
  std::size_t degree = 0;
  std::size_t dim_HHG = 0;
  std::size_t dim_HH_classes_G = 0;
  /// dim_HH_classes_G x dim_HHG
  Matrix iota_matrix;
  std::size_t rank = 0;
  bool injective = false;
  bool surjective = false;
};

inline IotaReport iota_check(const GroupAction& action, const FiniteDimAlgebra& a, const Bimodule& nmod,
                             std::size_t n) {
  CohomologySpace hg = invariant_cohomology(action, a, nmod, n);
  InvariantClassSpace fixed = invariant_classes(action, a, nmod, n);
  ClassCoordinates coords(fixed.classes);

  IotaReport rep;
  rep.degree = n;
  rep.dim_HHG = hg.dim;
  rep.dim_HH_classes_G = fixed.dim;
  rep.iota_matrix = Matrix(fixed.dim, hg.dim);

  EchelonBasis fixed_basis;
  for (const auto& f : fixed.fixed_coordinates) fixed_basis.insert(SparseVector::from_dense(f));
  for (std::size_t j = 0; j < hg.dim; ++j) {
    auto c = coords.of(hg.class_representatives[j]);
    if (!c) throw InvalidGroupAction("invariant cocycle is not a cocycle");
    auto x = fixed_basis.solve(SparseVector::from_dense(*c));
    if (!x) throw InvalidGroupAction("class of an invariant cocycle is not fixed by the induced action");
    for (const auto& [i, q] : x->entries()) rep.iota_matrix(i, j) = q;
  }
  rep.rank = rank(rep.iota_matrix);
  rep.injective = rep.rank == rep.dim_HHG;
  rep.surjective = rep.rank == rep.dim_HH_classes_G;
  return rep;
}

/// Outcome of replaying the averaging argument on one invariant cochain.
struct InjectivityWitness {
  bool is_coboundary = false;
  bool constrained_solvable = false;
  bool average_is_witness = false;
};

/// For an invariant phi: if phi = delta psi for some psi, checks that a
/// solution exists inside HC_G and that average(psi) is one.
inline InjectivityWitness check_injectivity_mechanism(const GroupAction& action, const FiniteDimAlgebra& a,
                                                      const Bimodule& nmod, const Cochain& phi) {
  if (!is_invariant(action, phi)) throw InvalidGroupAction("cochain is not invariant");
  InjectivityWitness w;
  auto psi = solve_coboundary(a, nmod, phi);
  if (!psi) return w;
  w.is_coboundary = true;
  auto basis = invariant_subcomplex(action, a, nmod, phi.degree() - 1).invariant_basis;
  auto constrained = solve_coboundary(a, nmod, phi, &basis);
  w.constrained_solvable = constrained && differential(a, nmod, *constrained) == phi && is_invariant(action, *constrained);
  w.average_is_witness = differential(a, nmod, average(action, *psi)) == phi;
  return w;
}

}  // namespace hochschild
