#pragma once

// Bridge between the polynomial backend and the finite-dimensional one:
// Q[x_1..x_n]/(x_1..x_n)^D with its monomial basis.

#include <cstddef>
#include <map>
#include <vector>

#include "hochschild/algebra.hpp"
#include "hochschild/cochain.hpp"
#include "hochschild/multidiff.hpp"
#include "hochschild/poly.hpp"

namespace hochschild {

/// Monomials of degree < D, in the order of exponents_up_to.
inline std::vector<Exponents> truncated_monomials(std::size_t n_vars, unsigned bound) {
  if (bound == 0) throw DimensionMismatch("truncation degree must be positive");
  return exponents_up_to(n_vars, bound - 1);
}

inline FiniteDimAlgebra truncated_polynomial_algebra(std::size_t n_vars, unsigned bound) {
  auto monos = truncated_monomials(n_vars, bound);
  const std::size_t d = monos.size();
  std::map<Exponents, std::size_t> pos;
  for (std::size_t i = 0; i < d; ++i) pos[monos[i]] = i;
  StructureTensor s(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Exponents e(n_vars);
      for (std::size_t v = 0; v < n_vars; ++v) e[v] = monos[i][v] + monos[j][v];
      auto it = pos.find(e);
      if (it != pos.end()) s[i][j][it->second] = 1;
    }
  return make_algebra(s, basis_vector(d, 0));
}

/// True when every term's coefficient vanishes to order >= the total number of
/// derivatives, so phi maps the ideal (x)^D into itself.
inline bool preserves_filtration(const MultiDiffCochain& phi) {
  for (const auto& [slots, c] : phi.terms()) {
    unsigned orders = 0;
    for (const auto& a : slots) orders += total_degree(a);
    if (c.low_degree() < orders) return false;
  }
  return true;
}

/// The cochain induced on Q[x]/(x)^D, evaluated on basis monomials.
inline Cochain to_truncated_cochain(const MultiDiffCochain& phi, unsigned bound) {
  if (!preserves_filtration(phi))
    throw DimensionMismatch("cochain does not preserve the (x)-adic filtration; it does not descend to the truncation");
  const std::size_t n = phi.n_vars(), k = phi.degree();
  auto monos = truncated_monomials(n, bound);
  const std::size_t d = monos.size();
  std::map<Exponents, std::size_t> pos;
  for (std::size_t i = 0; i < d; ++i) pos[monos[i]] = i;
  Cochain out(k, d, d);
  const std::size_t tuples = out.size() / d;
  std::vector<Poly> args(k, Poly(n));
  for (std::size_t t = 0; t < tuples; ++t) {
    auto digits = detail::tuple_digits(t, d, k);
    for (std::size_t s = 0; s < k; ++s) args[s] = Poly::monomial(monos[digits[s]]);
    Poly value = truncate_degree(apply_multidiff(phi, args), bound);
    for (const auto& [e, q] : value.terms()) out.at(t, pos.at(e)) = q;
  }
  return out;
}

}  // namespace hochschild
