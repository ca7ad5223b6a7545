#pragma once

// Multidifferential Hochschild cochains on the polynomial algebra Q[x_1..x_n],
// manipulated at the level of symbols.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hochschild/errors.hpp"
#include "hochschild/linear_action.hpp"
#include "hochschild/poly.hpp"
#include "hochschild/rational.hpp"

namespace hochschild {

/// One derivative multi-index per argument slot.
using SlotSymbols = std::vector<Exponents>;

/// phi(f_1..f_k) = sum over terms  coeff * d^{a_1} f_1 * ... * d^{a_k} f_k.
class MultiDiffCochain {
 public:
  using Terms = std::map<SlotSymbols, Poly>;

  MultiDiffCochain(std::size_t degree = 0, std::size_t n_vars = 0) : k_(degree), n_(n_vars) {}

  /// mu_0(f, g) = f g
  static MultiDiffCochain multiplication(std::size_t n_vars) {
    MultiDiffCochain mu(2, n_vars);
    mu.add_term({Exponents(n_vars, 0), Exponents(n_vars, 0)}, Poly::constant(n_vars, Rational(1)));
    return mu;
  }

  /// Degree-0 cochain: an element of the algebra.
  static MultiDiffCochain element(const Poly& p) {
    MultiDiffCochain c(0, p.n_vars());
    c.add_term({}, p);
    return c;
  }

  std::size_t degree() const { return k_; }
  std::size_t n_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SlotSymbols& slots, const Poly& coeff) {
    if (slots.size() != k_) throw ArityMismatch("term has " + std::to_string(slots.size()) + " slots, cochain has degree " + std::to_string(k_));
    if (coeff.n_vars() != n_) throw VariableCountMismatch("coefficient has the wrong variable count");
    for (const auto& a : slots)
      if (a.size() != n_) throw VariableCountMismatch("derivative multi-index has the wrong length");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(slots, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Largest derivative order over all slots (0 for the zero cochain).
  unsigned max_order() const {
    unsigned r = 0;
    for (const auto& [slots, c] : terms_)
      for (const auto& a : slots) r = std::max(r, total_degree(a));
    return r;
  }

  unsigned slot_order(std::size_t slot) const {
    unsigned r = 0;
    for (const auto& [slots, c] : terms_) r = std::max(r, total_degree(slots.at(slot)));
    return r;
  }

  /// Largest total degree of a coefficient.
  unsigned coefficient_degree() const {
    unsigned r = 0;
    for (const auto& [slots, c] : terms_) r = std::max(r, c.degree());
    return r;
  }

  MultiDiffCochain& operator+=(const MultiDiffCochain& o) {
    check(o);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }
  MultiDiffCochain& operator-=(const MultiDiffCochain& o) {
    check(o);
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
  }
  MultiDiffCochain& operator*=(const Rational& q) {
    if (sgn(q) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [s, c] : terms_) c *= q;
    return *this;
  }
  friend MultiDiffCochain operator+(MultiDiffCochain a, const MultiDiffCochain& b) { return a += b; }
  friend MultiDiffCochain operator-(MultiDiffCochain a, const MultiDiffCochain& b) { return a -= b; }
  friend MultiDiffCochain operator-(MultiDiffCochain a) { return a *= Rational(-1); }
  friend MultiDiffCochain operator*(const Rational& q, MultiDiffCochain a) { return a *= q; }

  friend bool operator==(const MultiDiffCochain& a, const MultiDiffCochain& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void check(const MultiDiffCochain& o) const {
    if (o.k_ != k_) throw ArityMismatch("cochains have different degrees");
    if (o.n_ != n_) throw VariableCountMismatch("cochains have different variable counts");
  }

  std::size_t k_;
  std::size_t n_;
  Terms terms_;
};

inline MultiDiffCochain zero_cochain(std::size_t degree, std::size_t n_vars) { return MultiDiffCochain(degree, n_vars); }

namespace detail {

/// Calls f(pieces, multinomial) for every way of writing alpha as an ordered
/// sum of `parts` multi-indices; the weight is prod_v alpha_v! / prod_j gamma_{j,v}!.
inline void for_each_split(const Exponents& alpha, std::size_t parts,
                           const std::function<void(const std::vector<Exponents>&, const Rational&)>& f) {
  const std::size_t n = alpha.size();
  std::vector<Exponents> pieces(parts, Exponents(n, 0));
  // per variable, enumerate compositions of alpha[v] into `parts` parts
  std::function<void(std::size_t, std::size_t, unsigned, Rational)> rec = [&](std::size_t v, std::size_t j, unsigned left,
                                                                             Rational w) {
    if (v == n) {
      f(pieces, w);
      return;
    }
    if (j + 1 == parts) {
      pieces[j][v] = left;
      Rational w2 = w * factorial(alpha[v]) / factorial(left);
      // divide by the other parts' factorials accumulated in w already
      rec(v + 1, 0, v + 1 < n ? alpha[v + 1] : 0, w2);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      pieces[j][v] = k;
      rec(v, j + 1, left - k, w / factorial(k));
    }
  };
  if (parts == 0) {
    if (total_degree(alpha) == 0) f(pieces, Rational(1));
    return;
  }
  rec(0, 0, n > 0 ? alpha[0] : 0, Rational(1));
}

inline Exponents add(const Exponents& a, const Exponents& b) {
  Exponents e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
  return e;
}

}  // namespace detail

/// sum over terms  coeff * prod_s d^{a_s} f_s
inline Poly apply_multidiff(const MultiDiffCochain& phi, std::span<const Poly> args) {
  if (args.size() != phi.degree())
    throw ArityMismatch("cochain of degree " + std::to_string(phi.degree()) + " applied to " + std::to_string(args.size()) + " arguments");
  for (const auto& f : args)
    if (f.n_vars() != phi.n_vars()) throw VariableCountMismatch("argument has the wrong variable count");
  Poly out(phi.n_vars());
  for (const auto& [slots, coeff] : phi.terms()) {
    Poly term = coeff;
    for (std::size_t s = 0; s < slots.size() && !term.is_zero(); ++s) term = term * derivative(args[s], slots[s]);
    out += term;
  }
  return out;
}

inline Poly apply_multidiff(const MultiDiffCochain& phi, std::initializer_list<Poly> args) {
  return apply_multidiff(phi, std::span<const Poly>(args.begin(), args.size()));
}

/// Symbol of the Hochschild differential, by Leibniz expansion of the
/// inner products.
inline MultiDiffCochain poly_differential(const MultiDiffCochain& phi) {
  const std::size_t k = phi.degree(), n = phi.n_vars();
  MultiDiffCochain out(k + 1, n);
  const Exponents zero(n, 0);
  const Rational last = (k % 2 == 0) ? Rational(-1) : Rational(1);
  for (const auto& [slots, coeff] : phi.terms()) {
    SlotSymbols key;
    key.reserve(k + 1);
    // f_0 . phi(f_1..f_k)
    key.push_back(zero);
    key.insert(key.end(), slots.begin(), slots.end());
    out.add_term(key, coeff);
    // (-1)^{k+1} phi(f_0..f_{k-1}) . f_k
    key.assign(slots.begin(), slots.end());
    key.push_back(zero);
    out.add_term(key, last * coeff);
    // (-1)^{i+1} phi(.., f_i f_{i+1}, ..)
    for (std::size_t i = 0; i < k; ++i) {
      Rational sign = (i % 2 == 0) ? Rational(-1) : Rational(1);
      detail::for_each_split(slots[i], 2, [&](const std::vector<Exponents>& parts, const Rational& w) {
        SlotSymbols kk;
        kk.reserve(k + 1);
        kk.insert(kk.end(), slots.begin(), slots.begin() + i);
        kk.push_back(parts[0]);
        kk.push_back(parts[1]);
        kk.insert(kk.end(), slots.begin() + i + 1, slots.end());
        out.add_term(kk, (sign * w) * coeff);
      });
    }
  }
  return out;
}

/// phi o_slot psi (slot 1-based): psi inserted into argument `slot` of phi.
inline MultiDiffCochain partial_composition(const MultiDiffCochain& phi, const MultiDiffCochain& psi, std::size_t slot) {
  const std::size_t p = phi.degree(), q = psi.degree(), n = phi.n_vars();
  if (psi.n_vars() != n) throw VariableCountMismatch("cochains have different variable counts");
  if (slot < 1 || slot > p) throw ArityMismatch("composition slot out of range");
  MultiDiffCochain out(p + q - 1, n);
  for (const auto& [as, c] : phi.terms()) {
    const Exponents& alpha = as[slot - 1];
    for (const auto& [bs, d] : psi.terms()) {
      detail::for_each_split(alpha, q + 1, [&](const std::vector<Exponents>& parts, const Rational& w) {
        Poly dc = derivative(d, parts[0]);
        if (dc.is_zero()) return;
        SlotSymbols key;
        key.reserve(p + q - 1);
        key.insert(key.end(), as.begin(), as.begin() + (slot - 1));
        for (std::size_t j = 0; j < q; ++j) key.push_back(detail::add(bs[j], parts[j + 1]));
        key.insert(key.end(), as.begin() + slot, as.end());
        out.add_term(key, w * (c * dc));
      });
    }
  }
  return out;
}

inline MultiDiffCochain gerstenhaber_composition(const MultiDiffCochain& phi, const MultiDiffCochain& psi) {
  const std::size_t p = phi.degree(), q = psi.degree();
  if (p + q == 0) throw ArityMismatch("composition of two degree-0 cochains has negative degree");
  MultiDiffCochain out(p + q - 1, phi.n_vars());
  for (std::size_t i = 1; i <= p; ++i) {
    bool odd = ((i - 1) % 2 == 1) && (q % 2 == 0);
    if (odd)
      out -= partial_composition(phi, psi, i);
    else
      out += partial_composition(phi, psi, i);
  }
  return out;
}

/// [phi, psi] = phi o psi - (-1)^{(p-1)(q-1)} psi o phi
inline MultiDiffCochain gerstenhaber_bracket(const MultiDiffCochain& phi, const MultiDiffCochain& psi) {
  if (phi.n_vars() != psi.n_vars()) throw VariableCountMismatch("cochains have different variable counts");
  bool odd = (phi.degree() % 2 == 0) && (psi.degree() % 2 == 0);
  MultiDiffCochain a = gerstenhaber_composition(phi, psi);
  MultiDiffCochain b = gerstenhaber_composition(psi, phi);
  return odd ? a + b : a - b;
}

inline constexpr std::size_t kMaxSkewDegree = 6;

/// (1/k!) sum_sigma sgn(sigma) phi(f_{sigma(1)}, ..., f_{sigma(k)})
inline MultiDiffCochain skew_symmetrize(const MultiDiffCochain& phi) {
  const std::size_t k = phi.degree();
  if (k > kMaxSkewDegree) throw ResourceLimit("skew-symmetrization is capped at degree " + std::to_string(kMaxSkewDegree));
  MultiDiffCochain out(k, phi.n_vars());
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  const Rational scale = 1 / factorial(static_cast<unsigned>(k));
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational w = (inversions % 2 == 0) ? scale : Rational(-scale);
    for (const auto& [slots, c] : phi.terms()) {
      SlotSymbols key(k);
      for (std::size_t s = 0; s < k; ++s) key[perm[s]] = slots[s];
      out.add_term(key, w * c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// (g . phi)(f_1..f_k) = g . phi(g^{-1} . f_1, ..., g^{-1} . f_k). Coefficients
/// are pulled back by g^{-1}; each symbol d_j becomes sum_l g(l, j) d_l.
inline MultiDiffCochain act_matrix(const Matrix& g, const Matrix& g_inv, const MultiDiffCochain& phi) {
  const std::size_t n = phi.n_vars(), k = phi.degree();
  if (g.rows() != n || g.cols() != n) throw VariableCountMismatch("cochain and matrix have different variable counts");
  auto symbol_images = detail::linear_images(g.transpose());
  std::map<Exponents, Poly> symbol_cache;
  auto transformed_symbol = [&](const Exponents& a) -> const Poly& {
    auto it = symbol_cache.find(a);
    if (it == symbol_cache.end()) it = symbol_cache.emplace(a, substitute(Poly::monomial(a), symbol_images, n)).first;
    return it->second;
  };
  MultiDiffCochain out(k, n);
  for (const auto& [slots, c] : phi.terms()) {
    Poly coeff = act_matrix(g_inv, c);
    // expand the tensor product of the transformed slot symbols
    std::vector<const Poly*> factors;
    for (const auto& a : slots) factors.push_back(&transformed_symbol(a));
    SlotSymbols key(k);
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t s, Rational w) {
      if (s == k) {
        out.add_term(key, w * coeff);
        return;
      }
      for (const auto& [e, q] : factors[s]->terms()) {
        key[s] = e;
        rec(s + 1, w * q);
      }
    };
    rec(0, Rational(1));
  }
  return out;
}

inline MultiDiffCochain act_linear(const LinearAction& action, std::size_t g, const MultiDiffCochain& phi) {
  if (phi.n_vars() != action.n_vars()) throw VariableCountMismatch("cochain and action have different variable counts");
  if (g >= action.order()) throw BadElementIndex("group element index out of range");
  return act_matrix(action.element(g), action.element_inverse(g), phi);
}

/// Reynolds average over a finite linear group.
inline MultiDiffCochain average_linear(const LinearAction& action, const MultiDiffCochain& phi) {
  MultiDiffCochain out(phi.degree(), phi.n_vars());
  for (std::size_t g = 0; g < action.order(); ++g) out += act_linear(action, g, phi);
  out *= Rational(1, static_cast<unsigned long>(action.order()));
  return out;
}

inline bool is_invariant(const LinearAction& action, const MultiDiffCochain& phi) {
  for (auto g : action.generators())
    if (!(act_linear(action, g, phi) == phi)) return false;
  return true;
}

/// e.g. "(x0^2) d(1,0)|d(0,1) + ..."
inline std::string to_string(const MultiDiffCochain& phi) {
  if (phi.is_zero()) return "0";
  std::string s;
  for (const auto& [slots, c] : phi.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      s += i == 0 ? " d(" : "|d(";
      for (std::size_t v = 0; v < slots[i].size(); ++v) s += (v ? "," : "") + std::to_string(slots[i][v]);
      s += ")";
    }
  }
  return s;
}

}  // namespace hochschild
