#pragma once

// Problem files: a JSON document {"kind": ..., "payload": {...}} decoded into
// engine objects, plus the encoders used by the reports.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hochschild/algebra.hpp"
#include "hochschild/cochain.hpp"
#include "hochschild/deformation.hpp"
#include "hochschild/hkr.hpp"
#include "hochschild/lie.hpp"
#include "hochschild/linear_action.hpp"
#include "hochschild/multidiff.hpp"
#include "hochschild/polyvector.hpp"
#include "hochschild/rational.hpp"
#include "json_format.hpp"

namespace hochschild::cli {

// ---------------------------------------------------------------- decoding

namespace read {

inline std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at(path, key) + ": missing required field");
  return *it;
}

inline const Json* optional_field(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void allow_only(const Json& obj, const std::set<std::string>& keys, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.count(it.key())) throw SchemaError(at(path, it.key()) + ": unknown field");
}

inline const Json& array(const Json& v, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!v.is_array()) throw SchemaError(path + ": expected an array");
  if (size && v.size() != *size)
    throw SchemaError(path + ": expected " + std::to_string(*size) + " entries, got " + std::to_string(v.size()));
  return v;
}

inline Rational rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw SchemaError(path + ": expected an integer or a \"p/q\" string");
}

inline std::size_t size(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw SchemaError(path + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline std::string string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path + ": expected a string");
  return v.get<std::string>();
}

inline Vector vector(const Json& v, const std::string& path, std::optional<std::size_t> n = std::nullopt) {
  array(v, path, n);
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], at(path, i)));
  return out;
}

inline Matrix matrix(const Json& v, const std::string& path, std::size_t rows, std::size_t cols) {
  array(v, path, rows);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vector r = vector(v[i], at(path, i), cols);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r[j];
  }
  return m;
}

inline std::vector<std::vector<Vector>> tensor(const Json& v, const std::string& path, std::size_t d) {
  array(v, path, d);
  std::vector<std::vector<Vector>> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    array(v[i], at(path, i), d);
    for (std::size_t j = 0; j < d; ++j) out[i].push_back(vector(v[i][j], at(at(path, i), j), d));
  }
  return out;
}

inline Exponents exponents(const Json& v, const std::string& path, std::size_t n) {
  array(v, path, n);
  Exponents e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(static_cast<unsigned>(size(v[i], at(path, i))));
  return e;
}

/// [{"exponents": [..], "coeff": q}, ...]
inline Poly poly(const Json& v, const std::string& path, std::size_t n) {
  array(v, path);
  Poly p(n);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string tp = at(path, t);
    allow_only(v[t], {"exponents", "coeff"}, tp);
    p.add_term(exponents(field(v[t], "exponents", tp), at(tp, "exponents"), n), rational(field(v[t], "coeff", tp), at(tp, "coeff")));
  }
  return p;
}

/// {"degree": k, "terms": [{"slots": [[..], ..], "coeff": poly}, ...]}
inline MultiDiffCochain multidiff(const Json& v, const std::string& path, std::size_t n) {
  allow_only(v, {"degree", "terms"}, path);
  const std::size_t k = size(field(v, "degree", path), at(path, "degree"));
  const Json& terms = array(field(v, "terms", path), at(path, "terms"));
  MultiDiffCochain phi(k, n);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tp = at(at(path, "terms"), t);
    allow_only(terms[t], {"slots", "coeff"}, tp);
    const Json& slots = array(field(terms[t], "slots", tp), at(tp, "slots"), k);
    SlotSymbols s;
    for (std::size_t i = 0; i < k; ++i) s.push_back(exponents(slots[i], at(at(tp, "slots"), i), n));
    phi.add_term(s, poly(field(terms[t], "coeff", tp), at(tp, "coeff"), n));
  }
  return phi;
}

/// {"degree": k, "components": [{"indices": [..], "coeff": poly}, ...]}
inline PolyvectorField polyvector(const Json& v, const std::string& path, std::size_t n) {
  allow_only(v, {"degree", "components"}, path);
  const std::size_t k = size(field(v, "degree", path), at(path, "degree"));
  const Json& comps = array(field(v, "components", path), at(path, "components"));
  PolyvectorField x(k, n);
  for (std::size_t t = 0; t < comps.size(); ++t) {
    const std::string tp = at(at(path, "components"), t);
    allow_only(comps[t], {"indices", "coeff"}, tp);
    const Json& idx = array(field(comps[t], "indices", tp), at(tp, "indices"), k);
    WedgeIndices w;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t v_i = size(idx[i], at(at(tp, "indices"), i));
      if (v_i >= n) throw SchemaError(at(at(tp, "indices"), i) + ": variable index out of range");
      w.push_back(v_i);
    }
    x.add(w, poly(field(comps[t], "coeff", tp), at(tp, "coeff"), n));
  }
  return x;
}

inline TruncationBounds bounds(const Json& v, const std::string& path) {
  allow_only(v, {"max_order", "max_coeff_degree"}, path);
  return {static_cast<unsigned>(size(field(v, "max_order", path), at(path, "max_order"))),
          static_cast<unsigned>(size(field(v, "max_coeff_degree", path), at(path, "max_coeff_degree")))};
}

/// {"generators": [n x n matrices]}
inline LinearAction linear_action(const Json& v, const std::string& path, std::size_t n) {
  allow_only(v, {"generators"}, path);
  const Json& gens = array(field(v, "generators", path), at(path, "generators"));
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < gens.size(); ++i) ms.push_back(matrix(gens[i], at(at(path, "generators"), i), n, n));
  return make_linear_action(n, ms);
}

}  // namespace read

// ---------------------------------------------------------------- problems

struct AlgebraProblem {
  FiniteDimAlgebra algebra;
  Bimodule module;
};

struct InvariantProblem {
  FiniteDimAlgebra algebra;
  Bimodule module;
  GroupAction action;
};

struct HkrProblem {
  std::size_t n_vars = 0;
  MultiDiffCochain cochain;
  std::optional<TruncationBounds> bounds;
  std::optional<LinearAction> action;
};

struct DeformProblem {
  std::size_t n_vars = 0;
  FormalDeformation deformation;
  std::optional<TruncationBounds> bounds;
};

struct HomogeneousProblem {
  LiePair pair;
};

struct Problem {
  std::string kind;
  /// the problem document as read, echoed into reports
  Json source;
  std::variant<AlgebraProblem, InvariantProblem, HkrProblem, DeformProblem, HomogeneousProblem> data;
};

namespace detail {

inline AlgebraProblem decode_algebra(const Json& p, const std::string& path) {
  const std::size_t d = read::size(read::field(p, "dim", path), read::at(path, "dim"));
  if (d == 0) throw SchemaError(read::at(path, "dim") + ": must be positive");
  auto t = read::tensor(read::field(p, "structure", path), read::at(path, "structure"), d);
  StructureTensor s(t.begin(), t.end());
  Vector unit = read::vector(read::field(p, "unit", path), read::at(path, "unit"), d);
  FiniteDimAlgebra a = make_algebra(s, unit);
  if (const Json* b = read::optional_field(p, "bimodule")) {
    const std::string bp = read::at(path, "bimodule");
    read::allow_only(*b, {"dim", "left", "right"}, bp);
    const std::size_t m = read::size(read::field(*b, "dim", bp), read::at(bp, "dim"));
    std::vector<Matrix> left, right;
    const Json& l = read::array(read::field(*b, "left", bp), read::at(bp, "left"), d);
    const Json& r = read::array(read::field(*b, "right", bp), read::at(bp, "right"), d);
    for (std::size_t i = 0; i < d; ++i) {
      left.push_back(read::matrix(l[i], read::at(read::at(bp, "left"), i), m, m));
      right.push_back(read::matrix(r[i], read::at(read::at(bp, "right"), i), m, m));
    }
    return {a, make_bimodule(a, std::move(left), std::move(right))};
  }
  return {a, regular_bimodule(a)};
}

inline GroupAction decode_group_action(const Json& v, const std::string& path, const FiniteDimAlgebra& a,
                                       const Bimodule& nmod) {
  read::allow_only(v, {"generators", "elements", "table"}, path);
  const std::size_t d = a.dim(), m = nmod.dim();
  auto element = [&](const Json& e, const std::string& ep) {
    read::allow_only(e, {"algebra", "module"}, ep);
    GroupAction::Element el;
    el.on_algebra = read::matrix(read::field(e, "algebra", ep), read::at(ep, "algebra"), d, d);
    if (const Json* mm = read::optional_field(e, "module")) {
      el.on_module = read::matrix(*mm, read::at(ep, "module"), m, m);
    } else {
      if (!nmod.is_regular()) throw SchemaError(read::at(ep, "module") + ": required when the bimodule is not regular");
      el.on_module = el.on_algebra;
    }
    return el;
  };
  const Json* gens = read::optional_field(v, "generators");
  const Json* elems = read::optional_field(v, "elements");
  if ((gens != nullptr) == (elems != nullptr)) throw SchemaError(path + ": give exactly one of 'generators' or 'elements'");
  if (gens) {
    read::array(*gens, read::at(path, "generators"));
    std::vector<GroupAction::Element> g;
    for (std::size_t i = 0; i < gens->size(); ++i) g.push_back(element((*gens)[i], read::at(read::at(path, "generators"), i)));
    return generate_group_action(a, nmod, g);
  }
  read::array(*elems, read::at(path, "elements"));
  std::vector<GroupAction::Element> es;
  for (std::size_t i = 0; i < elems->size(); ++i) es.push_back(element((*elems)[i], read::at(read::at(path, "elements"), i)));
  const std::string tp = read::at(path, "table");
  const Json& table = read::array(read::field(v, "table", path), tp, es.size());
  std::vector<std::vector<std::size_t>> t(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    read::array(table[i], read::at(tp, i), es.size());
    for (std::size_t j = 0; j < es.size(); ++j) t[i].push_back(read::size(table[i][j], read::at(read::at(tp, i), j)));
  }
  return make_group_action(a, nmod, std::move(es), std::move(t));
}

inline std::size_t decode_n_vars(const Json& p, const std::string& path) {
  std::size_t n = read::size(read::field(p, "n_vars", path), read::at(path, "n_vars"));
  if (n == 0) throw SchemaError(read::at(path, "n_vars") + ": must be positive");
  return n;
}

inline HkrProblem decode_hkr(const Json& p, const std::string& path) {
  read::allow_only(p, {"n_vars", "cochain", "field", "psi", "bounds", "invariance"}, path);
  HkrProblem hp;
  hp.n_vars = decode_n_vars(p, path);
  const std::size_t n = hp.n_vars;
  std::optional<MultiDiffCochain> phi;
  auto add = [&](const MultiDiffCochain& c, const std::string& fp) {
    if (!phi) {
      phi = c;
    } else {
      if (phi->degree() != c.degree()) throw SchemaError(fp + ": degree does not match the other parts");
      *phi += c;
    }
  };
  if (const Json* c = read::optional_field(p, "cochain")) add(read::multidiff(*c, read::at(path, "cochain"), n), read::at(path, "cochain"));
  if (const Json* f = read::optional_field(p, "field")) add(hkr_map(read::polyvector(*f, read::at(path, "field"), n)), read::at(path, "field"));
  if (const Json* s = read::optional_field(p, "psi")) add(poly_differential(read::multidiff(*s, read::at(path, "psi"), n)), read::at(path, "psi"));
  if (!phi) throw SchemaError(path + ": needs at least one of 'cochain', 'field', 'psi'");
  hp.cochain = *phi;
  if (const Json* b = read::optional_field(p, "bounds")) hp.bounds = read::bounds(*b, read::at(path, "bounds"));
  if (const Json* g = read::optional_field(p, "invariance")) hp.action = read::linear_action(*g, read::at(path, "invariance"), n);
  return hp;
}

inline DeformProblem decode_deform(const Json& p, const std::string& path) {
  read::allow_only(p, {"n_vars", "pi", "order", "terms", "bounds", "invariance"}, path);
  DeformProblem dp;
  dp.n_vars = decode_n_vars(p, path);
  const std::size_t n = dp.n_vars;
  std::optional<LinearAction> act;
  if (const Json* g = read::optional_field(p, "invariance")) act = read::linear_action(*g, read::at(path, "invariance"), n);
  const Json* pi = read::optional_field(p, "pi");
  const Json* terms = read::optional_field(p, "terms");
  if ((pi != nullptr) == (terms != nullptr)) throw SchemaError(path + ": give exactly one of 'pi' (Moyal) or 'terms'");
  if (pi) {
    Matrix m = read::matrix(*pi, read::at(path, "pi"), n, n);
    std::size_t order = 1;
    if (const Json* o = read::optional_field(p, "order")) order = read::size(*o, read::at(path, "order"));
    dp.deformation = moyal_deformation(m, order, act);
  } else {
    if (read::optional_field(p, "order")) throw SchemaError(read::at(path, "order") + ": only meaningful with 'pi'");
    read::array(*terms, read::at(path, "terms"));
    std::vector<MultiDiffCochain> mus;
    for (std::size_t i = 0; i < terms->size(); ++i) mus.push_back(read::multidiff((*terms)[i], read::at(read::at(path, "terms"), i), n));
    dp.deformation = make_deformation(n, std::move(mus), act);
  }
  if (const Json* b = read::optional_field(p, "bounds")) dp.bounds = read::bounds(*b, read::at(path, "bounds"));
  return dp;
}

inline HomogeneousProblem decode_homogeneous(const Json& p, const std::string& path) {
  read::allow_only(p, {"dim", "brackets", "h_basis", "isotropy"}, path);
  const std::size_t d = read::size(read::field(p, "dim", path), read::at(path, "dim"));
  auto t = read::tensor(read::field(p, "brackets", path), read::at(path, "brackets"), d);
  LieBrackets f(t.begin(), t.end());
  const Json& hb = read::array(read::field(p, "h_basis", path), read::at(path, "h_basis"));
  std::vector<Vector> h;
  for (std::size_t i = 0; i < hb.size(); ++i) h.push_back(read::vector(hb[i], read::at(read::at(path, "h_basis"), i), d));
  const std::string ip = read::at(path, "isotropy");
  const Json& iso = read::field(p, "isotropy", path);
  read::allow_only(iso, {"kind", "generators"}, ip);
  std::string kind = read::string(read::field(iso, "kind", ip), read::at(ip, "kind"));
  Isotropy isotropy;
  if (kind == "connected") {
    if (read::optional_field(iso, "generators")) throw SchemaError(read::at(ip, "generators") + ": not allowed for connected isotropy");
  } else if (kind == "finite") {
    const Json& g = read::array(read::field(iso, "generators", ip), read::at(ip, "generators"));
    std::vector<Matrix> ms;
    for (std::size_t i = 0; i < g.size(); ++i) ms.push_back(read::matrix(g[i], read::at(read::at(ip, "generators"), i), d, d));
    isotropy = Isotropy::finite(std::move(ms));
  } else {
    throw SchemaError(read::at(ip, "kind") + ": expected \"connected\" or \"finite\"");
  }
  return {make_lie_pair(f, h, isotropy)};
}

/// Byte offset -> "line L, column C" (1-based).
inline std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

inline const std::vector<std::string>& problem_kinds() {
  static const std::vector<std::string> kinds{"algebra", "invariant", "hkr", "deform", "homogeneous"};
  return kinds;
}

/// Decodes a problem document (or a report that embeds one under "problem").
inline Problem decode_problem(const Json& doc) {
  if (doc.is_object() && doc.contains("problem") && !doc.contains("kind")) return decode_problem(doc["problem"]);
  read::allow_only(doc, {"kind", "payload"}, "");
  Problem pr;
  pr.kind = read::string(read::field(doc, "kind", ""), "kind");
  const Json& p = read::field(doc, "payload", "");
  pr.source = doc;
  if (pr.kind == "algebra") {
    read::allow_only(p, {"dim", "structure", "unit", "bimodule"}, "payload");
    pr.data = detail::decode_algebra(p, "payload");
  } else if (pr.kind == "invariant") {
    read::allow_only(p, {"dim", "structure", "unit", "bimodule", "action"}, "payload");
    AlgebraProblem ap = detail::decode_algebra(p, "payload");
    GroupAction act = detail::decode_group_action(read::field(p, "action", "payload"), "payload.action", ap.algebra, ap.module);
    pr.data = InvariantProblem{ap.algebra, ap.module, act};
  } else if (pr.kind == "hkr") {
    pr.data = detail::decode_hkr(p, "payload");
  } else if (pr.kind == "deform") {
    pr.data = detail::decode_deform(p, "payload");
  } else if (pr.kind == "homogeneous") {
    pr.data = detail::decode_homogeneous(p, "payload");
  } else {
    throw SchemaError("kind: unknown problem kind '" + pr.kind + "'");
  }
  return pr;
}

inline Problem parse_problem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("parse error");
    throw ParseError(detail::position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     (pos == std::string::npos ? msg : msg.substr(pos)));
  }
  return decode_problem(doc);
}

// ---------------------------------------------------------------- encoding

namespace write {

inline Json rational(const Rational& q) { return to_string(q); }

inline Json vector(const Vector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rational(q));
  return a;
}

inline Json matrix(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(rational(m(i, j)));
    a.push_back(r);
  }
  return a;
}

inline Json poly(const Poly& p) {
  Json a = Json::array();
  for (const auto& [e, q] : p.terms()) a.push_back(Json{{"exponents", e}, {"coeff", rational(q)}});
  return a;
}

inline Json multidiff(const MultiDiffCochain& phi) {
  Json terms = Json::array();
  for (const auto& [slots, c] : phi.terms()) terms.push_back(Json{{"slots", slots}, {"coeff", poly(c)}});
  return Json{{"degree", phi.degree()}, {"terms", terms}};
}

inline Json polyvector(const PolyvectorField& x) {
  Json comps = Json::array();
  for (const auto& [idx, c] : x.components()) comps.push_back(Json{{"indices", idx}, {"coeff", poly(c)}});
  return Json{{"degree", x.degree()}, {"components", comps}};
}

inline Json bounds(const TruncationBounds& b) {
  return Json{{"max_order", b.max_order}, {"max_coeff_degree", b.max_coeff_degree}};
}

/// Finite-dimensional cochain: nonzero values keyed by argument tuple.
inline Json cochain(const Cochain& c) {
  Json vals = Json::array();
  for (std::size_t t = 0; t < c.tuples(); ++t) {
    Vector v = c.value(t);
    bool zero = true;
    for (const auto& q : v) zero = zero && sgn(q) == 0;
    if (zero) continue;
    vals.push_back(Json{{"args", hochschild::detail::tuple_digits(t, c.algebra_dim(), c.degree())}, {"value", vector(v)}});
  }
  return Json{{"degree", c.degree()}, {"values", vals}};
}

}  // namespace write

}  // namespace hochschild::cli
