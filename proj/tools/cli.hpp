#pragma once

// The `hochschild` command line: five subcommands over problem files, each
// building one JSON report that is printed as-is (--json) or as text tables.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hochschild/cohomology.hpp"
#include "hochschild/invariance.hpp"
#include "problem_io.hpp"

namespace hochschild::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kEngineFailure = 2 };

// ---------------------------------------------------------------- text tables

class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> w(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    std::string out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c) line += "  ";
        line += std::string(w[c] - r[c].size(), ' ') + r[c];
      }
      out += line + "\n";
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

namespace text {

inline std::string num(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string yes_no(const Json& v) { return v.get<bool>() ? "yes" : "no"; }

inline std::string join(const Json& arr, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? sep : "") + num(arr[i]);
  return s;
}

/// Finite-dimensional cochain: "(i,j) -> [v0, v1]; ..."
inline std::string cochain(const Json& c) {
  if (c["values"].empty()) return "0";
  std::string s;
  for (std::size_t t = 0; t < c["values"].size(); ++t) {
    const Json& e = c["values"][t];
    s += (t ? "; " : "") + std::string("(") + join(e["args"], ",") + ") -> [" + join(e["value"], ", ") + "]";
  }
  return s;
}

// Reports carry exact JSON; the text forms decode it back and reuse the
// library printers.
inline std::size_t vars_of(const Json& poly_terms) { return poly_terms.empty() ? 0 : poly_terms[0]["exponents"].size(); }

inline std::string multidiff(const Json& m) {
  std::size_t n = 0;
  for (const auto& t : m["terms"]) n = std::max(n, vars_of(t["coeff"]));
  return to_string(read::multidiff(m, "", n));
}

inline std::string polyvector(const Json& x) {
  std::size_t n = 0;
  for (const auto& c : x["components"]) n = std::max(n, vars_of(c["coeff"]));
  return to_string(read::polyvector(x, "", n));
}

inline std::string bounds(const Json& b) {
  return "order <= " + num(b["max_order"]) + ", coefficient degree <= " + num(b["max_coeff_degree"]);
}

}  // namespace text

// ---------------------------------------------------------------- commands

namespace commands {

inline const AlgebraProblem algebra_of(const Problem& p, const std::string& command) {
  if (auto* a = std::get_if<AlgebraProblem>(&p.data)) return *a;
  if (auto* i = std::get_if<InvariantProblem>(&p.data)) return {i->algebra, i->module};
  throw SchemaError("kind: '" + command + "' needs a problem of kind 'algebra' or 'invariant', got '" + p.kind + "'");
}

template <class T>
const T& require_kind(const Problem& p, const std::string& command, const std::string& kind) {
  if (auto* x = std::get_if<T>(&p.data)) return *x;
  throw SchemaError("kind: '" + command + "' needs a problem of kind '" + kind + "', got '" + p.kind + "'");
}

inline Json compute(const Problem& pr, std::size_t max_degree) {
  AlgebraProblem ap = algebra_of(pr, "compute");
  Json r;
  r["command"] = "compute";
  r["max_degree"] = max_degree;
  r["algebra"] = Json{{"dim", ap.algebra.dim()}, {"module_dim", ap.module.dim()}, {"regular", ap.module.is_regular()}};
  DerivationDims dd = derivation_quotient(ap.algebra, ap.module);
  r["derivations"] = Json{{"all", dd.derivations}, {"inner", dd.inner}, {"outer", dd.derivations - dd.inner}};
  Json degrees = Json::array();
  for (std::size_t n = 0; n <= max_degree; ++n) {
    CohomologySpace hs = cohomology(ap.algebra, ap.module, n);
    Json reps = Json::array();
    for (const auto& c : hs.class_representatives) reps.push_back(write::cochain(c));
    degrees.push_back(Json{{"degree", n},
                           {"dim", hs.dim},
                           {"cocycles", hs.cocycle_basis.size()},
                           {"coboundaries", hs.coboundary_basis.size()},
                           {"representatives", reps}});
  }
  r["degrees"] = degrees;
  r["problem"] = pr.source;
  return r;
}

inline Json invariant(const Problem& pr, std::size_t max_degree) {
  const auto& ip = require_kind<InvariantProblem>(pr, "invariant", "invariant");
  Json r;
  r["command"] = "invariant";
  r["max_degree"] = max_degree;
  r["algebra"] = Json{{"dim", ip.algebra.dim()}, {"module_dim", ip.module.dim()}, {"regular", ip.module.is_regular()}};
  r["group_order"] = ip.action.order();
  Json degrees = Json::array();
  for (std::size_t n = 0; n <= max_degree; ++n) {
    CohomologySpace hs = cohomology(ip.algebra, ip.module, n);
    CohomologySpace hg = invariant_cohomology(ip.action, ip.algebra, ip.module, n);
    IotaReport iota = iota_check(ip.action, ip.algebra, ip.module, n);
    Json reps = Json::array();
    for (const auto& c : hg.class_representatives) reps.push_back(write::cochain(c));
    degrees.push_back(Json{{"degree", n},
                           {"dim_HH", hs.dim},
                           {"dim_HH_G", iota.dim_HHG},
                           {"dim_HH_classes_G", iota.dim_HH_classes_G},
                           {"iota", Json{{"injective", iota.injective}, {"surjective", iota.surjective}}},
                           {"iota_rank", iota.rank},
                           {"iota_matrix", write::matrix(iota.iota_matrix)},
                           {"invariant_representatives", reps}});
  }
  r["degrees"] = degrees;
  r["problem"] = pr.source;
  return r;
}

inline Json hkr(const Problem& pr) {
  const auto& hp = require_kind<HkrProblem>(pr, "hkr", "hkr");
  const MultiDiffCochain& phi = hp.cochain;
  TruncationBounds b = hp.bounds ? *hp.bounds : bounds_for(phi);
  Json r;
  r["command"] = "hkr";
  r["n_vars"] = hp.n_vars;
  r["degree"] = phi.degree();
  r["invariant_solve"] = hp.action.has_value();
  r["cochain"] = write::multidiff(phi);
  try {
    HkrDecomposition dec = hkr_decompose(phi, b, hp.action ? &*hp.action : nullptr);
    MultiDiffCochain rebuilt = hkr_map(dec.field);
    if (phi.degree() > 0) rebuilt += poly_differential(dec.psi);
    r["status"] = "decomposed";
    r["field"] = write::polyvector(dec.field);
    r["psi"] = write::multidiff(dec.psi);
    r["bounds"] = write::bounds(dec.bounds);
    r["verified"] = rebuilt == phi;
  } catch (const NoSolutionWithinBounds& e) {
    r["status"] = "no_solution_within_bounds";
    r["bounds"] = write::bounds(b.doubled());
    r["diagnostic"] = e.what();
  }
  r["problem"] = pr.source;
  return r;
}

inline Json deform(const Problem& pr, std::size_t to_order) {
  const auto& dp = require_kind<DeformProblem>(pr, "deform", "deform");
  FormalDeformation d = dp.deformation;
  Json r;
  r["command"] = "deform";
  r["n_vars"] = dp.n_vars;
  r["start_order"] = d.order();
  r["to_order"] = to_order;
  r["invariant"] = d.invariance().has_value();
  Json trace = Json::array();
  std::string status = "continued";
  while (d.order() < to_order) {
    const std::size_t next = d.order() + 1;
    ContinuationResult res = dp.bounds ? continue_deformation(d, *dp.bounds) : continue_deformation(d);
    Json step{{"order", next},
              {"status", to_string(res.status)},
              {"obstruction_is_cocycle", poly_differential(res.obstruction).is_zero()}};
    if (d.invariance()) step["obstruction_invariant"] = is_invariant(*d.invariance(), res.obstruction);
    step["invariant_solvable"] = res.invariant_solvable;
    step["unconstrained_solvable"] = res.unconstrained_solvable;
    step["bounds"] = write::bounds(res.bounds);
    step["obstruction"] = write::multidiff(res.obstruction);
    if (res.status == ContinuationStatus::Continued) {
      d = extend(d, *res.next);
      step["defect_vanishes"] = associativity_defect(d, next).is_zero();
      step["term"] = write::multidiff(*res.next);
    } else {
      step["diagnostic"] = res.diagnostic;
    }
    trace.push_back(step);
    if (res.status != ContinuationStatus::Continued) {
      status = "obstructed";
      break;
    }
  }
  r["status"] = status;
  r["reached_order"] = d.order();
  r["trace"] = trace;
  r["problem"] = pr.source;
  return r;
}

inline Json homogeneous(const Problem& pr, std::optional<std::size_t> max_degree) {
  const auto& hp = require_kind<HomogeneousProblem>(pr, "homogeneous", "homogeneous");
  const LiePair& p = hp.pair;
  const std::size_t q = p.g_dim() - p.h_dim();
  const std::size_t k = max_degree ? *max_degree : q;
  Json r;
  r["command"] = "homogeneous";
  r["g_dim"] = p.g_dim();
  r["h_dim"] = p.h_dim();
  r["quotient_dim"] = q;
  r["isotropy"] = p.isotropy().kind == IsotropyKind::Connected ? "connected" : "finite";
  if (p.isotropy().kind == IsotropyKind::FiniteGroup) r["group_order"] = p.group().size();
  r["max_degree"] = k;
  r["dims"] = invariant_exterior_dims(p, k);
  r["problem"] = pr.source;
  return r;
}

}  // namespace commands

// ---------------------------------------------------------------- text rendering

inline std::string render_text(const Json& r) {
  std::ostringstream o;
  const std::string cmd = r["command"];
  if (cmd == "compute") {
    o << "Hochschild cohomology: dim A = " << r["algebra"]["dim"].dump() << ", dim N = " << r["algebra"]["module_dim"].dump()
      << (r["algebra"]["regular"].get<bool>() ? " (regular)" : "") << "\n";
    o << "derivations: " << r["derivations"]["all"].dump() << ", inner: " << r["derivations"]["inner"].dump()
      << ", outer: " << r["derivations"]["outer"].dump() << "\n\n";
    Table t({"degree", "dim HH", "cocycles", "coboundaries"});
    for (const auto& d : r["degrees"])
      t.add({d["degree"].dump(), d["dim"].dump(), d["cocycles"].dump(), d["coboundaries"].dump()});
    o << t.str() << "\nrepresentatives\n";
    for (const auto& d : r["degrees"])
      for (std::size_t i = 0; i < d["representatives"].size(); ++i)
        o << "  HH^" << d["degree"].dump() << " #" << i + 1 << ": " << text::cochain(d["representatives"][i]) << "\n";
  } else if (cmd == "invariant") {
    o << "invariant cohomology: dim A = " << r["algebra"]["dim"].dump() << ", dim N = " << r["algebra"]["module_dim"].dump()
      << ", |G| = " << r["group_order"].dump() << "\n\n";
    Table t({"degree", "dim HH", "dim HH_G", "dim (HH)^G", "rank iota", "injective", "surjective"});
    for (const auto& d : r["degrees"])
      t.add({d["degree"].dump(), d["dim_HH"].dump(), d["dim_HH_G"].dump(), d["dim_HH_classes_G"].dump(), d["iota_rank"].dump(),
             text::yes_no(d["iota"]["injective"]), text::yes_no(d["iota"]["surjective"])});
    o << t.str() << "\ninvariant representatives\n";
    for (const auto& d : r["degrees"])
      for (std::size_t i = 0; i < d["invariant_representatives"].size(); ++i)
        o << "  HH^" << d["degree"].dump() << "_G #" << i + 1 << ": " << text::cochain(d["invariant_representatives"][i]) << "\n";
  } else if (cmd == "hkr") {
    o << "HKR decomposition: " << r["n_vars"].dump() << " variables, degree " << r["degree"].dump()
      << (r["invariant_solve"].get<bool>() ? ", invariant solve" : "") << "\n";
    o << "cochain: " << text::multidiff(r["cochain"]) << "\n";
    o << "status:  " << r["status"].get<std::string>() << "\n";
    o << "window:  " << text::bounds(r["bounds"]) << "\n";
    if (r["status"] == "decomposed") {
      o << "field:   " << text::polyvector(r["field"]) << "\n";
      o << "psi:     " << text::multidiff(r["psi"]) << "\n";
      o << "check:   " << (r["verified"].get<bool>() ? "U(X) + delta psi reproduces the cochain" : "MISMATCH") << "\n";
    } else {
      o << "detail:  " << r["diagnostic"].get<std::string>() << "\n";
    }
  } else if (cmd == "deform") {
    o << "deformation continuation: " << r["n_vars"].dump() << " variables, from order " << r["start_order"].dump() << " to "
      << r["to_order"].dump() << (r["invariant"].get<bool>() ? ", invariant" : "") << "\n\n";
    const bool inv = r["invariant"].get<bool>();
    std::vector<std::string> header{"order", "status", "R cocycle"};
    if (inv) header.push_back("R invariant");
    for (const char* h : {"inv. solvable", "solvable", "defect 0", "window"}) header.push_back(h);
    Table t(header);
    for (const auto& s : r["trace"]) {
      std::vector<std::string> row{s["order"].dump(), s["status"].get<std::string>(), text::yes_no(s["obstruction_is_cocycle"])};
      if (inv) row.push_back(text::yes_no(s["obstruction_invariant"]));
      row.push_back(text::yes_no(s["invariant_solvable"]));
      row.push_back(text::yes_no(s["unconstrained_solvable"]));
      row.push_back(s.contains("defect_vanishes") ? text::yes_no(s["defect_vanishes"]) : "-");
      row.push_back("(" + s["bounds"]["max_order"].dump() + ", " + s["bounds"]["max_coeff_degree"].dump() + ")");
      t.add(row);
    }
    o << t.str() << "\nresult: " << r["status"].get<std::string>() << " at order " << r["reached_order"].dump() << "\n";
    for (const auto& s : r["trace"]) {
      if (s.contains("term")) o << "  mu_" << s["order"].dump() << " = " << text::multidiff(s["term"]) << "\n";
      if (s.contains("diagnostic")) o << "  order " << s["order"].dump() << ": " << s["diagnostic"].get<std::string>() << "\n";
    }
  } else if (cmd == "homogeneous") {
    o << "invariant exterior powers of (g/h)*: dim g = " << r["g_dim"].dump() << ", dim h = " << r["h_dim"].dump() << ", "
      << r["isotropy"].get<std::string>() << " isotropy";
    if (r.contains("group_order")) o << " of order " << r["group_order"].dump();
    o << "\n\n";
    Table t({"degree", "dim"});
    for (std::size_t k = 0; k < r["dims"].size(); ++k) t.add({std::to_string(k), r["dims"][k].dump()});
    o << t.str();
  }
  return o.str();
}

// ---------------------------------------------------------------- entry point

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Hochschild cohomology, HKR decompositions and deformation continuation"};
  app.name("hochschild");
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  std::size_t max_degree = 3, to_order = 3, hom_degree = 0;

  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("file", file, "problem file")->required();
    sub->add_flag("--json", json, "print a single JSON document");
    return sub;
  };
  auto* c_compute = add("compute", "HH^n(A, N) dimensions and representatives");
  c_compute->add_option("--max-degree", max_degree, "highest degree")->check(CLI::Range(0, 8));
  auto* c_invariant = add("invariant", "HH^n_G, (HH^n)^G and the comparison map per degree");
  c_invariant->add_option("--max-degree", max_degree, "highest degree")->check(CLI::Range(0, 8));
  add("hkr", "decompose a polydifferential cocycle as U(X) + delta psi");
  auto* c_deform = add("deform", "continue a formal deformation order by order");
  c_deform->add_option("--to-order", to_order, "target order")->check(CLI::Range(1, 12));
  auto* c_hom = add("homogeneous", "invariant exterior powers of the isotropy representation");
  auto* hom_opt = c_hom->add_option("--max-degree", hom_degree, "highest exterior degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kInputError;
  }

  Json report;
  try {
    Problem pr = parse_problem(read_file(file));
    if (c_compute->parsed()) {
      report = commands::compute(pr, max_degree);
    } else if (c_invariant->parsed()) {
      report = commands::invariant(pr, max_degree);
    } else if (c_deform->parsed()) {
      report = commands::deform(pr, to_order);
    } else if (c_hom->parsed()) {
      report = commands::homogeneous(pr, hom_opt->count() ? std::optional<std::size_t>(hom_degree) : std::nullopt);
    } else {
      report = commands::hkr(pr);
    }
  } catch (const ResourceLimit& e) {
    err << "error: resource limit: " << e.what() << "\n";
    return kEngineFailure;
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const SchemaError& e) {
    err << "error: schema error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: invalid problem: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: engine failure: " << e.what() << "\n";
    return kEngineFailure;
  }
  out << (json ? format_json(report) : render_text(report));
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hochschild"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hochschild::cli
