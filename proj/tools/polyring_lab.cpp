// polyring-lab: command-line front end for the workbench library.
//
// Exit codes: 0 success / witness found, 1 nothing found within the budget or
// window, 2 invalid input, 3 invariant violation (a property the library
// guarantees failed to re-check).

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polyring/algebra.hpp"
#include "polyring/errors.hpp"
#include "polyring/json_io.hpp"
#include "polyring/ramsey.hpp"
#include "polyring/semigroup.hpp"
#include "polyring/symbolic.hpp"
#include "polyring/term.hpp"
#include "polyring/zariski.hpp"

using nlohmann::ordered_json;
using namespace polyring;

namespace {

struct Ctx {
  std::uint64_t seed = 0;
  std::uint64_t budget_nodes = 0;    // 0 = library default
  std::uint64_t budget_seconds = 0;  // 0 = untimed
  std::string format = "text";
  std::string out_path;
  int exit_code = 0;

  std::uint64_t budget_ms() const { return budget_seconds * 1000; }

  void emit(const ordered_json& j, const std::string& text,
            const std::optional<std::string>& csv = std::nullopt) const {
    std::string rendered;
    if (format == "json") {
      rendered = j.dump(2) + "\n";
    } else if (format == "csv") {
      if (!csv) throw InvalidInput("csv output is not available for this command");
      rendered = *csv;
    } else {
      rendered = text;
      if (!rendered.empty() && rendered.back() != '\n') rendered += '\n';
    }
    if (out_path.empty())
      std::cout << rendered;
    else
      write_text_file(out_path, rendered);
  }
};

// ---- small parsers ---------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int to_int(const std::string& s) {
  if (s.empty()) throw InvalidInput("expected an integer, got an empty field");
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("not an integer: \"" + s + "\"");
  }
  if (pos != s.size()) throw InvalidInput("not an integer: \"" + s + "\"");
  return v;
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& f : split(s, ',')) out.push_back(to_int(f));
  return out;
}

std::vector<BigInt> big_list(const std::string& s) {
  std::vector<BigInt> out;
  for (const std::string& f : split(s, ',')) {
    if (f.empty()) throw InvalidInput("empty entry in integer list");
    try {
      out.emplace_back(f);
    } catch (const std::exception&) {
      throw InvalidInput("not an integer: \"" + f + "\"");
    }
  }
  return out;
}

std::string big_join(const std::vector<BigInt>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].str();
  }
  return out;
}

ordered_json big_array(const std::vector<BigInt>& v) {
  ordered_json a = ordered_json::array();
  for (const BigInt& x : v) a.push_back(x.str());
  return a;
}

// "zring:6" | "zgroup:5" | path to an instance JSON file
FinitePolyring parse_instance_spec(const std::string& spec) {
  auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "zring") return zm_ring(to_int(f[1]));
  if (f.size() == 2 && f[0] == "zgroup") return zm_group(to_int(f[1]));
  return instance_from_json(parse_json_file(spec));
}

// "zring:2" | "zgroup:3" | path to a symbolic instance JSON file
SymbolicPolyring parse_symbolic_spec(const std::string& spec) {
  auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "zring") return z_ring_symbolic(to_int(f[1]));
  if (f.size() == 2 && f[0] == "zgroup") return z_group_symbolic(to_int(f[1]));
  return symbolic_from_json(parse_json_file(spec));
}

// "zmul:6" | "leftzero:2" | "rightzero:3" | "null:2" | path to JSON
FiniteGroupoid parse_groupoid_spec(const std::string& spec) {
  auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "zmul") return zm_mul_groupoid(to_int(f[1]));
  if (f.size() == 2 && f[0] == "leftzero") return left_zero_groupoid(to_int(f[1]));
  if (f.size() == 2 && f[0] == "rightzero") return right_zero_groupoid(to_int(f[1]));
  if (f.size() == 2 && f[0] == "null") return null_groupoid(to_int(f[1]));
  return groupoid_from_json(parse_json_file(spec));
}

// "single:N" | "parity:N" | "mod:K:N" | "random:COLORS:N" | csv file path
Coloring parse_coloring_spec(const std::string& spec, std::uint64_t seed) {
  auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "single") return Coloring::single(to_int(f[1]));
  if (f.size() == 2 && f[0] == "parity") return Coloring::parity(to_int(f[1]));
  if (f.size() == 3 && f[0] == "mod") return Coloring::mod_k(to_int(f[2]), to_int(f[1]));
  if (f.size() == 3 && f[0] == "random")
    return Coloring::random(to_int(f[2]), to_int(f[1]), seed);
  return Coloring::from_csv(read_text_file(spec));
}

// "single:3,4" | "parity-sum:4,4" | "mod-sum:K:4,4" | "random:COLORS:4,4"
GridColoring parse_grid_spec(const std::string& spec, std::uint64_t seed) {
  auto f = split(spec, ':');
  if (f.size() == 2 && f[0] == "single") return GridColoring::single(int_list(f[1]));
  if (f.size() == 2 && f[0] == "parity-sum")
    return GridColoring::parity_sum(int_list(f[1]));
  if (f.size() == 3 && f[0] == "mod-sum")
    return GridColoring::mod_sum(int_list(f[2]), to_int(f[1]));
  if (f.size() == 3 && f[0] == "random")
    return GridColoring::random(int_list(f[2]), to_int(f[1]), seed);
  throw InvalidInput("unknown grid coloring \"" + spec + "\"");
}

AvoidSet parse_avoid_spec(const std::string& spec, const Signature& sig, int n) {
  AvoidSet a;
  if (spec == "empty") return a;
  if (spec.rfind("graph:", 0) == 0) {
    a.kind = AvoidSet::Kind::Graph;
    a.graph_term = parse_term(spec.substr(6), sig, n);
    return a;
  }
  throw InvalidInput("avoid set must be \"empty\" or \"graph:TERM\"");
}

std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// ---- term commands ---------------------------------------------------------

void cmd_term_normalize(Ctx& ctx, const std::string& text, const std::string& sig_text) {
  Signature sig = Signature::parse(sig_text);
  TermPtr t = parse_term(text, sig);
  Polynomial p = normalize(t);
  ordered_json j{{"command", "term normalize"},
                 {"input", text},
                 {"normal_form", to_string(p)},
                 {"monomials", p.size()}};
  ctx.emit(j, to_string(p));
}

void cmd_term_degree(Ctx& ctx, const std::string& text, const std::string& sig_text,
                     const std::string& vars_text) {
  Signature sig = Signature::parse(sig_text);
  TermPtr t = parse_term(text, sig);
  Degree d = vars_text.empty() ? degree(t) : degree(t, int_list(vars_text));
  ordered_json j{{"command", "term degree"},
                 {"input", text},
                 {"vars", d.vars},
                 {"degree", d.value}};
  ctx.emit(j, std::to_string(d.value));
}

void cmd_term_decompose_sum(Ctx& ctx, const std::string& text,
                            const std::string& sig_text, int var_count) {
  Signature sig = Signature::parse(sig_text);
  TermPtr t = parse_term(text, sig);
  if (var_count <= 0) var_count = std::max(1, max_var_index(*t));
  Polynomial g = sum_decompose(t, var_count);
  std::vector<int> xs(std::size_t(var_count));
  for (int i = 0; i < var_count; ++i) xs[std::size_t(i)] = i + 1;
  int deg_f = degree(t, xs).value;
  int deg_g = degree(g, xs).value;
  ordered_json j{{"command", "term decompose-sum"},
                 {"input", text},
                 {"var_count", var_count},
                 {"correction", to_string(g, var_count)},
                 {"degree_input", deg_f},
                 {"degree_correction_in_x", deg_g}};
  ctx.emit(j, to_string(g, var_count));
}

void cmd_term_decompose_shift(Ctx& ctx, const std::string& text,
                              const std::string& alg_spec, const std::string& point_text) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  std::vector<int> point = int_list(point_text);
  TermPtr t = parse_term(text, k.signature(), int(point.size()));
  Polynomial h = shift_decompose(t, int(point.size()), k, point);
  ordered_json j{{"command", "term decompose-shift"},
                 {"input", text},
                 {"shift", point},
                 {"correction", to_string(h)}};
  ctx.emit(j, to_string(h));
}

// ---- alg commands ----------------------------------------------------------

void cmd_alg_check(Ctx& ctx, const std::string& alg_spec) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  AxiomReport rep = check_axioms(k);
  ordered_json fails = ordered_json::array();
  for (const AxiomFailure& f : rep.failures)
    fails.push_back(ordered_json{{"axiom", f.axiom},
                                 {"op", f.op},
                                 {"coordinate", f.coordinate},
                                 {"witness", f.witness}});
  ordered_json j{{"command", "alg check"},
                 {"size", k.size()},
                 {"all_hold", rep.all_hold()},
                 {"checks_run", rep.checks_run},
                 {"truncated", rep.truncated},
                 {"failures", std::move(fails)}};
  std::string text;
  if (rep.all_hold()) {
    text = "all axioms hold (" + std::to_string(rep.checks_run) + " checks)";
  } else {
    text = std::to_string(rep.failures.size()) + " axiom failure(s)";
    for (const AxiomFailure& f : rep.failures)
      text += "\n" + f.axiom + (f.op.empty() ? "" : " op " + f.op) + " at " +
              join_ints(f.witness, ",");
  }
  ctx.emit(j, text);
}

void cmd_alg_enum_ops(Ctx& ctx, const std::string& alg_spec, int arity,
                      std::uint64_t cap, bool brute, bool tables) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  EnumOpsResult r = enumerate_distributive_ops(k, arity, cap, brute);
  ordered_json j{{"command", "alg enum-ops"},
                 {"size", k.size()},
                 {"arity", arity},
                 {"total", r.total},
                 {"returned", r.ops.size()},
                 {"complete", r.complete}};
  if (tables) {
    ordered_json ts = ordered_json::array();
    for (const OpTable& t : r.ops) ts.push_back(t.table);
    j["tables"] = std::move(ts);
  }
  std::string text = std::to_string(r.total) + " coordinatewise-additive op(s), " +
                     std::to_string(r.ops.size()) + " returned" +
                     (r.complete ? "" : " (capped)");
  ctx.emit(j, text);
}

void cmd_alg_groupoid_ring(Ctx& ctx, const std::string& g_spec, int mod,
                           int support_bound, int size_limit) {
  FiniteGroupoid g = parse_groupoid_spec(g_spec);
  FinitePolyring k = groupoid_ring(g, mod, support_bound, size_limit);
  ordered_json j = instance_to_json(k);
  std::string text = "carrier size " + std::to_string(k.size()) + ", ops:";
  for (const auto& [name, op] : k.ops()) text += " " + name;
  ctx.emit(j, text);
}

void cmd_alg_product(Ctx& ctx, const std::vector<std::string>& specs) {
  if (specs.size() < 2) throw InvalidInput("product needs at least two --alg instances");
  std::vector<FinitePolyring> parts;
  parts.reserve(specs.size());
  for (const std::string& s : specs) parts.push_back(parse_instance_spec(s));
  std::vector<const FinitePolyring*> ptrs;
  for (const FinitePolyring& p : parts) ptrs.push_back(&p);
  FinitePolyring k = direct_product(ptrs);
  ctx.emit(instance_to_json(k), "carrier size " + std::to_string(k.size()));
}

// ---- zariski commands ------------------------------------------------------

void cmd_zariski_clone(Ctx& ctx, const std::string& alg_spec, int n, std::size_t cap,
                       bool list) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  Clone c = term_clone(k, n, cap);
  ordered_json j{{"command", "zariski clone"},
                 {"carrier", c.carrier},
                 {"vars", c.vars},
                 {"functions", c.functions.size()},
                 {"complete", c.complete}};
  if (list) {
    ordered_json gens = ordered_json::array();
    for (const TermFunction& f : c.functions)
      if (f.provenance) gens.push_back(to_string(f.provenance));
    j["generators"] = std::move(gens);
  }
  std::string text = std::to_string(c.functions.size()) + " term function(s) on " +
                     std::to_string(c.carrier) + "^" + std::to_string(c.vars) +
                     (c.complete ? "" : " (capped)");
  ctx.emit(j, text);
}

void cmd_zariski_analyze(Ctx& ctx, const std::string& alg_spec, int n, std::size_t cap) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  Clone c = term_clone(k, n, cap);
  FiniteSpace space = FiniteSpace::from_clone(c, k);
  SpaceAnalysis a = analyze(space);
  ordered_json comps = ordered_json::array();
  for (const auto& comp : a.components) comps.push_back(comp);
  ordered_json j{{"command", "zariski analyze"},
                 {"points", space.size()},
                 {"root_sets", space.roots().size()},
                 {"complete_family", space.complete_family()},
                 {"discrete", a.discrete},
                 {"isolated", a.isolated},
                 {"components", std::move(comps)},
                 {"psi", a.psi},
                 {"psi_space", a.psi_space},
                 {"ind", a.ind}};
  std::ostringstream text;
  text << "points: " << space.size() << "\n"
       << "discrete: " << (a.discrete ? "yes" : "no") << "\n"
       << "isolated: " << join_ints(a.isolated) << "\n"
       << "components: " << a.components.size() << "\n"
       << "psi(space): " << (a.psi_space < 0 ? std::string("infinite") : std::to_string(a.psi_space))
       << "\n"
       << "ind: " << a.ind;
  ctx.emit(j, text.str());
}

void cmd_zariski_cantor(Ctx& ctx, int m, int crosscheck) {
  CantorReport r = verify_cantor_example(m, crosscheck);
  ordered_json j{{"command", "zariski cantor"},
                 {"m", r.m},
                 {"carrier", r.carrier},
                 {"characterizations_hold", r.characterizations_hold},
                 {"complement_on_weight_one", r.complement_on_weight_one},
                 {"complement_exactly_weight_one", r.complement_exactly_weight_one},
                 {"complement_valid_as", r.complement_valid_as},
                 {"cylinders_algebraic", r.cylinders_algebraic},
                 {"singletons_algebraic", r.singletons_algebraic},
                 {"algebraic_count", r.algebraic_count},
                 {"base_crosschecked", r.base_crosschecked}};
  std::ostringstream text;
  text << "carrier 2^" << r.m << " = " << r.carrier << "\n"
       << "per-a root characterizations: " << (r.characterizations_hold ? "hold" : "FAIL")
       << "\n"
       << "complement identity exactly on weight-1 a: "
       << (r.complement_exactly_weight_one ? "yes" : "NO") << " (valid a: "
       << join_ints(r.complement_valid_as, ",") << ")\n"
       << "cylinders algebraic: " << (r.cylinders_algebraic ? "yes" : "NO") << "\n"
       << "singletons algebraic: " << (r.singletons_algebraic ? "yes" : "NO") << "\n"
       << "algebraic sets: " << r.algebraic_count
       << (r.base_crosschecked ? " (cross-checked by union closure)" : "");
  ctx.emit(j, text.str());
}

int cmd_zariski_certificate(Ctx& ctx, const std::string& sym_spec,
                            const std::string& terms_text, int n, int degree_bound,
                            int tail_len, const std::string& avoid_spec,
                            long long validate_radius) {
  SymbolicPolyring K = parse_symbolic_spec(sym_spec);
  std::vector<TermPtr> terms;
  for (const std::string& t : split(terms_text, ';'))
    terms.push_back(parse_term(t, K.signature(), n + 1));
  AvoidSet avoid = parse_avoid_spec(avoid_spec, K.signature(), n);
  if (tail_len <= 0) tail_len = degree_bound + 1;
  if (validate_radius > 0) validate_cover_window(K, terms, avoid, n, validate_radius);

  CertificateSearch got = nowhere_dense_certificate(K, terms, avoid, n, degree_bound,
                                                    tail_len, ctx.budget_nodes, ctx.seed,
                                                    ctx.budget_ms());
  if (got.certificate) {
    ordered_json j = certificate_to_json(*got.certificate);
    std::ostringstream text;
    const Certificate& c = *got.certificate;
    text << "witness term: " << c.term_texts[std::size_t(c.witness_term)] << "\n";
    for (std::size_t a = 0; a < c.sequences.size(); ++a) {
      text << (a < std::size_t(c.n) ? "axis " + std::to_string(a + 1) : "tail") << ":";
      for (const BigVec& v : c.sequences[a]) text << " (" << big_join(v) << ")";
      text << "\n";
    }
    text << "candidates tried: " << got.candidates;
    ctx.emit(j, text.str());
    return 0;
  }
  ordered_json j{{"command", "zariski certificate"},
                 {"found", false},
                 {"cover_too_tight", got.cover_too_tight},
                 {"candidates", got.candidates},
                 {"budget_exhausted", got.budget_exhausted}};
  std::string text = "no certificate within budget (" + std::to_string(got.candidates) +
                     " candidates)" +
                     (got.cover_too_tight ? "; every sampled root point sat inside the "
                                            "avoid set (cover too tight)"
                                          : "");
  ctx.emit(j, text);
  return 1;
}

int cmd_zariski_verify(Ctx& ctx, const std::string& path) {
  Certificate c = certificate_from_json(parse_json_file(path));
  std::string why;
  bool ok = verify_certificate(c, &why);
  ordered_json j{{"command", "zariski verify"},
                 {"file", path},
                 {"verified", ok},
                 {"reason", why}};
  ctx.emit(j, ok ? "certificate verifies" : "verification failed: " + why);
  return ok ? 0 : 1;
}

void cmd_zariski_parabola(Ctx& ctx, long long coeff_bound, long long window_radius) {
  ParabolaReport r = parabola_density_check(coeff_bound, window_radius);
  ordered_json j{{"command", "zariski parabola"},
                 {"determinant", r.determinant},
                 {"only_trivial", r.only_trivial},
                 {"coeff_bound", r.coeff_bound},
                 {"trivial_in_box", r.trivial_in_box},
                 {"window_radius", r.window_radius},
                 {"window_closure_full", r.window_closure_full}};
  std::ostringstream text;
  text << "interpolation determinant: " << r.determinant << "\n"
       << "only the zero degree-1 term vanishes on the points: "
       << (r.only_trivial ? "yes" : "NO") << "\n"
       << "box scan (coefficients up to " << r.coeff_bound
       << "): " << (r.trivial_in_box ? "no nonzero term vanishes" : "FOUND one") << "\n"
       << "window closure (radius " << r.window_radius
       << "): " << (r.window_closure_full ? "full" : "NOT full");
  ctx.emit(j, text.str());
}

// ---- ramsey commands -------------------------------------------------------

void cmd_ramsey_fs(Ctx& ctx, const std::string& seq_text, const std::string& bound_text) {
  std::vector<BigInt> seq = big_list(seq_text);
  std::optional<BigInt> bound;
  if (!bound_text.empty()) bound = BigInt(bound_text);
  std::vector<BigInt> fs = fs_set(seq, bound);
  ordered_json j{{"command", "ramsey fs"},
                 {"seq", big_array(seq)},
                 {"fs", big_array(fs)},
                 {"size", fs.size()}};
  if (bound) j["bound"] = bound->str();
  std::string csv = "value\n";
  for (const BigInt& v : fs) csv += v.str() + "\n";
  ctx.emit(j, "{" + big_join(fs) + "}", csv);
}

void cmd_ramsey_fp(Ctx& ctx, const std::string& seq_text, const std::string& g_spec,
                   bool words) {
  ordered_json j{{"command", "ramsey fp"}};
  std::string text, csv = "value\n";
  if (words) {
    std::vector<std::string> seq = split(seq_text, ',');
    std::vector<std::string> fp = fp_set_words(seq);
    j["seq"] = seq;
    j["fp"] = fp;
    std::string body;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      if (i) body += ",";
      body += fp[i];
      csv += fp[i] + "\n";
    }
    text = "{" + body + "}";
  } else if (!g_spec.empty()) {
    FiniteGroupoid g = parse_groupoid_spec(g_spec);
    std::vector<int> fp = fp_set(int_list(seq_text), g);
    j["seq"] = int_list(seq_text);
    j["fp"] = fp;
    text = "{" + join_ints(fp, ",") + "}";
    for (int v : fp) csv += std::to_string(v) + "\n";
  } else {
    std::vector<BigInt> fp = fp_set_integers(big_list(seq_text));
    j["seq"] = big_array(big_list(seq_text));
    j["fp"] = big_array(fp);
    text = "{" + big_join(fp) + "}";
    for (const BigInt& v : fp) csv += v.str() + "\n";
  }
  j["size"] = j["fp"].size();
  ctx.emit(j, text, csv);
}

int cmd_ramsey_schur(Ctx& ctx, const std::string& coloring_spec, bool distinct) {
  Coloring c = parse_coloring_spec(coloring_spec, ctx.seed);
  auto w = schur_search(c, distinct);
  if (w) {
    ordered_json j{{"command", "ramsey schur"},
                   {"found", true},
                   {"x", w->x},
                   {"y", w->y},
                   {"sum", w->x + w->y},
                   {"color", w->color}};
    ctx.emit(j, std::to_string(w->x) + " + " + std::to_string(w->y) + " = " +
                    std::to_string(w->x + w->y) + " in color " +
                    std::to_string(w->color));
    return 0;
  }
  ctx.emit(ordered_json{{"command", "ramsey schur"}, {"found", false}}, "none");
  return 1;
}

int cmd_ramsey_schur_number(Ctx& ctx, int r) {
  SchurNumberResult res = schur_number(r, ctx.budget_nodes, ctx.budget_ms());
  std::vector<int> colors(res.coloring.begin() + 1, res.coloring.end());
  ordered_json j{{"command", "ramsey schur-number"},
                 {"colors", r},
                 {"n", res.n},
                 {"exact", res.exact},
                 {"nodes", res.nodes},
                 {"coloring", colors}};
  std::ostringstream text;
  if (res.exact)
    text << res.n << "\n";
  else
    text << "at least " << res.n << " (budget exhausted)\n";
  for (int color = 0; color < r; ++color) {
    std::vector<int> members;
    for (int x = 1; x <= res.n; ++x)
      if (res.coloring[std::size_t(x)] == color) members.push_back(x);
    if (!members.empty()) text << "color " << color << ": " << join_ints(members) << "\n";
  }
  std::string csv = "element,color\n";
  for (int x = 1; x <= res.n; ++x)
    csv += std::to_string(x) + "," + std::to_string(res.coloring[std::size_t(x)]) + "\n";
  ctx.emit(j, text.str(), csv);
  return res.exact ? 0 : 1;
}

int cmd_ramsey_folkman(Ctx& ctx, const std::string& coloring_spec, int count,
                       bool repeats) {
  Coloring c = parse_coloring_spec(coloring_spec, ctx.seed);
  auto w = folkman_search(c, count, !repeats);
  if (w) {
    ordered_json j{{"command", "ramsey folkman"},
                   {"found", true},
                   {"xs", w->xs},
                   {"fs", w->fs},
                   {"color", w->color}};
    ctx.emit(j, "xs = (" + join_ints(w->xs, ",") + "), all sums {" +
                    join_ints(w->fs, ",") + "} in color " + std::to_string(w->color));
    return 0;
  }
  ctx.emit(ordered_json{{"command", "ramsey folkman"}, {"found", false}}, "none");
  return 1;
}

int cmd_ramsey_hilbert(Ctx& ctx, const std::string& coloring_spec, int count, int b_count) {
  Coloring c = parse_coloring_spec(coloring_spec, ctx.seed);
  auto w = hilbert_cube_search(c, count, b_count);
  if (w) {
    ordered_json j{{"command", "ramsey hilbert"},
                   {"found", true},
                   {"xs", w->xs},
                   {"bs", w->bs},
                   {"color", w->color}};
    ctx.emit(j, "xs = (" + join_ints(w->xs, ",") + "), translates (" +
                    join_ints(w->bs, ",") + ") in color " + std::to_string(w->color));
    return 0;
  }
  ctx.emit(ordered_json{{"command", "ramsey hilbert"}, {"found", false}}, "none");
  return 1;
}

int cmd_ramsey_simultaneous(Ctx& ctx, const std::string& coloring_spec, int len) {
  Coloring c = parse_coloring_spec(coloring_spec, ctx.seed);
  auto w = simultaneous_fs_fp_search(c, len);
  if (w) {
    ordered_json j{{"command", "ramsey simultaneous"},
                   {"found", true},
                   {"xs", w->xs},
                   {"ys", w->ys},
                   {"color", w->color}};
    ctx.emit(j, "sums of (" + join_ints(w->xs, ",") + ") and products of (" +
                    join_ints(w->ys, ",") + ") in color " + std::to_string(w->color));
    return 0;
  }
  ctx.emit(ordered_json{{"command", "ramsey simultaneous"}, {"found", false}}, "none");
  return 1;
}

int cmd_ramsey_product_fs(Ctx& ctx, const std::string& grid_spec, int m, int last_len) {
  GridColoring g = parse_grid_spec(grid_spec, ctx.seed);
  auto w = product_fs_search(g, m, last_len);
  if (w) {
    ordered_json seqs = ordered_json::array();
    std::string text;
    for (const auto& s : w->seqs) {
      seqs.push_back(s);
      text += (text.empty() ? "(" : " x (") + join_ints(s, ",") + ")";
    }
    ordered_json j{{"command", "ramsey product-fs"},
                   {"found", true},
                   {"seqs", std::move(seqs)},
                   {"color", w->color}};
    ctx.emit(j, text + " in color " + std::to_string(w->color));
    return 0;
  }
  ctx.emit(ordered_json{{"command", "ramsey product-fs"}, {"found", false}}, "none");
  return 1;
}

int cmd_ramsey_keylemma(Ctx& ctx, const std::string& alg_spec, const std::string& term_text,
                        int vars, const std::string& mode_text, std::uint64_t trials) {
  FinitePolyring k = parse_instance_spec(alg_spec);
  TermPtr f = parse_term(term_text, k.signature(), vars);
  KeyLemmaMode mode;
  if (mode_text == "exhaustive")
    mode = KeyLemmaMode::Exhaustive;
  else if (mode_text == "random")
    mode = KeyLemmaMode::Random;
  else
    throw InvalidInput("mode must be exhaustive or random");
  KeyLemmaReport r = verify_key_lemma(k, f, vars, mode, trials, ctx.seed);
  ordered_json j{{"command", "ramsey keylemma"},
                 {"degree", r.degree},
                 {"examined", r.examined},
                 {"vacuous", r.vacuous},
                 {"confirming", r.confirming},
                 {"counterexample", nullptr}};
  std::ostringstream text;
  text << "degree " << r.degree << ", examined " << r.examined << " tuple(s): "
       << r.confirming << " confirming, " << r.vacuous << " vacuous";
  if (r.counterexample) {
    ordered_json ce = ordered_json::array();
    std::string pts;
    for (const auto& pt : *r.counterexample) {
      ce.push_back(pt);
      pts += " (" + join_ints(pt, ",") + ")";
    }
    j["counterexample"] = std::move(ce);
    text << "\nCOUNTEREXAMPLE:" << pts;
    ctx.emit(j, text.str());
    return 3;  // a proved lemma failed to re-check
  }
  ctx.emit(j, text.str());
  return 0;
}

// ---- sgrp commands ---------------------------------------------------------

void cmd_sgrp_idempotents(Ctx& ctx, const std::string& g_spec, int element) {
  FiniteGroupoid g = parse_groupoid_spec(g_spec);
  IdempotentsReport r = find_idempotents(g);
  ordered_json j{{"command", "sgrp idempotents"},
                 {"size", g.size},
                 {"elements", r.elements},
                 {"forced_non_associative", r.forced_non_associative}};
  std::string text = r.elements.empty() ? "none (the table cannot be associative)"
                                        : "{" + join_ints(r.elements, ",") + "}";
  if (element >= 0) {
    int e = idempotent_power(g, element);
    j["power_of"] = element;
    j["power_lands_at"] = e;
    text += "\npowers of " + std::to_string(element) + " settle at " + std::to_string(e);
  }
  std::string csv = "element\n";
  for (int e : r.elements) csv += std::to_string(e) + "\n";
  ctx.emit(j, text, csv);
}

void cmd_sgrp_ideals(Ctx& ctx, const std::string& g_spec) {
  FiniteGroupoid g = parse_groupoid_spec(g_spec);
  SemigroupReport r = ideal_structure(g);
  ordered_json ideals = ordered_json::array();
  for (const auto& l : r.minimal_left_ideals) ideals.push_back(l);
  ordered_json j{{"command", "sgrp ideals"},
                 {"size", g.size},
                 {"associative", r.associative},
                 {"idempotents", r.idempotents},
                 {"minimal_left_ideals", std::move(ideals)},
                 {"smallest_two_sided_ideal", r.smallest_two_sided_ideal},
                 {"max_left_solutions", r.max_left_solutions}};
  std::ostringstream text;
  text << "idempotents: {" << join_ints(r.idempotents, ",") << "}\n"
       << "minimal left ideals:";
  for (const auto& l : r.minimal_left_ideals) text << " {" << join_ints(l, ",") << "}";
  text << "\nsmallest two-sided ideal: {" << join_ints(r.smallest_two_sided_ideal, ",")
       << "}\nmax solutions of a*x=b: " << r.max_left_solutions;
  ctx.emit(j, text.str());
}

void cmd_sgrp_cancel(Ctx& ctx, const std::string& g_spec) {
  FiniteGroupoid g = parse_groupoid_spec(g_spec);
  CancellativityReport r = weak_left_cancellativity(g);
  ordered_json j{{"command", "sgrp cancel"},
                 {"size", g.size},
                 {"max_solutions", r.max_solutions},
                 {"left_cancellative", r.left_cancellative}};
  ctx.emit(j, "max solutions of a*x=b: " + std::to_string(r.max_solutions) +
                  (r.left_cancellative ? " (left-cancellative)" : ""));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for finitary additive algebras: term calculus, root-set "
               "topologies, and monochromatic-structure searches"};
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx;
  app.add_option("--seed", ctx.seed, "seed for all randomized search")->capture_default_str();
  app.add_option("--budget-nodes", ctx.budget_nodes,
                 "search node budget (0 = per-command default)");
  app.add_option("--budget-seconds", ctx.budget_seconds,
                 "wall-clock budget for open-ended searches (0 = untimed)");
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
  app.add_option("--out", ctx.out_path, "write output to a file instead of stdout");

  // term
  auto* term = app.add_subcommand("term", "term calculus");
  term->require_subcommand(1);
  term->fallthrough();
  {
    static std::string text, sig, vars;
    auto* c = term->add_subcommand("normalize", "canceled signed-monomial normal form");
    c->add_option("term", text, "term text")->required();
    c->add_option("--sig", sig, "operation signature, e.g. \"m:2,f:1\"");
    c->callback([&] { cmd_term_normalize(ctx, text, sig); });

    static std::string dtext, dsig, dvars;
    auto* d = term->add_subcommand("degree", "occurrences of designated variables");
    d->add_option("term", dtext, "term text")->required();
    d->add_option("--sig", dsig, "operation signature");
    d->add_option("--vars", dvars, "designated variables, e.g. \"1,2\" (default: all)");
    d->callback([&] { cmd_term_degree(ctx, dtext, dsig, dvars); });

    static std::string stext, ssig;
    static int svar_count = 0;
    auto* s = term->add_subcommand("decompose-sum",
                                   "correction G with F(x+y) = F(x)+F(y)+G(x,y)");
    s->add_option("term", stext, "term text")->required();
    s->add_option("--sig", ssig, "operation signature");
    s->add_option("--var-count", svar_count, "number of x-variables (default: max index)");
    s->callback([&] { cmd_term_decompose_sum(ctx, stext, ssig, svar_count); });

    static std::string htext, halg, hpoint;
    auto* h = term->add_subcommand("decompose-shift",
                                   "correction H with F(x+a) = F(x)+H(x) over an instance");
    h->add_option("term", htext, "term text")->required();
    h->add_option("--alg", halg, "instance: zring:M | zgroup:M | file.json")->required();
    h->add_option("--point", hpoint, "shift a as comma-separated elements")->required();
    h->callback([&] { cmd_term_decompose_shift(ctx, htext, halg, hpoint); });
  }

  // alg
  auto* alg = app.add_subcommand("alg", "finite instances");
  alg->require_subcommand(1);
  alg->fallthrough();
  {
    static std::string calg;
    auto* c = alg->add_subcommand("check", "verify the additive-algebra axioms");
    c->add_option("--alg", calg, "instance: zring:M | zgroup:M | file.json")->required();
    c->callback([&] { cmd_alg_check(ctx, calg); });

    static std::string ealg;
    static int earity = 2;
    static std::uint64_t ecap = 4096;
    static bool ebrute = false, etables = false;
    auto* e = alg->add_subcommand("enum-ops", "enumerate coordinatewise-additive ops");
    e->add_option("--alg", ealg, "instance")->required();
    e->add_option("--arity", earity, "op arity")->capture_default_str();
    e->add_option("--cap", ecap, "max ops to materialize")->capture_default_str();
    e->add_flag("--brute", ebrute, "scan all tables instead of the basis method");
    e->add_flag("--tables", etables, "include the op tables in the output");
    e->callback([&] { cmd_alg_enum_ops(ctx, ealg, earity, ecap, ebrute, etables); });

    static std::string gg;
    static int gmod = 2, gsupport = 0, glimit = 1024;
    auto* g = alg->add_subcommand("groupoid-ring",
                                  "functions groupoid -> Z_m with convolution");
    g->add_option("--groupoid", gg, "groupoid: zmul:M | leftzero:N | rightzero:N | "
                                    "null:N | file.json")
        ->required();
    g->add_option("--mod", gmod, "coefficient modulus")->capture_default_str();
    g->add_option("--support-bound", gsupport, "declared support bound (informational)");
    g->add_option("--size-limit", glimit, "refuse carriers above this size")
        ->capture_default_str();
    g->callback([&] { cmd_alg_groupoid_ring(ctx, gg, gmod, gsupport, glimit); });

    static std::vector<std::string> palgs;
    auto* p = alg->add_subcommand("product", "direct product of instances");
    p->add_option("--alg", palgs, "instances (repeat the flag)")->required();
    p->callback([&] { cmd_alg_product(ctx, palgs); });
  }

  // zariski
  auto* zar = app.add_subcommand("zariski", "root-set topologies on finite powers");
  zar->require_subcommand(1);
  zar->fallthrough();
  {
    static std::string calg;
    static int cn = 1;
    static std::size_t ccap = 100000;
    static bool clist = false;
    auto* c = zar->add_subcommand("clone", "term functions K^n -> K");
    c->add_option("--alg", calg, "instance")->required();
    c->add_option("--n", cn, "number of variables")->capture_default_str();
    c->add_option("--cap", ccap, "max functions to materialize")->capture_default_str();
    c->add_flag("--list", clist, "list generator term texts");
    c->callback([&] { cmd_zariski_clone(ctx, calg, cn, ccap, clist); });

    static std::string aalg;
    static int an = 1;
    static std::size_t acap = 100000;
    auto* a = zar->add_subcommand("analyze", "discreteness, components, psi, ind");
    a->add_option("--alg", aalg, "instance")->required();
    a->add_option("--n", an, "number of variables")->capture_default_str();
    a->add_option("--cap", acap, "clone cap")->capture_default_str();
    a->callback([&] { cmd_zariski_analyze(ctx, aalg, an, acap); });

    static int km = 1, kcross = 2;
    auto* k = zar->add_subcommand("cantor", "the F_2^m root-set inventory");
    k->add_option("--m", km, "number of factors")->required();
    k->add_option("--crosscheck", kcross,
                  "materialize the union closure up to this m")
        ->capture_default_str();
    k->callback([&] { cmd_zariski_cantor(ctx, km, kcross); });

    static std::string ssym = "zring:1", sterms, savoid = "empty";
    static int sn = 1, sdeg = 1, stail = 0;
    static long long swin = 0;
    auto* s = zar->add_subcommand("certificate",
                                  "search for a vanishing witness on a product of "
                                  "finite-sums sets");
    s->add_option("--sym", ssym, "symbolic instance: zring:D | zgroup:D | file.json")
        ->capture_default_str();
    s->add_option("--terms", sterms, "candidate terms over x1..x(n+1), ';'-separated")
        ->required();
    s->add_option("--n", sn, "leading axes")->capture_default_str();
    s->add_option("--degree-bound", sdeg, "length of each leading sequence minus one")
        ->capture_default_str();
    s->add_option("--tail-len", stail, "tail sequence length (0 = degree bound + 1)");
    s->add_option("--avoid", savoid, "avoid set: empty | graph:TERM")->capture_default_str();
    s->add_option("--validate-window", swin,
                  "first check the cover hypothesis on this window radius");
    s->callback([&] {
      ctx.exit_code = cmd_zariski_certificate(ctx, ssym, sterms, sn, sdeg, stail, savoid, swin);
    });

    static std::string vpath;
    auto* v = zar->add_subcommand("verify", "replay a certificate file");
    v->add_option("file", vpath, "certificate JSON path")->required();
    v->callback([&] { ctx.exit_code = cmd_zariski_verify(ctx, vpath); });

    static long long pcoeff = 3, pradius = 8;
    auto* p = zar->add_subcommand("parabola", "degree-1 density of the square points");
    p->add_option("--coeff-bound", pcoeff, "box scan bound")->capture_default_str();
    p->add_option("--window-radius", pradius, "window half-width")->capture_default_str();
    p->callback([&] { cmd_zariski_parabola(ctx, pcoeff, pradius); });
  }

  // ramsey
  auto* ram = app.add_subcommand("ramsey", "monochromatic-structure searches");
  ram->require_subcommand(1);
  ram->fallthrough();
  {
    static std::string fseq, fbound;
    auto* f = ram->add_subcommand("fs", "finite sums of a sequence");
    f->add_option("seq", fseq, "comma-separated integers")->required();
    f->add_option("--bound", fbound, "keep sums <= bound");
    f->callback([&] { cmd_ramsey_fs(ctx, fseq, fbound); });

    static std::string pseq, pg;
    static bool pwords = false;
    auto* p = ram->add_subcommand("fp", "finite products in index order");
    p->add_option("seq", pseq, "comma-separated integers or words")->required();
    p->add_option("--groupoid", pg, "finite groupoid to multiply in");
    p->add_flag("--words", pwords, "concatenate as free words");
    p->callback([&] { cmd_ramsey_fp(ctx, pseq, pg, pwords); });

    static std::string scol;
    static bool sdist = false;
    auto* s = ram->add_subcommand("schur", "monochromatic x, y, x+y");
    s->add_option("--coloring", scol,
                  "single:N | parity:N | mod:K:N | random:COLORS:N | file.csv")
        ->required();
    s->add_flag("--distinct", sdist, "require x != y");
    s->callback([&] { ctx.exit_code = cmd_ramsey_schur(ctx, scol, sdist); });

    static int nr = 2;
    auto* n = ram->add_subcommand("schur-number",
                                  "largest interval with a sum-free-per-class coloring");
    n->add_option("colors", nr, "number of colors")->required();
    n->callback([&] { ctx.exit_code = cmd_ramsey_schur_number(ctx, nr); });

    static std::string fcol;
    static int fcount = 2;
    static bool frepeats = false;
    auto* fo = ram->add_subcommand("folkman", "monochromatic finite-sums tuple");
    fo->add_option("--coloring", fcol, "coloring spec")->required();
    fo->add_option("--count", fcount, "tuple length")->capture_default_str();
    fo->add_flag("--repeats", frepeats, "allow repeated elements");
    fo->callback([&] { ctx.exit_code = cmd_ramsey_folkman(ctx, fcol, fcount, frepeats); });

    static std::string hcol;
    static int hcount = 1, hb = 2;
    auto* h = ram->add_subcommand("hilbert", "translated cube of subset sums");
    h->add_option("--coloring", hcol, "coloring spec")->required();
    h->add_option("--count", hcount, "generator count")->capture_default_str();
    h->add_option("--b-count", hb, "number of translates")->capture_default_str();
    h->callback([&] { ctx.exit_code = cmd_ramsey_hilbert(ctx, hcol, hcount, hb); });

    static std::string mcol;
    static int mlen = 2;
    auto* m = ram->add_subcommand("simultaneous", "one color holding FS(x) and FP(y)");
    m->add_option("--coloring", mcol, "coloring spec")->required();
    m->add_option("--len", mlen, "sequence length")->capture_default_str();
    m->callback([&] { ctx.exit_code = cmd_ramsey_simultaneous(ctx, mcol, mlen); });

    static std::string gcol;
    static int gm = 1, glast = 1;
    auto* g = ram->add_subcommand("product-fs",
                                  "monochromatic product of per-axis finite-sums sets");
    g->add_option("--grid", gcol,
                  "single:A,B | parity-sum:A,B | mod-sum:K:A,B | random:COLORS:A,B")
        ->required();
    g->add_option("--m", gm, "leading axis sequence length")->capture_default_str();
    g->add_option("--last-len", glast, "last axis sequence length")->capture_default_str();
    g->callback([&] { ctx.exit_code = cmd_ramsey_product_fs(ctx, gcol, gm, glast); });

    static std::string kalg, kterm, kmode = "exhaustive";
    static int kvars = 1;
    static std::uint64_t ktrials = 10000;
    auto* k = ram->add_subcommand("keylemma",
                                  "vanishing on subset-sum tuples forces vanishing at 0");
    k->add_option("--alg", kalg, "instance")->required();
    k->add_option("--term", kterm, "term over x1..x(vars)")->required();
    k->add_option("--vars", kvars, "variable count")->capture_default_str();
    k->add_option("--mode", kmode, "exhaustive | random")->capture_default_str();
    k->add_option("--trials", ktrials, "random-mode sample count")->capture_default_str();
    k->callback([&] {
      ctx.exit_code = cmd_ramsey_keylemma(ctx, kalg, kterm, kvars, kmode, ktrials);
    });
  }

  // sgrp
  auto* sg = app.add_subcommand("sgrp", "finite semigroup structure");
  sg->require_subcommand(1);
  sg->fallthrough();
  {
    static std::string ig;
    static int ielem = -1;
    auto* i = sg->add_subcommand("idempotents", "elements with e*e = e");
    i->add_option("--groupoid", ig, "groupoid spec")->required();
    i->add_option("--element", ielem, "also settle the powers of this element");
    i->callback([&] { cmd_sgrp_idempotents(ctx, ig, ielem); });

    static std::string dg;
    auto* d = sg->add_subcommand("ideals", "minimal left ideals and the kernel");
    d->add_option("--groupoid", dg, "groupoid spec")->required();
    d->callback([&] { cmd_sgrp_ideals(ctx, dg); });

    static std::string cg;
    auto* c = sg->add_subcommand("cancel", "left solution counts");
    c->add_option("--groupoid", cg, "groupoid spec")->required();
    c->callback([&] { cmd_sgrp_cancel(ctx, cg); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}
