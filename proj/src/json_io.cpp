#include "polyring/json_io.hpp"

#include <fstream>
#include <sstream>

#include "polyring/errors.hpp"

namespace polyring {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw InvalidInput(what); }

// nlohmann's own errors carry the offending path/type; keep that text
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

ordered_json big_to_json(const BigInt& v) { return v.str(); }

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      bad("not an integer literal: " + j.get<std::string>());
    }
  }
  bad("expected an integer or a decimal string");
}

ordered_json bigvec_to_json(const BigVec& v) {
  ordered_json out = ordered_json::array();
  for (const BigInt& x : v) out.push_back(big_to_json(x));
  return out;
}

BigVec bigvec_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of integers");
  BigVec out;
  for (const auto& x : j) out.push_back(big_from_json(x));
  return out;
}

std::string kind_name(SymbolicOp::Kind k) {
  switch (k) {
    case SymbolicOp::Kind::Product: return "product";
    case SymbolicOp::Kind::Matrix: return "matrix";
    case SymbolicOp::Kind::Zero: return "zero";
  }
  bad("unknown op kind");
}

}  // namespace

ordered_json instance_to_json(const FinitePolyring& k) {
  ordered_json j;
  j["size"] = k.size();
  j["add"] = k.add_table();
  j["neg"] = k.neg_table();
  j["ops"] = ordered_json::object();
  for (const auto& [name, t] : k.ops())
    j["ops"][name] = ordered_json{{"arity", t.arity}, {"table", t.table}};
  return j;
}

FinitePolyring instance_from_json(const json& j) {
  return guarded("instance", [&] {
    if (!j.is_object()) bad("instance: expected a JSON object");
    std::map<std::string, OpTable> ops;
    if (j.contains("ops")) {
      if (!j.at("ops").is_object()) bad("instance: ops must be an object");
      for (const auto& [name, spec] : j.at("ops").items()) {
        OpTable t;
        t.arity = spec.at("arity").get<int>();
        t.table = spec.at("table").get<std::vector<int>>();
        ops.emplace(name, std::move(t));
      }
    }
    return FinitePolyring(j.at("size").get<int>(),
                          j.at("add").get<std::vector<int>>(),
                          j.at("neg").get<std::vector<int>>(), std::move(ops));
  });
}

ordered_json symbolic_to_json(int dimension, const std::vector<SymbolicOp>& ops) {
  ordered_json j;
  j["dimension"] = dimension;
  j["ops"] = ordered_json::array();
  for (const SymbolicOp& op : ops) {
    ordered_json entry{{"name", op.name}, {"kind", kind_name(op.kind)}};
    if (op.kind == SymbolicOp::Kind::Matrix)
      entry["params"] = ordered_json{{"matrix", op.matrix}};
    else
      entry["params"] = ordered_json{{"arity", op.arity}};
    j["ops"].push_back(std::move(entry));
  }
  return j;
}

SymbolicPolyring symbolic_from_json(const json& j) {
  return guarded("symbolic instance", [&] {
    if (!j.is_object()) bad("symbolic instance: expected a JSON object");
    std::vector<SymbolicOp> ops;
    if (j.contains("ops")) {
      for (const auto& entry : j.at("ops")) {
        SymbolicOp op;
        op.name = entry.at("name").get<std::string>();
        std::string kind = entry.at("kind").get<std::string>();
        json params = entry.value("params", json::object());
        if (kind == "product") {
          op.kind = SymbolicOp::Kind::Product;
          op.arity = params.value("arity", 2);
        } else if (kind == "zero") {
          op.kind = SymbolicOp::Kind::Zero;
          op.arity = params.value("arity", 1);
        } else if (kind == "matrix") {
          op.kind = SymbolicOp::Kind::Matrix;
          op.arity = 1;
          op.matrix = params.at("matrix").get<std::vector<std::vector<long long>>>();
        } else {
          bad("symbolic instance: unknown op kind \"" + kind + "\"");
        }
        ops.push_back(std::move(op));
      }
    }
    return SymbolicPolyring(j.at("dimension").get<int>(), std::move(ops));
  });
}

ordered_json groupoid_to_json(const FiniteGroupoid& g) {
  return ordered_json{{"size", g.size}, {"mul", g.mul}};
}

FiniteGroupoid groupoid_from_json(const json& j) {
  return guarded("groupoid", [&] {
    FiniteGroupoid g;
    g.size = j.at("size").get<int>();
    g.mul = j.at("mul").get<std::vector<int>>();
    if (g.size < 1) bad("groupoid: size must be positive");
    if (g.mul.size() != std::size_t(g.size) * std::size_t(g.size))
      bad("groupoid: mul table must have size*size entries");
    for (int v : g.mul)
      if (v < 0 || v >= g.size) bad("groupoid: table entry outside carrier");
    return g;
  });
}

ordered_json certificate_to_json(const Certificate& c) {
  ordered_json j;
  j["kind"] = "nowhere-dense-certificate";
  j["instance"] = symbolic_to_json(c.dimension, c.instance_ops);
  j["terms"] = c.term_texts;
  j["leading_axes"] = c.n;
  j["degree_bound"] = c.degree_bound;
  j["tail_len"] = c.tail_len;
  j["sequences"] = ordered_json::array();
  for (const auto& seq : c.sequences) {
    ordered_json s = ordered_json::array();
    for (const BigVec& v : seq) s.push_back(bigvec_to_json(v));
    j["sequences"].push_back(std::move(s));
  }
  j["witness_term"] = c.witness_term;
  switch (c.avoid.kind) {
    case AvoidSet::Kind::Empty:
      j["avoid"] = ordered_json{{"kind", "empty"}};
      break;
    case AvoidSet::Kind::Graph:
      j["avoid"] = ordered_json{{"kind", "graph"},
                                {"term", to_string(c.avoid.graph_term)}};
      break;
    case AvoidSet::Kind::Points: {
      ordered_json pts = ordered_json::array();
      for (const auto& pt : c.avoid.points) {
        ordered_json coords = ordered_json::array();
        for (const BigVec& v : pt) coords.push_back(bigvec_to_json(v));
        pts.push_back(std::move(coords));
      }
      j["avoid"] = ordered_json{{"kind", "points"}, {"points", std::move(pts)}};
      break;
    }
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  return guarded("certificate", [&] {
    if (!j.is_object()) bad("certificate: expected a JSON object");
    if (j.value("kind", "") != std::string("nowhere-dense-certificate"))
      bad("certificate: kind must be \"nowhere-dense-certificate\"");

    Certificate c;
    // construct once to validate dimension/op shapes
    SymbolicPolyring inst = symbolic_from_json(j.at("instance"));
    c.dimension = inst.dimension();
    c.instance_ops = inst.ops();
    c.term_texts = j.at("terms").get<std::vector<std::string>>();
    c.n = j.at("leading_axes").get<int>();
    c.degree_bound = j.at("degree_bound").get<int>();
    c.tail_len = j.at("tail_len").get<int>();
    for (const auto& seq : j.at("sequences")) {
      std::vector<BigVec> s;
      for (const auto& v : seq) s.push_back(bigvec_from_json(v));
      c.sequences.push_back(std::move(s));
    }
    c.witness_term = j.at("witness_term").get<int>();

    const json& av = j.at("avoid");
    std::string kind = av.at("kind").get<std::string>();
    if (kind == "empty") {
      c.avoid.kind = AvoidSet::Kind::Empty;
    } else if (kind == "graph") {
      c.avoid.kind = AvoidSet::Kind::Graph;
      c.avoid.graph_term =
          parse_term(av.at("term").get<std::string>(), inst.signature());
    } else if (kind == "points") {
      c.avoid.kind = AvoidSet::Kind::Points;
      for (const auto& pt : av.at("points")) {
        std::vector<BigVec> coords;
        for (const auto& v : pt) coords.push_back(bigvec_from_json(v));
        c.avoid.points.push_back(std::move(coords));
      }
    } else {
      bad("certificate: unknown avoid kind \"" + kind + "\"");
    }
    return c;
  });
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("malformed JSON in " + path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write file: " + path);
  out << content;
  if (!out.flush()) bad("cannot write file: " + path);
}

}  // namespace polyring
