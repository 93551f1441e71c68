#include "qalg/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qalg/error.hpp"

namespace qalg {

using json = nlohmann::ordered_json;

namespace {

std::string location(std::string_view text, std::size_t byte) {
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

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ValidationError("invalid JSON at " + location(text, e.byte ? e.byte - 1 : 0) + ": " + msg);
  }
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

Distance as_distance(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_distance(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!j.is_number()) throw ValidationError(where + ": expected a number or \"inf\"");
  const double d = j.get<double>();
  if (!is_valid_distance(d)) throw ValidationError(where + ": negative distance");
  return d;
}

std::size_t as_count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw ValidationError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

MetricSpace space_from(const json& j, const std::string& where) {
  const json& pts = member(j, "points", where);
  if (!pts.is_array()) throw ValidationError(where + ".points: expected an array");
  std::vector<std::string> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string p = as_string(pts[i], where + ".points[" + std::to_string(i) + "]");
    if (p.empty()) throw ValidationError(where + ".points: empty point name");
    if (is_formal_variable(p))
      throw ValidationError(where + ".points: '" + p + "' is reserved for formal variables");
    points.push_back(std::move(p));
  }
  std::set<std::string> seen;
  for (const auto& p : points)
    if (!seen.insert(p).second) throw ValidationError(where + ".points: duplicate point '" + p + "'");

  Distance fallback = kInfinity;
  if (j.contains("default")) fallback = as_distance(j["default"], where + ".default");
  const std::size_t n = points.size();
  auto index = [&](const std::string& name, const std::string& at) {
    for (std::size_t i = 0; i < n; ++i)
      if (points[i] == name) return i;
    throw ValidationError(at + ": unknown point '" + name + "'");
  };
  std::vector<Distance> table(n * n, fallback);
  std::vector<char> set(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) table[i * n + i] = 0.0;
  if (j.contains("dist")) {
    const json& dist = j["dist"];
    if (!dist.is_array()) throw ValidationError(where + ".dist: expected an array");
    for (std::size_t k = 0; k < dist.size(); ++k) {
      const std::string at = where + ".dist[" + std::to_string(k) + "]";
      const json& e = dist[k];
      if (!e.is_array() || e.size() != 3) throw ValidationError(at + ": expected [point, point, distance]");
      const std::size_t a = index(as_string(e[0], at), at), b = index(as_string(e[1], at), at);
      const Distance d = as_distance(e[2], at);
      if (a == b) {
        if (d != 0.0) throw ValidationError(at + ": diagonal distance must be 0");
        continue;
      }
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
        if (set[p * n + q] && table[p * n + q] != d)
          throw ValidationError(at + ": conflicting distance for (" + points[a] + "," + points[b] + ")");
        table[p * n + q] = d;
        set[p * n + q] = 1;
      }
    }
  }
  try {
    return MetricSpace::from_table(std::move(points), std::move(table));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Signature signature_from(const json& j, const std::string& where) {
  const json& ops = member(j, "ops", where);
  if (!ops.is_object()) throw ValidationError(where + ".ops: expected an object");
  Signature sig;
  for (auto it = ops.begin(); it != ops.end(); ++it) {
    try {
      sig.add(it.key(), as_count(it.value(), where + ".ops." + it.key()));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ".ops: " + e.what());
    }
  }
  return sig;
}

Term term_from(const json& j, const Signature& sig, const std::string& where) {
  try {
    return parse_term(as_string(j, where), sig);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::size_t nesting(const json& j) {
  if (j.is_string()) return 0;
  if (j.is_array() && !j.empty()) return 1 + nesting(j[0]);
  return 0;
}

void flatten_table(const json& j, std::size_t arity, const MetricSpace& carrier,
                   std::vector<std::size_t>& out, const std::string& where) {
  if (arity == 0) {
    const std::string name = as_string(j, where);
    auto idx = carrier.find(name);
    if (!idx) throw ValidationError(where + ": '" + name + "' is not a carrier point");
    out.push_back(*idx);
    return;
  }
  if (!j.is_array() || j.size() != carrier.size())
    throw ValidationError(where + ": expected an array of " + std::to_string(carrier.size()) + " entries");
  for (std::size_t i = 0; i < j.size(); ++i)
    flatten_table(j[i], arity - 1, carrier, out, where + "[" + std::to_string(i) + "]");
}

std::string with_path(const std::filesystem::path& path, const ValidationError& e) {
  return path.string() + ": " + e.what();
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetricSpace parse_space(std::string_view text) { return space_from(parse_json(text), "space"); }

MetricSpace load_space(const std::filesystem::path& path) {
  try {
    return parse_space(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(with_path(path, e));
  }
}

Signature parse_signature(std::string_view text) {
  return signature_from(parse_json(text), "signature");
}

VarietyPresentation parse_variety(std::string_view text) {
  const json j = parse_json(text);
  VarietyPresentation v;
  v.name = j.contains("name") ? as_string(j["name"], "variety.name") : "custom";
  v.signature = signature_from(member(j, "signature", "variety"), "variety.signature");
  if (j.contains("vars")) {
    const json& vars = j["vars"];
    if (!vars.is_array()) throw ValidationError("variety.vars: expected an array");
    for (const auto& x : vars) v.vars.push_back(as_string(x, "variety.vars"));
  }
  const json& eqs = member(j, "equations", "variety");
  if (!eqs.is_array()) throw ValidationError("variety.equations: expected an array");
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    const std::string at = "variety.equations[" + std::to_string(k) + "]";
    QuantEquation e;
    e.lhs = term_from(member(eqs[k], "lhs", at), v.signature, at + ".lhs");
    e.rhs = term_from(member(eqs[k], "rhs", at), v.signature, at + ".rhs");
    e.eps = eqs[k].contains("eps") ? as_distance(eqs[k]["eps"], at + ".eps") : 0.0;
    v.equations.push_back(std::move(e));
  }
  if (v.vars.empty()) {
    std::set<std::string> all;
    for (const auto& e : v.equations)
      for (auto& x : e.variables()) all.insert(x);
    v.vars.assign(all.begin(), all.end());
  }
  v.validate();
  return v;
}

VarietyPresentation load_variety(const std::filesystem::path& path) {
  try {
    return parse_variety(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(with_path(path, e));
  }
}

FiniteQuantAlgebra parse_algebra(std::string_view text) {
  const json j = parse_json(text);
  const MetricSpace carrier = space_from(member(j, "carrier", "algebra"), "algebra.carrier");
  const json& ops = member(j, "ops", "algebra");
  if (!ops.is_object()) throw ValidationError("algebra.ops: expected an object");
  std::optional<Signature> declared;
  if (j.contains("signature")) declared = signature_from(j["signature"], "algebra.signature");
  Signature sig;
  std::map<std::string, std::vector<std::size_t>> tables;
  for (auto it = ops.begin(); it != ops.end(); ++it) {
    const std::string at = "algebra.ops." + it.key();
    std::size_t arity = nesting(it.value());
    if (declared) {
      auto a = declared->arity(it.key());
      if (!a) throw ValidationError(at + ": symbol missing from the declared signature");
      arity = *a;
    }
    sig.add(it.key(), arity);
    flatten_table(it.value(), arity, carrier, tables[it.key()], at);
  }
  if (declared)
    for (const auto& [name, ar] : declared->symbols())
      if (!sig.contains(name)) throw ValidationError("algebra.ops: no table for '" + name + "'");
  return FiniteQuantAlgebra(carrier, declared ? *declared : sig, std::move(tables));
}

FiniteQuantAlgebra load_algebra(const std::filesystem::path& path) {
  try {
    return parse_algebra(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(with_path(path, e));
  }
}

DirectedChain parse_chain(std::string_view text, std::size_t stage_override) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("chain: expected an object");
  const std::size_t first = j.contains("first") ? as_count(j["first"], "chain.first") : 0;
  if (j.contains("kind")) {
    const std::string kind = as_string(j["kind"], "chain.kind");
    if (kind != "scaled") throw ValidationError("chain.kind: unknown generator '" + kind + "'");
    const MetricSpace base = space_from(member(j, "space", "chain"), "chain.space");
    const Distance ratio = as_distance(member(j, "ratio", "chain"), "chain.ratio");
    if (!(ratio > 0.0 && ratio <= 1.0))
      throw ValidationError("chain.ratio: must lie in (0, 1] for nonexpanding links");
    std::size_t count = j.contains("stages") ? as_count(j["stages"], "chain.stages") : 10;
    if (stage_override) count = stage_override;
    return DirectedChain::scaled(base, ratio, first, count);
  }
  const json& st = member(j, "stages", "chain");
  if (!st.is_array()) throw ValidationError("chain.stages: expected an array of spaces");
  std::vector<MetricSpace> stages;
  for (std::size_t i = 0; i < st.size(); ++i)
    stages.push_back(space_from(st[i], "chain.stages[" + std::to_string(i) + "]"));
  if (stage_override && stage_override < stages.size()) stages.resize(stage_override);
  if (!j.contains("links")) return DirectedChain::identity_linked(std::move(stages), first);
  const json& ls = j["links"];
  if (!ls.is_array() || ls.size() + 1 < stages.size())
    throw ValidationError("chain.links: expected one map per consecutive stage pair");
  std::vector<PointMap> links;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    const std::string at = "chain.links[" + std::to_string(i) + "]";
    PointMap f(stages[i].size(), 0);
    std::vector<char> hit(stages[i].size(), 0);
    if (!ls[i].is_object()) throw ValidationError(at + ": expected an object");
    for (auto it = ls[i].begin(); it != ls[i].end(); ++it) {
      auto from = stages[i].find(it.key());
      const std::string target = as_string(it.value(), at);
      auto to = stages[i + 1].find(target);
      if (!from || !to) throw ValidationError(at + ": unknown point in '" + it.key() + "' -> '" + target + "'");
      f[*from] = *to;
      hit[*from] = 1;
    }
    for (std::size_t p = 0; p < hit.size(); ++p)
      if (!hit[p]) throw ValidationError(at + ": no image for '" + stages[i].point(p) + "'");
    links.push_back(std::move(f));
  }
  return DirectedChain(std::move(stages), std::move(links), first);
}

DirectedChain load_chain(const std::filesystem::path& path, std::size_t stage_override) {
  try {
    return parse_chain(read_file(path), stage_override);
  } catch (const ValidationError& e) {
    throw ValidationError(with_path(path, e));
  }
}

VarietyPresentation resolve_variety(std::string_view spec) {
  const std::string s(spec);
  auto arg = [&](std::string_view prefix) -> std::optional<std::string> {
    if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
    return std::nullopt;
  };
  if (s == "monoid") return monoid_presentation();
  if (s == "semilattice") return semilattice_presentation();
  if (auto a = arg("two-eps-ops:")) return two_eps_ops_presentation(parse_distance(*a));
  if (auto a = arg("small:")) return small_presentation(parse_distance(*a));
  if (auto a = arg("action:")) return action_presentation(load_algebra(*a));
  if (auto a = arg("exceptions:")) return exceptions_presentation(load_space(*a));
  return load_variety(s);
}

}  // namespace qalg
