#include "qalg/algebra.hpp"

#include <algorithm>

#include "qalg/error.hpp"

namespace qalg {

namespace {

std::size_t tuple_count(std::size_t n, std::size_t arity) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < arity; ++i) c *= n;
  return c;
}

std::size_t tuple_index(std::size_t n, std::span<const std::size_t> args) {
  std::size_t k = 0;
  for (std::size_t a : args) k = k * n + a;
  return k;
}

}  // namespace

FiniteQuantAlgebra::FiniteQuantAlgebra(MetricSpace carrier, Signature sig,
                                       std::map<std::string, std::vector<std::size_t>> tables)
    : carrier_(std::move(carrier)), sig_(std::move(sig)) {
  const std::size_t n = carrier_.size();
  for (auto& [name, table] : tables) {
    auto ar = sig_.arity(name);
    if (!ar) throw ValidationError("table for unknown symbol '" + name + "'");
    if (table.size() != tuple_count(n, *ar))
      throw ValidationError("table for '" + name + "' has " + std::to_string(table.size()) +
                            " entries, expected " + std::to_string(tuple_count(n, *ar)));
    for (std::size_t v : table)
      if (v >= n) throw ValidationError("table for '" + name + "' leaves the carrier");
    tables_.emplace(name, std::move(table));
  }
  for (const auto& [name, ar] : sig_.symbols())
    if (!tables_.count(name)) throw ValidationError("no interpretation for symbol '" + name + "'");
}

bool FiniteQuantAlgebra::interprets(std::string_view symbol) const {
  return tables_.find(symbol) != tables_.end();
}

const std::vector<std::size_t>& FiniteQuantAlgebra::table(std::string_view symbol) const {
  auto it = tables_.find(symbol);
  if (it == tables_.end())
    throw UndefinedError("no interpretation for symbol '" + std::string(symbol) + "'");
  return it->second;
}

std::size_t FiniteQuantAlgebra::apply(std::string_view symbol,
                                      std::span<const std::size_t> args) const {
  const auto& t = table(symbol);
  return t.at(tuple_index(size(), args));
}

std::size_t evaluate(const Term& t, const FiniteQuantAlgebra& a, const Environment& env) {
  return fold<std::size_t>(
      t,
      [&](const std::string& leaf) {
        auto it = env.find(leaf);
        if (it == env.end()) throw UndefinedError("environment undefined on leaf '" + leaf + "'");
        return it->second;
      },
      [&](const std::string& sym, std::span<const std::size_t> args) { return a.apply(sym, args); });
}

std::string NonexpansionReport::describe(const FiniteQuantAlgebra& a) const {
  if (ok) return "nonexpanding (" + std::to_string(pairs_checked) + " tuple pairs)";
  auto tuple = [&](const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + a.carrier().point(v[i]);
    return s + ")";
  };
  return symbol + tuple(args1) + " vs " + symbol + tuple(args2) + ": inputs at distance " +
         format_distance(input) + ", results at distance " + format_distance(output);
}

NonexpansionReport check_nonexpanding(const FiniteQuantAlgebra& a) {
  NonexpansionReport rep;
  const std::size_t n = a.size();
  const auto& d = a.carrier();
  for (const auto& [name, arity] : a.signature().symbols()) {
    const auto& table = a.table(name);
    const std::size_t count = tuple_count(n, arity);
    std::vector<std::size_t> u(arity), v(arity);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) {
        ++rep.pairs_checked;
        Distance in = 0.0;
        for (std::size_t k = 0, ri = i, rj = j; k < arity; ++k, ri /= n, rj /= n) {
          u[arity - 1 - k] = ri % n;
          v[arity - 1 - k] = rj % n;
          in = std::max(in, d(ri % n, rj % n));
        }
        const Distance out = d(table[i], table[j]);
        if (!leq(out, in)) {
          rep.ok = false;
          rep.symbol = name;
          rep.args1 = u;
          rep.args2 = v;
          rep.input = in;
          rep.output = out;
          return rep;
        }
      }
  }
  return rep;
}

}  // namespace qalg
