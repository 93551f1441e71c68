#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qalg/metric_space.hpp"
#include "qalg/term.hpp"

namespace qalg {

/// Finite metric space with an operation table per symbol. Tables are
/// row-major over argument tuples: entry sum_i a_i * n^(arity-1-i).
class FiniteQuantAlgebra {
 public:
  FiniteQuantAlgebra() = default;
  /// Throws ValidationError for a missing or ill-sized table or an entry outside the carrier.
  FiniteQuantAlgebra(MetricSpace carrier, Signature sig,
                     std::map<std::string, std::vector<std::size_t>> tables);

  const MetricSpace& carrier() const { return carrier_; }
  const Signature& signature() const { return sig_; }
  std::size_t size() const { return carrier_.size(); }

  bool interprets(std::string_view symbol) const;
  /// Throws UndefinedError for an uninterpreted symbol.
  std::size_t apply(std::string_view symbol, std::span<const std::size_t> args) const;
  const std::vector<std::size_t>& table(std::string_view symbol) const;

 private:
  MetricSpace carrier_;
  Signature sig_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> tables_;
};

/// Leaf assignment for evaluation: leaf label -> carrier index.
using Environment = std::unordered_map<std::string, std::size_t>;

/// t_A under env. Throws UndefinedError for an unassigned leaf or missing symbol.
std::size_t evaluate(const Term& t, const FiniteQuantAlgebra& a, const Environment& env);

struct NonexpansionReport {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  // first violation
  std::string symbol;
  std::vector<std::size_t> args1, args2;
  Distance input = 0.0;   // max_i d(args1_i, args2_i)
  Distance output = 0.0;  // d(op(args1), op(args2))

  std::string describe(const FiniteQuantAlgebra& a) const;
};

/// Exhaustive check of d(op(u), op(v)) <= max_i d(u_i, v_i) for every symbol.
NonexpansionReport check_nonexpanding(const FiniteQuantAlgebra& a);

/// Calls visit(tuple) for every tuple in carrier^arity in row-major order.
template <class Visit>
void for_each_tuple(std::size_t n, std::size_t arity, Visit&& visit) {
  std::vector<std::size_t> idx(arity, 0);
  if (arity > 0 && n == 0) return;
  for (;;) {
    visit(std::span<const std::size_t>(idx));
    std::size_t pos = arity;
    for (;;) {
      if (pos == 0) return;
      --pos;
      if (++idx[pos] < n) break;
      idx[pos] = 0;
    }
  }
}

}  // namespace qalg
