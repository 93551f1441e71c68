#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/distance.hpp"
#include "qalg/metric_space.hpp"

namespace qalg {

/// Finitary signature: symbol names with arities, kept in declaration order.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<std::string, std::size_t>> symbols);

  /// Throws ValidationError on a duplicate name.
  void add(std::string name, std::size_t arity);

  std::optional<std::size_t> arity(std::string_view name) const;
  bool contains(std::string_view name) const { return arity(name).has_value(); }

  const std::vector<std::pair<std::string, std::size_t>>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  std::size_t max_arity() const;

  bool operator==(const Signature& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<std::pair<std::string, std::size_t>> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Immutable term tree with structural sharing. Leaves carry point or
/// variable names; inner nodes carry an operation symbol. A nullary symbol
/// is an inner node with no children and is distinct from a leaf.
class Term {
 public:
  Term() = default;  // empty handle; only valid as a placeholder

  static Term leaf(std::string name);
  static Term op(std::string symbol, std::vector<Term> children = {});

  bool valid() const { return node_ != nullptr; }
  bool is_leaf() const { return node_->leaf; }
  const std::string& label() const { return node_->label; }
  const std::vector<Term>& children() const { return node_->children; }
  std::size_t arity() const { return node_->children.size(); }
  const Term& child(std::size_t i) const { return node_->children.at(i); }

  /// 0 for leaves and constants, else 1 + max child depth.
  std::size_t depth() const { return node_->depth; }
  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b);
  /// Total structural order: leaves before operations, then label, then children.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool leaf;
    std::string label;
    std::vector<Term> children;
    std::size_t hash;
    std::size_t depth;
    std::size_t size;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// --- Text form ------------------------------------------------------------

/// S-expression printer: leaves bare, (sym child ...) for operations, (c) for constants.
std::string to_string(const Term& t);

/// Strict parser. Every operation symbol must be in sig with matching arity and
/// bare identifiers naming a symbol are rejected. Throws ValidationError with
/// the character offset of the problem.
Term parse_term(std::string_view text, const Signature& sig);

/// Parser without a signature: arities are read off the text.
Term parse_term_untyped(std::string_view text);

// --- Formal variables -----------------------------------------------------

/// Names matching x0, x1, ... are reserved for equation variables.
bool is_formal_variable(std::string_view name);
std::string formal_variable(std::size_t i);
/// Index of a formal variable name, nullopt for other names.
std::optional<std::size_t> formal_variable_index(std::string_view name);

// --- Structure ------------------------------------------------------------

/// Leaf labels, left to right, with repetition.
std::vector<std::string> leaves(const Term& t);

/// True iff t and u differ only in leaf labels.
bool similar(const Term& t, const Term& u);

/// Shape of t with every leaf renamed to "_" (a similarity-class key).
Term skeleton(const Term& t);

/// Throws ValidationError if t uses a symbol outside sig or with the wrong arity.
void check_well_formed(const Term& t, const Signature& sig);

// --- Metrics --------------------------------------------------------------

/// d* with leaf distances given by a callback.
template <class LeafDist>
Distance dstar_with(const Term& t, const Term& u, LeafDist&& leaf_dist) {
  if (t.same_node(u)) return 0.0;
  if (t.is_leaf() && u.is_leaf()) return leaf_dist(t.label(), u.label());
  if (t.is_leaf() || u.is_leaf() || t.label() != u.label() || t.arity() != u.arity())
    return kInfinity;
  Distance m = 0.0;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Distance c = dstar_with(t.child(i), u.child(i), leaf_dist);
    if (c == kInfinity) return kInfinity;
    if (c > m) m = c;
  }
  return m;
}

/// d*_X: leaf distances from X, max over matching children, inf if not similar.
Distance dstar(const Term& t, const Term& u, const PseudoMetricSpace& x);

// --- Maps and substitution ------------------------------------------------

/// T f: relabels every leaf.
Term map_leaves(const Term& t, const std::function<std::string(const std::string&)>& f);
Term map_leaves(const Term& t, const std::unordered_map<std::string, std::string>& f);

/// Replaces every leaf by a term (monadic bind). Unmapped leaves are kept.
Term substitute_leaves(const Term& t, const std::unordered_map<std::string, Term>& sub);

/// t-hat: replaces each gamma(s_0..s_{n-1}) in s by t[x_i := s_i], recursively.
/// Throws PreconditionError when gamma is not in sig or t has a leaf other
/// than x_0..x_{n-1} where n is the arity of gamma.
Term substitute_symbol(const Term& s, std::string_view gamma, const Term& t, const Signature& sig);

// --- Evaluation -----------------------------------------------------------

/// Structural fold: leaf(label) for leaves, node(symbol, child values) otherwise.
template <class R, class LeafFn, class OpFn>
R fold(const Term& t, LeafFn&& leaf, OpFn&& node) {
  if (t.is_leaf()) return leaf(t.label());
  std::vector<R> args;
  args.reserve(t.arity());
  for (const Term& c : t.children()) args.push_back(fold<R>(c, leaf, node));
  return node(t.label(), std::span<const R>(args));
}

// --- Enumeration ----------------------------------------------------------

inline constexpr std::uint64_t kDefaultUniverseCap = 1'000'000;

/// All terms over a finite leaf set of depth <= max_depth, ordered by depth;
/// within a depth by symbol order, then lexicographically by child index.
struct TermUniverse {
  std::vector<std::string> base;
  Signature signature;
  std::size_t max_depth = 0;
  std::vector<Term> terms;
  std::vector<std::size_t> level_end;  // terms[0, level_end[d]) have depth <= d

  std::size_t size() const { return terms.size(); }
  /// Position of t, or nullopt.
  std::optional<std::size_t> find(const Term& t) const;

  std::unordered_map<Term, std::size_t, TermHash> index;
};

/// Exact number of terms of depth <= max_depth (as a double to survive overflow).
double count_terms(std::size_t num_leaves, const Signature& sig, std::size_t max_depth);

/// Throws CapExceeded with the projected count when it exceeds cap.
TermUniverse enumerate(std::vector<std::string> base, const Signature& sig, std::size_t max_depth,
                       std::uint64_t cap = kDefaultUniverseCap);

}  // namespace qalg

template <>
struct std::hash<qalg::Term> {
  std::size_t operator()(const qalg::Term& t) const noexcept { return t.hash(); }
};
