#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/distance.hpp"

namespace qalg {

// Which axiom a distance table breaks, with the offending indices.
struct AxiomViolation {
  enum class Kind { Negative, NonzeroDiagonal, Asymmetric, Triangle, Separation };
  Kind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;

  std::string describe(std::span<const std::string> names) const;
};

enum class Validate { Yes, No };

/// Finite set of named points with a symmetric extended distance table.
///
/// Distances may be infinite and distinct points may be at distance 0.
/// Instances are immutable; every factory validates the pseudometric axioms
/// unless the caller passes Validate::No for a table it constructed by a
/// closure operation that guarantees them.
class PseudoMetricSpace {
 public:
  PseudoMetricSpace() = default;

  static PseudoMetricSpace from_table(std::vector<std::string> points,
                                      std::vector<Distance> table,
                                      Validate validate = Validate::Yes);

  template <class F>
  static PseudoMetricSpace from_function(std::vector<std::string> points, F&& dist,
                                         Validate validate = Validate::Yes) {
    const std::size_t n = points.size();
    std::vector<Distance> table(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) table[i * n + j] = i == j ? 0.0 : dist(i, j);
    return from_table(std::move(points), std::move(table), validate);
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t i) const { return points_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ValidationError for unknown names.
  std::size_t index_of(std::string_view name) const;

  Distance operator()(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  Distance distance(std::string_view a, std::string_view b) const {
    return (*this)(index_of(a), index_of(b));
  }

  std::span<const Distance> table() const { return table_; }

  /// Largest finite-or-infinite distance; 0 for spaces with < 2 points.
  Distance diameter() const;

  bool same_points(const PseudoMetricSpace& other) const;

  bool operator==(const PseudoMetricSpace& other) const {
    return points_ == other.points_ && table_ == other.table_;
  }

 protected:
  PseudoMetricSpace(std::vector<std::string> points, std::vector<Distance> table);

  std::vector<std::string> points_;
  std::vector<Distance> table_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Pseudometric space that additionally separates points.
class MetricSpace : public PseudoMetricSpace {
 public:
  MetricSpace() = default;

  static MetricSpace from_table(std::vector<std::string> points, std::vector<Distance> table,
                                Validate validate = Validate::Yes);

  template <class F>
  static MetricSpace from_function(std::vector<std::string> points, F&& dist,
                                   Validate validate = Validate::Yes) {
    return from_pseudo(PseudoMetricSpace::from_function(std::move(points),
                                                        std::forward<F>(dist), validate));
  }

  /// Throws ValidationError when two distinct points are at distance 0.
  static MetricSpace from_pseudo(const PseudoMetricSpace& p);

 private:
  explicit MetricSpace(const PseudoMetricSpace& p) : PseudoMetricSpace(p) {}
};

std::optional<AxiomViolation> find_pseudometric_violation(std::size_t n,
                                                          std::span<const Distance> table,
                                                          Distance tol = kTolerance);
std::optional<AxiomViolation> find_metric_violation(std::size_t n,
                                                    std::span<const Distance> table,
                                                    Distance tol = kTolerance);

/// Exhaustive axiom check over all triples; returns a description on failure.
std::optional<std::string> validate_metric(const PseudoMetricSpace& space, bool require_separation,
                                           Distance tol = kTolerance);

// --- Standard combinations ------------------------------------------------

/// Cartesian product with the maximum metric (categorical product).
MetricSpace max_product(const MetricSpace& x, const MetricSpace& y);

/// Cartesian product with the sum metric (monoidal tensor).
MetricSpace sum_tensor(const MetricSpace& x, const MetricSpace& y);

/// Disjoint union; point names are tagged "k:name" by summand index.
MetricSpace coproduct(std::span<const MetricSpace> spaces);

/// Discrete space: distance infinity between distinct points. Rejects duplicates.
MetricSpace discrete(std::vector<std::string> ids);

/// |X|: the discrete space on the points of X.
MetricSpace underlying_discrete(const PseudoMetricSpace& x);

/// Point name of a pair, as used by products and diagonal neighbourhoods.
std::string pair_name(std::string_view a, std::string_view b);

// A map between finite spaces, given by target indices.
using PointMap = std::vector<std::size_t>;

struct ExpansionWitness {
  std::size_t i;
  std::size_t j;
  Distance before;
  Distance after;
};

/// First pair (in index order) where f increases distance by more than tol.
std::optional<ExpansionWitness> find_expansion(const PseudoMetricSpace& from,
                                               const PseudoMetricSpace& to, const PointMap& f,
                                               Distance tol = kTolerance);

/// Map carried by identity on names (e.g. i_X : |X| -> X). Throws if a name is missing.
PointMap identity_carried(const PseudoMetricSpace& from, const PseudoMetricSpace& to);

/// sup over points of d(f x, g x).
Distance map_distance(const PseudoMetricSpace& from, const PseudoMetricSpace& to, const PointMap& f,
                      const PointMap& g);

// --- Lattice of pseudometrics ---------------------------------------------

/// Shortest-path closure of a symmetric weight table (Floyd-Warshall, fixed order).
std::vector<Distance> shortest_path_closure(std::size_t n, std::vector<Distance> weights);

/// Greatest pseudometric below both arguments. The point sets must agree as sets;
/// the result uses the order of d1.
PseudoMetricSpace meet(const PseudoMetricSpace& d1, const PseudoMetricSpace& d2);

struct Reflection {
  MetricSpace space;
  std::vector<std::size_t> quotient;              // point index -> class index
  std::vector<std::vector<std::size_t>> classes;  // class index -> members (ascending)
};

/// Quotient identifying points at distance 0. Classes are ordered by their
/// first member and named after it.
Reflection metric_reflection(const PseudoMetricSpace& p, Distance zero_tol = 0.0);

// --- Diagonal neighbourhoods ----------------------------------------------

/// All pairs (x, x') with d(x, x') <= eps, in row-major index order, with the
/// two projections.
struct DiagonalNeighborhood {
  MetricSpace base;
  Distance eps = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  std::size_t left(std::size_t k) const { return pairs.at(k).first; }
  std::size_t right(std::size_t k) const { return pairs.at(k).second; }
  std::string name(std::size_t k) const;
  std::vector<std::string> names() const;
};

DiagonalNeighborhood diagonal_neighborhood(const MetricSpace& x, Distance eps);

}  // namespace qalg
