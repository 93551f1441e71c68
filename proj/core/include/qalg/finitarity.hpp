#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qalg/algebra.hpp"
#include "qalg/free_models.hpp"
#include "qalg/metric_space.hpp"
#include "qalg/term.hpp"

namespace qalg {

using TermDistance = std::function<Distance(const Term&, const Term&)>;
using TermKey = std::function<std::string(const Term&)>;

// --- Condition (cond) -----------------------------------------------------

struct ConditionEpsResult {
  Distance eps = 0.0;
  std::size_t neighborhood_pairs = 0;
  std::uint64_t terms = 0;
  Distance max = 0.0;  // max over u of d_Y(f T l u, f T r u)
  bool pass = true;
  std::optional<Term> worst;  // over leaf pairs, printed as "(x,y)"
};

struct ConditionReport {
  std::size_t max_depth = 0;
  std::vector<ConditionEpsResult> per_eps;
  bool pass = true;
};

/// For each eps, enumerates terms over the pairs of the eps-neighbourhood of
/// the diagonal up to max_depth and measures y_after_f between the left and
/// right leaf projections. y_after_f receives terms over X.
ConditionReport check_condition(const Signature& sig, const MetricSpace& x,
                                const TermDistance& y_after_f, const std::vector<Distance>& eps_list,
                                std::size_t max_depth, std::uint64_t cap = kDefaultUniverseCap);

// --- Factorization through T i_X ------------------------------------------

struct FactorizationWitness {
  Term t;
  Term u;
  Distance d_tx = 0.0;
  Distance d_y = 0.0;
};

struct FactorizationVerdict {
  bool exists = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;             // pairs exceeding the strict margin
  std::optional<FactorizationWitness> witness;  // first violation in element order
  std::string detail;
};

/// The factorization f' exists iff d_Y(f t, f u) <= d_TX(t, u) for all
/// element pairs. A violation counts only when it exceeds margin. Pairs with
/// d_TX = inf are skipped; when key is given, only pairs with equal keys are
/// compared (the caller guarantees d_TX = inf across keys). Throws
/// PreconditionError unless identity_carried.
FactorizationVerdict check_factorization(const std::vector<Term>& elements,
                                         const TermDistance& d_tx, const TermDistance& y_after_f,
                                         bool identity_carried, const TermKey& key = {},
                                         Distance margin = kStrictMargin);

/// Y of the meet probe: the depth-bounded universe over X with
/// meet(d*_X, d_{T|X|}) for the model's construction over |X|.
struct MeetTarget {
  TermUniverse universe;
  PseudoMetricSpace y;
  /// Throws UndefinedError for terms outside the universe.
  Distance distance(const Term& t, const Term& u) const;
};
MeetTarget meet_target(const FreeAlgebraModel& model, std::size_t depth,
                       std::uint64_t cap = kDefaultUniverseCap);

/// Meet probe: Y is the term universe of the given depth with
/// meet(d*_X, d_{T|X|}) and f the identity on terms, which always satisfies
/// condition (cond). Returns whether f factors through the model's T X.
FactorizationVerdict meet_probe(const FreeAlgebraModel& model, std::size_t depth,
                                std::uint64_t cap = kDefaultUniverseCap);

/// Quotient probe: f sends each element of the generic model to the element
/// of the closed form denoted by the same term.
FactorizationVerdict quotient_probe(const FreeAlgebraModel& generic,
                                    const FreeAlgebraModel& closed);

// --- Sparse meet ------------------------------------------------------------

/// meet(d1, d2) on a large term set without a dense table. key1 and key2
/// bucket the terms so that d1 (resp. d2) is infinite across buckets;
/// shortest paths are computed per source by Dijkstra over bucket
/// neighbours and cached under a lock.
class SparseMeet {
 public:
  SparseMeet(std::vector<Term> terms, TermDistance d1, TermDistance d2, TermKey key1, TermKey key2);

  std::size_t size() const { return terms_.size(); }
  std::optional<std::size_t> find(const Term& t) const;
  Distance distance(std::size_t i, std::size_t j) const;
  /// Throws UndefinedError for terms outside the set.
  Distance distance(const Term& t, const Term& u) const;

 private:
  const std::vector<Distance>& from(std::size_t source) const;

  std::vector<Term> terms_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  TermDistance d1_, d2_;
  std::vector<std::size_t> bucket1_, bucket2_;              // bucket id per term
  std::vector<std::vector<std::size_t>> members1_, members2_;  // bucket id -> terms
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::size_t, std::shared_ptr<const std::vector<Distance>>> cache_;
};

/// Term with every operation symbol renamed to "_" (bucket key for d-hat over |X|).
Term erase_symbols(const Term& t);

// --- The two-operations counter-example -----------------------------------

using ReportValue = std::variant<std::monostate, bool, Distance, std::string, std::vector<Distance>>;

struct Claim {
  std::string id;
  std::string claim;
  ReportValue computed;
  ReportValue expected;
  bool pass = false;
  std::string witness;
};

struct CounterexampleReport {
  Distance eps = 0.0;
  std::size_t max_depth = 0;
  std::size_t sweep_depth = 2;  // depth of the exhaustive sweeps (i), (ii), (v)
  std::size_t universe_size = 0;
  std::vector<Claim> claims;
  ConditionReport condition;
  FactorizationVerdict factorization;
  std::string verdict;
  bool reproduced = false;
};

/// X = {a,b} with d(a,b) = 1; Y = terms of depth <= max_depth with
/// meet(d*_X, d-hat over |X|); f the identity. Throws PreconditionError
/// unless 0 < eps < 1 and max_depth >= 2.
CounterexampleReport run_counterexample(Distance eps, std::size_t max_depth,
                                        const std::vector<Distance>& grid = {0.25, 0.5, 1.0},
                                        std::uint64_t cap = kDefaultUniverseCap);

/// The witness trees of the counter-example.
struct CounterexampleTerms {
  Term t, t_prime, s1;
};
CounterexampleTerms counterexample_terms();
MetricSpace counterexample_space();

// --- Law suite ----------------------------------------------------------------

struct LawSuiteOptions {
  std::size_t max_elements = 300;
  std::uint64_t max_tuple_pairs = 1'000'000;
  std::optional<MetricSpace> target;  // codomain Y for sample maps
};

struct LawSuiteReport {
  std::string model;
  std::vector<LawResult> laws;
  bool pass = true;
};

/// Pseudometric axioms, unit and operation nonexpansiveness, closed-form
/// monad laws, enrichment d(Tf, Tg) <= d(f, g) and preservation of
/// surjections over all nonexpanding maps X -> Y.
LawSuiteReport monad_law_suite(const FreeAlgebraModel& model, const LawSuiteOptions& opts = {});

/// Universal property at desk scale: for each algebra A and nonexpanding
/// f : X -> A, the evaluation extension is a nonexpanding homomorphism and
/// the only homomorphism on the element set extending f.
std::vector<LawResult> freeness_spot_check(const FreeAlgebraModel& model,
                                           const std::vector<FiniteQuantAlgebra>& algebras,
                                           std::uint64_t max_candidates = 1'000'000);

/// Small algebras of the model's variety used by the spot check.
std::vector<FiniteQuantAlgebra> sample_algebras(const FreeAlgebraModel& model);

}  // namespace qalg
