#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qalg/free_models.hpp"
#include "qalg/metric_space.hpp"

namespace qalg::testing {

/// Spaces shared by tests and the acceptance binary.
MetricSpace two_point(Distance d, const std::string& a = "a", const std::string& b = "b");
MetricSpace pqr();  // d(p,q) = 1, d(q,r) = 2, d(p,r) = 3
/// M = {e, m} with m m = m and d(e, m) = d.
FiniteQuantAlgebra monoid_em(Distance d = 0.3);
MetricSpace exceptions_e12();  // {e1, e2} at 0.4

/// Random pseudometric on n points: shortest-path closure of random
/// weights in {0, 0.5, 1, ..., 3, inf}.
PseudoMetricSpace random_pseudometric(std::size_t n, std::uint64_t seed, const std::string& prefix = "p");

/// Brute-force meet: minimum over all simple chains of pointwise minima.
std::vector<Distance> brute_force_meet(const PseudoMetricSpace& a, const PseudoMetricSpace& b);

/// Every closed-form and generic model used by the property suite, over
/// bases of at most 4 points.
std::vector<std::unique_ptr<FreeAlgebraModel>> property_models();

struct PropertyOutcome {
  std::string name;
  bool pass = true;
  std::uint64_t checked = 0;
  std::string detail;
};

/// Metric axioms on every constructed space of at most 300 points.
PropertyOutcome metric_axioms_sweep();
/// Operation nonexpansiveness, unit laws, closed-form laws and enrichment
/// for every model in property_models().
PropertyOutcome model_law_sweep();
/// meet against brute-force chains and the greatest-lower-bound property
/// against random pseudometrics below both arguments, on <= 6 points.
PropertyOutcome meet_sweep(std::size_t trials = 60);
/// d(q x, q y) = d(x, y) for the reflection of random pseudometrics.
PropertyOutcome reflection_sweep(std::size_t trials = 60);

std::vector<PropertyOutcome> full_property_suite();

}  // namespace qalg::testing
