#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qalg/metric_space.hpp"

namespace qalg {

/// Finite truncation of an ω-chain of metric spaces. links[i] maps stage i to
/// stage i+1; longer links are composites. Every link is nonexpanding.
class DirectedChain {
 public:
  DirectedChain() = default;
  /// Throws ValidationError for an expanding or ill-typed link.
  DirectedChain(std::vector<MetricSpace> stages, std::vector<PointMap> links,
                std::size_t first_index = 0);

  /// links taken as identity-carried maps between consecutive stages.
  static DirectedChain identity_linked(std::vector<MetricSpace> stages, std::size_t first_index = 0);

  /// Stages base scaled by ratio^n for n = first .. first + count - 1, identity links.
  static DirectedChain scaled(const MetricSpace& base, Distance ratio, std::size_t first,
                              std::size_t count);

  std::size_t size() const { return stages_.size(); }
  const MetricSpace& stage(std::size_t i) const { return stages_.at(i); }
  const PointMap& link(std::size_t i) const { return links_.at(i); }
  /// Label of stage i in the original indexing (first_index + i).
  std::size_t label(std::size_t i) const { return first_index_ + i; }

  /// f_ij(y) for i <= j.
  std::size_t transport(std::size_t i, std::size_t j, std::size_t y) const;

 private:
  std::vector<MetricSpace> stages_;
  std::vector<PointMap> links_;
  std::size_t first_index_ = 0;
};

enum class ChainTrend { Constant, Decreasing, Collapse };

std::string to_string(ChainTrend t);

struct ColimitDistance {
  std::size_t from_stage = 0;      // position of stage i in the chain
  std::vector<Distance> values;    // d_j(f_ij y, f_ij y') for j = i .. last
  Distance infimum = kInfinity;    // exact for the finite chain; an upper bound for a truncation
  ChainTrend trend = ChainTrend::Constant;
};

// Below this the last stage is reported as having collapsed the pair.
inline constexpr Distance kCollapseThreshold = 1e-6;

ColimitDistance chain_colimit_distance(const DirectedChain& chain, std::size_t i, std::size_t y,
                                       std::size_t y2);
ColimitDistance chain_colimit_distance(const DirectedChain& chain, std::size_t i,
                                       std::string_view y, std::string_view y2);

}  // namespace qalg
