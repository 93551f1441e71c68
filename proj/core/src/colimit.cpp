#include "qalg/colimit.hpp"

#include <algorithm>

#include "qalg/error.hpp"

namespace qalg {

DirectedChain::DirectedChain(std::vector<MetricSpace> stages, std::vector<PointMap> links,
                             std::size_t first_index)
    : stages_(std::move(stages)), links_(std::move(links)), first_index_(first_index) {
  const std::size_t expected = stages_.empty() ? 0 : stages_.size() - 1;
  if (links_.size() != expected)
    throw ValidationError("chain has " + std::to_string(stages_.size()) + " stages but " +
                          std::to_string(links_.size()) + " links");
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto& f = links_[i];
    if (f.size() != stages_[i].size())
      throw ValidationError("link " + std::to_string(i) + " is not total");
    for (std::size_t y : f)
      if (y >= stages_[i + 1].size())
        throw ValidationError("link " + std::to_string(i) + " leaves its codomain");
    if (auto w = find_expansion(stages_[i], stages_[i + 1], f))
      throw ValidationError("link " + std::to_string(i) + " is expanding: d(" +
                            stages_[i].point(w->i) + "," + stages_[i].point(w->j) + ") = " +
                            format_distance(w->before) + " becomes " +
                            format_distance(w->after));
  }
}

DirectedChain DirectedChain::identity_linked(std::vector<MetricSpace> stages,
                                             std::size_t first_index) {
  std::vector<PointMap> links;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    links.push_back(identity_carried(stages[i], stages[i + 1]));
  return DirectedChain(std::move(stages), std::move(links), first_index);
}

DirectedChain DirectedChain::scaled(const MetricSpace& base, Distance ratio, std::size_t first,
                                    std::size_t count) {
  if (!(ratio > 0.0)) throw ValidationError("scaled chain needs a positive ratio");
  Distance factor = 1.0;
  for (std::size_t n = 0; n < first; ++n) factor *= ratio;
  std::vector<MetricSpace> stages;
  stages.reserve(count);
  for (std::size_t s = 0; s < count; ++s, factor *= ratio) {
    std::vector<Distance> table(base.table().begin(), base.table().end());
    for (auto& d : table) d *= factor;
    stages.push_back(MetricSpace::from_table(base.points(), std::move(table), Validate::No));
  }
  return identity_linked(std::move(stages), first);
}

std::size_t DirectedChain::transport(std::size_t i, std::size_t j, std::size_t y) const {
  if (i > j || j >= size()) throw PreconditionError("transport needs i <= j < stages");
  for (std::size_t k = i; k < j; ++k) y = links_[k][y];
  return y;
}

std::string to_string(ChainTrend t) {
  switch (t) {
    case ChainTrend::Constant: return "constant";
    case ChainTrend::Decreasing: return "decreasing";
    case ChainTrend::Collapse: return "collapse";
  }
  return "unknown";
}

ColimitDistance chain_colimit_distance(const DirectedChain& chain, std::size_t i, std::size_t y,
                                       std::size_t y2) {
  if (i >= chain.size()) throw PreconditionError("stage index out of range");
  if (y >= chain.stage(i).size() || y2 >= chain.stage(i).size())
    throw PreconditionError("point not in stage " + std::to_string(chain.label(i)));
  ColimitDistance out;
  out.from_stage = i;
  std::size_t a = y, b = y2;
  for (std::size_t j = i; j < chain.size(); ++j) {
    if (j > i) {
      a = chain.link(j - 1)[a];
      b = chain.link(j - 1)[b];
    }
    out.values.push_back(chain.stage(j)(a, b));
  }
  out.infimum = *std::min_element(out.values.begin(), out.values.end());
  if (out.values.back() < kCollapseThreshold && out.values.front() > 0.0)
    out.trend = ChainTrend::Collapse;
  else if (out.values.back() < out.values.front())
    out.trend = ChainTrend::Decreasing;
  else
    out.trend = ChainTrend::Constant;
  return out;
}

ColimitDistance chain_colimit_distance(const DirectedChain& chain, std::size_t i,
                                       std::string_view y, std::string_view y2) {
  if (i >= chain.size()) throw PreconditionError("stage index out of range");
  return chain_colimit_distance(chain, i, chain.stage(i).index_of(y), chain.stage(i).index_of(y2));
}

}  // namespace qalg
