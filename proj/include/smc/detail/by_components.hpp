#ifndef SMC_DETAIL_BY_COMPONENTS_HPP
#define SMC_DETAIL_BY_COMPONENTS_HPP

#include <optional>
#include <vector>

#include "../instance.hpp"

namespace smc::detail {

// Drops sets that are already separated, then solves every component that
// still holds a set on its own and glues the minimum cuts together.
template <class Solve>
std::optional<CutSet> solve_per_component(const Instance& inst, Solve&& solve) {
  Instance work = inst;
  work.validate();
  auto lab = component_labels(work.graph);
  std::vector<std::vector<NodeSet>> per(work.graph.node_capacity());
  bool any = false;
  for (const auto& s : work.sets) {
    if (set_is_separated(work.graph, s, lab)) continue;
    per[lab[s.front()]].push_back(s);
    any = true;
  }
  CutSet out{inst.cut_kind(), {}};
  if (!any) return out;
  if (work.k == 0) return std::nullopt;
  auto parts = components(work.graph);
  for (std::size_t c = 0; c < parts.blocks.size(); ++c) {
    if (per[c].empty()) continue;
    Instance sub;
    sub.graph = induced_subgraph(work.graph, parts.blocks[c]);
    sub.variant = work.variant;
    sub.sets = per[c];
    sub.k = work.k;
    std::optional<CutSet> r = solve(static_cast<const Instance&>(sub));
    if (!r) return std::nullopt;
    out.members.insert(out.members.end(), r->members.begin(), r->members.end());
    if (out.size() > work.k) return std::nullopt;
  }
  normalize(out.members);
  return out;
}

}  // namespace smc::detail

#endif
