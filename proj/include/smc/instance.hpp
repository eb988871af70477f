#ifndef SMC_INSTANCE_HPP
#define SMC_INSTANCE_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace smc {

enum class Variant { edge, node, rnode };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::edge: return "edge";
    case Variant::node: return "node";
    case Variant::rnode: return "rnode";
  }
  return "?";
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
  if (s == "edge") return Variant::edge;
  if (s == "node") return Variant::node;
  if (s == "rnode") return Variant::rnode;
  return std::nullopt;
}

enum class CutKind { edges, nodes };

struct CutSet {
  CutKind kind = CutKind::edges;
  std::vector<int> members;  // sorted ids

  int size() const { return static_cast<int>(members.size()); }
  friend bool operator==(const CutSet&, const CutSet&) = default;
};

inline CutSet edge_cut(EdgeSet es) {
  normalize(es);
  return {CutKind::edges, std::move(es)};
}
inline CutSet node_cut(NodeSet ns) {
  normalize(ns);
  return {CutKind::nodes, std::move(ns)};
}

struct Instance {
  MultiGraph graph;
  Variant variant = Variant::edge;
  std::vector<NodeSet> sets;
  int k = 0;

  int t() const { return static_cast<int>(sets.size()); }
  int p() const {
    int p = 0;
    for (const auto& s : sets) p = std::max(p, static_cast<int>(s.size()));
    return p;
  }
  NodeSet terminals() const {
    NodeSet all;
    for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
    normalize(all);
    return all;
  }
  CutKind cut_kind() const { return variant == Variant::edge ? CutKind::edges : CutKind::nodes; }

  // Sorts and deduplicates every set, then checks the invariants.
  void validate() {
    if (k < 0) throw std::invalid_argument("negative budget");
    for (auto& s : sets) {
      normalize(s);
      for (NodeId v : s)
        if (!graph.has_node(v)) throw std::invalid_argument("terminal " + std::to_string(v) + " is not a node");
      if (s.size() < 2) throw std::invalid_argument("terminal set with fewer than two distinct nodes");
    }
  }
};

namespace detail {

// True when every set has two terminals in different components after the
// removals; a removed terminal counts as separated from the rest of its set.
inline bool cuts_all(const MultiGraph& g, const std::vector<NodeSet>& sets,
                     const std::vector<char>& edge_removed, const std::vector<char>& node_removed) {
  auto lab = component_labels(g, edge_removed, node_removed);
  for (const auto& s : sets) {
    if (s.size() < 2) return false;
    bool cut = false;
    int first = -2;
    for (NodeId v : s) {
      int l = lab[v];
      if (l < 0) {
        cut = true;
        break;
      }
      if (first == -2) first = l;
      else if (l != first) {
        cut = true;
        break;
      }
    }
    if (!cut) return false;
  }
  return true;
}

inline bool set_is_separated(const MultiGraph& g, const NodeSet& s, const std::vector<int>& lab) {
  for (NodeId v : s)
    if (lab[v] != lab[s.front()]) return true;
  return false;
}

}  // namespace detail

inline bool verify_cut(const Instance& inst, const CutSet& S) {
  if (S.kind != inst.cut_kind()) throw std::invalid_argument("cut kind does not match the variant");
  const MultiGraph& g = inst.graph;
  std::vector<char> er, nr;
  if (S.kind == CutKind::edges) {
    er.assign(g.edge_capacity(), 0);
    for (EdgeId e : S.members) {
      if (!g.has_edge(e)) throw std::invalid_argument("cut names unknown edge " + std::to_string(e));
      er[e] = 1;
    }
  } else {
    nr.assign(g.node_capacity(), 0);
    auto term = detail::as_mask(g.node_capacity(), inst.terminals());
    for (NodeId v : S.members) {
      if (!g.has_node(v)) throw std::invalid_argument("cut names unknown node " + std::to_string(v));
      if (inst.variant == Variant::rnode && term[v])
        throw std::invalid_argument("restricted variant cannot delete terminal " + std::to_string(v));
      nr[v] = 1;
    }
  }
  return detail::cuts_all(g, inst.sets, er, nr);
}

struct TrivialOutcome {
  enum Kind { yes, no, reduced } kind;
  Instance instance;
};

inline TrivialOutcome apply_trivial_rules(const Instance& inst) {
  Instance out = inst;
  auto lab = component_labels(inst.graph);
  out.sets.clear();
  for (auto s : inst.sets) {
    normalize(s);
    if (s.size() < 2) throw std::invalid_argument("terminal set with fewer than two distinct nodes");
    if (!detail::set_is_separated(inst.graph, s, lab)) out.sets.push_back(s);
  }
  if (out.sets.empty()) return {TrivialOutcome::yes, out};
  if (out.variant == Variant::node && out.t() <= out.k) return {TrivialOutcome::yes, out};
  if (out.k == 0) return {TrivialOutcome::no, out};
  return {TrivialOutcome::reduced, out};
}

// Hang a fresh pendant under each terminal and move the terminal onto it.
inline Instance node_to_rnode(const Instance& inst) {
  if (inst.variant != Variant::node) throw std::invalid_argument("node_to_rnode expects the node variant");
  Instance out = inst;
  out.variant = Variant::rnode;
  std::vector<NodeId> pend(inst.graph.node_capacity(), -1);
  for (NodeId v : inst.terminals()) {
    pend[v] = out.graph.add_node();
    out.graph.add_edge(v, pend[v]);
  }
  for (auto& s : out.sets) {
    for (auto& v : s) v = pend[v];
    normalize(s);
  }
  return out;
}

inline std::string format_cut(const Instance& inst, const CutSet& S, int offset = 1) {
  std::vector<NodeId> index(inst.graph.node_capacity(), -1);
  int next = 0;
  for (NodeId v : inst.graph.nodes()) index[v] = next++;
  std::string out;
  for (int x : S.members) {
    if (!out.empty()) out += ' ';
    if (S.kind == CutKind::edges) {
      auto [u, v] = inst.graph.endpoints(x);
      out += "e(" + std::to_string(index[u] + offset) + "," + std::to_string(index[v] + offset) + ")";
    } else {
      out += "n(" + std::to_string(index[x] + offset) + ")";
    }
  }
  return out;
}

}  // namespace smc

#endif
