#ifndef SMC_TWDP_HPP
#define SMC_TWDP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "instance.hpp"
#include "treedec.hpp"

namespace smc::twdp {

// What the DP deletes and what it may not touch.
struct Problem {
  const MultiGraph* graph = nullptr;
  std::vector<NodeSet> sets;  // each sorted, at least two distinct nodes
  int k = 0;
  bool delete_nodes = false;
  std::vector<char> forbidden;  // node ids that may not be deleted
};

// One DP row. cls[i] is the component class of the i-th bag node (-1 when
// deleted), labelled by first appearance. reach[j] has bit c when set j has a
// terminal below the bag connected to class c. settled holds the sets that
// stay cut whatever happens above the bag.
struct State {
  int spent = 0;
  std::uint64_t settled = 0;
  std::vector<std::int8_t> cls;
  std::vector<std::uint32_t> reach;
  int prev1 = -1, prev2 = -1;
  int action = -1;

  std::string key() const {
    std::string s(reinterpret_cast<const char*>(&settled), sizeof settled);
    s.append(reinterpret_cast<const char*>(cls.data()), cls.size());
    s.append(reinterpret_cast<const char*>(reach.data()), reach.size() * sizeof(std::uint32_t));
    return s;
  }
};

struct Options {
  bool dominance = true;
};

class Runner {
 public:
  Runner(const Problem& pb, const NiceDecomposition& nd, Options opt = {}) : pb_(pb), nd_(nd), opt_(opt) {
    t_ = static_cast<int>(pb.sets.size());
    if (t_ > 64) throw std::invalid_argument("twdp supports at most 64 terminal sets");
    const MultiGraph& g = *pb.graph;
    member_.assign(g.node_capacity(), 0);
    for (int j = 0; j < t_; ++j)
      for (NodeId v : pb.sets[j]) member_[v] |= std::uint64_t{1} << j;
    full_ = t_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t_) - 1;
    compute_complete();
  }

  void run() {
    tables_.assign(nd_.nodes.size(), {});
    for (int i = 0; i < static_cast<int>(nd_.nodes.size()); ++i) {
      if (nd_.nodes[i].bag.size() > 30) throw std::invalid_argument("twdp: bag too wide");
      process(i);
    }
  }

  const std::vector<State>& table(int i) const { return tables_[i]; }

  // Deleted ids (edges or nodes) of a cheapest accepted root state.
  std::optional<std::vector<int>> best() const {
    const auto& root = tables_[nd_.root()];
    int bi = -1;
    for (int i = 0; i < static_cast<int>(root.size()); ++i)
      if (root[i].settled == full_ && (bi < 0 || root[i].spent < root[bi].spent)) bi = i;
    if (bi < 0) return std::nullopt;
    std::vector<int> out;
    collect(nd_.root(), bi, out);
    normalize(out);
    return out;
  }

  std::uint64_t complete_mask(int node) const { return complete_[node]; }

 private:
  void compute_complete() {
    const MultiGraph& g = *pb_.graph;
    int n = static_cast<int>(nd_.nodes.size());
    complete_.assign(n, 0);
    std::vector<std::vector<char>> below(n);
    for (int i = 0; i < n; ++i) {
      const auto& nn = nd_.nodes[i];
      if (nn.children.empty()) below[i].assign(g.node_capacity(), 0);
      else below[i] = below[nn.children[0]];
      for (std::size_t c = 1; c < nn.children.size(); ++c)
        for (int v = 0; v < g.node_capacity(); ++v) below[i][v] |= below[nn.children[c]][v];
      if (nn.kind == NiceKind::introduce_vertex) below[i][nn.vertex] = 1;
      for (int j = 0; j < t_; ++j) {
        bool all = true;
        for (NodeId v : pb_.sets[j]) all = all && below[i][v];
        if (all) complete_[i] |= std::uint64_t{1} << j;
      }
    }
  }

  static void canonicalize(State& s) {
    std::int8_t map[64];
    for (auto& m : map) m = -1;
    std::int8_t next = 0;
    for (auto& c : s.cls) {
      if (c < 0) continue;
      if (map[c] < 0) map[c] = next++;
      c = map[c];
    }
    for (auto& r : s.reach) {
      std::uint32_t nr = 0;
      for (int c = 0; c < 32; ++c)
        if ((r >> c & 1) && map[c] >= 0) nr |= 1u << map[c];
      r = nr;
    }
  }

  void insert(std::vector<State>& tab, std::unordered_map<std::string, int>& index, State s) {
    if (s.spent > pb_.k) return;
    canonicalize(s);
    for (int j = 0; j < t_; ++j)
      if (s.settled >> j & 1) s.reach[j] = 0;
    auto key = s.key();
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(std::move(key), static_cast<int>(tab.size()));
      tab.push_back(std::move(s));
    } else if (s.spent < tab[it->second].spent) {
      tab[it->second] = std::move(s);
    }
  }

  void prune(std::vector<State>& tab) {
    if (!opt_.dominance || tab.size() < 2) return;
    std::map<std::vector<std::int8_t>, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(tab.size()); ++i) groups[tab[i].cls].push_back(i);
    std::vector<char> dead(tab.size(), 0);
    for (auto& [cls, ids] : groups) {
      if (ids.size() > 4000) continue;
      for (int a : ids) {
        if (dead[a]) continue;
        for (int b : ids) {
          if (a == b || dead[b]) continue;
          const State& A = tab[a];
          const State& B = tab[b];
          if (A.spent > B.spent || (A.settled & B.settled) != B.settled) continue;
          if (A.spent == B.spent && A.settled == B.settled) continue;
          bool same = true;
          for (int j = 0; j < t_ && same; ++j)
            if (!(A.settled >> j & 1) && A.reach[j] != B.reach[j]) same = false;
          if (same) dead[b] = 1;
        }
      }
    }
    std::vector<State> kept;
    for (std::size_t i = 0; i < tab.size(); ++i)
      if (!dead[i]) kept.push_back(std::move(tab[i]));
    tab = std::move(kept);
  }

  static int pos_of(const NodeSet& bag, NodeId v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  }

  static void merge_classes(State& s, int ca, int cb) {
    if (ca == cb) return;
    for (auto& c : s.cls)
      if (c == cb) c = static_cast<std::int8_t>(ca);
    for (auto& r : s.reach)
      if (r >> cb & 1) r = (r & ~(1u << cb)) | (1u << ca);
  }

  void process(int i) {
    const NiceNode& nn = nd_.nodes[i];
    std::vector<State>& tab = tables_[i];
    std::unordered_map<std::string, int> index;
    switch (nn.kind) {
      case NiceKind::leaf: {
        State s;
        s.reach.assign(t_, 0);
        insert(tab, index, s);
        break;
      }
      case NiceKind::introduce_vertex: {
        int c = nn.children[0];
        int pos = pos_of(nn.bag, nn.vertex);
        NodeId v = nn.vertex;
        bool may_delete = pb_.delete_nodes && !(v < static_cast<int>(pb_.forbidden.size()) && pb_.forbidden[v]);
        for (int si = 0; si < static_cast<int>(tables_[c].size()); ++si) {
          const State& p = tables_[c][si];
          State s = p;
          s.prev1 = si, s.prev2 = -1, s.action = -1;
          std::int8_t fresh = 0;
          for (auto x : p.cls) fresh = std::max<std::int8_t>(fresh, static_cast<std::int8_t>(x + 1));
          s.cls.insert(s.cls.begin() + pos, fresh);
          for (int j = 0; j < t_; ++j)
            if ((member_[v] >> j & 1) && !(s.settled >> j & 1)) s.reach[j] |= 1u << fresh;
          insert(tab, index, s);
          if (may_delete) {
            State d = p;
            d.prev1 = si, d.prev2 = -1, d.action = v;
            d.spent += 1;
            d.cls.insert(d.cls.begin() + pos, -1);
            d.settled |= member_[v];
            insert(tab, index, d);
          }
        }
        break;
      }
      case NiceKind::introduce_edge: {
        int c = nn.children[0];
        auto [a, b] = pb_.graph->endpoints(nn.edge);
        int pa = pos_of(nn.bag, a), pb = pos_of(nn.bag, b);
        for (int si = 0; si < static_cast<int>(tables_[c].size()); ++si) {
          const State& p = tables_[c][si];
          if (!pb_.delete_nodes) {
            State d = p;
            d.prev1 = si, d.prev2 = -1, d.action = nn.edge;
            d.spent += 1;
            insert(tab, index, d);
          }
          State s = p;
          s.prev1 = si, s.prev2 = -1, s.action = -1;
          if (s.cls[pa] >= 0 && s.cls[pb] >= 0) merge_classes(s, s.cls[pa], s.cls[pb]);
          insert(tab, index, s);
        }
        break;
      }
      case NiceKind::forget: {
        int c = nn.children[0];
        const NodeSet& cbag = nd_.nodes[c].bag;
        int pos = pos_of(cbag, nn.vertex);
        std::uint64_t complete = complete_[i];
        for (int si = 0; si < static_cast<int>(tables_[c].size()); ++si) {
          const State& p = tables_[c][si];
          State s = p;
          s.prev1 = si, s.prev2 = -1, s.action = -1;
          int cl = s.cls[pos];
          s.cls.erase(s.cls.begin() + pos);
          bool dropped = false;
          if (cl >= 0 && std::find(s.cls.begin(), s.cls.end(), cl) == s.cls.end()) {
            for (int j = 0; j < t_; ++j) {
              if ((s.settled >> j & 1) || !(s.reach[j] >> cl & 1)) continue;
              bool elsewhere = (s.reach[j] & ~(1u << cl)) != 0;
              if (elsewhere || !(complete >> j & 1)) s.settled |= std::uint64_t{1} << j;
              else dropped = true;  // the whole set sits in a closed component
            }
            for (auto& r : s.reach) r &= ~(1u << cl);
          }
          if (!dropped) insert(tab, index, s);
        }
        break;
      }
      case NiceKind::join: {
        int c1 = nn.children[0], c2 = nn.children[1];
        std::map<std::vector<char>, std::vector<int>> by_deleted;
        for (int si = 0; si < static_cast<int>(tables_[c2].size()); ++si) {
          std::vector<char> del;
          for (auto x : tables_[c2][si].cls) del.push_back(x < 0);
          by_deleted[del].push_back(si);
        }
        int w = static_cast<int>(nn.bag.size());
        for (int s1 = 0; s1 < static_cast<int>(tables_[c1].size()); ++s1) {
          const State& A = tables_[c1][s1];
          std::vector<char> del;
          int ndel = 0;
          for (auto x : A.cls) del.push_back(x < 0), ndel += x < 0;
          auto it = by_deleted.find(del);
          if (it == by_deleted.end()) continue;
          for (int s2 : it->second) {
            const State& B = tables_[c2][s2];
            State s;
            s.spent = A.spent + B.spent - (pb_.delete_nodes ? ndel : 0);
            if (s.spent > pb_.k) continue;
            s.settled = A.settled | B.settled;
            s.prev1 = s1, s.prev2 = s2, s.action = -1;
            detail::UnionFind uf(w);
            for (int x = 0; x < w; ++x)
              for (int y = x + 1; y < w; ++y) {
                if (A.cls[x] >= 0 && A.cls[x] == A.cls[y]) uf.unite(x, y);
                if (B.cls[x] >= 0 && B.cls[x] == B.cls[y]) uf.unite(x, y);
              }
            s.cls.assign(w, -1);
            std::vector<int> root_label(w, -1);
            std::int8_t next = 0;
            std::vector<int> mapA(32, -1), mapB(32, -1);
            for (int x = 0; x < w; ++x) {
              if (A.cls[x] < 0) continue;
              int r = uf.find(x);
              if (root_label[r] < 0) root_label[r] = next++;
              s.cls[x] = static_cast<std::int8_t>(root_label[r]);
              mapA[A.cls[x]] = root_label[r];
              mapB[B.cls[x]] = root_label[r];
            }
            s.reach.assign(t_, 0);
            for (int j = 0; j < t_; ++j) {
              if (s.settled >> j & 1) continue;
              for (int c = 0; c < 32; ++c) {
                if ((A.reach[j] >> c & 1) && mapA[c] >= 0) s.reach[j] |= 1u << mapA[c];
                if ((B.reach[j] >> c & 1) && mapB[c] >= 0) s.reach[j] |= 1u << mapB[c];
              }
            }
            insert(tab, index, s);
          }
        }
        break;
      }
    }
    prune(tab);
  }

  void collect(int node, int si, std::vector<int>& out) const {
    std::vector<std::pair<int, int>> st{{node, si}};
    while (!st.empty()) {
      auto [n, i] = st.back();
      st.pop_back();
      const State& s = tables_[n][i];
      if (s.action >= 0) out.push_back(s.action);
      const auto& ch = nd_.nodes[n].children;
      if (!ch.empty() && s.prev1 >= 0) st.push_back({ch[0], s.prev1});
      if (ch.size() > 1 && s.prev2 >= 0) st.push_back({ch[1], s.prev2});
    }
  }

  const Problem& pb_;
  const NiceDecomposition& nd_;
  Options opt_;
  int t_ = 0;
  std::vector<std::uint64_t> member_;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> complete_;
  std::vector<std::vector<State>> tables_;
};

inline std::optional<std::vector<int>> solve_problem(const Problem& pb, const TreeDecomposition& td) {
  NiceDecomposition nd = make_nice(*pb.graph, td);
  Runner r(pb, nd);
  r.run();
  return r.best();
}

// Exact solver for all three variants over a tree decomposition (min-fill
// when none is supplied).
inline std::optional<CutSet> solve_twdp(const Instance& inst, const TreeDecomposition* td = nullptr) {
  Instance work = inst;
  work.validate();
  auto lab = component_labels(work.graph);
  std::vector<NodeSet> live;
  for (const auto& s : work.sets)
    if (!detail::set_is_separated(work.graph, s, lab)) live.push_back(s);
  if (live.empty()) return CutSet{inst.cut_kind(), {}};
  if (work.k == 0) return std::nullopt;
  Problem pb;
  pb.graph = &work.graph;
  pb.sets = live;
  pb.k = work.k;
  pb.delete_nodes = work.variant != Variant::edge;
  if (work.variant == Variant::rnode) pb.forbidden = detail::as_mask(work.graph.node_capacity(), work.terminals());
  TreeDecomposition own;
  if (!td) {
    own = heuristic_decomposition(work.graph);
    td = &own;
  }
  auto res = solve_problem(pb, *td);
  if (!res) return std::nullopt;
  return CutSet{inst.cut_kind(), *res};
}

}  // namespace smc::twdp

#endif
