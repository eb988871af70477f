#ifndef SMC_FORMAT_HPP
#define SMC_FORMAT_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"

namespace smc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline long parse_int(const std::string& tok, int line) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace detail

// Text format, one directive per line, '#' starts a comment:
//   variant edge|node|rnode
//   nodes N            (ids 1..N)
//   edge u v           (repeatable)
//   terms v1 v2 ...    (repeatable, one terminal set each)
//   k K
inline Instance parse_instance(const std::string& text) {
  Instance inst;
  bool have_variant = false, have_nodes = false, have_k = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& d = tok[0];
    auto node = [&](const std::string& s) {
      if (!have_nodes) throw ParseError(lineno, "'" + d + "' before 'nodes'");
      long v = detail::parse_int(s, lineno);
      if (v < 1 || v > inst.graph.node_count()) throw ParseError(lineno, "node id " + s + " out of range");
      return static_cast<NodeId>(v - 1);
    };
    if (d == "variant") {
      if (tok.size() != 2) throw ParseError(lineno, "variant takes one argument");
      if (have_variant) throw ParseError(lineno, "duplicate variant");
      auto v = variant_from_name(tok[1]);
      if (!v) throw ParseError(lineno, "unknown variant '" + tok[1] + "'");
      inst.variant = *v;
      have_variant = true;
    } else if (d == "nodes") {
      if (tok.size() != 2) throw ParseError(lineno, "nodes takes one argument");
      if (have_nodes) throw ParseError(lineno, "duplicate nodes");
      long n = detail::parse_int(tok[1], lineno);
      if (n < 0) throw ParseError(lineno, "negative node count");
      inst.graph = MultiGraph(static_cast<int>(n));
      have_nodes = true;
    } else if (d == "edge") {
      if (tok.size() != 3) throw ParseError(lineno, "edge takes two node ids");
      inst.graph.add_edge(node(tok[1]), node(tok[2]));
    } else if (d == "terms") {
      NodeSet s;
      for (std::size_t i = 1; i < tok.size(); ++i) s.push_back(node(tok[i]));
      normalize(s);
      if (s.size() < 2) throw ParseError(lineno, "terminal set needs at least two distinct nodes");
      inst.sets.push_back(s);
    } else if (d == "k") {
      if (tok.size() != 2) throw ParseError(lineno, "k takes one argument");
      if (have_k) throw ParseError(lineno, "duplicate k");
      long k = detail::parse_int(tok[1], lineno);
      if (k < 0) throw ParseError(lineno, "negative budget");
      inst.k = static_cast<int>(k);
      have_k = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + d + "'");
    }
  }
  if (!have_variant) throw ParseError(lineno, "missing 'variant'");
  if (!have_nodes) throw ParseError(lineno, "missing 'nodes'");
  if (!have_k) throw ParseError(lineno, "missing 'k'");
  return inst;
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

// Live nodes are renumbered 1..N in id order, edges written in id order.
inline std::string serialize_instance(const Instance& inst) {
  const MultiGraph& g = inst.graph;
  std::vector<int> index(g.node_capacity(), -1);
  int next = 0;
  for (NodeId v : g.nodes()) index[v] = ++next;
  std::ostringstream out;
  out << "variant " << variant_name(inst.variant) << "\n";
  out << "nodes " << g.node_count() << "\n";
  for (EdgeId e : g.edges()) {
    auto [u, v] = g.endpoints(e);
    out << "edge " << index[u] << " " << index[v] << "\n";
  }
  for (const auto& s : inst.sets) {
    out << "terms";
    for (NodeId v : s) out << " " << index[v];
    out << "\n";
  }
  out << "k " << inst.k << "\n";
  return out.str();
}

}  // namespace smc

#endif
