// Copyright 2026 The congest-spanners Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPANNERS_GRAPH_HPP_
#define SPANNERS_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spanners {

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kUnreached =
    std::numeric_limits<std::uint32_t>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered node pair stored as (min, max).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of normalized edges, e.g. the edge set of a spanner H.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<Edge> edges) : edges_(edges) {}

  bool insert(Edge e) { return edges_.insert(e).second; }
  bool insert(NodeId a, NodeId b) { return insert(Edge(a, b)); }
  bool erase(Edge e) { return edges_.erase(e) > 0; }
  bool contains(Edge e) const { return edges_.count(e) > 0; }
  bool contains(NodeId a, NodeId b) const { return contains(Edge(a, b)); }
  void merge(const EdgeSet& other) {
    edges_.insert(other.edges_.begin(), other.edges_.end());
  }

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  std::vector<Edge> to_vector() const { return {edges_.begin(), edges_.end()}; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::set<Edge> edges_;
};

/// Relevant pairs. tau() counts the distinct nodes that appear in a pair.
class PairSet {
 public:
  PairSet() = default;
  PairSet(std::initializer_list<Edge> pairs) {
    for (const Edge& p : pairs) insert(p.u, p.v);
  }

  /// Pairs are unordered; a node paired with itself is meaningless and
  /// rejected.
  bool insert(NodeId a, NodeId b) {
    if (a == b) throw GraphError("pair (" + std::to_string(a) + "," +
                                 std::to_string(b) + ") is a self-pair");
    return pairs_.insert(Edge(a, b)).second;
  }
  bool contains(NodeId a, NodeId b) const {
    return pairs_.count(Edge(a, b)) > 0;
  }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  std::vector<NodeId> endpoints() const {
    std::vector<NodeId> nodes;
    nodes.reserve(2 * pairs_.size());
    for (const Edge& p : pairs_) {
      nodes.push_back(p.u);
      nodes.push_back(p.v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
  }
  std::size_t tau() const { return endpoints().size(); }

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::set<Edge> pairs_;
};

/// Immutable undirected unweighted graph on nodes 0..n-1 with sorted
/// adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  /// Builds the graph from an edge list, dropping duplicates. Throws on a
  /// self-loop or an endpoint outside [0, n).
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw GraphError("edge (" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + ") out of range for n=" +
                         std::to_string(n));
      }
      if (e.u == e.v) {
        throw GraphError("self-loop at node " + std::to_string(e.u));
      }
      g.adjacency_[e.u].push_back(e.v);
      g.adjacency_[e.v].push_back(e.u);
    }
    std::size_t degree_sum = 0;
    for (auto& list : g.adjacency_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      degree_sum += list.size();
    }
    g.edge_count_ = degree_sum / 2;
    return g;
  }
  static Graph from_edges(std::size_t n, const EdgeSet& edges) {
    const auto list = edges.to_vector();
    return from_edges(n, std::span<const Edge>(list));
  }

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  bool has_edge(NodeId a, NodeId b) const {
    if (a >= node_count() || b >= node_count()) return false;
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u) {
      for (NodeId v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  EdgeSet edge_set() const {
    EdgeSet set;
    for (const Edge& e : edges()) set.insert(e);
    return set;
  }

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// One BFS tree. missing_count is filled only when the tree was measured
/// against a reference edge set.
struct BfsTree {
  NodeId root = 0;
  std::vector<std::uint32_t> dist;
  std::vector<NodeId> parent;
  std::optional<std::vector<std::uint32_t>> missing_count;

  bool reached(NodeId v) const { return dist[v] != kUnreached; }

  /// Tree path from v up to the root, v first.
  std::vector<NodeId> path_to_root(NodeId v) const {
    std::vector<NodeId> path;
    if (!reached(v)) return path;
    path.push_back(v);
    while (v != root) {
      v = parent[v];
      path.push_back(v);
    }
    return path;
  }
};

/// Hop distances from root; kUnreached for other components.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId root) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreached);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  dist[root] = 0;
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// BFS tree whose parent is the smallest-id neighbor one layer closer to the
/// root. When reference is given, missing_count(v) counts tree-path edges
/// absent from it.
inline BfsTree bfs(const Graph& g, NodeId root,
                   const EdgeSet* reference = nullptr) {
  if (root >= g.node_count()) {
    throw GraphError("bfs root " + std::to_string(root) + " out of range");
  }
  BfsTree tree;
  tree.root = root;
  tree.dist = bfs_distances(g, root);
  tree.parent.assign(g.node_count(), kNoNode);
  tree.parent[root] = root;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == root || tree.dist[v] == kUnreached) continue;
    for (NodeId w : g.neighbors(v)) {
      if (tree.dist[w] + 1 == tree.dist[v]) {
        tree.parent[v] = w;  // neighbors are sorted, first hit is smallest
        break;
      }
    }
  }
  if (reference != nullptr) {
    std::vector<NodeId> order(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return tree.dist[a] < tree.dist[b];
    });
    std::vector<std::uint32_t> missing(g.node_count(), kUnreached);
    for (NodeId v : order) {
      if (tree.dist[v] == kUnreached) break;
      if (v == root) {
        missing[v] = 0;
      } else {
        const NodeId p = tree.parent[v];
        missing[v] = missing[p] + (reference->contains(v, p) ? 0 : 1);
      }
    }
    tree.missing_count = std::move(missing);
  }
  return tree;
}

inline bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::uint32_t d) { return d == kUnreached; });
}

/// Length of the shortest cycle, or nullopt for a forest.
inline std::optional<std::uint32_t> girth(const Graph& g) {
  std::optional<std::uint32_t> best;
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<NodeId> parent(n, kNoNode);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId root = 0; root < n; ++root) {
    for (NodeId v : queue) {
      dist[v] = kUnreached;
      parent[v] = kNoNode;
    }
    queue.clear();
    dist[root] = 0;
    queue.push_back(root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      if (best && 2 * dist[u] + 1 >= *best) break;
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          const std::uint32_t cycle = dist[u] + dist[w] + 1;
          if (!best || cycle < *best) best = cycle;
        }
      }
    }
  }
  return best;
}

/// Eccentricity of v; throws if the graph is disconnected.
inline std::uint32_t eccentricity(const Graph& g, NodeId v) {
  const auto dist = bfs_distances(g, v);
  std::uint32_t ecc = 0;
  for (std::uint32_t d : dist) {
    if (d == kUnreached) throw GraphError("graph is disconnected");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

/// Exact diameter D by BFS from every node. Throws if disconnected.
inline std::uint32_t diameter(const Graph& g) {
  if (g.node_count() == 0) throw GraphError("empty graph has no diameter");
  std::uint32_t d = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    d = std::max(d, eccentricity(g, v));
  }
  return d;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

inline std::uint64_t parse_uint(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    if (token.empty() || token[0] == '-') throw std::invalid_argument("neg");
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw GraphError("line " + std::to_string(line_no) +
                     ": expected a non-negative integer, got '" + token + "'");
  }
  return value;
}

/// Non-comment, non-blank lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<std::string>>>
read_records(std::istream& in) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    records.emplace_back(line_no, split_ws(line));
  }
  return records;
}

}  // namespace detail

/// Parses the text graph format: a first record holding n (optionally
/// written "n <count>"), then one "u v" record per edge. '#' lines are
/// comments.
inline Graph parse_graph(std::istream& in) {
  const auto records = detail::read_records(in);
  if (records.empty()) throw GraphError("graph file is empty");
  const auto& [header_line, header] = records.front();
  std::uint64_t n = 0;
  if (header.size() == 1) {
    n = detail::parse_uint(header[0], header_line);
  } else if (header.size() == 2 && header[0] == "n") {
    n = detail::parse_uint(header[1], header_line);
  } else {
    throw GraphError("line " + std::to_string(header_line) +
                     ": expected node count");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& [line_no, tokens] = records[i];
    if (tokens.size() != 2) {
      throw GraphError("line " + std::to_string(line_no) +
                       ": expected 'u v'");
    }
    const auto u = detail::parse_uint(tokens[0], line_no);
    const auto v = detail::parse_uint(tokens[1], line_no);
    if (u >= n || v >= n) {
      throw GraphError("line " + std::to_string(line_no) + ": node id out of "
                       "range for n=" + std::to_string(n));
    }
    if (u == v) {
      throw GraphError("line " + std::to_string(line_no) + ": self-loop at " +
                       std::to_string(u));
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, std::span<const Edge>(edges));
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

/// Pair file: one "u v" per line.
inline PairSet parse_pairs(std::istream& in, std::size_t n) {
  PairSet pairs;
  for (const auto& [line_no, tokens] : detail::read_records(in)) {
    if (tokens.size() != 2) {
      throw GraphError("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    const auto u = detail::parse_uint(tokens[0], line_no);
    const auto v = detail::parse_uint(tokens[1], line_no);
    if (u >= n || v >= n) {
      throw GraphError("line " + std::to_string(line_no) +
                       ": node id out of range");
    }
    if (u == v) {
      throw GraphError("line " + std::to_string(line_no) + ": self-pair");
    }
    pairs.insert(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return pairs;
}

/// Source file: one "u" per line. Returned sorted and deduplicated.
inline std::vector<NodeId> parse_sources(std::istream& in, std::size_t n) {
  std::vector<NodeId> sources;
  for (const auto& [line_no, tokens] : detail::read_records(in)) {
    if (tokens.size() != 1) {
      throw GraphError("line " + std::to_string(line_no) + ": expected 'u'");
    }
    const auto u = detail::parse_uint(tokens[0], line_no);
    if (u >= n) {
      throw GraphError("line " + std::to_string(line_no) +
                       ": node id out of range");
    }
    sources.push_back(static_cast<NodeId>(u));
  }
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  return sources;
}

}  // namespace spanners

#endif  // SPANNERS_GRAPH_HPP_
