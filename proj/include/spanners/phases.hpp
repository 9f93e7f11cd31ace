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

// The shared distributed phases, in two forms: steps over a Network (used
// by build_spanner) and standalone operations over a graph and an explicit
// starting H (used for testing each phase in isolation).

#ifndef SPANNERS_PHASES_HPP_
#define SPANNERS_PHASES_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanners/congest.hpp"
#include "spanners/graph.hpp"
#include "spanners/network.hpp"
#include "spanners/params.hpp"
#include "spanners/programs.hpp"

namespace spanners {

// --- Steps over a Network ---------------------------------------------------

inline void run_clustering(Network& net, double p_center) {
  net.run("clustering", [p_center](NodeState* st) {
    return programs::ClusterNode(st, p_center);
  });
}

/// Pipelined BFS from every node with bfs_root set. tree_tag != kNone adds
/// the trees to H; otherwise only distances and missing counts are
/// recorded. Returns the last round in which a tree token was forwarded,
/// known to every node after the closing barrier.
inline std::uint64_t run_parallel_bfs(Network& net, Tag tree_tag,
                                      const std::string& name) {
  net.run(name + ":distances",
          [](NodeState* st) { return programs::BfsDistanceNode(st); });
  std::vector<std::uint64_t> zeros(net.size(), 0);
  net.barrier(name + ":barrier", zeros);
  net.run(name + ":tree", [tree_tag](NodeState* st) {
    return programs::BfsTreeNode(st, tree_tag);
  });
  std::vector<std::uint64_t> last(net.size(), 0);
  for (NodeId v = 0; v < net.size(); ++v) {
    for (const Slot& s : net.node(v).slots) {
      if (s.dist != kUnreached) last[v] = std::max(last[v], s.send_round);
    }
  }
  return net.barrier(name + ":length", last);
}

inline void run_replay(Network& net, programs::ReplayNode::Mode mode,
                       std::uint64_t last_round, std::uint32_t ell_edges,
                       Tag tag, const std::string& name) {
  net.run(name, [=](NodeState* st) {
    return programs::ReplayNode(st, mode, last_round, ell_edges, tag);
  });
}

inline void run_reports(Network& net, double threshold, bool a_mode) {
  net.run("reports", [=](NodeState* st) {
    return programs::ReportNode(st, threshold, a_mode);
  });
  std::vector<std::uint64_t> zeros(net.size(), 0);
  net.barrier("reports:barrier", zeros);
}

/// Endpoints start a buy in each partner's tree whose path has at most
/// threshold missing edges. A purely local decision.
inline void mark_pairwise_buys(Network& net, PairMode mode, double threshold) {
  for (NodeId v = 0; v < net.size(); ++v) {
    NodeState& st = net.node(v);
    for (const Slot& s : st.slots) {
      if (s.dist != kUnreached && st.is_partner(v, s.root, mode) &&
          static_cast<double>(s.missing) <= threshold) {
        st.initiate.push_back(s.root);
      }
    }
  }
}

/// Endpoints start a suffix counter in each partner's tree.
inline void mark_prefix_suffix(Network& net, PairMode mode) {
  for (NodeId v = 0; v < net.size(); ++v) {
    NodeState& st = net.node(v);
    for (const Slot& s : st.slots) {
      if (s.dist != kUnreached && st.is_partner(v, s.root, mode)) {
        st.initiate.push_back(s.root);
      }
    }
  }
}

/// Full prefix-suffix phase: counting BFS from all endpoints, then the
/// counter pass. Does nothing when ell_edges is 0.
inline void prefix_suffix_step(Network& net, PairMode mode,
                               std::uint32_t ell_edges) {
  if (ell_edges == 0) return;
  net.reset_bfs();
  for (NodeId v = 0; v < net.size(); ++v) {
    net.node(v).bfs_root = net.node(v).is_endpoint(mode);
  }
  const auto last = run_parallel_bfs(net, Tag::kNone, "prefix-suffix-bfs");
  mark_prefix_suffix(net, mode);
  run_replay(net, programs::ReplayNode::Mode::kCounter, last, ell_edges,
             Tag::kPrefixSuffix, "prefix-suffix-buy");
}

inline void pairwise_step(Network& net, PairMode mode, double threshold) {
  net.reset_bfs();
  for (NodeId v = 0; v < net.size(); ++v) {
    net.node(v).bfs_root = net.node(v).is_endpoint(mode);
  }
  const auto last = run_parallel_bfs(net, Tag::kNone, "pair-bfs");
  mark_pairwise_buys(net, mode, threshold);
  run_replay(net, programs::ReplayNode::Mode::kSimple, last, 0, Tag::kPathBuy,
             "pair-buy");
}

/// Source-to-cluster path buying. Sources are the nodes with in_s (or, in
/// A-mode, in_a); in A-mode only clusters of A-centers collect reports.
inline void cluster_path_step(Network& net, double threshold, bool a_mode) {
  net.reset_bfs();
  for (NodeId v = 0; v < net.size(); ++v) {
    NodeState& st = net.node(v);
    st.bfs_root = a_mode ? st.in_a : st.in_s;
  }
  const auto last =
      run_parallel_bfs(net, Tag::kNone, a_mode ? "center-bfs" : "source-bfs");
  run_reports(net, threshold, a_mode);
  run_replay(net, programs::ReplayNode::Mode::kSimple, last, 0, Tag::kPathBuy,
             "path-buy");
}

// --- Standalone operations ---------------------------------------------------

struct ClusterState {
  std::vector<NodeId> centers;
  /// Center of each node, kNoNode when unclustered. Centers map to
  /// themselves.
  std::vector<NodeId> membership;
  EdgeSet cluster_edges;
  congest::RoundStats stats;
};

inline ClusterState extract_clusters(const Network& net) {
  ClusterState cs;
  for (NodeId v = 0; v < net.size(); ++v) {
    const NodeState& st = net.node(v);
    if (st.is_center) cs.centers.push_back(v);
    cs.membership.push_back(st.center);
  }
  for (const auto& [e, tag] : net.attribution()) {
    if (tag == Tag::kCluster || tag == Tag::kUnclustered) {
      cs.cluster_edges.insert(e);
    }
  }
  cs.stats = net.stats();
  return cs;
}

/// Installs a cluster structure into the node states (not into H).
inline void load_clusters(Network& net, const ClusterState& cs) {
  const Graph& g = net.graph();
  if (cs.membership.size() != g.node_count()) {
    throw std::invalid_argument("membership must cover every node");
  }
  for (NodeId c : cs.centers) {
    net.node(c).is_center = true;
    net.node(c).center = c;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const NodeId c = cs.membership[v];
    if (c == kNoNode || c == v) continue;
    if (!g.has_edge(v, c) || !net.node(c).is_center) {
      throw std::invalid_argument("node " + std::to_string(v) +
                                  " is not adjacent to a center " +
                                  std::to_string(c));
    }
    NodeState& st = net.node(v);
    st.center = c;
    st.center_port = net.port(v, c);
    net.node(c).member_ports.push_back(net.port(c, v));
  }
  for (NodeId c : cs.centers) {
    auto& ports = net.node(c).member_ports;
    std::sort(ports.begin(), ports.end());
  }
}

inline NetworkConfig network_config(const congest::SimConfig& sc) {
  return NetworkConfig{sc.seed, sc.bandwidth_multiplier, sc.max_rounds,
                       sc.trace};
}

/// Independent coin with probability p at every center.
inline std::vector<NodeId> sample_centers(std::span<const NodeId> centers,
                                          double p, std::uint64_t seed) {
  std::bernoulli_distribution coin(clamp_probability(p));
  std::vector<NodeId> out;
  for (NodeId c : centers) {
    std::mt19937_64 rng(congest::node_seed(seed, c));
    if (coin(rng)) out.push_back(c);
  }
  return out;
}

inline ClusterState clustering_phase(const Graph& g, double p_center,
                                     const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  run_clustering(net, clamp_probability(p_center));
  return extract_clusters(net);
}

inline std::vector<NodeId> select_bfs_roots(const ClusterState& cs,
                                            double p_root, std::uint64_t seed) {
  return sample_centers(cs.centers, p_root, seed);
}

inline std::vector<NodeId> select_set_A(const ClusterState& cs, double p_a,
                                        std::uint64_t seed) {
  return sample_centers(cs.centers, p_a, seed);
}

struct ParallelBfsOutput {
  std::vector<BfsTree> trees;  // in the order of the given roots
  congest::RoundStats stats;
  /// Rounds of the distance wave and of the tree wave, barriers excluded.
  std::uint64_t distance_rounds = 0;
  std::uint64_t tree_rounds = 0;
};

inline ParallelBfsOutput parallel_bfs_phase(const Graph& g,
                                            std::span<const NodeId> roots,
                                            const EdgeSet* reference,
                                            const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  if (reference) net.load_edges(*reference, Tag::kBfs);
  for (NodeId r : roots) {
    if (r >= g.node_count()) throw std::out_of_range("root out of range");
    net.node(r).bfs_root = true;
  }
  run_parallel_bfs(net, Tag::kNone, "bfs");
  ParallelBfsOutput out;
  out.stats = net.stats();
  for (const auto& ph : net.phases()) {
    if (ph.name == "bfs:distances") out.distance_rounds = ph.stats.rounds;
    if (ph.name == "bfs:tree") out.tree_rounds = ph.stats.rounds;
  }
  const std::size_t n = g.node_count();
  for (NodeId r : roots) {
    BfsTree t;
    t.root = r;
    t.dist.assign(n, kUnreached);
    t.parent.assign(n, kNoNode);
    if (reference) t.missing_count.emplace(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      const auto idx = net.node(v).slots.find(r);
      if (!idx) continue;
      const Slot& s = net.node(v).slots[*idx];
      t.dist[v] = s.dist;
      t.parent[v] = s.parent;
      if (reference) (*t.missing_count)[v] = s.missing;
    }
    out.trees.push_back(std::move(t));
  }
  return out;
}

struct BuyOutput {
  /// Edges newly added to H by the phase.
  EdgeSet bought;
  congest::RoundStats stats;
};

namespace detail {

inline BuyOutput collect_bought(const Network& net, Tag tag) {
  BuyOutput out;
  for (const auto& [e, t] : net.attribution()) {
    if (t == tag) out.bought.insert(e);
  }
  out.stats = net.stats();
  return out;
}

inline void load_pairs(Network& net, const PairSet& pairs) {
  for (const Edge& p : pairs) {
    if (p.v >= net.size()) throw std::out_of_range("pair out of range");
    net.node(p.u).partners.push_back(p.v);
    net.node(p.v).partners.push_back(p.u);
  }
  for (NodeId v = 0; v < net.size(); ++v) {
    auto& ps = net.node(v).partners;
    std::sort(ps.begin(), ps.end());
  }
}

}  // namespace detail

inline BuyOutput path_buying_sourcewise(const Graph& g,
                                        std::span<const NodeId> sources,
                                        const ClusterState& cs,
                                        const EdgeSet& h, double threshold,
                                        const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  net.load_edges(h, Tag::kBfs);
  load_clusters(net, cs);
  for (NodeId s : sources) net.node(s).in_s = true;
  cluster_path_step(net, threshold, false);
  return detail::collect_bought(net, Tag::kPathBuy);
}

inline BuyOutput path_buying_pairwise(const Graph& g, const PairSet& pairs,
                                      const EdgeSet& h, double threshold,
                                      const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  net.load_edges(h, Tag::kBfs);
  detail::load_pairs(net, pairs);
  pairwise_step(net, PairMode::kExplicit, threshold);
  return detail::collect_bought(net, Tag::kPathBuy);
}

inline BuyOutput prefix_suffix_buying(const Graph& g, const PairSet& pairs,
                                      const EdgeSet& h, std::uint32_t ell_edges,
                                      const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  net.load_edges(h, Tag::kBfs);
  detail::load_pairs(net, pairs);
  prefix_suffix_step(net, PairMode::kExplicit, ell_edges);
  return detail::collect_bought(net, Tag::kPrefixSuffix);
}

inline BuyOutput path_buying_4p(const Graph& g, std::span<const NodeId> a,
                                const ClusterState& cs, const EdgeSet& h,
                                double threshold,
                                const congest::SimConfig& sc = {}) {
  Network net(g, network_config(sc));
  net.load_edges(h, Tag::kBfs);
  load_clusters(net, cs);
  for (NodeId c : a) {
    if (!net.node(c).is_center) {
      throw std::invalid_argument("A may contain only centers");
    }
    net.node(c).in_a = true;
  }
  cluster_path_step(net, threshold, true);
  return detail::collect_bought(net, Tag::kPathBuy);
}

}  // namespace spanners

#endif  // SPANNERS_PHASES_HPP_
