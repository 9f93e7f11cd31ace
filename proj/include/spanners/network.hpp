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

// Per-node state that persists across the phases of a spanner algorithm,
// and the Network that runs phases back to back while accounting rounds.
//
// Each phase is a separate CONGEST simulation whose programs receive a
// pointer to their own node's NodeState and nothing else. Phases whose
// length is data dependent are followed by a barrier: a max-aggregation
// over a BFS tree, which both detects termination and spreads the value
// the next phase needs (e.g. the length of a BFS wave). Its rounds are
// charged like any other phase.

#ifndef SPANNERS_NETWORK_HPP_
#define SPANNERS_NETWORK_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spanners/congest.hpp"
#include "spanners/graph.hpp"

namespace spanners {

/// Phase that first put an edge into H.
enum class Tag : std::uint8_t {
  kNone = 0,
  kCluster,
  kUnclustered,
  kBfs,
  kPrefixSuffix,
  kPathBuy,
};

inline std::string_view tag_name(Tag t) {
  switch (t) {
    case Tag::kNone: return "none";
    case Tag::kCluster: return "cluster";
    case Tag::kUnclustered: return "unclustered";
    case Tag::kBfs: return "bfs";
    case Tag::kPrefixSuffix: return "prefix_suffix";
    case Tag::kPathBuy: return "path_buy";
  }
  return "?";
}

/// One node's view of one BFS tree.
struct Slot {
  NodeId root = kNoNode;
  std::uint32_t dist = kUnreached;
  NodeId parent = kNoNode;
  std::uint32_t parent_port = 0;
  /// Missing edges on the tree path from the root.
  std::uint32_t missing = 0;
  /// Whether the edge to the parent was missing when the tree was built.
  bool edge_missing = false;
  /// Round in which the parent forwarded this tree's final token.
  std::uint64_t parent_send_round = 0;
  std::uint64_t send_round = 0;
};

class SlotTable {
 public:
  void clear() {
    slots_.clear();
    index_.clear();
  }

  std::size_t size() const { return slots_.size(); }
  Slot& operator[](std::size_t i) { return slots_[i]; }
  const Slot& operator[](std::size_t i) const { return slots_[i]; }
  auto begin() const { return slots_.begin(); }
  auto end() const { return slots_.end(); }

  std::optional<std::uint32_t> find(NodeId root) const {
    const auto it = index_.find(root);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t at(NodeId root) const {
    const auto it = index_.find(root);
    if (it == index_.end()) {
      throw std::logic_error("no BFS slot for root " + std::to_string(root));
    }
    return it->second;
  }

  std::uint32_t get_or_add(NodeId root) {
    const auto [it, inserted] =
        index_.try_emplace(root, static_cast<std::uint32_t>(slots_.size()));
    if (inserted) {
      slots_.emplace_back();
      slots_.back().root = root;
    }
    return it->second;
  }

 private:
  std::vector<Slot> slots_;
  std::unordered_map<NodeId, std::uint32_t> index_;
};

enum class PairMode : std::uint8_t {
  /// partners lists the other endpoints explicitly.
  kExplicit,
  /// Every in_s node is paired with every other in_s node.
  kAllMarked,
};

struct NodeState {
  /// Tag of each incident edge in H, indexed by port.
  std::vector<Tag> h;

  bool in_s = false;
  std::vector<NodeId> partners;  // sorted

  bool is_center = false;
  /// Own id for centers; kNoNode when unclustered.
  NodeId center = kNoNode;
  std::uint32_t center_port = 0;
  std::vector<std::uint32_t> member_ports;

  bool bfs_root = false;
  bool in_a = false;

  SlotTable slots;
  /// Trees in which this node starts a backward pass.
  std::vector<NodeId> initiate;

  bool clustered() const { return center != kNoNode; }

  void mark(std::uint32_t port, Tag tag) {
    if (h[port] == Tag::kNone) h[port] = tag;
  }

  bool is_partner(NodeId me, NodeId other, PairMode mode) const {
    if (other == me) return false;
    if (mode == PairMode::kAllMarked) return in_s;
    return std::binary_search(partners.begin(), partners.end(), other);
  }

  bool is_endpoint(PairMode mode) const {
    return mode == PairMode::kAllMarked ? in_s : !partners.empty();
  }
};

struct PhaseRecord {
  std::string name;
  congest::RoundStats stats;
};

struct NetworkConfig {
  std::uint64_t seed = 1;
  std::uint32_t bandwidth_multiplier = 4;
  std::uint64_t max_rounds = 0;
  bool trace = false;
};

class Network {
 public:
  Network(const Graph& g, NetworkConfig cfg) : g_(g), cfg_(cfg), nodes_(g.node_count()) {
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      nodes_[v].h.assign(g.degree(v), Tag::kNone);
    }
    if (cfg.trace) trace_.emplace();
  }

  const Graph& graph() const { return g_; }
  std::size_t size() const { return nodes_.size(); }
  NodeState& node(NodeId v) { return nodes_[v]; }
  const NodeState& node(NodeId v) const { return nodes_[v]; }
  const congest::RoundStats& stats() const { return stats_; }
  const std::vector<PhaseRecord>& phases() const { return phases_; }
  std::optional<congest::Trace>& trace() { return trace_; }

  /// Runs one phase. Programs are built from the node states by make.
  template <class Make>
  auto run(std::string_view name, Make make) {
    using Node = decltype(make(std::declval<NodeState*>()));
    std::vector<Node> programs;
    programs.reserve(nodes_.size());
    for (auto& st : nodes_) programs.push_back(make(&st));
    auto sim = congest::run_simulation(g_, std::move(programs),
                                       next_sim_config());
    record(name, sim.stats, sim.trace);
    return sim;
  }

  /// Aggregates max(values) at every node; used as a phase barrier.
  std::uint64_t barrier(std::string_view name,
                        const std::vector<std::uint64_t>& values) {
    return aggregate(name, values,
                     [](std::uint64_t a, std::uint64_t b) { return std::max(a, b); });
  }

  std::uint64_t gather_sum(std::string_view name,
                           const std::vector<std::uint64_t>& values) {
    return aggregate(name, values,
                     [](std::uint64_t a, std::uint64_t b) { return a + b; });
  }

  /// Seed of the next phase's private coin streams.
  std::uint64_t next_phase_seed() {
    return congest::splitmix64(cfg_.seed ^ congest::splitmix64(++phase_counter_));
  }

  /// Communication-free coin flip at every node where eligible(state) holds.
  template <class Eligible, class Apply>
  void local_coins(std::string_view name, double p, Eligible eligible,
                   Apply apply) {
    const std::uint64_t seed = next_phase_seed();
    std::bernoulli_distribution coin(p);
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      if (!eligible(nodes_[v])) continue;
      std::mt19937_64 rng(congest::node_seed(seed, v));
      apply(nodes_[v], coin(rng));
    }
    phases_.push_back(PhaseRecord{std::string(name), {}});
  }

  void load_edges(const EdgeSet& edges, Tag tag) {
    for (const Edge& e : edges) {
      if (!g_.has_edge(e.u, e.v)) {
        throw GraphError("edge {" + std::to_string(e.u) + "," +
                         std::to_string(e.v) + "} is not in the graph");
      }
      nodes_[e.u].mark(port(e.u, e.v), tag);
      nodes_[e.v].mark(port(e.v, e.u), tag);
    }
  }

  std::uint32_t port(NodeId v, NodeId neighbor) const {
    const auto nbrs = g_.neighbors(v);
    return static_cast<std::uint32_t>(
        std::lower_bound(nbrs.begin(), nbrs.end(), neighbor) - nbrs.begin());
  }

  /// H as recorded by both endpoints of each edge.
  std::map<Edge, Tag> attribution() const {
    std::map<Edge, Tag> out;
    for (NodeId v = 0; v < nodes_.size(); ++v) {
      const auto nbrs = g_.neighbors(v);
      for (std::uint32_t p = 0; p < nbrs.size(); ++p) {
        const NodeId u = nbrs[p];
        const Tag mine = nodes_[v].h[p];
        const Tag theirs = nodes_[u].h[port(u, v)];
        if ((mine == Tag::kNone) != (theirs == Tag::kNone)) {
          throw std::logic_error("endpoints disagree on edge {" +
                                 std::to_string(v) + "," + std::to_string(u) +
                                 "}");
        }
        if (v < u && mine != Tag::kNone) out.emplace(Edge(v, u), mine);
      }
    }
    return out;
  }

  EdgeSet edges() const {
    EdgeSet out;
    for (const auto& [e, tag] : attribution()) out.insert(e);
    return out;
  }

  void reset_bfs() {
    for (auto& st : nodes_) {
      st.bfs_root = false;
      st.slots.clear();
      st.initiate.clear();
    }
  }

 private:
  congest::SimConfig next_sim_config() {
    congest::SimConfig sc;
    sc.bandwidth_multiplier = cfg_.bandwidth_multiplier;
    sc.max_rounds = cfg_.max_rounds;
    sc.seed = next_phase_seed();
    sc.trace = cfg_.trace;
    return sc;
  }

  void record(std::string_view name, const congest::RoundStats& s,
              const std::optional<congest::Trace>& trace) {
    if (trace_ && trace) trace_->append(*trace, stats_.rounds);
    stats_ += s;
    phases_.push_back(PhaseRecord{std::string(name), s});
  }

  template <class Combine>
  std::uint64_t aggregate(std::string_view name,
                          const std::vector<std::uint64_t>& values,
                          Combine combine) {
    auto res = congest::gather_and_spread(
        g_, std::span<const std::uint64_t>(values), combine, next_sim_config());
    record(name, res.stats, res.trace);
    return res.values.empty() ? 0 : res.values.front();
  }

  const Graph& g_;
  NetworkConfig cfg_;
  std::vector<NodeState> nodes_;
  congest::RoundStats stats_;
  std::vector<PhaseRecord> phases_;
  std::optional<congest::Trace> trace_;
  std::uint64_t phase_counter_ = 0;
};

}  // namespace spanners

#endif  // SPANNERS_NETWORK_HPP_
