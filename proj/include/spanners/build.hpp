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

#ifndef SPANNERS_BUILD_HPP_
#define SPANNERS_BUILD_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spanners/congest.hpp"
#include "spanners/graph.hpp"
#include "spanners/network.hpp"
#include "spanners/params.hpp"
#include "spanners/phases.hpp"

namespace spanners {

using SourceSet = std::vector<NodeId>;
using SpannerInput = std::variant<std::monostate, SourceSet, PairSet>;

struct SpannerResult {
  EdgeSet h_edges;
  /// Phase that first added each edge of h_edges.
  std::map<Edge, Tag> attribution;
  congest::RoundStats stats;
  AlgoConfig config;
  /// Pipeline that actually ran (SUB2/SUB4 resolve to a base algorithm,
  /// 4P may fall back to 2P) and its parameters.
  Algorithm pipeline = Algorithm::k2S;
  Params params;
  /// "main" or a short description of the fallback taken.
  std::string branch = "main";
  std::vector<PhaseRecord> phases;
  std::optional<congest::Trace> trace;

  std::size_t centers = 0;
  std::size_t roots = 0;
  std::size_t a_size = 0;

  std::map<Tag, std::size_t> attribution_counts() const {
    std::map<Tag, std::size_t> counts;
    for (const auto& [e, tag] : attribution) ++counts[tag];
    return counts;
  }
};

namespace detail {

class Builder {
 public:
  Builder(const Graph& g, const AlgoConfig& cfg)
      : g_(g),
        cfg_(cfg),
        net_(g, NetworkConfig{cfg.seed, cfg.bandwidth_multiplier,
                              cfg.max_rounds, cfg.trace}) {}

  SpannerResult run(const SpannerInput& input) {
    result_.config = cfg_;
    result_.pipeline = cfg_.algorithm;
    load_input(input);
    n_ = static_cast<double>(count("gather:n", [](const NodeState&) { return true; }));
    switch (cfg_.algorithm) {
      case Algorithm::k2S:
        run_2s(count("gather:|S|", in_s));
        break;
      case Algorithm::k4AP:
        run_4ap();
        break;
      case Algorithm::k2P: {
        const auto [pairs, tau] = gather_pairs();
        run_2p(pairs, tau, PairMode::kExplicit);
        break;
      }
      case Algorithm::k4P: {
        const auto [pairs, tau] = gather_pairs();
        run_4p(pairs, tau, PairMode::kExplicit);
        break;
      }
      case Algorithm::k8AP:
        run_8ap();
        break;
      case Algorithm::kSub2:
      case Algorithm::kSub4:
        run_subsetwise(count("gather:|S|", in_s));
        break;
    }
    result_.attribution = net_.attribution();
    for (const auto& [e, tag] : result_.attribution) result_.h_edges.insert(e);
    result_.stats = net_.stats();
    result_.phases = net_.phases();
    result_.trace = std::move(net_.trace());
    return std::move(result_);
  }

 private:
  static bool in_s(const NodeState& st) { return st.in_s; }

  void load_input(const SpannerInput& input) {
    const InputKind kind = input_kind(cfg_.algorithm);
    const bool ok = (kind == InputKind::kNone &&
                     std::holds_alternative<std::monostate>(input)) ||
                    (kind == InputKind::kSources &&
                     std::holds_alternative<SourceSet>(input)) ||
                    (kind == InputKind::kPairs &&
                     std::holds_alternative<PairSet>(input));
    if (!ok) {
      throw std::invalid_argument("input kind does not match algorithm " +
                                  std::string(algorithm_name(cfg_.algorithm)));
    }
    if (const auto* s = std::get_if<SourceSet>(&input)) {
      for (NodeId v : *s) {
        if (v >= g_.node_count()) throw std::out_of_range("source out of range");
        net_.node(v).in_s = true;
      }
    }
    if (const auto* p = std::get_if<PairSet>(&input)) {
      detail::load_pairs(net_, *p);
    }
  }

  template <class Pred>
  std::uint64_t count(const std::string& name, Pred pred) {
    std::vector<std::uint64_t> values(net_.size());
    for (NodeId v = 0; v < net_.size(); ++v) values[v] = pred(net_.node(v)) ? 1 : 0;
    return net_.gather_sum(name, values);
  }

  std::pair<std::uint64_t, std::uint64_t> gather_pairs() {
    std::vector<std::uint64_t> degree(net_.size());
    for (NodeId v = 0; v < net_.size(); ++v) {
      degree[v] = net_.node(v).partners.size();
    }
    const std::uint64_t pairs = net_.gather_sum("gather:|P|", degree) / 2;
    const std::uint64_t tau =
        count("gather:tau", [](const NodeState& st) { return !st.partners.empty(); });
    return {pairs, tau};
  }

  Params params(Algorithm a, double size) {
    result_.pipeline = a;
    result_.params = derive_params(a, cfg_.c, n_, size, cfg_.overrides);
    return result_.params;
  }

  bool force() const { return cfg_.overrides.force_main_branch; }

  template <class Pred>
  void bfs_union(const std::string& branch, const std::string& name, Pred pred) {
    result_.branch = branch;
    net_.reset_bfs();
    for (NodeId v = 0; v < net_.size(); ++v) {
      net_.node(v).bfs_root = pred(net_.node(v));
    }
    run_parallel_bfs(net_, Tag::kBfs, name);
  }

  void cluster_and_trees(const Params& p) {
    run_clustering(net_, p.p_center);
    net_.reset_bfs();
    net_.local_coins(
        "root-coins", p.p_root, [](const NodeState& st) { return st.is_center; },
        [](NodeState& st, bool heads) { st.bfs_root = heads; });
    for (NodeId v = 0; v < net_.size(); ++v) {
      result_.centers += net_.node(v).is_center ? 1 : 0;
      result_.roots += net_.node(v).bfs_root ? 1 : 0;
    }
    run_parallel_bfs(net_, Tag::kBfs, "root-bfs");
  }

  void run_2s(std::uint64_t s_count) {
    const Params p = params(Algorithm::k2S, static_cast<double>(s_count));
    if (!force() && (s_count == 0 || p.h >= static_cast<double>(s_count))) {
      bfs_union("fallback: BFS trees from S", "source-bfs", in_s);
      return;
    }
    cluster_and_trees(p);
    cluster_path_step(net_, p.threshold, false);
  }

  void run_4ap() {
    const Params p = params(Algorithm::k4AP, 0);
    run_clustering(net_, p.p_center);
    const auto centers =
        count("gather:|C|", [](const NodeState& st) { return st.is_center; });
    if (!force() && p.h >= static_cast<double>(centers)) {
      result_.centers = centers;
      bfs_union("fallback: BFS trees from centers", "center-bfs",
                [](const NodeState& st) { return st.is_center; });
      return;
    }
    net_.reset_bfs();
    net_.local_coins(
        "root-coins", p.p_root, [](const NodeState& st) { return st.is_center; },
        [](NodeState& st, bool heads) { st.bfs_root = heads; });
    for (NodeId v = 0; v < net_.size(); ++v) {
      NodeState& st = net_.node(v);
      result_.centers += st.is_center ? 1 : 0;
      result_.roots += st.bfs_root ? 1 : 0;
      st.in_s = st.is_center;
    }
    run_parallel_bfs(net_, Tag::kBfs, "root-bfs");
    cluster_path_step(net_, p.threshold, false);
  }

  void run_2p(std::uint64_t pairs, std::uint64_t tau, PairMode mode) {
    const Params p = params(Algorithm::k2P, static_cast<double>(pairs));
    const double ln = std::log(n_);
    const double limit = 2 * cfg_.c * cfg_.c *
                         std::cbrt(static_cast<double>(pairs)) *
                         std::pow(ln, 2.0 / 3.0);
    if (!force() && (pairs == 0 || static_cast<double>(tau) < limit)) {
      bfs_union("fallback: BFS trees from endpoints", "endpoint-bfs",
                [mode](const NodeState& st) { return st.is_endpoint(mode); });
      return;
    }
    cluster_and_trees(p);
    pairwise_step(net_, mode, p.threshold);
  }

  void run_4p(std::uint64_t pairs, std::uint64_t tau, PairMode mode) {
    const double ln = std::log(n_);
    if (!force() && static_cast<double>(pairs) < std::pow(ln, 4)) {
      run_2p(pairs, tau, mode);
      if (result_.branch == "main") result_.branch = "fallback: 2P";
      return;
    }
    const Params p = params(Algorithm::k4P, static_cast<double>(pairs));
    cluster_and_trees(p);
    rest_of_4p(p, mode);
  }

  void run_8ap() {
    const Params p = params(Algorithm::k8AP, 0);
    cluster_and_trees(p);
    for (NodeId v = 0; v < net_.size(); ++v) {
      net_.node(v).in_s = net_.node(v).is_center;
    }
    rest_of_4p(p, PairMode::kAllMarked);
  }

  void rest_of_4p(const Params& p, PairMode mode) {
    prefix_suffix_step(net_, mode, p.ell_edges);
    net_.local_coins(
        "a-coins", p.p_a, [](const NodeState& st) { return st.is_center; },
        [](NodeState& st, bool heads) { st.in_a = heads; });
    for (NodeId v = 0; v < net_.size(); ++v) {
      result_.a_size += net_.node(v).in_a ? 1 : 0;
    }
    cluster_path_step(net_, p.threshold, true);
  }

  void run_subsetwise(std::uint64_t s_count) {
    const double ln = std::log(n_);
    const double s = static_cast<double>(s_count);
    const std::uint64_t pairs = s_count * (s_count - (s_count > 0 ? 1 : 0)) / 2;
    if (cfg_.algorithm == Algorithm::kSub2) {
      if (s > std::pow(n_, 0.6) * std::pow(ln, 0.2)) {
        run_2s(s_count);
      } else {
        run_2p(pairs, s_count, PairMode::kAllMarked);
      }
    } else {
      if (s > std::pow(n_, 0.7) * std::pow(ln, -0.1)) {
        run_4ap();
      } else {
        run_4p(pairs, s_count, PairMode::kAllMarked);
      }
    }
  }

  const Graph& g_;
  AlgoConfig cfg_;
  Network net_;
  double n_ = 0;
  SpannerResult result_;
};

}  // namespace detail

/// Runs the chosen algorithm as a sequence of CONGEST phases. The input
/// must be a SourceSet for 2S/SUB2/SUB4, a PairSet for 2P/4P and empty for
/// 4AP/8AP. g must be connected.
inline SpannerResult build_spanner(const Graph& g, const SpannerInput& input,
                                   const AlgoConfig& cfg) {
  if (g.node_count() == 0) throw GraphError("graph has no nodes");
  if (!is_connected(g)) throw GraphError("graph must be connected");
  if (cfg.c <= 0) throw std::invalid_argument("c must be positive");
  if (g.node_count() == 1) {
    SpannerResult r;
    r.config = cfg;
    r.pipeline = cfg.algorithm;
    r.branch = "single node";
    return r;
  }
  return detail::Builder(g, cfg).run(input);
}

}  // namespace spanners

#endif  // SPANNERS_BUILD_HPP_
