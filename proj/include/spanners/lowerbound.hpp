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

// The two-party PART-COMP relation and its reduction to pairwise spanners
// on the lower-bound graphs: Alice holds x, a set of p edge indices of the
// incidence graph G'; the pendant pairs across those edges form P, and any
// (+2)-pairwise spanner for P must keep exactly those edges. Bob reads off
// the absent edges as his answer y.
//
// Edges of G' are indexed 1..m in lexicographic order of their normalised
// endpoints (LowerBoundGraph::base_edges). Alice simulates the pendant
// nodes; Bob simulates G' (and, in the generalised graphs, the apex and
// its paths).

#ifndef SPANNERS_LOWERBOUND_HPP_
#define SPANNERS_LOWERBOUND_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanners/build.hpp"
#include "spanners/congest.hpp"
#include "spanners/generators.hpp"
#include "spanners/graph.hpp"

namespace spanners {

struct PartCompInstance {
  std::size_t m = 0;
  std::size_t p = 0;
  /// Sorted indices in 1..m.
  std::vector<std::uint32_t> x;
};

struct PartCompAnswer {
  std::vector<std::uint32_t> y;
};

/// Size Bob must output. m is odd for real incidence graphs; the floor is
/// used then.
inline std::size_t partcomp_half(std::size_t m) { return m / 2; }

/// Throws std::invalid_argument unless p <= m/3, |x| = p and x is a set of
/// indices in 1..m.
inline void validate(const PartCompInstance& inst) {
  if (inst.m == 0) throw std::invalid_argument("m must be positive");
  if (inst.p > inst.m / 3) {
    throw std::invalid_argument("p = " + std::to_string(inst.p) +
                                " exceeds m/3 = " + std::to_string(inst.m / 3));
  }
  if (inst.x.size() != inst.p) throw std::invalid_argument("|x| must equal p");
  for (std::size_t i = 0; i < inst.x.size(); ++i) {
    if (inst.x[i] < 1 || inst.x[i] > inst.m) {
      throw std::invalid_argument("index " + std::to_string(inst.x[i]) +
                                  " outside 1..m");
    }
    if (i > 0 && inst.x[i] <= inst.x[i - 1]) {
      throw std::invalid_argument("x must be strictly increasing");
    }
  }
}

inline PartCompInstance make_instance(std::size_t m, std::vector<std::uint32_t> x) {
  std::sort(x.begin(), x.end());
  PartCompInstance inst{m, x.size(), std::move(x)};
  validate(inst);
  return inst;
}

/// Uniformly random x of size p.
inline PartCompInstance random_instance(std::size_t m, std::size_t p,
                                        std::uint64_t seed) {
  if (p > m / 3) {
    throw std::invalid_argument("p = " + std::to_string(p) + " exceeds m/3 = " +
                                std::to_string(m / 3));
  }
  std::vector<std::uint32_t> all(m);
  std::iota(all.begin(), all.end(), 1u);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> x;
  std::sample(all.begin(), all.end(), std::back_inserter(x),
              static_cast<std::ptrdiff_t>(p), rng);
  return make_instance(m, std::move(x));
}

inline bool partcomp_check(const PartCompInstance& inst, const PartCompAnswer& ans) {
  if (ans.y.size() != partcomp_half(inst.m)) return false;
  std::vector<std::uint32_t> y = ans.y;
  std::sort(y.begin(), y.end());
  if (std::adjacent_find(y.begin(), y.end()) != y.end()) return false;
  for (std::uint32_t k : y) {
    if (k < 1 || k > inst.m) return false;
    if (std::binary_search(inst.x.begin(), inst.x.end(), k)) return false;
  }
  return true;
}

/// P = {(v_i, v_j) : e_k = {v_i', v_j'} for some k in x}.
inline PairSet derive_pairs(const LowerBoundGraph& lb, const PartCompInstance& inst) {
  if (inst.m != lb.m()) throw std::invalid_argument("instance m does not match graph");
  PairSet pairs;
  for (std::uint32_t k : inst.x) {
    const Edge& e = lb.base_edges[k - 1];
    pairs.insert(lb.pendant_of[e.u], lb.pendant_of[e.v]);
  }
  return pairs;
}

/// The incidence edge {v_i', v_j'} behind each pendant pair (v_i, v_j).
/// Also checks by BFS that dropping that edge stretches its pair by more
/// than 2; throws std::logic_error if the graph does not force it.
inline EdgeSet forced_edges(const LowerBoundGraph& lb, const PairSet& pairs) {
  const Graph& g = lb.graph;
  EdgeSet forced;
  for (const Edge& pr : pairs) {
    if (!lb.is_pendant(pr.u) || !lb.is_pendant(pr.v)) {
      throw std::invalid_argument("pair (" + std::to_string(pr.u) + "," +
                                  std::to_string(pr.v) + ") is not a pendant pair");
    }
    const Edge e(lb.base_of_pendant(pr.u), lb.base_of_pendant(pr.v));
    if (!std::binary_search(lb.base_edges.begin(), lb.base_edges.end(), e)) {
      throw std::invalid_argument("pair (" + std::to_string(pr.u) + "," +
                                  std::to_string(pr.v) +
                                  ") has no incidence edge behind it");
    }
    forced.insert(e);
  }
  EdgeSet all = g.edge_set();
  for (const Edge& e : forced) {
    all.erase(e);
    const Graph without = Graph::from_edges(g.node_count(), all);
    all.insert(e);
    const NodeId a = lb.pendant_of[e.u];
    const NodeId b = lb.pendant_of[e.v];
    const auto dg = bfs_distances(g, a)[b];
    const auto dh = bfs_distances(without, a)[b];
    if (dh != kUnreached && dh <= dg + 2) {
      throw std::logic_error("edge {" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + "} is not forced");
    }
  }
  return forced;
}

struct ReductionOutcome {
  /// False when H keeps more than m - m/2 edges of G'.
  bool ok = false;
  PartCompAnswer answer;
  /// Number of G' edges missing from H.
  std::size_t absent = 0;
};

/// y = {k : e_k not in H}, cut to its m/2 smallest indices.
inline ReductionOutcome reduction_extract_y(const LowerBoundGraph& lb,
                                            const EdgeSet& h) {
  for (const Edge& e : h) {
    if (e.v >= lb.graph.node_count() || !lb.graph.has_edge(e.u, e.v)) {
      throw std::invalid_argument("H is not a subgraph: edge {" +
                                  std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "}");
    }
  }
  ReductionOutcome out;
  std::vector<std::uint32_t> y;
  for (std::size_t k = 1; k <= lb.m(); ++k) {
    if (!h.contains(lb.base_edges[k - 1])) y.push_back(static_cast<std::uint32_t>(k));
  }
  out.absent = y.size();
  const std::size_t half = partcomp_half(lb.m());
  if (y.size() < half) return out;
  y.resize(half);
  out.ok = true;
  out.answer.y = std::move(y);
  return out;
}

/// 0 for Alice's nodes (pendants), 1 for Bob's.
inline std::vector<std::uint8_t> cut_sides(const LowerBoundGraph& lb) {
  std::vector<std::uint8_t> side(lb.graph.node_count(), 1);
  for (NodeId v : lb.pendant_of) side[v] = 0;
  return side;
}

struct CutSimulation {
  std::uint64_t bits_across_cut = 0;
  PairSet pairs;
  EdgeSet forced;
  std::size_t forced_present = 0;
  SpannerResult spanner;
};

/// Runs a pairwise algorithm on the lower-bound graph with tracing and
/// counts the bits carried by the pendant edges.
inline CutSimulation run_cut_simulation(const LowerBoundGraph& lb,
                                        const PartCompInstance& inst,
                                        AlgoConfig cfg) {
  if (input_kind(cfg.algorithm) != InputKind::kPairs) {
    throw std::invalid_argument("cut simulation needs a pairwise algorithm");
  }
  validate(inst);
  CutSimulation out;
  out.pairs = derive_pairs(lb, inst);
  out.forced = forced_edges(lb, out.pairs);
  cfg.trace = true;
  out.spanner = build_spanner(lb.graph, out.pairs, cfg);
  const auto sides = cut_sides(lb);
  out.bits_across_cut = congest::account_cut_bits(
      out.spanner.trace, std::span<const std::uint8_t>(sides));
  for (const Edge& e : out.forced) {
    out.forced_present += out.spanner.h_edges.contains(e) ? 1 : 0;
  }
  return out;
}

/// H with every G' edge outside `keep` removed.
inline EdgeSet restrict_base_edges(const LowerBoundGraph& lb, const EdgeSet& h,
                                   const EdgeSet& keep) {
  EdgeSet out;
  for (const Edge& e : h) {
    const bool base = e.u < lb.base_nodes && e.v < lb.base_nodes;
    if (!base || keep.contains(e)) out.insert(e);
  }
  return out;
}

inline constexpr const char* kCutCsvHeader =
    "q,n,m,p,bits_cut,p_over_100,rounds,spanner_edges,forced_present";

inline std::string cut_csv_row(std::uint32_t q, const LowerBoundGraph& lb,
                               const PartCompInstance& inst,
                               const CutSimulation& sim) {
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.2f", static_cast<double>(inst.p) / 100.0);
  return std::to_string(q) + "," + std::to_string(lb.graph.node_count()) + "," +
         std::to_string(lb.m()) + "," + std::to_string(inst.p) + "," +
         std::to_string(sim.bits_across_cut) + "," + ratio + "," +
         std::to_string(sim.spanner.stats.rounds) + "," +
         std::to_string(sim.spanner.h_edges.size()) + "," +
         std::to_string(sim.forced_present);
}

}  // namespace spanners

#endif  // SPANNERS_LOWERBOUND_HPP_
