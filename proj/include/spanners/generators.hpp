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

#ifndef SPANNERS_GENERATORS_HPP_
#define SPANNERS_GENERATORS_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spanners/graph.hpp"

namespace spanners {

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph::from_edges(n, std::span<const Edge>(edges));
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  }
  return Graph::from_edges(n, std::span<const Edge>(edges));
}

/// Center 0, leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, std::span<const Edge>(edges));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::span<const Edge>(edges));
}

inline constexpr int kGnpMaxReseeds = 16;

/// Connected Erdos-Renyi sample. A disconnected draw is retried with
/// seed+1, seed+2, ... up to kGnpMaxReseeds times.
inline Graph gen_gnp(std::size_t n, double p, std::uint64_t seed,
                     int max_reseeds = kGnpMaxReseeds) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw GraphError("edge probability must lie in [0,1]");
  }
  for (int attempt = 0; attempt <= max_reseeds; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (coin(rng)) edges.emplace_back(u, v);
      }
    }
    Graph g = Graph::from_edges(n, std::span<const Edge>(edges));
    if (is_connected(g)) return g;
  }
  throw GraphError("G(" + std::to_string(n) + "," + std::to_string(p) +
                   ") stayed disconnected after " +
                   std::to_string(max_reseeds) + " reseeds");
}

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

namespace detail {

/// Normalized homogeneous coordinates of PG(2,q): the first nonzero
/// coordinate is 1.
inline std::vector<std::array<std::uint32_t, 3>> projective_points(
    std::uint32_t q) {
  std::vector<std::array<std::uint32_t, 3>> points;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) points.push_back({1, a, b});
  }
  for (std::uint32_t a = 0; a < q; ++a) points.push_back({0, 1, a});
  points.push_back({0, 0, 1});
  return points;
}

}  // namespace detail

/// Point-line incidence graph of PG(2,q) for prime q. Points take ids
/// 0..q^2+q, lines the next q^2+q+1 ids.
inline Graph build_projective_incidence(std::uint32_t q) {
  if (!is_prime(q)) {
    throw GraphError("projective plane order " + std::to_string(q) +
                     " is not prime");
  }
  const auto points = detail::projective_points(q);
  const auto count = static_cast<NodeId>(points.size());
  std::vector<Edge> edges;
  for (NodeId p = 0; p < count; ++p) {
    for (NodeId l = 0; l < count; ++l) {
      std::uint64_t dot = 0;
      for (int i = 0; i < 3; ++i) {
        dot += static_cast<std::uint64_t>(points[p][i]) * points[l][i];
      }
      if (dot % q == 0) edges.emplace_back(p, count + l);
    }
  }
  return Graph::from_edges(2 * count, std::span<const Edge>(edges));
}

/// Base graph G' plus one pendant node per base node. For the
/// generalized family the base nodes are also joined to an apex through
/// disjoint paths.
struct LowerBoundGraph {
  Graph graph;
  std::size_t base_nodes = 0;
  /// pendant_of[i] is the pendant attached to base node i.
  std::vector<NodeId> pendant_of;
  /// Edges of G', lexicographic; base_edges[k-1] is edge e_k.
  std::vector<Edge> base_edges;
  std::optional<NodeId> apex;
  std::uint32_t path_length = 0;

  bool is_pendant(NodeId v) const {
    return v >= pendant_of.front() && v <= pendant_of.back();
  }
  NodeId base_of_pendant(NodeId v) const { return v - pendant_of.front(); }
  std::size_t m() const { return base_edges.size(); }
};

namespace detail {

inline LowerBoundGraph attach_pendants(const Graph& base,
                                       std::vector<Edge> extra_edges,
                                       std::size_t extra_nodes) {
  LowerBoundGraph lb;
  lb.base_nodes = base.node_count();
  lb.base_edges = base.edges();
  const std::size_t first_pendant = lb.base_nodes + extra_nodes;
  std::vector<Edge> edges = lb.base_edges;
  edges.insert(edges.end(), extra_edges.begin(), extra_edges.end());
  for (NodeId i = 0; i < lb.base_nodes; ++i) {
    const auto pendant = static_cast<NodeId>(first_pendant + i);
    lb.pendant_of.push_back(pendant);
    edges.emplace_back(i, pendant);
  }
  lb.graph = Graph::from_edges(first_pendant + lb.base_nodes,
                               std::span<const Edge>(edges));
  return lb;
}

}  // namespace detail

/// PG(2,q) incidence graph plus a pendant per incidence node.
inline LowerBoundGraph build_lowerbound_graph(std::uint32_t q) {
  return detail::attach_pendants(build_projective_incidence(q), {}, 0);
}

/// Generalized family for girth g = 3*alpha + beta: base plus apex u, a
/// disjoint path of floor(g/2) internal nodes from every base node to u, and
/// a pendant per base node.
inline LowerBoundGraph build_general_lowerbound_graph(std::uint32_t alpha,
                                                      std::uint32_t beta,
                                                      const Graph& base) {
  if (alpha < 1) throw GraphError("alpha must be at least 1");
  const std::uint32_t g = 3 * alpha + beta;
  const auto base_girth = girth(base);
  if (base_girth && *base_girth < g) {
    throw GraphError("base girth " + std::to_string(*base_girth) +
                     " is below required " + std::to_string(g));
  }
  const std::uint32_t k = g / 2;
  const std::size_t n0 = base.node_count();
  const auto apex = static_cast<NodeId>(n0);
  std::vector<Edge> extra;
  for (NodeId i = 0; i < n0; ++i) {
    NodeId prev = i;
    for (std::uint32_t j = 0; j < k; ++j) {
      const auto inner = static_cast<NodeId>(n0 + 1 + i * k + j);
      extra.emplace_back(prev, inner);
      prev = inner;
    }
    extra.emplace_back(prev, apex);
  }
  auto lb = detail::attach_pendants(base, std::move(extra), 1 + n0 * k);
  lb.apex = apex;
  lb.path_length = k;
  return lb;
}

}  // namespace spanners

#endif  // SPANNERS_GENERATORS_HPP_
