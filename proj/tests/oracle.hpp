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

// Reference implementations used only by tests. None of them share code
// with the library's BFS.

#ifndef SPANNERS_TESTS_ORACLE_HPP_
#define SPANNERS_TESTS_ORACLE_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "spanners/graph.hpp"

namespace oracle {

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// All-pairs hop distances by Floyd-Warshall over an edge list.
inline std::vector<std::vector<std::uint32_t>> floyd(
    std::size_t n, const std::vector<spanners::Edge>& edges) {
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : edges) {
    d[e.u][e.v] = 1;
    d[e.v][e.u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d[k][j] == kInf) continue;
        const std::uint32_t via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

inline std::vector<std::vector<std::uint32_t>> floyd(const spanners::Graph& g) {
  return floyd(g.node_count(), g.edges());
}

inline std::vector<std::vector<std::uint32_t>> floyd(std::size_t n,
                                                     const spanners::EdgeSet& h) {
  return floyd(n, h.to_vector());
}

/// Points of PG(2,q) as classes of nonzero vectors of GF(q)^3 under scalar
/// multiplication; each class is represented by its lexicographically
/// smallest member. Returns the incidence edge count and the per-node
/// degrees of the point-line incidence graph.
struct PlaneCounts {
  std::size_t points = 0;
  std::size_t incidences = 0;
  std::set<std::size_t> point_degrees;
};

inline PlaneCounts enumerate_plane(std::uint32_t q) {
  using Vec = std::array<std::uint32_t, 3>;
  std::set<Vec> reps;
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      for (std::uint32_t c = 0; c < q; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        Vec best{a, b, c};
        for (std::uint32_t k = 1; k < q; ++k) {
          Vec m{a * k % q, b * k % q, c * k % q};
          if (m < best) best = m;
        }
        reps.insert(best);
      }
    }
  }
  PlaneCounts out;
  out.points = reps.size();
  for (const Vec& p : reps) {
    std::size_t deg = 0;
    for (const Vec& l : reps) {
      if ((p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0) ++deg;
    }
    out.incidences += deg;
    out.point_degrees.insert(deg);
  }
  return out;
}

/// Every shortest u-v path, as node sequences, by exhaustive extension.
inline std::vector<std::vector<spanners::NodeId>> all_shortest_paths(
    const spanners::Graph& g, spanners::NodeId u, spanners::NodeId v) {
  const auto d = floyd(g);
  std::vector<std::vector<spanners::NodeId>> out;
  std::vector<spanners::NodeId> path{u};
  auto extend = [&](auto&& self) -> void {
    const spanners::NodeId x = path.back();
    if (x == v) {
      out.push_back(path);
      return;
    }
    for (spanners::NodeId y : g.neighbors(x)) {
      if (d[y][v] + 1 == d[x][v]) {
        path.push_back(y);
        self(self);
        path.pop_back();
      }
    }
  };
  if (d[u][v] != kInf) extend(extend);
  return out;
}

}  // namespace oracle

#endif  // SPANNERS_TESTS_ORACLE_HPP_
