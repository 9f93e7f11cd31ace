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

// Centralised checks of spanner outputs: subgraph validity, stretch
// against BFS distances, and edge/round counts relative to the asymptotic
// bounds of each algorithm.

#ifndef SPANNERS_VERIFY_HPP_
#define SPANNERS_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "spanners/build.hpp"
#include "spanners/graph.hpp"
#include "spanners/params.hpp"

namespace spanners {

inline bool verify_subgraph(const Graph& g, const EdgeSet& h) {
  return std::all_of(h.begin(), h.end(), [&](const Edge& e) {
    return e.u < g.node_count() && e.v < g.node_count() && g.has_edge(e.u, e.v);
  });
}

/// Every unordered pair of distinct nodes.
struct AllPairs {};
/// S x V.
struct SourcePairs {
  SourceSet sources;
};

using PairSpec = std::variant<PairSet, AllPairs, SourcePairs>;

struct StretchViolation {
  NodeId u = 0;
  NodeId v = 0;
  std::uint32_t dist_g = 0;
  /// kUnreached when u and v are disconnected in H.
  std::uint32_t dist_h = 0;

  bool operator==(const StretchViolation&) const = default;
};

struct StretchReport {
  std::size_t checked_pairs = 0;
  /// Largest dist_H - dist_G over checked pairs; pairs disconnected in H
  /// count as kDisconnectedExcess.
  std::int64_t max_additive_excess = 0;
  std::vector<StretchViolation> violations;
  std::int64_t bound_beta = 0;
  double bound_alpha = 1;
  /// True when only a random sample of all pairs was checked.
  bool sampled = false;

  static constexpr std::int64_t kDisconnectedExcess =
      std::numeric_limits<std::int64_t>::max();

  bool ok() const { return violations.empty(); }
};

struct StretchOptions {
  /// AllPairs switches to sampling above this many nodes.
  std::size_t sample_above = 5000;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

namespace detail {

inline void check_pair(StretchReport& rep, NodeId u, NodeId v,
                       std::uint32_t dg, std::uint32_t dh) {
  if (dg == kUnreached) return;  // g is connected by precondition
  ++rep.checked_pairs;
  const std::int64_t excess =
      dh == kUnreached ? StretchReport::kDisconnectedExcess
                       : static_cast<std::int64_t>(dh) - dg;
  rep.max_additive_excess = std::max(rep.max_additive_excess, excess);
  if (dh == kUnreached ||
      static_cast<double>(dh) > rep.bound_alpha * dg + rep.bound_beta) {
    rep.violations.push_back(StretchViolation{u, v, dg, dh});
  }
}

}  // namespace detail

/// Checks dist_H(u,v) <= alpha * dist_G(u,v) + beta for the given pairs.
/// BFS runs once per distinct left endpoint, in increasing id order, so
/// violations are reported sorted by (u, v).
inline StretchReport verify_stretch(const Graph& g, const EdgeSet& h,
                                    const PairSpec& pairs, double alpha,
                                    std::int64_t beta,
                                    const StretchOptions& opt = {}) {
  const std::size_t n = g.node_count();
  const Graph hg = Graph::from_edges(n, h);
  StretchReport rep;
  rep.bound_alpha = alpha;
  rep.bound_beta = beta;

  // Targets per source.
  std::map<NodeId, std::vector<NodeId>> targets;
  if (const auto* p = std::get_if<PairSet>(&pairs)) {
    for (const Edge& e : *p) targets[e.u].push_back(e.v);
  } else if (const auto* s = std::get_if<SourcePairs>(&pairs)) {
    std::vector<NodeId> all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    for (NodeId u : s->sources) targets[u] = all;
  } else if (n > opt.sample_above) {
    rep.sampled = true;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t i = 0; i < opt.samples; ++i) {
      NodeId u = pick(rng);
      NodeId v = pick(rng);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      targets[u].push_back(v);
    }
  } else {
    for (NodeId u = 0; u + 1 < n; ++u) {
      auto& t = targets[u];
      for (NodeId v = u + 1; v < n; ++v) t.push_back(v);
    }
  }

  for (auto& [u, ts] : targets) {
    if (u >= n) throw std::out_of_range("pair endpoint out of range");
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const auto dg = bfs_distances(g, u);
    const auto dh = bfs_distances(hg, u);
    for (NodeId v : ts) {
      if (v >= n) throw std::out_of_range("pair endpoint out of range");
      if (v == u) continue;
      detail::check_pair(rep, u, v, dg[v], dh[v]);
    }
  }
  return rep;
}

/// The stretch each algorithm promises, as the pair specification to check.
inline PairSpec required_pairs(Algorithm a, const SpannerInput& input) {
  switch (input_kind(a)) {
    case InputKind::kNone:
      return AllPairs{};
    case InputKind::kPairs:
      return std::get<PairSet>(input);
    case InputKind::kSources: {
      const auto& s = std::get<SourceSet>(input);
      if (a == Algorithm::k2S) return SourcePairs{s};
      PairSet ps;
      std::vector<NodeId> sorted = s;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
          ps.insert(sorted[i], sorted[j]);
        }
      }
      return ps;
    }
  }
  return AllPairs{};
}

// --- Size and round reports ------------------------------------------------

/// Sizes of an algorithm's input: |S|, |P| and tau(P).
struct InputSize {
  std::size_t sources = 0;
  std::size_t pairs = 0;
  std::size_t tau = 0;
};

inline InputSize input_size(const SpannerInput& input) {
  InputSize s;
  if (const auto* src = std::get_if<SourceSet>(&input)) {
    std::vector<NodeId> sorted = *src;
    std::sort(sorted.begin(), sorted.end());
    s.sources = static_cast<std::size_t>(
        std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  } else if (const auto* p = std::get_if<PairSet>(&input)) {
    s.pairs = p->size();
    s.tau = p->tau();
  }
  return s;
}

/// The parameter an algorithm's bounds are stated in: |S|, |P|, or n for
/// the all-pairs algorithms.
inline std::size_t size_parameter(Algorithm a, std::size_t n, const InputSize& s) {
  switch (input_kind(a)) {
    case InputKind::kSources: return s.sources;
    case InputKind::kPairs: return s.pairs;
    case InputKind::kNone: return n;
  }
  return n;
}

/// Edge bound of the algorithm without its constant. Natural log.
inline double size_bound(Algorithm a, double n, const InputSize& s) {
  const double ln = std::log(n);
  const double src = static_cast<double>(s.sources);
  const double prs = static_cast<double>(s.pairs);
  switch (a) {
    case Algorithm::k2S:
      return std::pow(n, 1.25) * std::pow(src, 0.25) * std::pow(ln, 0.75);
    case Algorithm::k2P:
      return n * std::cbrt(prs) * std::pow(ln, 2.0 / 3.0);
    case Algorithm::k4P:
      return n * std::pow(prs, 2.0 / 7.0) * std::pow(ln, 6.0 / 7.0);
    case Algorithm::k4AP:
      return std::pow(n, 1.4) * std::pow(ln, 0.8);
    case Algorithm::k8AP:
      return std::pow(n, 15.0 / 11.0) * std::pow(ln, 10.0 / 11.0);
    case Algorithm::kSub2:
      return n * std::pow(src, 2.0 / 3.0) * std::pow(ln, 2.0 / 3.0);
    case Algorithm::kSub4:
      return n * std::pow(src, 4.0 / 7.0) * std::pow(ln, 6.0 / 7.0);
  }
  return 0;
}

/// Round bound of the algorithm without its constant.
inline double round_bound(Algorithm a, double n, const InputSize& s,
                          std::uint32_t diameter) {
  const double ln = std::log(n);
  const double d = diameter;
  switch (a) {
    case Algorithm::k2S:
    case Algorithm::kSub2:
    case Algorithm::kSub4:
      return static_cast<double>(s.sources) + d;
    case Algorithm::k2P:
    case Algorithm::k4P:
      return static_cast<double>(s.tau) + d;
    case Algorithm::k4AP:
      return std::pow(n, 0.6) * std::pow(ln, 0.2) + d;
    case Algorithm::k8AP:
      return std::pow(n, 7.0 / 11.0) * std::pow(ln, 1.0 / 11.0) + d;
  }
  return 0;
}

struct SizeReport {
  std::size_t edge_count = 0;
  double bound_formula_value = 0;
  double ratio = 0;
};

struct RoundReport {
  std::uint64_t rounds = 0;
  double bound_formula_value = 0;
  double ratio = 0;
};

namespace detail {

inline double safe_ratio(double num, double den) {
  if (num == 0) return 0;
  return den > 0 ? num / den : std::numeric_limits<double>::infinity();
}

}  // namespace detail

inline SizeReport size_report(Algorithm a, std::size_t edge_count,
                              std::size_t n, const InputSize& s) {
  SizeReport r;
  r.edge_count = edge_count;
  r.bound_formula_value = n > 1 ? size_bound(a, static_cast<double>(n), s) : 0;
  r.ratio = detail::safe_ratio(static_cast<double>(edge_count),
                               r.bound_formula_value);
  return r;
}

inline SizeReport size_report(const SpannerResult& result, std::size_t n,
                              const InputSize& s) {
  return size_report(result.config.algorithm, result.h_edges.size(), n, s);
}

inline RoundReport round_report(Algorithm a, std::uint64_t rounds, std::size_t n,
                                const InputSize& s, std::uint32_t diameter) {
  RoundReport r;
  r.rounds = rounds;
  r.bound_formula_value =
      n > 1 ? round_bound(a, static_cast<double>(n), s, diameter) : 0;
  r.ratio = detail::safe_ratio(static_cast<double>(rounds), r.bound_formula_value);
  return r;
}

// --- CSV rows ------------------------------------------------------------------

inline constexpr const char* kReportCsvHeader =
    "algo,n,D,param,edges,ratio_size,rounds,ratio_rounds,max_excess,violations,seed";

struct ReportRow {
  Algorithm algorithm = Algorithm::k2S;
  std::size_t n = 0;
  std::uint32_t diameter = 0;
  std::size_t param = 0;
  std::size_t edges = 0;
  double ratio_size = 0;
  std::uint64_t rounds = 0;
  double ratio_rounds = 0;
  /// -1 stands for a pair disconnected in H.
  std::int64_t max_excess = 0;
  std::size_t violations = 0;
  std::uint64_t seed = 0;
};

inline std::string format_ratio(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string to_csv(const ReportRow& r) {
  return std::string(algorithm_name(r.algorithm)) + "," + std::to_string(r.n) +
         "," + std::to_string(r.diameter) + "," + std::to_string(r.param) +
         "," + std::to_string(r.edges) + "," + format_ratio(r.ratio_size) + "," +
         std::to_string(r.rounds) + "," + format_ratio(r.ratio_rounds) + "," +
         std::to_string(r.max_excess) + "," + std::to_string(r.violations) +
         "," + std::to_string(r.seed);
}

inline ReportRow make_report_row(const Graph& g, const SpannerInput& input,
                                 const SpannerResult& result,
                                 const StretchReport& stretch,
                                 std::uint32_t diameter) {
  const Algorithm a = result.config.algorithm;
  const std::size_t n = g.node_count();
  const InputSize s = input_size(input);
  ReportRow row;
  row.algorithm = a;
  row.n = n;
  row.diameter = diameter;
  row.param = size_parameter(a, n, s);
  row.edges = result.h_edges.size();
  row.ratio_size = size_report(result, n, s).ratio;
  row.rounds = result.stats.rounds;
  row.ratio_rounds = round_report(a, result.stats.rounds, n, s, diameter).ratio;
  row.max_excess =
      stretch.max_additive_excess == StretchReport::kDisconnectedExcess
          ? -1
          : stretch.max_additive_excess;
  row.violations = stretch.violations.size();
  row.seed = result.config.seed;
  return row;
}

}  // namespace spanners

#endif  // SPANNERS_VERIFY_HPP_
