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

// Serialisation of spanner results: the edge list in the graph file format
// and a JSON metadata record.

#ifndef SPANNERS_IO_HPP_
#define SPANNERS_IO_HPP_

#include <ostream>
#include <string>

#include "json.hpp"
#include "spanners/build.hpp"
#include "spanners/graph.hpp"

namespace spanners {

/// "n" followed by one "u v" line per edge of H, readable by parse_graph.
inline void write_spanner_edges(std::ostream& out, std::size_t n, const SpannerResult& r) {
  out << n << '\n';
  for (const Edge& e : r.h_edges) out << e.u << ' ' << e.v << '\n';
}

inline nlohmann::ordered_json overrides_json(const Overrides& o) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  put("h", o.h);
  put("ell", o.ell);
  put("center_probability", o.center_probability);
  put("root_probability", o.root_probability);
  put("a_probability", o.a_probability);
  put("threshold", o.threshold);
  if (o.force_main_branch) j["force_main_branch"] = true;
  return j;
}

inline nlohmann::ordered_json stats_json(const congest::RoundStats& s) {
  return {{"rounds", s.rounds},
          {"messages_sent", s.messages_sent},
          {"total_bits", s.total_bits},
          {"max_message_bits", s.max_message_bits}};
}

/// Config, pipeline, parameters, stats, per-phase stats and the number of
/// edges each phase contributed. Keys keep insertion order, so the output
/// is deterministic.
inline nlohmann::ordered_json metadata_json(const SpannerResult& r) {
  nlohmann::ordered_json j;
  const AlgoConfig& cfg = r.config;
  j["config"] = {{"algorithm", algorithm_name(cfg.algorithm)},
                 {"c", cfg.c},
                 {"seed", cfg.seed},
                 {"bandwidth_multiplier", cfg.bandwidth_multiplier},
                 {"max_rounds", cfg.max_rounds},
                 {"overrides", overrides_json(cfg.overrides)}};
  j["pipeline"] = algorithm_name(r.pipeline);
  j["branch"] = r.branch;
  j["params"] = {{"n", r.params.n},
                 {"h", r.params.h},
                 {"ell", r.params.ell},
                 {"ell_edges", r.params.ell_edges},
                 {"p_center", r.params.p_center},
                 {"p_root", r.params.p_root},
                 {"p_a", r.params.p_a},
                 {"threshold", r.params.threshold}};
  j["edges"] = r.h_edges.size();
  j["stats"] = stats_json(r.stats);
  nlohmann::ordered_json phases = nlohmann::ordered_json::array();
  for (const PhaseRecord& p : r.phases) {
    nlohmann::ordered_json pj = {{"name", p.name}};
    pj.update(stats_json(p.stats));
    phases.push_back(std::move(pj));
  }
  j["phases"] = std::move(phases);
  nlohmann::ordered_json attribution = nlohmann::ordered_json::object();
  for (const auto& [tag, count] : r.attribution_counts()) {
    attribution[std::string(tag_name(tag))] = count;
  }
  j["attribution"] = std::move(attribution);
  return j;
}

inline void write_metadata(std::ostream& out, const SpannerResult& r) {
  out << metadata_json(r).dump(2) << '\n';
}

}  // namespace spanners

#endif  // SPANNERS_IO_HPP_
