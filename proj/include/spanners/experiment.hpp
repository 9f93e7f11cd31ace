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

// Experiment driver behind the command-line tool: builds graphs and inputs
// from a spec, runs and verifies each repetition, and produces CSV rows and
// markdown summaries.
//
// Repetition r of a spec with seed s uses seed s + r for the graph, the
// random input and the algorithm, and records it in its row; rerunning with
// --seed s + r --reps 1 reproduces that row.

#ifndef SPANNERS_EXPERIMENT_HPP_
#define SPANNERS_EXPERIMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spanners/build.hpp"
#include "spanners/congest.hpp"
#include "spanners/generators.hpp"
#include "spanners/graph.hpp"
#include "spanners/lowerbound.hpp"
#include "spanners/params.hpp"
#include "spanners/verify.hpp"

namespace spanners {

/// Invalid experiment specification; the command-line tool reports these
/// as usage errors.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GnpSource {
  std::size_t n = 0;
  double p = 0;
};
struct FileSource {
  std::string path;
};
struct ProjectiveSource {
  std::uint32_t q = 0;
};
struct LowerBoundSource {
  std::uint32_t q = 0;
};

using GraphSource =
    std::variant<std::monostate, GnpSource, FileSource, ProjectiveSource, LowerBoundSource>;

struct RandomInput {
  std::size_t k = 0;
};
/// Nothing (all-pairs algorithms), a file, or k random sources/pairs.
using InputSource = std::variant<std::monostate, FileSource, RandomInput>;

struct ExperimentSpec {
  Algorithm algorithm = Algorithm::k2S;
  GraphSource graph;
  InputSource sources;
  InputSource pairs;
  double c = 3.0;
  std::uint64_t seed = 1;
  std::uint32_t bandwidth_multiplier = 4;
  std::uint64_t max_rounds = 0;
  std::size_t reps = 1;
};

/// "n,p" as used by --gnp.
inline GnpSource parse_gnp(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw SpecError("--gnp expects n,p");
  GnpSource g;
  try {
    std::size_t used = 0;
    g.n = std::stoul(text.substr(0, comma), &used);
    if (used != comma) throw SpecError("bad n in --gnp");
    const std::string ps = text.substr(comma + 1);
    g.p = std::stod(ps, &used);
    if (used != ps.size()) throw SpecError("bad p in --gnp");
  } catch (const std::logic_error&) {
    throw SpecError("--gnp expects n,p, got '" + text + "'");
  }
  if (g.n == 0 || g.p < 0 || g.p > 1) throw SpecError("--gnp needs n > 0 and p in [0,1]");
  return g;
}

/// "random:k" or a file path.
inline InputSource parse_input_source(const std::string& text) {
  constexpr std::string_view kPrefix = "random:";
  if (text.rfind(kPrefix, 0) == 0) {
    const std::string k = text.substr(kPrefix.size());
    std::size_t used = 0;
    try {
      const auto value = std::stoul(k, &used);
      if (used == k.size()) return RandomInput{value};
    } catch (const std::logic_error&) {
    }
    throw SpecError("expected random:k, got '" + text + "'");
  }
  return FileSource{text};
}

/// Checks the parts of a spec that do not need the graph.
inline void validate(const ExperimentSpec& spec) {
  if (spec.reps < 1) throw SpecError("--reps must be at least 1");
  if (!(spec.c > 0)) throw SpecError("--c must be positive");
  if (spec.bandwidth_multiplier < 1) throw SpecError("--bandwidth-mult must be at least 1");
  if (std::holds_alternative<std::monostate>(spec.graph)) {
    throw SpecError("one of --gnp, --graph, --pg, --lbgraph is required");
  }
  const InputKind kind = input_kind(spec.algorithm);
  const bool has_sources = !std::holds_alternative<std::monostate>(spec.sources);
  const bool has_pairs = !std::holds_alternative<std::monostate>(spec.pairs);
  const std::string name(algorithm_name(spec.algorithm));
  if (kind == InputKind::kSources && (!has_sources || has_pairs)) {
    throw SpecError(name + " takes --sources and no --pairs");
  }
  if (kind == InputKind::kPairs && (!has_pairs || has_sources)) {
    throw SpecError(name + " takes --pairs and no --sources");
  }
  if (kind == InputKind::kNone && (has_sources || has_pairs)) {
    throw SpecError(name + " takes neither --sources nor --pairs");
  }
}

inline std::uint64_t rep_seed(const ExperimentSpec& spec, std::size_t rep) {
  return spec.seed + rep;
}

inline Graph make_graph(const GraphSource& src, std::uint64_t seed) {
  if (const auto* g = std::get_if<GnpSource>(&src)) return gen_gnp(g->n, g->p, seed);
  if (const auto* f = std::get_if<FileSource>(&src)) return load_graph(f->path);
  if (const auto* pg = std::get_if<ProjectiveSource>(&src)) {
    return build_projective_incidence(pg->q);
  }
  if (const auto* lb = std::get_if<LowerBoundSource>(&src)) {
    return build_lowerbound_graph(lb->q).graph;
  }
  throw SpecError("no graph source");
}

/// Stream for random inputs, independent of the algorithm's coins.
inline std::mt19937_64 input_rng(std::uint64_t seed) {
  return std::mt19937_64(congest::splitmix64(seed ^ 0x9e3779b97f4a7c15ULL));
}

inline SourceSet random_sources(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) throw SpecError("random:" + std::to_string(k) + " exceeds n");
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  auto rng = input_rng(seed);
  SourceSet out;
  std::sample(all.begin(), all.end(), std::back_inserter(out),
              static_cast<std::ptrdiff_t>(k), rng);
  return out;
}

inline PairSet random_pairs(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 2 || k > n * (n - 1) / 2) {
    throw SpecError("random:" + std::to_string(k) + " exceeds the number of pairs");
  }
  auto rng = input_rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  PairSet out;
  while (out.size() < k) {
    const NodeId u = pick(rng);
    const NodeId v = pick(rng);
    if (u != v) out.insert(u, v);
  }
  return out;
}

inline SpannerInput make_input(const ExperimentSpec& spec, const Graph& g,
                               std::uint64_t seed) {
  const std::size_t n = g.node_count();
  switch (input_kind(spec.algorithm)) {
    case InputKind::kNone:
      return std::monostate{};
    case InputKind::kSources:
      if (const auto* r = std::get_if<RandomInput>(&spec.sources)) {
        return random_sources(n, r->k, seed);
      } else {
        std::ifstream in(std::get<FileSource>(spec.sources).path);
        if (!in) throw SpecError("cannot open sources file");
        return parse_sources(in, n);
      }
    case InputKind::kPairs:
      if (const auto* r = std::get_if<RandomInput>(&spec.pairs)) {
        return random_pairs(n, r->k, seed);
      } else {
        std::ifstream in(std::get<FileSource>(spec.pairs).path);
        if (!in) throw SpecError("cannot open pairs file");
        return parse_pairs(in, n);
      }
  }
  return std::monostate{};
}

inline AlgoConfig algo_config(const ExperimentSpec& spec, std::uint64_t seed) {
  AlgoConfig cfg;
  cfg.algorithm = spec.algorithm;
  cfg.c = spec.c;
  cfg.seed = seed;
  cfg.bandwidth_multiplier = spec.bandwidth_multiplier;
  cfg.max_rounds = spec.max_rounds;
  return cfg;
}

/// One verified repetition.
struct RunRecord {
  std::size_t rep = 0;
  Graph graph;
  SpannerInput input;
  SpannerResult result;
  StretchReport stretch;
  ReportRow row;
};

struct RunOutcome {
  std::vector<RunRecord> records;
  std::size_t violations = 0;
  std::size_t timeouts = 0;
  bool ok() const { return violations == 0 && timeouts == 0; }
};

/// Runs every repetition; on_record (if set) sees each record as soon as it
/// is ready. A repetition that times out produces no row.
inline RunOutcome cmd_run(const ExperimentSpec& spec,
                          const std::function<void(const RunRecord&)>& on_record = {},
                          const std::function<void(std::size_t, const std::string&)>&
                              on_timeout = {}) {
  validate(spec);
  RunOutcome out;
  for (std::size_t rep = 0; rep < spec.reps; ++rep) {
    const std::uint64_t seed = rep_seed(spec, rep);
    RunRecord rec;
    rec.rep = rep;
    rec.graph = make_graph(spec.graph, seed);
    rec.input = make_input(spec, rec.graph, seed);
    try {
      rec.result = build_spanner(rec.graph, rec.input, algo_config(spec, seed));
    } catch (const congest::SimulationTimeout& e) {
      ++out.timeouts;
      if (on_timeout) on_timeout(rep, e.what());
      continue;
    }
    if (!verify_subgraph(rec.graph, rec.result.h_edges)) {
      throw std::logic_error("spanner is not a subgraph");
    }
    StretchOptions opt;
    opt.seed = seed;
    rec.stretch = verify_stretch(rec.graph, rec.result.h_edges,
                                 required_pairs(spec.algorithm, rec.input), 1,
                                 additive_stretch(spec.algorithm), opt);
    rec.row = make_report_row(rec.graph, rec.input, rec.result, rec.stretch,
                              diameter(rec.graph));
    out.violations += rec.stretch.violations.empty() ? 0 : 1;
    if (on_record) on_record(rec);
    out.records.push_back(std::move(rec));
  }
  return out;
}

// --- Lower-bound experiment ---------------------------------------------------

struct LowerBoundSpec {
  std::uint32_t q = 2;
  std::size_t p = 0;
  Algorithm algorithm = Algorithm::k2P;
  double c = 3.0;
  std::uint64_t seed = 1;
  std::uint32_t bandwidth_multiplier = 4;
  std::uint64_t max_rounds = 0;
  std::size_t reps = 1;
};

struct LowerBoundRecord {
  PartCompInstance instance;
  CutSimulation sim;
  /// Pairs of P stretched beyond the algorithm's bound.
  std::size_t violations = 0;
  std::string row;
};

/// Per repetition: random x of size p (seed + rep), cut simulation, one
/// CSV row.
inline std::vector<LowerBoundRecord> cmd_lowerbound(const LowerBoundSpec& spec) {
  if (spec.reps < 1) throw SpecError("--reps must be at least 1");
  if (!is_prime(spec.q)) throw SpecError("q must be prime");
  if (input_kind(spec.algorithm) != InputKind::kPairs) {
    throw SpecError("the lower-bound experiment needs 2p or 4p");
  }
  const LowerBoundGraph lb = build_lowerbound_graph(spec.q);
  if (spec.p > lb.m() / 3) {
    throw SpecError("p = " + std::to_string(spec.p) + " exceeds floor(m/3) = " +
                    std::to_string(lb.m() / 3));
  }
  std::vector<LowerBoundRecord> out;
  for (std::size_t rep = 0; rep < spec.reps; ++rep) {
    const std::uint64_t seed = spec.seed + rep;
    LowerBoundRecord rec;
    rec.instance = random_instance(lb.m(), spec.p, seed);
    AlgoConfig cfg;
    cfg.algorithm = spec.algorithm;
    cfg.c = spec.c;
    cfg.seed = seed;
    cfg.bandwidth_multiplier = spec.bandwidth_multiplier;
    cfg.max_rounds = spec.max_rounds;
    rec.sim = run_cut_simulation(lb, rec.instance, cfg);
    rec.violations = verify_stretch(lb.graph, rec.sim.spanner.h_edges, rec.sim.pairs, 1,
                                    additive_stretch(spec.algorithm))
                         .violations.size();
    rec.row = cut_csv_row(spec.q, lb, rec.instance, rec.sim);
    out.push_back(std::move(rec));
  }
  return out;
}

// --- Tables --------------------------------------------------------------------

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

/// Markdown table of per-algorithm medians of ratio_size and ratio_rounds
/// over report CSV text (header lines are skipped). Algorithms appear in
/// their canonical order.
inline std::string cmd_table(const std::vector<std::string>& csv_texts) {
  struct Group {
    std::vector<double> size;
    std::vector<double> rounds;
    std::size_t violations = 0;
  };
  std::map<Algorithm, Group> groups;
  for (const std::string& text : csv_texts) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.rfind("algo,", 0) == 0) continue;
      const auto cells = split_csv_line(line);
      if (cells.size() < 10) {
        throw SpecError("line " + std::to_string(line_no) + ": expected at least 10 columns");
      }
      const auto algo = parse_algorithm(cells[0]);
      if (!algo) throw SpecError("line " + std::to_string(line_no) + ": unknown algorithm");
      Group& g = groups[*algo];
      try {
        g.size.push_back(std::stod(cells[5]));
        g.rounds.push_back(std::stod(cells[7]));
        g.violations += std::stoul(cells[9]) > 0 ? 1 : 0;
      } catch (const std::logic_error&) {
        throw SpecError("line " + std::to_string(line_no) + ": malformed number");
      }
    }
  }
  if (groups.empty()) throw SpecError("no rows to tabulate");
  std::ostringstream out;
  out << "| algo | runs | median ratio_size | median ratio_rounds | runs with violations |\n";
  out << "|---|---|---|---|---|\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& [algo, g] : groups) {
    out << "| " << algorithm_name(algo) << " | " << g.size.size() << " | "
        << median(g.size) << " | " << median(g.rounds) << " | " << g.violations
        << " |\n";
  }
  return out.str();
}

}  // namespace spanners

#endif  // SPANNERS_EXPERIMENT_HPP_
