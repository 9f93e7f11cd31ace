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

// spanner_cli: run spanner experiments, lower-bound cut simulations and
// summary tables.
//
//   spanner_cli run --algo 2p --gnp 300,0.05 --pairs random:50 --seed 1 --reps 5
//   spanner_cli lowerbound --q 3 --p 10 --seed 1
//   spanner_cli table results.csv
//
// Exit status: 0 on success, 1 if any run violated its stretch bound or hit
// the round limit, 2 on usage errors, 3 on other errors. Log verbosity comes
// from SPANNER_LOG (trace, debug, info, warn, error, off; default warn).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "spanners/experiment.hpp"
#include "spanners/io.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_st("spanner_cli");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SPANNER_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

// Appends to `path` (writing the header if the file is new or empty), or
// writes header and rows to stdout when path is empty.
class CsvSink {
 public:
  CsvSink(const std::string& path, const char* header) {
    if (path.empty()) {
      std::cout << header << '\n';
      return;
    }
    const bool fresh =
        !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    file_.open(path, std::ios::app);
    if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (fresh) file_ << header << '\n';
  }

  void write(const std::string& row) {
    std::ostream& out = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    out << row << '\n';
    out.flush();
  }

 private:
  std::ofstream file_;
};

spanners::Algorithm to_algorithm(const std::string& text) {
  const auto a = spanners::parse_algorithm(text);
  if (!a) throw spanners::SpecError("unknown algorithm '" + text + "'");
  return *a;
}

struct RunArgs {
  std::string algo;
  std::string gnp;
  std::string graph;
  std::uint32_t pg = 0;
  std::uint32_t lbgraph = 0;
  std::string sources;
  std::string pairs;
  std::string out;
  std::string spanner_out;
  spanners::ExperimentSpec spec;
};

spanners::ExperimentSpec resolve(RunArgs& a) {
  spanners::ExperimentSpec spec = a.spec;
  spec.algorithm = to_algorithm(a.algo);
  if (!a.gnp.empty()) spec.graph = spanners::parse_gnp(a.gnp);
  if (!a.graph.empty()) spec.graph = spanners::FileSource{a.graph};
  if (a.pg != 0) spec.graph = spanners::ProjectiveSource{a.pg};
  if (a.lbgraph != 0) spec.graph = spanners::LowerBoundSource{a.lbgraph};
  if (!a.sources.empty()) spec.sources = spanners::parse_input_source(a.sources);
  if (!a.pairs.empty()) spec.pairs = spanners::parse_input_source(a.pairs);
  for (std::uint32_t q : {a.pg, a.lbgraph}) {
    if (q != 0 && !spanners::is_prime(q)) throw spanners::SpecError("q must be prime");
  }
  spanners::validate(spec);
  return spec;
}

int do_run(RunArgs& args) {
  const spanners::ExperimentSpec spec = resolve(args);
  CsvSink sink(args.out, spanners::kReportCsvHeader);
  const auto outcome = spanners::cmd_run(
      spec,
      [&](const spanners::RunRecord& rec) {
        const auto& row = rec.row;
        spdlog::info("rep {} seed {}: n={} edges={} rounds={} branch={} violations={}",
                     rec.rep, row.seed, row.n, row.edges, row.rounds,
                     rec.result.branch, row.violations);
        for (const auto& v : rec.stretch.violations) {
          spdlog::warn("rep {}: pair ({},{}) has distance {} in H, {} in G", rec.rep,
                       v.u, v.v, v.dist_h, v.dist_g);
        }
        sink.write(spanners::to_csv(row));
        if (!args.spanner_out.empty()) {
          const std::string base = args.spanner_out + ".rep" + std::to_string(rec.rep);
          std::ofstream edges(base + ".edges");
          spanners::write_spanner_edges(edges, rec.graph.node_count(), rec.result);
          std::ofstream meta(base + ".json");
          spanners::write_metadata(meta, rec.result);
          if (!edges || !meta) throw std::runtime_error("cannot write '" + base + ".*'");
        }
      },
      [](std::size_t rep, const std::string& what) {
        spdlog::error("rep {}: {}", rep, what);
      });
  return outcome.ok() ? 0 : kExitViolation;
}

struct LowerBoundArgs {
  std::string algo = "2p";
  std::string out;
  spanners::LowerBoundSpec spec;
};

int do_lowerbound(LowerBoundArgs& args) {
  spanners::LowerBoundSpec spec = args.spec;
  spec.algorithm = to_algorithm(args.algo);
  const auto records = spanners::cmd_lowerbound(spec);
  CsvSink sink(args.out, spanners::kCutCsvHeader);
  bool ok = true;
  for (const auto& rec : records) {
    if (rec.violations > 0 || rec.sim.forced_present != rec.instance.p) {
      spdlog::warn("{} stretched pairs, {} of {} forced edges kept", rec.violations,
                   rec.sim.forced_present, rec.instance.p);
      ok = false;
    }
    sink.write(rec.row);
  }
  return ok ? 0 : kExitViolation;
}

struct TableArgs {
  std::vector<std::string> files;
  std::string out;
};

int do_table(const TableArgs& args) {
  std::vector<std::string> texts;
  for (const auto& path : args.files) {
    std::ifstream in(path);
    if (!in) throw spanners::SpecError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    texts.push_back(buf.str());
  }
  const std::string table = spanners::cmd_table(texts);
  if (args.out.empty()) {
    std::cout << table;
  } else {
    std::ofstream out(args.out);
    out << table;
    if (!out) throw std::runtime_error("cannot write '" + args.out + "'");
  }
  return 0;
}

void add_common(CLI::App* cmd, std::string& algo, double& c, std::uint64_t& seed,
                std::uint32_t& bw, std::uint64_t& max_rounds, std::size_t& reps,
                std::string& out) {
  cmd->add_option("--algo", algo, "2s, 2p, 4p, 4ap, 8ap, sub2 or sub4");
  cmd->add_option("--c", c, "Constant in probabilities and thresholds")
      ->capture_default_str();
  cmd->add_option("--seed", seed, "Seed of the first repetition")->capture_default_str();
  cmd->add_option("--bandwidth-mult", bw, "Words of ceil(log2 n) bits per message")
      ->capture_default_str();
  cmd->add_option("--max-rounds", max_rounds, "Per-phase round limit (0: default)")
      ->capture_default_str();
  cmd->add_option("--reps", reps, "Repetitions; repetition r uses seed + r")
      ->capture_default_str();
  cmd->add_option("--out", out, "Append CSV rows here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Distributed additive spanners in a simulated CONGEST network"};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Build and verify spanners");
  add_common(run_cmd, run.algo, run.spec.c, run.spec.seed, run.spec.bandwidth_multiplier,
             run.spec.max_rounds, run.spec.reps, run.out);
  run_cmd->get_option("--algo")->required();
  auto* gnp = run_cmd->add_option("--gnp", run.gnp, "Random graph G(n,p) as n,p");
  auto* file = run_cmd->add_option("--graph", run.graph, "Graph file");
  auto* pg = run_cmd->add_option("--pg", run.pg, "Projective-plane incidence graph of order q");
  auto* lbg = run_cmd->add_option("--lbgraph", run.lbgraph, "Lower-bound graph of order q");
  gnp->excludes(file, pg, lbg);
  file->excludes(pg, lbg);
  pg->excludes(lbg);
  run_cmd->add_option("--sources", run.sources, "Source file or random:k");
  run_cmd->add_option("--pairs", run.pairs, "Pair file or random:k");
  run_cmd->add_option("--spanner-out", run.spanner_out,
                      "Write PREFIX.repN.edges and PREFIX.repN.json per repetition");

  LowerBoundArgs lb;
  CLI::App* lb_cmd =
      app.add_subcommand("lowerbound", "Cut simulation on the lower-bound graph");
  add_common(lb_cmd, lb.algo, lb.spec.c, lb.spec.seed, lb.spec.bandwidth_multiplier,
             lb.spec.max_rounds, lb.spec.reps, lb.out);
  lb_cmd->add_option("--q", lb.spec.q, "Prime order of the projective plane")->required();
  lb_cmd->add_option("--p", lb.spec.p, "Size of Alice's set, at most m/3")->required();

  TableArgs table;
  CLI::App* table_cmd = app.add_subcommand("table", "Median ratios per algorithm");
  table_cmd->add_option("files", table.files, "Report CSV files")->required();
  table_cmd->add_option("--out", table.out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return do_run(run);
    if (*lb_cmd) return do_lowerbound(lb);
    return do_table(table);
  } catch (const spanners::SpecError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitError;
  }
}
