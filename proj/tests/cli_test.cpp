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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "spanners/experiment.hpp"
#include "spanners/io.hpp"

namespace spanners {
namespace {

namespace fs = std::filesystem;

ExperimentSpec TwoPSpec() {
  ExperimentSpec spec;
  spec.algorithm = Algorithm::k2P;
  spec.graph = GnpSource{300, 0.05};
  spec.pairs = RandomInput{50};
  spec.c = 3;
  spec.seed = 1;
  spec.reps = 5;
  return spec;
}

TEST(SpecParseTest, Gnp) {
  const auto g = parse_gnp("300,0.05");
  EXPECT_EQ(g.n, 300u);
  EXPECT_DOUBLE_EQ(g.p, 0.05);
  for (const char* bad : {"300", "300,", ",0.1", "x,0.1", "10,1.5", "0,0.5", "10,0.1x"}) {
    EXPECT_THROW(parse_gnp(bad), SpecError) << bad;
  }
}

TEST(SpecParseTest, InputSource) {
  EXPECT_EQ(std::get<RandomInput>(parse_input_source("random:7")).k, 7u);
  EXPECT_EQ(std::get<FileSource>(parse_input_source("pairs.txt")).path, "pairs.txt");
  EXPECT_THROW(parse_input_source("random:"), SpecError);
  EXPECT_THROW(parse_input_source("random:3x"), SpecError);
}

TEST(SpecValidateTest, UsageErrors) {
  ExperimentSpec spec = TwoPSpec();
  EXPECT_NO_THROW(validate(spec));
  spec.reps = 0;
  EXPECT_THROW(validate(spec), SpecError);

  spec = TwoPSpec();
  spec.algorithm = Algorithm::k2S;
  EXPECT_THROW(validate(spec), SpecError);
  spec.pairs = std::monostate{};
  spec.sources = RandomInput{5};
  EXPECT_NO_THROW(validate(spec));

  spec = TwoPSpec();
  spec.algorithm = Algorithm::k4AP;
  EXPECT_THROW(validate(spec), SpecError);
  spec.pairs = std::monostate{};
  EXPECT_NO_THROW(validate(spec));
  spec.graph = std::monostate{};
  EXPECT_THROW(validate(spec), SpecError);
}

TEST(RandomInputTest, DistinctAndReproducible) {
  const PairSet p = random_pairs(20, 50, 4);
  EXPECT_EQ(p.size(), 50u);
  EXPECT_EQ(p, random_pairs(20, 50, 4));
  EXPECT_EQ(random_pairs(5, 10, 1).size(), 10u);
  EXPECT_THROW(random_pairs(5, 11, 1), SpecError);
  const SourceSet s = random_sources(30, 10, 2);
  EXPECT_EQ(s.size(), 10u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
  EXPECT_THROW(random_sources(3, 4, 1), SpecError);
}

TEST(CmdRunTest, FiveRepetitions) {
  const auto out = cmd_run(TwoPSpec());
  ASSERT_EQ(out.records.size(), 5u);
  EXPECT_TRUE(out.ok());
  for (std::size_t r = 0; r < 5; ++r) {
    const auto& row = out.records[r].row;
    EXPECT_EQ(row.seed, 1 + r);
    EXPECT_EQ(row.algorithm, Algorithm::k2P);
    EXPECT_EQ(row.n, 300u);
    EXPECT_EQ(row.param, 50u);
    EXPECT_EQ(row.violations, 0u);
    EXPECT_GT(row.edges, 0u);
  }
}

TEST(CmdRunTest, RowReplaysFromItsSeed) {
  const auto all = cmd_run(TwoPSpec());
  ExperimentSpec one = TwoPSpec();
  one.seed = all.records[3].row.seed;
  one.reps = 1;
  const auto replay = cmd_run(one);
  ASSERT_EQ(replay.records.size(), 1u);
  EXPECT_EQ(to_csv(replay.records[0].row), to_csv(all.records[3].row));
}

TEST(CmdRunTest, TimeoutSkipsRow) {
  ExperimentSpec spec;
  spec.algorithm = Algorithm::k8AP;
  spec.graph = GnpSource{60, 0.1};
  spec.max_rounds = 5;
  std::size_t seen = 0;
  const auto out = cmd_run(spec, {}, [&](std::size_t, const std::string&) { ++seen; });
  EXPECT_EQ(out.timeouts, 1u);
  EXPECT_EQ(seen, 1u);
  EXPECT_TRUE(out.records.empty());
  EXPECT_FALSE(out.ok());
}

TEST(CmdRunTest, StructuredGraphs) {
  ExperimentSpec spec;
  spec.algorithm = Algorithm::k2S;
  spec.graph = ProjectiveSource{3};
  spec.sources = RandomInput{4};
  const auto out = cmd_run(spec);
  ASSERT_EQ(out.records.size(), 1u);
  EXPECT_EQ(out.records[0].row.n, 26u);
  EXPECT_TRUE(out.ok());
  spec.graph = LowerBoundSource{2};
  EXPECT_EQ(cmd_run(spec).records[0].row.n, 28u);
}

TEST(CmdLowerBoundTest, PLimit) {
  LowerBoundSpec spec;
  spec.q = 2;
  spec.p = 7;
  const auto recs = cmd_lowerbound(spec);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].sim.forced_present, 7u);
  EXPECT_EQ(recs[0].violations, 0u);
  EXPECT_EQ(recs[0].row.rfind("2,28,21,7,", 0), 0u);
  spec.p = 8;
  EXPECT_THROW(cmd_lowerbound(spec), SpecError);
  spec.p = 1;
  spec.algorithm = Algorithm::k2S;
  EXPECT_THROW(cmd_lowerbound(spec), SpecError);
  spec.algorithm = Algorithm::k2P;
  spec.q = 4;
  EXPECT_THROW(cmd_lowerbound(spec), SpecError);
}

TEST(CmdLowerBoundTest, Reproducible) {
  LowerBoundSpec spec;
  spec.q = 3;
  spec.p = 10;
  spec.seed = 8;
  spec.reps = 2;
  const auto a = cmd_lowerbound(spec);
  const auto b = cmd_lowerbound(spec);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].row, b[0].row);
  EXPECT_EQ(a[1].row, b[1].row);
}

TEST(CmdTableTest, Medians) {
  const std::string csv = std::string(kReportCsvHeader) +
                          "\n"
                          "2P,100,4,10,50,0.5,10,2.0,0,0,1\n"
                          "2P,100,4,10,50,0.7,10,4.0,0,0,2\n"
                          "2S,100,4,10,50,0.1,10,1.0,0,0,1\n"
                          "2P,100,4,10,50,0.6,10,3.0,3,2,3\n";
  const std::string table = cmd_table({csv});
  EXPECT_NE(table.find("| 2S | 1 | 0.1000 | 1.0000 | 0 |"), std::string::npos) << table;
  EXPECT_NE(table.find("| 2P | 3 | 0.6000 | 3.0000 | 1 |"), std::string::npos) << table;
  // Canonical algorithm order.
  EXPECT_LT(table.find("| 2S |"), table.find("| 2P |"));
}

TEST(CmdTableTest, EvenCountAveragesMiddle) {
  const std::string table =
      cmd_table({"4AP,1,1,1,1,1.0,1,10.0,0,0,1\n", "4AP,1,1,1,1,2.0,1,20.0,0,0,2\n"});
  EXPECT_NE(table.find("| 4AP | 2 | 1.5000 | 15.0000 | 0 |"), std::string::npos);
}

TEST(CmdTableTest, Errors) {
  EXPECT_THROW(cmd_table({}), SpecError);
  EXPECT_THROW(cmd_table({""}), SpecError);
  EXPECT_THROW(cmd_table({std::string(kReportCsvHeader) + "\n"}), SpecError);
  EXPECT_THROW(cmd_table({"2P,1,2\n"}), SpecError);
  EXPECT_THROW(cmd_table({"9Z,1,1,1,1,1,1,1,0,0,1\n"}), SpecError);
  EXPECT_THROW(cmd_table({"2P,1,1,1,1,x,1,1,0,0,1\n"}), SpecError);
}

TEST(SerializationTest, EdgeListRoundTrip) {
  const Graph g = gen_gnp(70, 0.1, 2);
  AlgoConfig cfg;
  cfg.algorithm = Algorithm::k4AP;
  const auto r = build_spanner(g, std::monostate{}, cfg);
  std::stringstream ss;
  write_spanner_edges(ss, g.node_count(), r);
  const Graph h = parse_graph(ss);
  EXPECT_EQ(h.node_count(), 70u);
  EXPECT_EQ(h.edge_set(), r.h_edges);
}

TEST(SerializationTest, Metadata) {
  const Graph g = gen_gnp(70, 0.1, 2);
  AlgoConfig cfg;
  cfg.algorithm = Algorithm::k2S;
  cfg.seed = 9;
  const auto r = build_spanner(g, SourceSet{1, 5, 8}, cfg);
  const auto j = metadata_json(r);
  EXPECT_EQ(j["config"]["algorithm"], "2S");
  EXPECT_EQ(j["config"]["seed"], 9u);
  EXPECT_EQ(j["edges"], r.h_edges.size());
  EXPECT_EQ(j["stats"]["rounds"], r.stats.rounds);
  std::size_t attributed = 0;
  for (const auto& [tag, count] : j["attribution"].items()) {
    attributed += count.get<std::size_t>();
  }
  EXPECT_EQ(attributed, r.h_edges.size());
  std::uint64_t phase_rounds = 0;
  for (const auto& p : j["phases"]) phase_rounds += p["rounds"].get<std::uint64_t>();
  EXPECT_EQ(phase_rounds, r.stats.rounds);
  std::ostringstream a, b;
  write_metadata(a, r);
  write_metadata(b, build_spanner(g, SourceSet{1, 5, 8}, cfg));
  EXPECT_EQ(a.str(), b.str());
}

// --- The executable ------------------------------------------------------------

class CliBinaryTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spanner_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of the tool with stdout sent to `stdout_file` (in dir_).
  int Run(const std::string& args, const std::string& stdout_file = "stdout.txt") {
    const std::string cmd = std::string(SPANNER_CLI_PATH) + " " + args + " > " +
                            (dir_ / stdout_file).string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliBinaryTest, RunPrintsHeaderAndRows) {
  EXPECT_EQ(Run("run --algo 2p --gnp 300,0.05 --pairs random:50 --c 3 --seed 1 --reps 5"),
            0);
  std::istringstream lines(Read("stdout.txt"));
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], kReportCsvHeader);
  EXPECT_EQ(rows[1].rfind("2P,300,", 0), 0u);
}

TEST_F(CliBinaryTest, UsageErrors) {
  EXPECT_EQ(Run("run --algo 2p --gnp 300,0.05 --pairs random:50 --reps 0"), 2);
  std::ofstream(Path("pairs.txt")) << "1 2\n";
  EXPECT_EQ(Run("run --algo 2s --gnp 50,0.1 --pairs " + Path("pairs.txt")), 2);
  EXPECT_EQ(Run("run --algo 9x --gnp 50,0.1"), 2);
  EXPECT_EQ(Run("run --algo 4ap"), 2);
  EXPECT_EQ(Run("run --algo 4ap --gnp 50,0.1 --pg 2"), 2);
  EXPECT_EQ(Run("bogus"), 2);
  EXPECT_EQ(Run(""), 2);
}

TEST_F(CliBinaryTest, LowerBound) {
  EXPECT_EQ(Run("lowerbound --q 2 --p 7"), 0);
  EXPECT_EQ(Read("stdout.txt").rfind(std::string(kCutCsvHeader) + "\n2,28,21,7,", 0), 0u);
  EXPECT_EQ(Run("lowerbound --q 2 --p 8"), 2);
}

TEST_F(CliBinaryTest, Table) {
  std::ofstream(Path("empty.csv")).close();
  EXPECT_EQ(Run("table " + Path("empty.csv")), 2);
  EXPECT_EQ(Run("table " + Path("missing.csv")), 2);
  ASSERT_EQ(Run("run --algo 2s --gnp 80,0.1 --sources random:8 --reps 3 --out " +
                Path("r.csv")),
            0);
  EXPECT_EQ(Run("table " + Path("r.csv")), 0);
  EXPECT_NE(Read("stdout.txt").find("| 2S | 3 |"), std::string::npos);
}

TEST_F(CliBinaryTest, TimeoutExitsNonzero) {
  EXPECT_EQ(Run("run --algo 8ap --gnp 60,0.1 --max-rounds 5"), 1);
}

TEST_F(CliBinaryTest, OutAppendsWithSingleHeader) {
  const std::string args = "run --algo 4ap --gnp 60,0.1 --seed 2 --out " + Path("r.csv");
  ASSERT_EQ(Run(args), 0);
  ASSERT_EQ(Run(args), 0);
  std::istringstream lines(Read("r.csv"));
  std::string header, a, b, extra;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  EXPECT_EQ(header, kReportCsvHeader);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(std::getline(lines, extra));
}

TEST_F(CliBinaryTest, ByteIdenticalOutputs) {
  const std::string args =
      "run --algo sub2 --gnp 120,0.08 --sources random:12 --seed 4 --reps 2 --spanner-out ";
  ASSERT_EQ(Run(args + Path("a"), "a.csv"), 0);
  ASSERT_EQ(Run(args + Path("b"), "b.csv"), 0);
  EXPECT_EQ(Read("a.csv"), Read("b.csv"));
  for (const char* suffix : {".rep0.edges", ".rep1.edges", ".rep0.json", ".rep1.json"}) {
    EXPECT_FALSE(Read(std::string("a") + suffix).empty()) << suffix;
    EXPECT_EQ(Read(std::string("a") + suffix), Read(std::string("b") + suffix)) << suffix;
  }
}

}  // namespace
}  // namespace spanners
