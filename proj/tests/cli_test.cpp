// Copyright 2026 The posa Authors
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

// Drives the built `posa` binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#ifndef POSA_CLI_PATH
#error "POSA_CLI_PATH must point at the posa binary"
#endif

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("posa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // Runs posa with `args` inside the test directory; stdout goes to `out`.
  int run(const std::string& args, const std::string& out = "stdout.txt") const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" POSA_CLI_PATH "' " + args + " > " +
                            out + " 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

const char* kThreeCellPartition =
    "# posa-partition n=8 algorithm=given graph=0 cells=3\n0\t1 2 3\n1\t4 5\n2\t6 7 8\n";
const char* kFourCellPartition =
    "# posa-partition n=8 algorithm=given graph=0 cells=4\n0\t1 2\n1\t3 4 5\n2\t6 7\n3\t8\n";

TEST_F(Cli, PartitionP4) {
  write("p4.txt", "1 2\n2 3\n3 4\n");
  ASSERT_EQ(run("partition -i p4.txt -e 0 -o p4.part --workers 2"), 0) << read("stderr.txt");
  const std::string part = read("p4.part");
  EXPECT_NE(part.find("cells=2"), std::string::npos);
  EXPECT_NE(part.find("0\t0 3\n1\t1 2\n"), std::string::npos) << part;
}

TEST_F(Cli, PartitionDegreeStar) {
  write("star.txt", "c a\nc b\nc d\n");
  ASSERT_EQ(run("partition -i star.txt --method degree -o s.part"), 0);
  EXPECT_NE(read("s.part").find("cells=2"), std::string::npos);
}

TEST_F(Cli, NegativeEpsilonIsUsageError) {
  write("p4.txt", "1 2\n2 3\n3 4\n");
  EXPECT_EQ(run("partition -i p4.txt -e -3 -o x.part"), 2);
  EXPECT_FALSE(fs::exists(path("x.part")));
}

TEST_F(Cli, ExitCodeClasses) {
  EXPECT_EQ(run("partition -i missing.txt -o x.part"), 5);
  write("bad.txt", "only-one-token\n");
  EXPECT_EQ(run("partition -i bad.txt -o x.part"), 3);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, SimilarityIdenticalFiles) {
  write("p4.txt", "1 2\n2 3\n3 4\n");
  ASSERT_EQ(run("partition -i p4.txt -o p.part --labels-out p.labels"), 0);
  ASSERT_EQ(run("similarity p.part p.part --labels p.labels"), 0);
  EXPECT_NE(read("stdout.txt").find("value=1\n"), std::string::npos);
}

TEST_F(Cli, SimilarityWorkedPair) {
  write("a.part", kThreeCellPartition);
  write("b.part", kFourCellPartition);
  ASSERT_EQ(run("similarity a.part b.part --format json"), 0);
  auto j = nlohmann::json::parse(read("stdout.txt"));
  EXPECT_NEAR(j["value"].get<double>(), 0.675, 1e-12);
  EXPECT_EQ(j["intersection_cells"], 5);
}

TEST_F(Cli, SimilarityUniverseMismatch) {
  write("a.part", kThreeCellPartition);
  write("c.part", "# posa-partition n=2 algorithm=given graph=0 cells=1\n0\t1 2\n");
  EXPECT_NE(run("similarity a.part c.part"), 0);
  EXPECT_NE(read("stderr.txt").find("different vertex sets"), std::string::npos);
  write("labels.tsv", "0\tx\n1\ty\n");
  EXPECT_NE(run("similarity a.part a.part --labels labels.tsv"), 0);
}

TEST_F(Cli, CentralityCsv) {
  write("star.txt", "c a\nc b\nc d\n");
  ASSERT_EQ(run("centrality -i star.txt -o c.csv"), 0);
  const std::string csv = read("c.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,degree,betweenness,triangles,shapley");
  EXPECT_NE(csv.find("\nc,3,3,0,1.75\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\na,1,0,0,0.75\n"), std::string::npos) << csv;
  EXPECT_EQ(run("centrality -i star.txt --measures pagerank"), 2);
}

TEST_F(Cli, BenchGridShapeAndDeterminism) {
  const std::string args =
      "bench --sizes 25000,50000,100000 --gammas 2.5,2.9 --epsilons 5 --seed 4 -o ";
  ASSERT_EQ(run(args + "one.csv"), 0);
  ASSERT_EQ(run(args + "two.csv"), 0);
  auto rows = [&](const std::string& name) {
    std::istringstream in(read(name));
    std::vector<std::string> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) out.push_back(line.substr(0, line.rfind(',')));  // drop ms
    return out;
  };
  EXPECT_EQ(rows("one.csv").size(), 6u);
  EXPECT_EQ(rows("one.csv"), rows("two.csv"));
}

TEST_F(Cli, ManifestReproducesRun) {
  ASSERT_EQ(run("gen --model powerlaw --n 3000 --gamma 2.4 --seed 9 -o g.txt"), 0);
  ASSERT_EQ(run("--manifest-out m.json partition -i g.txt -e 2 -o first.part --workers 3"), 0);
  auto m = nlohmann::json::parse(read("m.json"));
  EXPECT_EQ(m["command"], "partition");
  EXPECT_EQ(m["workers"], 3);
  EXPECT_EQ(m["options"]["--epsilon"], "2");
  EXPECT_EQ(m["options"]["--method"], "eep");
  EXPECT_EQ(m["inputs"][0]["path"], "g.txt");
  EXPECT_EQ(m["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);
  EXPECT_EQ(m["stats"]["iterations"].get<std::size_t>(), m["stats"]["per_iteration"].size());
  EXPECT_LE(m["stats"]["max_degree_spread"].get<int>(), 2);
  EXPECT_TRUE(m["timings"].contains("refine_ms"));

  // Replay the recorded options with a different worker count.
  std::string replay = "partition -i g.txt -o second.part --workers 1";
  for (auto& [k, v] : m["options"].items()) {
    if (k == "--input" || k == "--output") continue;
    replay += " " + k + " " + v.get<std::string>();
  }
  ASSERT_EQ(run(replay), 0) << replay;
  EXPECT_EQ(read("first.part"), read("second.part"));
}

TEST_F(Cli, SnapshotsAndCoevolve) {
  ASSERT_EQ(run("gen --model pa --n 400 --seed 2 -o log.txt"), 0);
  ASSERT_EQ(run("snapshots --log log.txt --cutoffs 1970-01-01T00:03:20Z,399 --out-dir snaps"),
            0);
  EXPECT_NE(read("stdout.txt").find("snapshot=0 cutoff=200 vertices=201"), std::string::npos)
      << read("stdout.txt");
  EXPECT_TRUE(fs::exists(path("snaps/labels.tsv")));
  EXPECT_TRUE(fs::exists(path("snaps/snapshot_1.edges")));

  ASSERT_EQ(run("coevolve --log log.txt --cutoffs 200,399 --method eep:2 --bin-count 5 "
                "--cap 500 --seed 5 --report r.json --csv h.csv "
                "--overlap-methods eep:0,eep:4,ep,degree --overlap-out o.csv"),
            0)
      << read("stderr.txt");
  auto r = nlohmann::json::parse(read("r.json"));
  EXPECT_EQ(r["method"], "eep:2");
  EXPECT_EQ(r["sampling"]["seed"], 5);
  const auto pairs = r["sampling"]["pairs"].get<std::uint64_t>();
  EXPECT_LE(pairs, 500u);
  ASSERT_EQ(r["histograms"].size(), 4u);
  for (const auto& h : r["histograms"]) {
    std::uint64_t sum = 0;
    for (const auto& c : h["counts"]) sum += c.get<std::uint64_t>();
    EXPECT_EQ(sum, pairs);
    EXPECT_EQ(h["counts"].size(), 6u);
  }
  std::istringstream csv(read("h.csv"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 1u + 4 * 6);
  EXPECT_NE(read("o.csv").find("0,1,eep:4,"), std::string::npos);

  EXPECT_EQ(run("coevolve --log log.txt --cutoffs 200,399 --earlier 1 --later 0"), 2);
  EXPECT_EQ(run("coevolve --log log.txt --cutoffs 399,200"), 2);
}

}  // namespace
