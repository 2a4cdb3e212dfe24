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

#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "posa/coevolution.hpp"
#include "posa/errors.hpp"
#include "posa/generator.hpp"

namespace posa {
namespace {

std::vector<VertexId> all_of(const Partition& p) {
  std::vector<VertexId> v;
  for (const auto& c : p.cells()) v.insert(v.end(), c.begin(), c.end());
  return v;
}

TEST(Method, NamesRoundTrip) {
  for (auto m : {PartitionMethod::EpsilonEquitable(3), PartitionMethod::Equitable(),
                 PartitionMethod::Degree()}) {
    PartitionMethod back = PartitionMethod::Parse(m.name());
    EXPECT_EQ(back.kind, m.kind);
    EXPECT_EQ(back.epsilon, m.epsilon);
  }
  EXPECT_THROW(PartitionMethod::Parse("eep:"), InvalidArgument);
  EXPECT_THROW(PartitionMethod::Parse("eep:-1"), InvalidArgument);
  EXPECT_THROW(PartitionMethod::Parse("louvain"), InvalidArgument);
}

TEST(Pairs, Examples) {
  Partition p = Partition::FromCells({{1, 2, 3}, {4}});
  PairSample s = same_position_pairs(p, all_of(p), std::nullopt, 0);
  EXPECT_EQ(s.pairs, (std::vector<VertexPair>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(s.population, 3u);
  EXPECT_FALSE(s.sampled);
  Partition d = Partition::Discrete(5);
  EXPECT_TRUE(same_position_pairs(d, all_of(d), std::nullopt, 0).pairs.empty());
}

TEST(Pairs, RestrictedToCommon) {
  Partition p = Partition::FromCells({{0, 1, 2, 3}, {4, 5}});
  const std::vector<VertexId> common{0, 2, 4};
  PairSample s = same_position_pairs(p, common, std::nullopt, 0);
  EXPECT_EQ(s.pairs, (std::vector<VertexPair>{{0, 2}}));
}

TEST(Pairs, EnumerationMatchesNestedLoops) {
  Partition p = testing::random_partition(200, 7, 3);
  PairSample s = same_position_pairs(p, all_of(p), std::nullopt, 0);
  std::set<VertexPair> expected;
  for (const auto& c : p.cells()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) expected.insert({c[i], c[j]});
    }
  }
  EXPECT_EQ(std::set<VertexPair>(s.pairs.begin(), s.pairs.end()), expected);
  EXPECT_EQ(s.pairs.size(), expected.size());
}

TEST(Pairs, SamplingContract) {
  Partition p = Partition::Unit(1000);
  PairSample a = same_position_pairs(p, all_of(p), 10000, 42);
  EXPECT_TRUE(a.sampled);
  EXPECT_EQ(a.population, 1000u * 999 / 2);
  EXPECT_EQ(a.pairs.size(), 10000u);
  EXPECT_EQ(std::set<VertexPair>(a.pairs.begin(), a.pairs.end()).size(), 10000u);
  for (auto [x, y] : a.pairs) EXPECT_LT(x, y);
  EXPECT_EQ(same_position_pairs(p, all_of(p), 10000, 42).pairs, a.pairs);
  EXPECT_NE(same_position_pairs(p, all_of(p), 10000, 43).pairs, a.pairs);
}

TEST(Bins, Layout) {
  Bins b = Bins::Integer(3);
  EXPECT_EQ(b.size(), 4u);
  EXPECT_EQ(b.bin_of(0.0), 0u);
  EXPECT_EQ(b.bin_of(0.99), 0u);
  EXPECT_EQ(b.bin_of(1.0), 1u);
  EXPECT_EQ(b.bin_of(2.5), 2u);
  EXPECT_EQ(b.bin_of(3.0), 3u);
  EXPECT_EQ(b.bin_of(1e9), 3u);
  EXPECT_THROW(Bins({1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(Bins({0.0, 2.0, 2.0}), InvalidArgument);
}

TEST(PairDifference, Examples) {
  std::vector<double> before(2), after(2);
  before = {5, 3};
  after = {7, 5};
  EXPECT_EQ(pair_difference({0, 1}, before, after), 0.0);
  after = {9, 3};
  EXPECT_EQ(pair_difference({0, 1}, before, after), 4.0);
  EXPECT_EQ(pair_difference({1, 0}, before, after), 4.0);
}

TEST(Histogram, RecountAndZeroEvolution) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> score(0.0, 10.0);
  std::vector<double> before(300), after(300);
  for (auto& x : before) x = score(rng);
  for (auto& x : after) x = score(rng);
  Partition p = testing::random_partition(300, 4, 1);
  PairSample s = same_position_pairs(p, all_of(p), std::nullopt, 0);
  Bins bins = Bins::Integer(8);

  MeasureHistogram h = pair_difference_histogram(s.pairs, before, after, bins, Measure::kDegree);
  std::vector<std::uint64_t> recount(bins.size(), 0);
  for (const auto& pair : s.pairs) ++recount[bins.bin_of(pair_difference(pair, before, after))];
  EXPECT_EQ(h.counts, recount);
  EXPECT_EQ(h.total, s.pairs.size());
  EXPECT_NEAR(std::accumulate(h.percentages.begin(), h.percentages.end(), 0.0), 100.0, 1e-9);
  EXPECT_EQ(pair_difference_histogram(s.pairs, before, after, bins, Measure::kDegree, 4).counts,
            h.counts);

  MeasureHistogram still =
      pair_difference_histogram(s.pairs, before, before, bins, Measure::kDegree);
  EXPECT_EQ(still.counts[0], s.pairs.size());
}

TEST(Histogram, NamesMissingVertex) {
  std::vector<VertexPair> pairs{{0, 7}};
  std::vector<double> scores(3, 1.0);
  try {
    pair_difference_histogram(pairs, scores, scores, Bins::Integer(2), Measure::kShapley);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 7"), std::string::npos);
  }
}

TEST(Report, CountsEveryMeasure) {
  Graph early = testing::random_graph(60, 0.1, 1);
  Graph late = testing::random_graph(60, 0.12, 2);
  Partition positions = compute_partition(early, PartitionMethod::EpsilonEquitable(1));
  std::vector<CentralityVector> before, after;
  for (Measure m : {Measure::kDegree, Measure::kTriangles}) {
    before.push_back(compute_centrality(early, m));
    after.push_back(compute_centrality(late, m));
  }
  CoevolutionReport r = coevolution_report(positions, before, after, Bins::Integer(5),
                                           std::nullopt, 0);
  ASSERT_EQ(r.histograms.size(), 2u);
  EXPECT_EQ(r.positions, positions.num_cells());
  for (const auto& h : r.histograms) EXPECT_EQ(h.total, r.pair_count);
  EXPECT_EQ(r.pair_count, r.population);
  std::swap(after[0], after[1]);
  EXPECT_THROW(coevolution_report(positions, before, after, Bins::Integer(5), std::nullopt, 0),
               InvalidArgument);
}

TEST(Overlap, DiagonalIsHundred) {
  Graph g = generate_power_law({300, 2.5, 4}).graph;
  std::vector<Graph> snaps{g, g};
  std::vector<PartitionMethod> methods{PartitionMethod::EpsilonEquitable(0),
                                       PartitionMethod::EpsilonEquitable(2),
                                       PartitionMethod::Equitable(), PartitionMethod::Degree()};
  OverlapMatrix m = overlap_matrix(snaps, methods, 2, true);
  EXPECT_EQ(m.entries.size(), methods.size() * 3);
  for (const auto& e : m.entries) EXPECT_EQ(e.percent, 100.0) << e.method.name();
}

TEST(Overlap, RestrictsToEarlierVertices) {
  // Later snapshot adds vertex 4 hanging off vertex 0; only [0, 4) is scored.
  Graph early = testing::path_graph(4);
  std::vector<std::pair<VertexId, VertexId>> e{{0, 1}, {1, 2}, {2, 3}, {0, 4}};
  Graph late = Graph::FromEdges(5, e);
  std::vector<Graph> snaps{early, late};
  std::vector<PartitionMethod> methods{PartitionMethod::Degree()};
  OverlapMatrix m = overlap_matrix(snaps, methods);
  ASSERT_EQ(m.entries.size(), 1u);
  // early: {0,3},{1,2}; late restricted: {3},{0,1,2} -> intersection {0},{3},{1,2}.
  EXPECT_EQ(m.entries[0].score.universe, 4u);
  EXPECT_EQ(m.entries[0].score.intersection_cells, 3u);
  EXPECT_NEAR(m.entries[0].score.value, 0.5, 1e-12);
}

}  // namespace
}  // namespace posa
