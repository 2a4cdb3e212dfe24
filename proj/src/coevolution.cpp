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

#include "posa/coevolution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_set>

#include "posa/errors.hpp"
#include "posa/parallel.hpp"

namespace posa {

std::string PartitionMethod::name() const {
  switch (kind) {
    case Kind::kEpsilonEquitable:
      return "eep:" + std::to_string(epsilon);
    case Kind::kEquitable:
      return "ep";
    case Kind::kDegree:
      return "degree";
  }
  return "unknown";
}

PartitionMethod PartitionMethod::Parse(std::string_view text) {
  if (text == "ep") return Equitable();
  if (text == "degree") return Degree();
  if (text.starts_with("eep:")) {
    std::string_view digits = text.substr(4);
    std::uint32_t eps = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), eps);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return EpsilonEquitable(eps);
    }
  }
  throw InvalidArgument("unknown partition method `" + std::string(text) +
                        "` (expected eep:<eps>, ep or degree)");
}

Partition compute_partition(const Graph& g, const PartitionMethod& method,
                            std::uint32_t workers) {
  switch (method.kind) {
    case PartitionMethod::Kind::kEpsilonEquitable:
      return parallel_eep(g, Epsilon(method.epsilon), EngineConfig{.workers = workers});
    case PartitionMethod::Kind::kEquitable:
      return equitable_oracle(g);
    case PartitionMethod::Kind::kDegree:
      return degree_partition(g);
  }
  return degree_partition(g);
}

namespace {

std::uint64_t pairs_in(std::uint64_t size) { return size * (size - 1) / 2; }

// Pair number `k` of a cell enumerated as (0,1), (0,2), (1,2), (0,3), ...
std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint64_t k) {
  auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
  while (j * (j - 1) / 2 > k) --j;
  while ((j + 1) * j / 2 <= k) ++j;
  return {k - j * (j - 1) / 2, j};
}

}  // namespace

PairSample same_position_pairs(const Partition& p, std::span<const VertexId> common,
                               std::optional<std::uint64_t> cap, std::uint64_t seed) {
  std::vector<std::uint8_t> keep(p.id_bound(), 0);
  for (VertexId v : common) {
    if (v < keep.size()) keep[v] = 1;
  }
  std::vector<std::vector<VertexId>> cells;
  std::vector<std::uint64_t> first_pair{0};
  for (const auto& cell : p.cells()) {
    std::vector<VertexId> members;
    for (VertexId v : cell) {
      if (keep[v]) members.push_back(v);
    }
    if (members.size() < 2) continue;
    first_pair.push_back(first_pair.back() + pairs_in(members.size()));
    cells.push_back(std::move(members));
  }

  PairSample out;
  out.population = first_pair.back();
  out.seed = seed;
  auto emit = [&](std::uint64_t k) {
    const auto c = static_cast<std::size_t>(
        std::upper_bound(first_pair.begin(), first_pair.end(), k) - first_pair.begin() - 1);
    auto [i, j] = decode_pair(k - first_pair[c]);
    out.pairs.emplace_back(cells[c][i], cells[c][j]);
  };

  if (!cap || out.population <= *cap) {
    out.pairs.reserve(out.population);
    for (std::uint64_t k = 0; k < out.population; ++k) emit(k);
    return out;
  }

  // Floyd's sampling of `cap` distinct pair numbers.
  out.sampled = true;
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(*cap);
  for (std::uint64_t j = out.population - *cap; j < out.population; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());
  out.pairs.reserve(picks.size());
  for (std::uint64_t k : picks) emit(k);
  return out;
}

Bins::Bins(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.empty() || edges_.front() != 0.0) throw InvalidArgument("bin edges must start at 0");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) throw InvalidArgument("bin edges must ascend strictly");
  }
}

Bins Bins::Integer(std::uint32_t count) {
  std::vector<double> edges(count + 1);
  std::iota(edges.begin(), edges.end(), 0.0);
  return Bins(std::move(edges));
}

std::size_t Bins::bin_of(double value) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  return it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin() - 1);
}

double pair_difference(const VertexPair& pair, std::span<const double> before,
                       std::span<const double> after) {
  const auto [a, b] = pair;
  return std::abs((before[a] - before[b]) - (after[a] - after[b]));
}

MeasureHistogram pair_difference_histogram(std::span<const VertexPair> pairs,
                                           std::span<const double> before,
                                           std::span<const double> after, const Bins& bins,
                                           Measure measure, std::uint32_t workers) {
  for (const auto& [a, b] : pairs) {
    for (VertexId v : {a, b}) {
      if (v >= before.size() || v >= after.size()) {
        throw InvalidArgument("vertex " + std::to_string(v) + " has no " +
                              std::string(measure_name(measure)) + " score");
      }
    }
  }

  const ShardPlan plan = plan_shards(static_cast<VertexId>(pairs.size()), workers);
  std::vector<std::vector<std::uint64_t>> partial(plan.shards.size());
  const std::function<void(std::uint32_t)> job = [&](std::uint32_t s) {
    partial[s].assign(bins.size(), 0);
    for (VertexId k = plan.shards[s].begin; k < plan.shards[s].end; ++k) {
      ++partial[s][bins.bin_of(pair_difference(pairs[k], before, after))];
    }
  };
  if (workers > 1) {
    ShardWorkers pool(workers);
    pool.run(job);
  } else {
    job(0);
  }

  MeasureHistogram h;
  h.measure = measure;
  h.counts.assign(bins.size(), 0);
  for (const auto& counts : partial) {
    for (std::size_t i = 0; i < counts.size(); ++i) h.counts[i] += counts[i];
  }
  h.total = pairs.size();
  h.percentages.resize(bins.size(), 0.0);
  if (h.total > 0) {
    for (std::size_t i = 0; i < bins.size(); ++i) {
      h.percentages[i] = 100.0 * static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
    }
  }
  return h;
}

CoevolutionReport coevolution_report(const Partition& positions,
                                     std::span<const CentralityVector> before,
                                     std::span<const CentralityVector> after, const Bins& bins,
                                     std::optional<std::uint64_t> cap, std::uint64_t seed,
                                     std::uint32_t workers) {
  if (before.size() != after.size()) {
    throw InvalidArgument("need the same measures for both snapshots");
  }
  std::vector<VertexId> common;
  common.reserve(positions.universe_size());
  for (const auto& cell : positions.cells()) common.insert(common.end(), cell.begin(), cell.end());
  const PairSample sample = same_position_pairs(positions, common, cap, seed);

  CoevolutionReport report;
  report.positions = positions.num_cells();
  report.bin_edges.assign(bins.edges().begin(), bins.edges().end());
  report.population = sample.population;
  report.pair_count = sample.pairs.size();
  report.sampled = sample.sampled;
  report.seed = seed;
  for (std::size_t k = 0; k < before.size(); ++k) {
    if (before[k].measure != after[k].measure) {
      throw InvalidArgument("measure order differs between snapshots");
    }
    report.histograms.push_back(pair_difference_histogram(
        sample.pairs, before[k].scores, after[k].scores, bins, before[k].measure, workers));
  }
  return report;
}

OverlapMatrix overlap_matrix(std::span<const Graph> snapshots,
                             std::span<const PartitionMethod> methods, std::uint32_t workers,
                             bool include_diagonal) {
  OverlapMatrix out;
  for (const PartitionMethod& method : methods) {
    std::vector<Partition> partitions;
    partitions.reserve(snapshots.size());
    for (const Graph& g : snapshots) partitions.push_back(compute_partition(g, method, workers));

    for (std::size_t i = 0; i < snapshots.size(); ++i) {
      std::vector<VertexId> earlier(snapshots[i].num_vertices());
      std::iota(earlier.begin(), earlier.end(), 0);
      for (std::size_t j = include_diagonal ? i : i + 1; j < snapshots.size(); ++j) {
        const Partition later = restrict_partition(partitions[j], earlier);
        OverlapEntry entry{i, j, method, similarity_score(partitions[i], later), 0.0};
        entry.percent = 100.0 * entry.score.value;
        out.entries.push_back(entry);
      }
    }
  }
  return out;
}

}  // namespace posa
