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

#include "posa/similarity.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "posa/errors.hpp"
#include "posa/parallel.hpp"

namespace posa {

namespace {

void require_same_universe(const Partition& a, const Partition& b) {
  if (!a.same_universe(b)) {
    throw UniverseMismatch("partitions cover different vertex sets (" +
                           std::to_string(a.universe_size()) + " vs " +
                           std::to_string(b.universe_size()) + " vertices)");
  }
}

// Sorted-merge overlap test with early exit.
bool cells_intersect(std::span<const VertexId> x, std::span<const VertexId> y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

bool partitions_equal(const Partition& a, const Partition& b) {
  require_same_universe(a, b);
  return a.canonical() == b.canonical();
}

Partition partition_intersection(const Partition& a, const Partition& b) {
  require_same_universe(a, b);
  std::unordered_map<std::uint64_t, std::uint32_t> cell_for_pair;
  std::vector<std::vector<VertexId>> cells;
  for (VertexId v = 0; v < a.id_bound(); ++v) {
    if (!a.contains(v)) continue;
    const std::uint64_t key = (static_cast<std::uint64_t>(a.cell_of(v)) << 32) | b.cell_of(v);
    auto [it, inserted] =
        cell_for_pair.try_emplace(key, static_cast<std::uint32_t>(cells.size()));
    if (inserted) cells.emplace_back();
    cells[it->second].push_back(v);
  }
  return Partition::FromCells(std::move(cells));
}

std::uint64_t intersection_cardinality_cellpairs(const Partition& a, const Partition& b,
                                                 std::uint32_t workers) {
  require_same_universe(a, b);
  const ShardPlan plan = plan_shards(a.num_cells(), workers);
  std::vector<std::uint64_t> partial(plan.shards.size(), 0);
  const std::function<void(std::uint32_t)> job = [&](std::uint32_t s) {
    std::uint64_t ones = 0;
    for (std::uint32_t i = plan.shards[s].begin; i < plan.shards[s].end; ++i) {
      for (std::uint32_t j = 0; j < b.num_cells(); ++j) {
        if (cells_intersect(a.cell(i), b.cell(j))) ++ones;
      }
    }
    partial[s] = ones;
  };
  if (workers > 1) {
    ShardWorkers pool(workers);
    pool.run(job);
  } else {
    job(0);
  }
  std::uint64_t sum = 0;
  for (std::uint64_t ones : partial) sum += ones;
  return sum;
}

SimilarityScore similarity_score(const Partition& a, const Partition& b) {
  require_same_universe(a, b);
  SimilarityScore s;
  s.universe = a.universe_size();
  if (s.universe == 0) throw InvalidArgument("similarity of empty partitions is undefined");
  s.first_cells = a.num_cells();
  s.second_cells = b.num_cells();
  s.intersection_cells = partition_intersection(a, b).num_cells();

  // The intersection refines both inputs, so equal counts mean equal partitions.
  if (s.intersection_cells == s.first_cells && s.intersection_cells == s.second_cells) {
    s.value = s.pairwise_form = s.harmonic_form = 1.0;
    s.degenerate = true;
    return s;
  }
  if (a.is_discrete() || b.is_discrete()) {
    s.value = s.pairwise_form = s.harmonic_form = 0.0;
    s.degenerate = true;
    return s;
  }

  const double n = s.universe;
  const double common = n - s.intersection_cells;
  s.pairwise_form = 0.5 * (common / (n - s.first_cells) + common / (n - s.second_cells));

  auto coarseness = [n](double cells) { return 1.0 - cells / n; };
  const double c1 = coarseness(s.first_cells);
  const double c2 = coarseness(s.second_cells);
  const double harmonic = 2.0 * c1 * c2 / (c1 + c2);
  s.harmonic_form = coarseness(s.intersection_cells) / harmonic;

  s.value = s.pairwise_form;
  return s;
}

Partition restrict_partition(const Partition& p, std::span<const VertexId> keep) {
  std::vector<std::uint8_t> kept(p.id_bound(), 0);
  for (VertexId v : keep) {
    if (v < kept.size()) kept[v] = 1;
  }
  std::vector<std::vector<VertexId>> cells;
  for (const auto& cell : p.cells()) {
    std::vector<VertexId> members;
    for (VertexId v : cell) {
      if (kept[v]) members.push_back(v);
    }
    if (!members.empty()) cells.push_back(std::move(members));
  }
  return Partition::FromCells(std::move(cells));
}

}  // namespace posa
