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

// Sharded map/reduce execution of epsilon-equitable refinement.
//
// Each iteration is one bulk-synchronous step: every worker maps its
// contiguous vertex range to (vertex, degree toward the active cell)
// emissions, then a single reducer splits the partition and updates the
// active list. Workers only read the graph and the active-cell snapshot and
// only write their own emission buffer, so the result does not depend on the
// worker count.

#pragma once

#include <barrier>
#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <span>
#include <thread>
#include <vector>

#include "posa/graph.hpp"
#include "posa/partition.hpp"

namespace posa {

struct VertexRange {
  VertexId begin = 0;
  VertexId end = 0;

  VertexId size() const { return end - begin; }
  friend bool operator==(const VertexRange&, const VertexRange&) = default;
};

/// p contiguous ranges covering [0, n); sizes differ by at most one, larger
/// ranges first. Ranges may be empty when p > n.
struct ShardPlan {
  std::vector<VertexRange> shards;
};

ShardPlan plan_shards(VertexId n, std::uint32_t workers);

struct MapEmission {
  VertexId vertex = 0;
  std::uint32_t degree = 0;

  friend bool operator==(const MapEmission&, const MapEmission&) = default;
};

/// One emission per vertex of `shard`: its degree toward `active_cell`
/// (sorted ascending).
std::vector<MapEmission> map_degrees(VertexRange shard, const Graph& g,
                                     std::span<const VertexId> active_cell);

struct ReduceResult {
  Partition partition;
  ActiveList active;
};

/// Reducer of one iteration. `active` is the list after the current cell was
/// taken off it. Emissions must name every vertex of `p` exactly once, in any
/// order; otherwise IntegrityError.
ReduceResult reduce_split(const Partition& p, std::span<const MapEmission> emissions,
                          const ActiveList& active, Epsilon eps);

struct EngineConfig {
  std::uint32_t workers = 1;
  /// 0 selects 2n + 1, which refinement can never reach.
  std::uint64_t max_iterations = 0;
  /// Emit a progress line every this many iterations; 0 disables.
  std::uint64_t progress_interval = 0;
  std::ostream* progress = nullptr;
};

struct EngineRun {
  Partition partition;
  RefinementTrace trace;
  double elapsed_ms = 0.0;
};

EngineRun run_parallel_eep(const Graph& g, Epsilon eps, const EngineConfig& config);

/// Same partition as fast_eep(g, eps) for every worker count.
inline Partition parallel_eep(const Graph& g, Epsilon eps, const EngineConfig& config) {
  return run_parallel_eep(g, eps, config).partition;
}

/// Fixed pool of shard workers driven in lock-step. run() hands shard i to
/// worker i, returns once every shard finished, and rethrows the first
/// worker exception.
class ShardWorkers {
 public:
  explicit ShardWorkers(std::uint32_t workers);
  ~ShardWorkers();
  ShardWorkers(const ShardWorkers&) = delete;
  ShardWorkers& operator=(const ShardWorkers&) = delete;

  std::uint32_t size() const { return workers_; }
  void run(const std::function<void(std::uint32_t)>& job);

 private:
  void loop(std::uint32_t id);

  std::uint32_t workers_;
  std::barrier<> start_;
  std::barrier<> done_;
  const std::function<void(std::uint32_t)>* job_ = nullptr;
  bool stop_ = false;
  std::vector<std::exception_ptr> errors_;
  std::vector<std::thread> threads_;
};

}  // namespace posa
