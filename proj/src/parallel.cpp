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

#include "posa/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "posa/errors.hpp"

namespace posa {

ShardPlan plan_shards(VertexId n, std::uint32_t workers) {
  if (workers < 1) throw InvalidArgument("worker count must be at least 1");
  ShardPlan plan;
  plan.shards.reserve(workers);
  const VertexId base = n / workers;
  const VertexId extra = n % workers;
  VertexId begin = 0;
  for (std::uint32_t i = 0; i < workers; ++i) {
    const VertexId size = base + (i < extra ? 1 : 0);
    plan.shards.push_back({begin, begin + size});
    begin += size;
  }
  return plan;
}

std::vector<MapEmission> map_degrees(VertexRange shard, const Graph& g,
                                     std::span<const VertexId> active_cell) {
  std::vector<MapEmission> out;
  out.reserve(shard.size());
  for (VertexId u = shard.begin; u < shard.end; ++u) {
    out.push_back({u, degree_to_cell(g, u, active_cell)});
  }
  return out;
}

ReduceResult reduce_split(const Partition& p, std::span<const MapEmission> emissions,
                          const ActiveList& active, Epsilon eps) {
  const VertexId bound = p.id_bound();
  std::vector<std::uint32_t> f(bound, 0);
  std::vector<std::uint8_t> seen(bound, 0);
  for (const MapEmission& e : emissions) {
    if (!p.contains(e.vertex)) {
      throw IntegrityError("emission for vertex " + std::to_string(e.vertex) +
                           " outside the partition");
    }
    if (seen[e.vertex]++) {
      throw IntegrityError("duplicate emission for vertex " + std::to_string(e.vertex));
    }
    f[e.vertex] = e.degree;
  }
  if (emissions.size() != p.universe_size()) {
    for (VertexId v = 0; v < bound; ++v) {
      if (p.contains(v) && !seen[v]) {
        throw IntegrityError("missing emission for vertex " + std::to_string(v));
      }
    }
  }
  SplitResult s = split(p, f, eps);
  return {std::move(s.partition), update_active(active, s.split_map)};
}

ShardWorkers::ShardWorkers(std::uint32_t workers)
    : workers_(workers), start_(workers + 1), done_(workers + 1), errors_(workers) {
  if (workers < 1) throw InvalidArgument("worker count must be at least 1");
  threads_.reserve(workers);
  for (std::uint32_t id = 0; id < workers; ++id) threads_.emplace_back(&ShardWorkers::loop, this, id);
}

ShardWorkers::~ShardWorkers() {
  stop_ = true;
  start_.arrive_and_wait();
  for (auto& t : threads_) t.join();
}

void ShardWorkers::loop(std::uint32_t id) {
  while (true) {
    start_.arrive_and_wait();
    if (stop_) return;
    try {
      (*job_)(id);
    } catch (...) {
      errors_[id] = std::current_exception();
    }
    done_.arrive_and_wait();
  }
}

void ShardWorkers::run(const std::function<void(std::uint32_t)>& job) {
  job_ = &job;
  start_.arrive_and_wait();
  done_.arrive_and_wait();
  job_ = nullptr;
  for (auto& e : errors_) {
    if (e) std::rethrow_exception(std::exchange(e, nullptr));
  }
}

namespace {

// Immutable per-iteration broadcast of the active cell: sorted members plus a
// membership mark indexed by vertex id.
struct ActiveCellSnapshot {
  std::vector<VertexId> members;
  std::vector<std::uint8_t> mark;
};

void map_shard(VertexRange shard, const Graph& g, const ActiveCellSnapshot& cell,
               std::vector<MapEmission>& out, std::uint64_t& work) {
  out.clear();
  work = 0;
  const std::size_t cell_size = cell.members.size();
  for (VertexId u = shard.begin; u < shard.end; ++u) {
    auto adj = g.neighbors(u);
    std::uint32_t d = 0;
    if (adj.size() <= cell_size) {
      for (VertexId w : adj) d += cell.mark[w];
      work += adj.size();
    } else {
      for (VertexId w : cell.members) d += std::binary_search(adj.begin(), adj.end(), w);
      work += cell_size;
    }
    out.push_back({u, d});
  }
}

std::string dump_state(std::uint64_t iteration, const OrderedRefinement& state) {
  std::ostringstream out;
  out << "iteration cap exceeded: iteration=" << iteration << " cells=" << state.num_cells()
      << " active=" << state.active_size();
  return out.str();
}

}  // namespace

EngineRun run_parallel_eep(const Graph& g, Epsilon eps, const EngineConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const VertexId n = g.num_vertices();
  const ShardPlan plan = plan_shards(n, config.workers);
  const std::uint64_t cap =
      config.max_iterations ? config.max_iterations : 2ULL * n + 1;

  EngineRun run;
  OrderedRefinement state(n);
  ActiveCellSnapshot cell;
  cell.mark.assign(n, 0);
  std::vector<std::vector<MapEmission>> emissions(plan.shards.size());
  for (std::size_t s = 0; s < plan.shards.size(); ++s) emissions[s].reserve(plan.shards[s].size());
  std::vector<std::uint64_t> work(plan.shards.size(), 0);
  std::vector<std::uint32_t> f(n, 0);
  std::vector<VertexId> touched;

  const std::function<void(std::uint32_t)> map_job = [&](std::uint32_t s) {
    map_shard(plan.shards[s], g, cell, emissions[s], work[s]);
  };
  std::optional<ShardWorkers> pool;
  if (config.workers > 1) pool.emplace(config.workers);

  std::uint64_t iteration = 0;
  while (!state.done()) {
    if (iteration >= cap) throw IntegrityError(dump_state(iteration, state));
    const std::uint32_t start = state.pop_active();
    auto members = state.cell_at(start);
    cell.members.assign(members.begin(), members.end());
    std::sort(cell.members.begin(), cell.members.end());
    for (VertexId v : cell.members) cell.mark[v] = 1;

    if (pool) {
      pool->run(map_job);
    } else {
      map_job(0);
    }

    // Single reducer: every vertex must be emitted once, by its own shard.
    std::uint64_t iteration_work = 0;
    for (std::size_t s = 0; s < plan.shards.size(); ++s) {
      const VertexRange range = plan.shards[s];
      if (emissions[s].size() != range.size()) {
        throw IntegrityError("shard " + std::to_string(s) + " emitted " +
                             std::to_string(emissions[s].size()) + " of " +
                             std::to_string(range.size()) + " vertices");
      }
      VertexId expected = range.begin;
      for (const MapEmission& e : emissions[s]) {
        if (e.vertex != expected++) {
          throw IntegrityError("shard " + std::to_string(s) + " emitted foreign vertex " +
                               std::to_string(e.vertex));
        }
        if (e.degree != 0) {
          f[e.vertex] = e.degree;
          touched.push_back(e.vertex);
        }
      }
      iteration_work += work[s];
    }
    state.split(touched, f, eps);
    for (VertexId u : touched) f[u] = 0;
    touched.clear();
    for (VertexId v : cell.members) cell.mark[v] = 0;

    ++iteration;
    run.trace.iterations.push_back({static_cast<std::uint32_t>(cell.members.size()),
                                    state.active_size(), state.num_cells(), iteration_work});
    if (config.progress && config.progress_interval &&
        iteration % config.progress_interval == 0) {
      const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      *config.progress << "iteration=" << iteration << " active=" << state.active_size()
                       << " cells=" << state.num_cells() << " elapsed_ms=" << ms << '\n';
    }
  }
  run.partition = state.to_partition();
  run.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return run;
}

}  // namespace posa
