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

#include "posa/centrality.hpp"

#include <algorithm>
#include <functional>
#include <span>

#include "posa/parallel.hpp"

namespace posa {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kDegree:
      return "degree";
    case Measure::kBetweenness:
      return "betweenness";
    case Measure::kTriangles:
      return "triangles";
    case Measure::kShapley:
      return "shapley";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : {Measure::kDegree, Measure::kBetweenness, Measure::kTriangles,
                    Measure::kShapley}) {
    if (measure_name(m) == name) return m;
  }
  return std::nullopt;
}

CentralityVector degree_centrality(const Graph& g) {
  CentralityVector out{Measure::kDegree, std::vector<double>(g.num_vertices())};
  for (VertexId u = 0; u < g.num_vertices(); ++u) out.scores[u] = g.degree(u);
  return out;
}

namespace {

// Scratch space for one source's BFS and dependency pass.
struct BrandesWorkspace {
  explicit BrandesWorkspace(VertexId n)
      : sigma(n, 0.0), delta(n, 0.0), dist(n, -1) {
    order.reserve(n);
  }

  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::int64_t> dist;
  std::vector<VertexId> order;
};

void accumulate_source(const Graph& g, VertexId s, BrandesWorkspace& ws,
                       std::vector<double>& score) {
  ws.order.clear();
  ws.sigma[s] = 1.0;
  ws.dist[s] = 0;
  ws.order.push_back(s);
  for (std::size_t head = 0; head < ws.order.size(); ++head) {
    const VertexId v = ws.order[head];
    for (VertexId w : g.neighbors(v)) {
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.order.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }
  // Dependencies in reverse BFS order; predecessors are neighbors one level up.
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const VertexId w = *it;
    for (VertexId v : g.neighbors(w)) {
      if (ws.dist[v] == ws.dist[w] - 1) {
        ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
      }
    }
    if (w != s) score[w] += ws.delta[w];
  }
  for (VertexId v : ws.order) {
    ws.sigma[v] = 0.0;
    ws.delta[v] = 0.0;
    ws.dist[v] = -1;
  }
}

}  // namespace

CentralityVector betweenness_centrality(const Graph& g, std::uint32_t workers) {
  const VertexId n = g.num_vertices();
  const ShardPlan plan = plan_shards(n, workers);
  std::vector<std::vector<double>> partial(plan.shards.size());
  const std::function<void(std::uint32_t)> job = [&](std::uint32_t b) {
    partial[b].assign(n, 0.0);
    BrandesWorkspace ws(n);
    for (VertexId s = plan.shards[b].begin; s < plan.shards[b].end; ++s) {
      accumulate_source(g, s, ws, partial[b]);
    }
  };
  if (workers > 1) {
    ShardWorkers pool(workers);
    pool.run(job);
  } else {
    job(0);
  }

  CentralityVector out{Measure::kBetweenness, std::vector<double>(n, 0.0)};
  for (const auto& block : partial) {
    for (VertexId v = 0; v < n; ++v) out.scores[v] += block[v];
  }
  // Every unordered pair was counted from both ends.
  for (double& x : out.scores) x /= 2.0;
  return out;
}

CentralityVector triangle_counts(const Graph& g) {
  const VertexId n = g.num_vertices();
  auto before = [&](VertexId a, VertexId b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) < g.degree(b) : a < b;
  };
  // Orient each edge toward the higher (degree, id) endpoint; out-lists stay
  // sorted by id because adjacency lists are.
  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<VertexId> out_neighbors;
  out_neighbors.reserve(g.num_edges());
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (before(u, v)) out_neighbors.push_back(v);
    }
    offsets[u + 1] = out_neighbors.size();
  }
  auto out_of = [&](VertexId u) {
    return std::span<const VertexId>(out_neighbors.data() + offsets[u],
                                     out_neighbors.data() + offsets[u + 1]);
  };

  std::vector<std::uint64_t> count(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    auto ou = out_of(u);
    for (VertexId v : ou) {
      auto ov = out_of(v);
      auto i = ou.begin();
      auto j = ov.begin();
      while (i != ou.end() && j != ov.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count[u];
          ++count[v];
          ++count[*i];
          ++i;
          ++j;
        }
      }
    }
  }
  CentralityVector out{Measure::kTriangles, std::vector<double>(n)};
  for (VertexId u = 0; u < n; ++u) out.scores[u] = static_cast<double>(count[u]);
  return out;
}

CentralityVector shapley_centrality(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<double> share(n);
  for (VertexId u = 0; u < n; ++u) share[u] = 1.0 / (1.0 + g.degree(u));
  CentralityVector out{Measure::kShapley, std::vector<double>(n)};
  for (VertexId v = 0; v < n; ++v) {
    double phi = share[v];
    for (VertexId u : g.neighbors(v)) phi += share[u];
    out.scores[v] = phi;
  }
  return out;
}

CentralityVector compute_centrality(const Graph& g, Measure m, std::uint32_t workers) {
  switch (m) {
    case Measure::kDegree:
      return degree_centrality(g);
    case Measure::kBetweenness:
      return betweenness_centrality(g, workers);
    case Measure::kTriangles:
      return triangle_counts(g);
    case Measure::kShapley:
      return shapley_centrality(g);
  }
  return degree_centrality(g);
}

}  // namespace posa
