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

#include "posa/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "posa/errors.hpp"

namespace posa {

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

GeneratedGraph generate_power_law(const GeneratorConfig& config) {
  if (config.n < 2) throw InvalidArgument("power-law generator needs n >= 2");
  if (!(config.gamma > 1.0)) throw InvalidArgument("power-law exponent must exceed 1");

  const VertexId n = config.n;
  const std::uint32_t max_degree = n - 1;
  std::mt19937_64 rng(config.seed);

  // Cumulative weights of k^-gamma for k = 1..n-1.
  std::vector<double> cdf(max_degree);
  double total = 0.0;
  for (std::uint32_t k = 1; k <= max_degree; ++k) {
    total += std::pow(static_cast<double>(k), -config.gamma);
    cdf[k - 1] = total;
  }

  GeneratedGraph out;
  out.target_degrees.resize(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t stub_count = 0;
  for (VertexId u = 0; u < n; ++u) {
    const double x = unit(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    const auto k = static_cast<std::uint32_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), max_degree - 1) + 1);
    out.target_degrees[u] = k;
    stub_count += k;
  }
  if (stub_count % 2 == 1) {
    // Bump one vertex below the cap; fall back to lowering one if all are capped.
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    VertexId u = pick(rng);
    for (VertexId tries = 0; tries < n && out.target_degrees[u] == max_degree; ++tries) {
      u = (u + 1) % n;
    }
    if (out.target_degrees[u] < max_degree) {
      ++out.target_degrees[u];
    } else {
      --out.target_degrees[u];
    }
  }

  std::vector<VertexId> stubs;
  stubs.reserve(stub_count + 1);
  for (VertexId u = 0; u < n; ++u) stubs.insert(stubs.end(), out.target_degrees[u], u);
  std::shuffle(stubs.begin(), stubs.end(), rng);

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(stubs.size() / 2);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const VertexId u = stubs[i];
    const VertexId v = stubs[i + 1];
    if (u == v) {
      ++out.erased_self_loops;
      continue;
    }
    if (!seen.insert(edge_key(u, v)).second) {
      ++out.erased_multi_edges;
      continue;
    }
    edges.emplace_back(u, v);
  }
  out.graph = Graph::FromEdges(n, edges);
  return out;
}

Graph generate_erdos_renyi(VertexId n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("edge probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::FromEdges(n, edges);
}

TemporalEdgeLog generate_preferential_attachment_log(const GrowthConfig& config) {
  const std::uint32_t m = config.edges_per_vertex;
  if (m == 0) throw InvalidArgument("edges_per_vertex must be positive");
  if (config.n <= m) throw InvalidArgument("growth needs n > edges_per_vertex");

  std::mt19937_64 rng(config.seed);
  TemporalEdgeLog log;
  // A vertex appears in `targets` once per incident edge.
  std::vector<VertexId> targets;
  targets.reserve(2ULL * m * config.n);

  // Seed clique on the first m + 1 vertices, all at time 0.
  for (VertexId u = 0; u <= m; ++u) {
    for (VertexId v = u + 1; v <= m; ++v) {
      log.events.push_back({std::to_string(u), std::to_string(v), 0, false});
      targets.push_back(u);
      targets.push_back(v);
    }
  }
  std::vector<VertexId> chosen;
  for (VertexId t = m + 1; t < config.n; ++t) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
    while (chosen.size() < m) {
      const VertexId v = targets[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) chosen.push_back(v);
    }
    for (VertexId v : chosen) {
      log.events.push_back({std::to_string(t), std::to_string(v), t, false});
      targets.push_back(t);
      targets.push_back(v);
    }
  }
  return log;
}

}  // namespace posa
