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

// Synthetic graph generators.

#pragma once

#include <cstdint>
#include <vector>

#include "posa/graph.hpp"

namespace posa {

struct GeneratorConfig {
  VertexId n = 1000;
  double gamma = 2.5;
  std::uint64_t seed = 1;
};

struct GeneratedGraph {
  Graph graph;
  std::vector<std::uint32_t> target_degrees;
  std::uint64_t erased_self_loops = 0;
  std::uint64_t erased_multi_edges = 0;
};

/// Erased configuration model: degrees are drawn i.i.d. from P(k) ~ k^-gamma
/// on [1, n-1], stubs are matched uniformly at random, and self-loops and
/// multi-edges are discarded (and counted). Pure function of the config.
GeneratedGraph generate_power_law(const GeneratorConfig& config);

/// Uniform G(n, p).
Graph generate_erdos_renyi(VertexId n, double p, std::uint64_t seed);

struct GrowthConfig {
  VertexId n = 1000;
  /// Edges added by every arriving vertex.
  std::uint32_t edges_per_vertex = 2;
  std::uint64_t seed = 1;
};

/// Preferential-attachment growth recorded as a temporal log: vertex t
/// arrives at time t and links to `edges_per_vertex` distinct earlier vertices
/// chosen proportionally to degree. Labels are the decimal vertex ids.
TemporalEdgeLog generate_preferential_attachment_log(const GrowthConfig& config);

}  // namespace posa
