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

// Per-vertex centrality measures used by the co-evolution analysis.

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "posa/graph.hpp"

namespace posa {

enum class Measure { kDegree, kBetweenness, kTriangles, kShapley };

std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

struct CentralityVector {
  Measure measure = Measure::kDegree;
  std::vector<double> scores;
};

CentralityVector degree_centrality(const Graph& g);

/// Exact unweighted betweenness by per-source shortest-path counting and
/// dependency accumulation. Counts unordered pairs {s, t}, excludes the
/// endpoints, no normalization. Sources are split into contiguous blocks, one
/// per worker, and the block sums are added in block order.
CentralityVector betweenness_centrality(const Graph& g, std::uint32_t workers = 1);

/// Number of triangles through each vertex.
CentralityVector triangle_counts(const Graph& g);

/// Shapley value of the game v(S) = |S ∪ N(S)|:
/// phi(v) = sum over u in {v} ∪ N(v) of 1 / (1 + deg(u)). Scores sum to n.
CentralityVector shapley_centrality(const Graph& g);

CentralityVector compute_centrality(const Graph& g, Measure m, std::uint32_t workers = 1);

}  // namespace posa
