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

// Co-evolution of vertices that share a position across graph snapshots.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posa/centrality.hpp"
#include "posa/partition.hpp"
#include "posa/similarity.hpp"

namespace posa {

/// How vertices are grouped into positions.
struct PartitionMethod {
  enum class Kind { kEpsilonEquitable, kEquitable, kDegree };

  Kind kind = Kind::kEpsilonEquitable;
  std::uint32_t epsilon = 0;

  static PartitionMethod EpsilonEquitable(std::uint32_t eps) {
    return {Kind::kEpsilonEquitable, eps};
  }
  static PartitionMethod Equitable() { return {Kind::kEquitable, 0}; }
  static PartitionMethod Degree() { return {Kind::kDegree, 0}; }

  /// "eep:<eps>", "ep" or "degree".
  std::string name() const;
  static PartitionMethod Parse(std::string_view text);
};

/// eep runs on the sharded engine, ep on the naive equitable refinement.
Partition compute_partition(const Graph& g, const PartitionMethod& method,
                            std::uint32_t workers = 1);

using VertexPair = std::pair<VertexId, VertexId>;

struct PairSample {
  /// (a, b) with a < b, grouped by cell.
  std::vector<VertexPair> pairs;
  /// Pairs available before sampling.
  std::uint64_t population = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
};

/// All unordered pairs inside each cell of `p`, restricted to `common`. When
/// the population exceeds `cap`, a uniform sample of exactly `cap` distinct
/// pairs is drawn without replacement, deterministically from `seed`.
PairSample same_position_pairs(const Partition& p, std::span<const VertexId> common,
                               std::optional<std::uint64_t> cap, std::uint64_t seed);

/// Histogram bins [edges[k], edges[k+1]) plus a final overflow bin
/// [edges.back(), inf). Edges start at 0 and ascend strictly.
class Bins {
 public:
  explicit Bins(std::vector<double> edges);
  /// [0,1), [1,2), ..., [count-1, count), [count, inf).
  static Bins Integer(std::uint32_t count);

  std::span<const double> edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  std::size_t bin_of(double value) const;

 private:
  std::vector<double> edges_;
};

/// |(a_t - b_t) - (a_t' - b_t')| for one pair.
double pair_difference(const VertexPair& pair, std::span<const double> before,
                       std::span<const double> after);

struct MeasureHistogram {
  Measure measure = Measure::kDegree;
  std::vector<std::uint64_t> counts;
  std::vector<double> percentages;
  std::uint64_t total = 0;
};

/// Bins the pair differences of one measure. Throws InvalidArgument naming
/// the first vertex that has no score in either vector.
MeasureHistogram pair_difference_histogram(std::span<const VertexPair> pairs,
                                           std::span<const double> before,
                                           std::span<const double> after, const Bins& bins,
                                           Measure measure, std::uint32_t workers = 1);

struct CoevolutionReport {
  std::size_t earlier = 0;
  std::size_t later = 0;
  PartitionMethod method;
  std::uint32_t positions = 0;
  std::vector<double> bin_edges;
  std::uint64_t population = 0;
  std::uint64_t pair_count = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::vector<MeasureHistogram> histograms;
};

/// Histograms of every measure for the same-position pairs of `positions`
/// (a partition of the earlier snapshot). `before[k]` and `after[k]` hold the
/// same measure on the earlier and later snapshot. The caller fills in the
/// snapshot indices and method.
CoevolutionReport coevolution_report(const Partition& positions,
                                     std::span<const CentralityVector> before,
                                     std::span<const CentralityVector> after, const Bins& bins,
                                     std::optional<std::uint64_t> cap, std::uint64_t seed,
                                     std::uint32_t workers = 1);

struct OverlapEntry {
  std::size_t earlier = 0;
  std::size_t later = 0;
  PartitionMethod method;
  SimilarityScore score;
  double percent = 0.0;
};

struct OverlapMatrix {
  std::vector<OverlapEntry> entries;
};

/// For every snapshot pair i < j (and i == j when `include_diagonal`) and
/// method: partition both, drop from the later partition the vertices absent
/// from snapshot i, and score. Snapshots must share one label map, so the
/// vertices of snapshot i are [0, n_i).
OverlapMatrix overlap_matrix(std::span<const Graph> snapshots,
                             std::span<const PartitionMethod> methods, std::uint32_t workers = 1,
                             bool include_diagonal = false);

}  // namespace posa
