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

// Comparing two partitions of the same vertex set.
//
// The similarity score of partitions p1, p2 over N vertices is
//
//   sim = 1/2 [ (N - |p1 ∩ p2|) / (N - |p1|) + (N - |p1 ∩ p2|) / (N - |p2|) ]
//
// which equals C(p1 ∩ p2) / H(C(p1), C(p2)) with C(p) = 1 - |p| / N and H the
// harmonic mean. Both forms are evaluated and reported.

#pragma once

#include <cstdint>
#include <span>

#include "posa/partition.hpp"

namespace posa {

/// Order-insensitive equality. Throws UniverseMismatch if the vertex sets differ.
bool partitions_equal(const Partition& a, const Partition& b);

/// Nonempty cell-wise intersections, ordered by smallest member. O(N).
Partition partition_intersection(const Partition& a, const Partition& b);

/// |a ∩ b| by enumerating all cell-index pairs and testing each for overlap.
/// Rows are spread over `workers` shards and the per-shard counts summed.
std::uint64_t intersection_cardinality_cellpairs(const Partition& a, const Partition& b,
                                                 std::uint32_t workers = 1);

struct SimilarityScore {
  double value = 0.0;
  std::uint32_t first_cells = 0;
  std::uint32_t second_cells = 0;
  std::uint32_t intersection_cells = 0;
  std::uint32_t universe = 0;
  /// The two algebraic forms; equal to `value` when the degenerate rules
  /// (equal inputs, or a discrete input) decided the score.
  double pairwise_form = 0.0;
  double harmonic_form = 0.0;
  bool degenerate = false;
};

/// 1 when the partitions are equal, 0 when they differ and either one is
/// discrete, otherwise the formula above.
SimilarityScore similarity_score(const Partition& a, const Partition& b);

/// Each cell intersected with `keep`, empty cells dropped, order kept.
Partition restrict_partition(const Partition& p, std::span<const VertexId> keep);

}  // namespace posa
