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

// Ordered vertex partitions and the epsilon-equitable refinement algorithm.
//
// A partition here is *ordered*: cell i precedes cell i + 1, and refinement
// keeps that order when a cell fragments (fragments take the place of their
// parent, lowest degree first). The order drives which cell is refined next.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posa/graph.hpp"

namespace posa {

/// Permitted spread of within-cell degrees toward any cell. Zero gives
/// ordinary equitable refinement.
class Epsilon {
 public:
  constexpr Epsilon() = default;
  constexpr explicit Epsilon(std::uint32_t value) : value_(value) {}
  /// Rejects negative values.
  static Epsilon FromSigned(long long value);

  constexpr std::uint32_t value() const { return value_; }
  friend constexpr bool operator==(Epsilon, Epsilon) = default;

 private:
  std::uint32_t value_ = 0;
};

inline constexpr std::uint32_t kNoCell = std::numeric_limits<std::uint32_t>::max();

class Partition {
 public:
  Partition() = default;

  /// Takes ordered cells; each cell is sorted ascending. Throws
  /// InvalidArgument on an empty cell or a vertex that appears twice.
  static Partition FromCells(std::vector<std::vector<VertexId>> cells);
  static Partition Unit(VertexId n);
  static Partition Discrete(VertexId n);

  std::uint32_t num_cells() const { return static_cast<std::uint32_t>(cells_.size()); }
  /// Number of vertices covered (N).
  std::uint32_t universe_size() const { return universe_size_; }
  const std::vector<std::vector<VertexId>>& cells() const { return cells_; }
  std::span<const VertexId> cell(std::uint32_t i) const { return cells_[i]; }

  /// Cell index of `v`, or kNoCell if `v` is not covered.
  std::uint32_t cell_of(VertexId v) const {
    return v < membership_.size() ? membership_[v] : kNoCell;
  }
  bool contains(VertexId v) const { return cell_of(v) != kNoCell; }
  /// One past the largest covered id.
  VertexId id_bound() const { return static_cast<VertexId>(membership_.size()); }

  bool is_discrete() const { return num_cells() == universe_size_; }
  bool same_universe(const Partition& other) const;

  /// Cells reordered by their smallest member.
  Partition canonical() const;

  /// Ordered equality: same cells in the same order.
  friend bool operator==(const Partition& a, const Partition& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<std::vector<VertexId>> cells_;
  std::vector<std::uint32_t> membership_;
  std::uint32_t universe_size_ = 0;
};

/// Cell indices pending refinement, in list order.
using ActiveList = std::vector<std::uint32_t>;

/// For every old cell index, the new indices of its fragments (ascending).
/// An unsplit cell maps to exactly one new index.
using SplitMap = std::vector<std::vector<std::uint32_t>>;

struct SplitResult {
  Partition partition;
  SplitMap split_map;
};

/// Number of neighbors of `u` inside `cell` (sorted ascending). Iterates the
/// smaller of the two sets and binary-searches the other.
std::uint32_t degree_to_cell(const Graph& g, VertexId u, std::span<const VertexId> cell);

/// Degrees of `u` toward every cell of `p`, in cell order.
std::vector<std::uint32_t> degree_vector(const Graph& g, VertexId u, const Partition& p);

/// Sorts each cell by (f, id) and cuts it greedily: a vertex stays in the
/// current group while f(vertex) - f(first member of the group) <= eps.
/// `f` is indexed by vertex id.
SplitResult split(const Partition& p, std::span<const std::uint32_t> f, Epsilon eps);

/// Active-list bookkeeping after a split: active cells that fragmented are
/// replaced in place by all their fragments, unsplit active cells are
/// renumbered, and fragments of inactive cells that split are appended in
/// ascending order.
ActiveList update_active(const ActiveList& active, const SplitMap& split_map);

/// Per-iteration record of a refinement run.
struct IterationStats {
  std::uint32_t active_cell_size = 0;
  /// Active-list length after the update.
  std::uint32_t active_after = 0;
  std::uint32_t cells_after = 0;
  /// Degree-computation work: adjacency entries scanned by fast_eep, or the
  /// sum over mapped vertices of min(deg, |c_a|) in the sharded engine.
  std::uint64_t work = 0;
};

struct RefinementTrace {
  std::vector<IterationStats> iterations;
};

/// Refines the unit partition of `g` until every cell is eps-equitable
/// toward every other cell. Deterministic; with eps = 0 the result is the
/// coarsest equitable partition up to cell order.
Partition fast_eep(const Graph& g, Epsilon eps, RefinementTrace* trace = nullptr);

/// Coarsest equitable partition by naive signature refinement: every round
/// splits all cells by the full degree vector of their members. Cells are
/// ordered by smallest member. Independent of fast_eep.
Partition equitable_oracle(const Graph& g);

/// Vertices grouped by degree, ascending degree order.
Partition degree_partition(const Graph& g);

/// Largest within-cell spread max_{u in Ci} deg(u, Cj) - min_{u in Ci} deg(u, Cj)
/// over all cell pairs. A partition is eps-equitable iff this is <= eps.
std::uint32_t max_degree_spread(const Graph& g, const Partition& p);

/// Refinement state in position form: cells are contiguous ranges of a vertex
/// permutation, and a cell is identified by its first position. Fragments of
/// a cell occupy subranges of its range, so ordering cells by start position
/// is the same as ordering them by index. Splitting touches only cells that
/// contain a vertex with nonzero f, and never renumbers the others.
class OrderedRefinement {
 public:
  explicit OrderedRefinement(VertexId n);

  bool done() const { return active_count_ == 0 || num_cells_ == n_; }
  std::uint32_t num_cells() const { return num_cells_; }
  std::uint32_t active_size() const { return active_count_; }

  /// Removes and returns the start position of the lowest-index active cell.
  std::uint32_t pop_active();
  std::span<const VertexId> cell_at(std::uint32_t start) const {
    return {elements_.data() + start, cell_size_[start]};
  }

  /// Applies split to every cell containing a vertex of `touched`. `touched`
  /// lists each vertex with f > 0 exactly once; every other vertex has f = 0.
  /// Returns the number of cells that fragmented.
  std::uint32_t split(std::span<const VertexId> touched, std::span<const std::uint32_t> f,
                      Epsilon eps);

  /// Materializes cells in index order, members ascending.
  Partition to_partition() const;
  /// Active cells as indices into to_partition(), ascending.
  ActiveList active_indices() const;

 private:
  void activate(std::uint32_t start);

  VertexId n_;
  std::vector<VertexId> elements_;
  std::vector<std::uint32_t> position_;
  std::vector<std::uint32_t> cell_start_of_;
  std::vector<std::uint32_t> cell_size_;  // nonzero only at cell starts
  std::vector<std::uint8_t> in_active_;
  std::vector<std::uint32_t> active_heap_;
  std::uint32_t active_count_ = 0;
  std::uint32_t num_cells_ = 0;
  std::vector<VertexId> scratch_;
};

struct PartitionFileHeader {
  VertexId n = 0;
  std::optional<std::uint32_t> epsilon;
  std::string algorithm;
  std::string graph_hash;
};

/// `# posa-partition key=value ...` header, then `index \t v1 v2 ...` per cell.
/// n is the number of vertices covered, which for a restricted partition can
/// be smaller than one past the largest id.
void write_partition(std::ostream& out, const Partition& p, const PartitionFileHeader& header);

struct PartitionFile {
  Partition partition;
  PartitionFileHeader header;
};

/// Requires the header; n= and cells= must agree with the body.
PartitionFile read_partition(std::istream& in);

}  // namespace posa
