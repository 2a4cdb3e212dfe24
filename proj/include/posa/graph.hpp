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

// Immutable undirected simple graphs, label maps and temporal edge logs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace posa {

using VertexId = std::uint32_t;
using Timestamp = std::int64_t;

/// Undirected simple graph over dense ids [0, n) in CSR form. Every adjacency
/// list is strictly ascending and the neighbor relation is symmetric.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph from an arbitrary edge list. Self-loops and duplicate
  /// edges (in either orientation) are dropped.
  static Graph FromEdges(VertexId n,
                         std::span<const std::pair<VertexId, VertexId>> edges);

  VertexId num_vertices() const {
    return static_cast<VertexId>(offsets_.size() - 1);
  }
  std::uint64_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::uint32_t degree(VertexId u) const {
    return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
  }
  bool has_edge(VertexId u, VertexId v) const;

  /// Edge list with u < v, sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  /// FNV-1a over (n, adjacency); stable across runs and platforms.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> neighbors_;
};

/// Bijection between external vertex labels and dense internal ids. Ids are
/// handed out in first-seen order.
class VertexLabelMap {
 public:
  VertexId intern(std::string_view label);
  std::optional<VertexId> find(std::string_view label) const;
  const std::string& label(VertexId id) const { return labels_.at(id); }
  VertexId size() const { return static_cast<VertexId>(labels_.size()); }

  /// One `<internal-id>\t<label>` line per vertex.
  void write(std::ostream& out) const;
  static VertexLabelMap read(std::istream& in);

  friend bool operator==(const VertexLabelMap& a, const VertexLabelMap& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> ids_;
};

struct EdgeListStats {
  std::uint64_t lines = 0;
  std::uint64_t self_loops = 0;
  std::uint64_t duplicates = 0;
};

struct LoadedGraph {
  Graph graph;
  VertexLabelMap labels;
  EdgeListStats stats;
};

/// Parses `<label> <label> [<timestamp>]` lines; `#` starts a comment.
LoadedGraph load_edge_list(std::istream& in);

struct EdgeEvent {
  std::string source;
  std::string target;
  Timestamp time = 0;
  bool directed = false;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

/// Timestamped edge formation events, possibly directed.
struct TemporalEdgeLog {
  std::vector<EdgeEvent> events;

  /// Stable sort by timestamp.
  void sort_by_time();
};

/// Reads the edge-list format into events. Lines without a timestamp get 0.
/// Negative timestamps are rejected.
TemporalEdgeLog read_temporal_log(std::istream& in, bool directed);

/// Strictly ascending, nonempty list of snapshot cutoffs.
class SnapshotSpec {
 public:
  explicit SnapshotSpec(std::vector<Timestamp> cutoffs);
  std::span<const Timestamp> cutoffs() const { return cutoffs_; }

 private:
  std::vector<Timestamp> cutoffs_;
};

struct SnapshotSeries {
  std::vector<Graph> graphs;
  /// Shared across all graphs; ids are assigned in event-time order, so the
  /// vertices of snapshot i are exactly [0, graphs[i].num_vertices()).
  VertexLabelMap labels;
  std::uint64_t self_loops = 0;
};

/// Snapshot i holds every edge with timestamp <= cutoffs[i]. Events are
/// treated as undirected regardless of their flag.
SnapshotSeries build_snapshots(const TemporalEdgeLog& log,
                               const SnapshotSpec& spec);

/// Keeps the pairs {a, b} for which both a->b and b->a occur. The output event
/// is undirected, oriented with the lexicographically smaller label first,
/// and stamped with the time the link was first reciprocated.
TemporalEdgeLog reciprocal_projection(const TemporalEdgeLog& log);

/// Accepts unix seconds ("1182470400") or ISO-8601 dates
/// ("2007-06-22", "2007-06-22T12:00:00Z"), interpreted as UTC.
Timestamp parse_timestamp(std::string_view text);

/// Checks the symmetry and simplicity invariants in O(m). Returns an empty
/// string when the graph is valid, otherwise a description of the violation.
std::string validate(const Graph& g);

}  // namespace posa
