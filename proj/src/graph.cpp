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

#include "posa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "posa/errors.hpp"
#include "posa/hash.hpp"

namespace posa {

Graph Graph::FromEdges(VertexId n,
                       std::span<const std::pair<VertexId, VertexId>> edges) {
  Graph g;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (u == v) continue;
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (VertexId u = 0; u < n; ++u) g.offsets_[u + 1] += g.offsets_[u];

  std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  g.neighbors_.resize(g.offsets_.back());
  for (auto [u, v] : edges) {
    if (u == v) continue;
    g.neighbors_[fill[u]++] = v;
    g.neighbors_[fill[v]++] = u;
  }

  // Sort and dedupe each list, then compact.
  std::uint64_t write = 0;
  std::uint64_t begin = 0;
  for (VertexId u = 0; u < n; ++u) {
    const std::uint64_t end = g.offsets_[u + 1];
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(begin);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(end);
    std::sort(first, last);
    last = std::unique(first, last);
    g.offsets_[u] = write;
    for (auto it = first; it != last; ++it) g.neighbors_[write++] = *it;
    begin = end;
  }
  g.offsets_[n] = write;
  g.neighbors_.resize(write);
  g.neighbors_.shrink_to_fit();
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::uint64_t Graph::fingerprint() const {
  Fnv1a h;
  h.add_u64(num_vertices());
  for (VertexId u = 0; u < num_vertices(); ++u) {
    h.add_u64(degree(u));
    for (VertexId v : neighbors(u)) h.add_u64(v);
  }
  return h.value();
}

VertexId VertexLabelMap::intern(std::string_view label) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(label), static_cast<VertexId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

std::optional<VertexId> VertexLabelMap::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void VertexLabelMap::write(std::ostream& out) const {
  for (VertexId id = 0; id < size(); ++id) out << id << '\t' << labels_[id] << '\n';
}

VertexLabelMap VertexLabelMap::read(std::istream& in) {
  VertexLabelMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected <id>\\t<label>", line_no);
    VertexId id = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, id);
    if (ec != std::errc() || ptr != line.data() + tab) {
      throw ParseError("bad vertex id", line_no);
    }
    if (id != map.size()) throw ParseError("ids must be dense and ascending", line_no);
    std::string_view label(line.data() + tab + 1, line.size() - tab - 1);
    if (map.find(label)) throw ParseError("duplicate label", line_no);
    map.intern(label);
  }
  return map;
}

namespace {

struct RawLine {
  std::string_view a;
  std::string_view b;
  std::optional<Timestamp> time;
};

// Splits a data line into tokens. Returns nullopt for blank/comment lines.
std::optional<RawLine> tokenize(std::string_view line, std::size_t line_no) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  if (tokens.empty()) return std::nullopt;
  if (tokens.size() < 2 || tokens.size() > 3) {
    throw ParseError("expected `<label> <label> [<timestamp>]`", line_no);
  }
  RawLine raw{tokens[0], tokens[1], std::nullopt};
  if (tokens.size() == 3) {
    try {
      raw.time = parse_timestamp(tokens[2]);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return raw;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in) {
  LoadedGraph out;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto raw = tokenize(line, line_no);
    if (!raw) continue;
    ++out.stats.lines;
    if (raw->a == raw->b) {
      ++out.stats.self_loops;
      continue;
    }
    VertexId u = out.labels.intern(raw->a);
    VertexId v = out.labels.intern(raw->b);
    edges.emplace_back(u, v);
  }
  out.graph = Graph::FromEdges(out.labels.size(), edges);
  out.stats.duplicates = edges.size() - out.graph.num_edges();
  return out;
}

void TemporalEdgeLog::sort_by_time() {
  std::stable_sort(events.begin(), events.end(),
                   [](const EdgeEvent& x, const EdgeEvent& y) { return x.time < y.time; });
}

TemporalEdgeLog read_temporal_log(std::istream& in, bool directed) {
  TemporalEdgeLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto raw = tokenize(line, line_no);
    if (!raw) continue;
    log.events.push_back(
        {std::string(raw->a), std::string(raw->b), raw->time.value_or(0), directed});
  }
  return log;
}

SnapshotSpec::SnapshotSpec(std::vector<Timestamp> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw InvalidArgument("need at least one snapshot cutoff");
  for (std::size_t i = 1; i < cutoffs_.size(); ++i) {
    if (cutoffs_[i] <= cutoffs_[i - 1]) {
      throw InvalidArgument("snapshot cutoffs must be strictly ascending");
    }
  }
}

SnapshotSeries build_snapshots(const TemporalEdgeLog& log, const SnapshotSpec& spec) {
  TemporalEdgeLog sorted = log;
  sorted.sort_by_time();

  SnapshotSeries series;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::size_t next = 0;
  for (Timestamp cutoff : spec.cutoffs()) {
    for (; next < sorted.events.size() && sorted.events[next].time <= cutoff; ++next) {
      const EdgeEvent& e = sorted.events[next];
      if (e.source == e.target) {
        ++series.self_loops;
        continue;
      }
      VertexId u = series.labels.intern(e.source);
      VertexId v = series.labels.intern(e.target);
      edges.emplace_back(u, v);
    }
    series.graphs.push_back(Graph::FromEdges(series.labels.size(), edges));
  }
  return series;
}

TemporalEdgeLog reciprocal_projection(const TemporalEdgeLog& log) {
  // Earliest time each ordered pair was seen.
  std::map<std::pair<std::string, std::string>, Timestamp> first_seen;
  for (const EdgeEvent& e : log.events) {
    if (e.source == e.target) continue;
    auto [it, inserted] = first_seen.try_emplace({e.source, e.target}, e.time);
    if (!inserted) it->second = std::min(it->second, e.time);
  }

  TemporalEdgeLog out;
  for (const auto& [key, forward_time] : first_seen) {
    const auto& [a, b] = key;
    if (!(a < b)) continue;
    auto back = first_seen.find({b, a});
    if (back == first_seen.end()) continue;
    out.events.push_back({a, b, std::max(forward_time, back->second), false});
  }
  out.sort_by_time();
  return out;
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty timestamp");
  const bool all_digits = std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
  if (all_digits) {
    Timestamp value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc()) throw InvalidArgument("timestamp out of range: " + std::string(text));
    return value;
  }
  if (text.front() == '-') throw InvalidArgument("negative timestamp: " + std::string(text));

  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = 0;
  const std::string buf(text);
  int fields = std::sscanf(buf.c_str(), "%4d-%2d-%2d%c", &y, &mo, &d, &tail);
  if (fields == 4) {
    if (tail != 'T' && tail != ' ') throw InvalidArgument("bad ISO-8601 timestamp: " + buf);
    char zone = 0;
    int more = std::sscanf(buf.c_str() + 11, "%2d:%2d:%2d%c", &h, &mi, &s, &zone);
    if (more < 3 || (more == 4 && zone != 'Z')) {
      throw InvalidArgument("bad ISO-8601 time of day: " + buf);
    }
  } else if (fields != 3 || buf.size() != 10) {
    throw InvalidArgument("bad timestamp: " + buf);
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw InvalidArgument("invalid date: " + buf);
  const auto secs = sys_days{ymd}.time_since_epoch() + hours{h} + minutes{mi} + seconds{s};
  const Timestamp value = duration_cast<seconds>(secs).count();
  if (value < 0) throw InvalidArgument("timestamp before the epoch: " + buf);
  return value;
}

std::string validate(const Graph& g) {
  std::ostringstream err;
  std::uint64_t total = 0;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    auto adj = g.neighbors(u);
    total += adj.size();
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] >= g.num_vertices()) {
        err << "vertex " << u << " has out-of-range neighbor " << adj[i];
        return err.str();
      }
      if (adj[i] == u) {
        err << "self-loop at " << u;
        return err.str();
      }
      if (i > 0 && adj[i] <= adj[i - 1]) {
        err << "adjacency of " << u << " not strictly ascending";
        return err.str();
      }
      if (!g.has_edge(adj[i], u)) {
        err << "edge " << u << "-" << adj[i] << " is not symmetric";
        return err.str();
      }
    }
  }
  if (total != 2 * g.num_edges()) return "degree sum differs from 2m";
  return {};
}

}  // namespace posa
