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

#include "posa/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "posa/errors.hpp"

namespace posa {

Epsilon Epsilon::FromSigned(long long value) {
  if (value < 0) throw InvalidArgument("epsilon must be non-negative");
  if (value > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("epsilon too large");
  }
  return Epsilon(static_cast<std::uint32_t>(value));
}

Partition Partition::FromCells(std::vector<std::vector<VertexId>> cells) {
  Partition p;
  VertexId bound = 0;
  for (auto& cell : cells) {
    if (cell.empty()) throw InvalidArgument("partition cells must be nonempty");
    std::sort(cell.begin(), cell.end());
    bound = std::max(bound, cell.back() + 1);
  }
  p.membership_.assign(bound, kNoCell);
  for (std::uint32_t i = 0; i < cells.size(); ++i) {
    for (VertexId v : cells[i]) {
      if (p.membership_[v] != kNoCell) {
        throw InvalidArgument("vertex " + std::to_string(v) + " appears in two cells");
      }
      p.membership_[v] = i;
    }
    p.universe_size_ += static_cast<std::uint32_t>(cells[i].size());
  }
  p.cells_ = std::move(cells);
  return p;
}

Partition Partition::Unit(VertexId n) {
  if (n == 0) return {};
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  return FromCells({std::move(all)});
}

Partition Partition::Discrete(VertexId n) {
  std::vector<std::vector<VertexId>> cells(n);
  for (VertexId v = 0; v < n; ++v) cells[v] = {v};
  return FromCells(std::move(cells));
}

bool Partition::same_universe(const Partition& other) const {
  if (universe_size_ != other.universe_size_ || id_bound() != other.id_bound()) return false;
  for (VertexId v = 0; v < id_bound(); ++v) {
    if (contains(v) != other.contains(v)) return false;
  }
  return true;
}

Partition Partition::canonical() const {
  std::vector<std::vector<VertexId>> cells = cells_;
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return FromCells(std::move(cells));
}

std::uint32_t degree_to_cell(const Graph& g, VertexId u, std::span<const VertexId> cell) {
  if (u >= g.num_vertices()) throw InvalidArgument("vertex id out of range");
  auto adj = g.neighbors(u);
  std::uint32_t count = 0;
  if (adj.size() <= cell.size()) {
    for (VertexId w : adj) count += std::binary_search(cell.begin(), cell.end(), w);
  } else {
    for (VertexId w : cell) count += std::binary_search(adj.begin(), adj.end(), w);
  }
  return count;
}

std::vector<std::uint32_t> degree_vector(const Graph& g, VertexId u, const Partition& p) {
  if (u >= g.num_vertices()) throw InvalidArgument("vertex id out of range");
  std::vector<std::uint32_t> out(p.num_cells(), 0);
  for (VertexId w : g.neighbors(u)) {
    const std::uint32_t c = p.cell_of(w);
    if (c != kNoCell) ++out[c];
  }
  return out;
}

SplitResult split(const Partition& p, std::span<const std::uint32_t> f, Epsilon eps) {
  std::vector<std::vector<VertexId>> out;
  out.reserve(p.num_cells());
  SplitMap split_map(p.num_cells());
  std::vector<VertexId> sorted;
  for (std::uint32_t i = 0; i < p.num_cells(); ++i) {
    sorted.assign(p.cell(i).begin(), p.cell(i).end());
    std::sort(sorted.begin(), sorted.end(), [&](VertexId a, VertexId b) {
      return f[a] != f[b] ? f[a] < f[b] : a < b;
    });
    std::uint32_t group_first = f[sorted.front()];
    out.emplace_back();
    split_map[i].push_back(static_cast<std::uint32_t>(out.size() - 1));
    for (VertexId v : sorted) {
      if (f[v] - group_first > eps.value()) {
        group_first = f[v];
        out.emplace_back();
        split_map[i].push_back(static_cast<std::uint32_t>(out.size() - 1));
      }
      out.back().push_back(v);
    }
  }
  return {Partition::FromCells(std::move(out)), std::move(split_map)};
}

ActiveList update_active(const ActiveList& active, const SplitMap& split_map) {
  std::vector<std::uint8_t> was_active(split_map.size(), 0);
  ActiveList out;
  out.reserve(active.size());
  for (std::uint32_t idx : active) {
    was_active.at(idx) = 1;
    out.insert(out.end(), split_map[idx].begin(), split_map[idx].end());
  }
  for (std::uint32_t i = 0; i < split_map.size(); ++i) {
    if (split_map[i].size() > 1 && !was_active[i]) {
      out.insert(out.end(), split_map[i].begin(), split_map[i].end());
    }
  }
  return out;
}

OrderedRefinement::OrderedRefinement(VertexId n)
    : n_(n),
      elements_(n),
      position_(n),
      cell_start_of_(n, 0),
      cell_size_(n, 0),
      in_active_(n, 0) {
  std::iota(elements_.begin(), elements_.end(), 0);
  std::iota(position_.begin(), position_.end(), 0);
  if (n > 0) {
    cell_size_[0] = n;
    num_cells_ = 1;
    activate(0);
  }
}

void OrderedRefinement::activate(std::uint32_t start) {
  if (in_active_[start]) return;
  in_active_[start] = 1;
  ++active_count_;
  active_heap_.push_back(start);
  std::push_heap(active_heap_.begin(), active_heap_.end(), std::greater<>());
}

std::uint32_t OrderedRefinement::pop_active() {
  std::pop_heap(active_heap_.begin(), active_heap_.end(), std::greater<>());
  const std::uint32_t start = active_heap_.back();
  active_heap_.pop_back();
  in_active_[start] = 0;
  --active_count_;
  return start;
}

std::uint32_t OrderedRefinement::split(std::span<const VertexId> touched,
                                       std::span<const std::uint32_t> f, Epsilon eps) {
  scratch_.assign(touched.begin(), touched.end());
  std::sort(scratch_.begin(), scratch_.end(), [&](VertexId a, VertexId b) {
    if (cell_start_of_[a] != cell_start_of_[b]) return cell_start_of_[a] < cell_start_of_[b];
    return f[a] != f[b] ? f[a] < f[b] : a < b;
  });

  std::uint32_t fragmented = 0;
  std::vector<std::uint32_t> cuts;
  for (std::size_t group = 0; group < scratch_.size();) {
    const std::uint32_t start = cell_start_of_[scratch_[group]];
    std::size_t group_end = group;
    while (group_end < scratch_.size() && cell_start_of_[scratch_[group_end]] == start) {
      ++group_end;
    }
    const auto touched_count = static_cast<std::uint32_t>(group_end - group);
    const std::uint32_t size = cell_size_[start];
    const std::uint32_t zeros = size - touched_count;

    // In sorted order the cell is `zeros` vertices with f = 0 followed by the
    // touched vertices in ascending f. Cuts are offsets where a group begins.
    cuts.clear();
    std::uint32_t first_f = zeros > 0 ? 0 : f[scratch_[group]];
    for (std::uint32_t k = 0; k < touched_count; ++k) {
      const std::uint32_t fv = f[scratch_[group + k]];
      if (fv - first_f > eps.value()) {
        cuts.push_back(zeros + k);
        first_f = fv;
      }
    }
    if (!cuts.empty()) {
      ++fragmented;
      const std::uint32_t end = start + size;
      // Gather the touched vertices at the tail of the range, then lay them
      // out in sorted order.
      std::uint32_t place = end;
      for (std::size_t k = group; k < group_end; ++k) {
        const VertexId v = scratch_[k];
        --place;
        const std::uint32_t from = position_[v];
        const VertexId displaced = elements_[place];
        elements_[from] = displaced;
        position_[displaced] = from;
        elements_[place] = v;
        position_[v] = place;
      }
      for (std::uint32_t k = 0; k < touched_count; ++k) {
        const VertexId v = scratch_[group + k];
        elements_[place + k] = v;
        position_[v] = place + k;
      }

      activate(start);
      std::uint32_t frag_start = start;
      for (std::size_t c = 0; c <= cuts.size(); ++c) {
        const std::uint32_t frag_end = c < cuts.size() ? start + cuts[c] : end;
        cell_size_[frag_start] = frag_end - frag_start;
        if (frag_start != start) {
          for (std::uint32_t pos = frag_start; pos < frag_end; ++pos) {
            cell_start_of_[elements_[pos]] = frag_start;
          }
          activate(frag_start);
        }
        frag_start = frag_end;
      }
      num_cells_ += static_cast<std::uint32_t>(cuts.size());
    }
    group = group_end;
  }
  return fragmented;
}

Partition OrderedRefinement::to_partition() const {
  std::vector<std::vector<VertexId>> cells;
  cells.reserve(num_cells_);
  for (std::uint32_t pos = 0; pos < n_; pos += cell_size_[pos]) {
    auto c = cell_at(pos);
    cells.emplace_back(c.begin(), c.end());
  }
  return Partition::FromCells(std::move(cells));
}

ActiveList OrderedRefinement::active_indices() const {
  ActiveList out;
  std::uint32_t index = 0;
  for (std::uint32_t pos = 0; pos < n_; pos += cell_size_[pos], ++index) {
    if (in_active_[pos]) out.push_back(index);
  }
  return out;
}

Partition fast_eep(const Graph& g, Epsilon eps, RefinementTrace* trace) {
  const VertexId n = g.num_vertices();
  OrderedRefinement state(n);
  std::vector<std::uint32_t> f(n, 0);
  std::vector<VertexId> touched;
  std::vector<VertexId> active_cell;
  while (!state.done()) {
    const std::uint32_t start = state.pop_active();
    auto cell = state.cell_at(start);
    active_cell.assign(cell.begin(), cell.end());

    // f(u) = |N(u) ∩ c_a|, accumulated from the active cell's side.
    std::uint64_t work = 0;
    for (VertexId w : active_cell) {
      auto adj = g.neighbors(w);
      work += adj.size();
      for (VertexId u : adj) {
        if (f[u]++ == 0) touched.push_back(u);
      }
    }
    state.split(touched, f, eps);
    for (VertexId u : touched) f[u] = 0;
    touched.clear();

    if (trace) {
      trace->iterations.push_back({static_cast<std::uint32_t>(active_cell.size()),
                                   state.active_size(), state.num_cells(), work});
    }
  }
  return state.to_partition();
}

Partition equitable_oracle(const Graph& g) {
  const VertexId n = g.num_vertices();
  if (n == 0) return {};
  std::vector<std::uint32_t> cell_of(n, 0);
  std::uint32_t num_cells = 1;
  std::vector<std::uint32_t> signature;
  while (true) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    for (VertexId u = 0; u < n; ++u) {
      signature.assign(1, cell_of[u]);
      for (VertexId w : g.neighbors(u)) signature.push_back(cell_of[w]);
      std::sort(signature.begin() + 1, signature.end());
      auto [it, inserted] = ids.try_emplace(signature, static_cast<std::uint32_t>(ids.size()));
      next[u] = it->second;
    }
    const auto next_cells = static_cast<std::uint32_t>(ids.size());
    cell_of = std::move(next);
    if (next_cells == num_cells) break;
    num_cells = next_cells;
  }
  std::vector<std::vector<VertexId>> cells(num_cells);
  for (VertexId u = 0; u < n; ++u) cells[cell_of[u]].push_back(u);
  return Partition::FromCells(std::move(cells)).canonical();
}

Partition degree_partition(const Graph& g) {
  std::map<std::uint32_t, std::vector<VertexId>> by_degree;
  for (VertexId u = 0; u < g.num_vertices(); ++u) by_degree[g.degree(u)].push_back(u);
  std::vector<std::vector<VertexId>> cells;
  cells.reserve(by_degree.size());
  for (auto& [deg, members] : by_degree) cells.push_back(std::move(members));
  return Partition::FromCells(std::move(cells));
}

std::uint32_t max_degree_spread(const Graph& g, const Partition& p) {
  struct Range {
    std::uint32_t lo, hi, members;
  };
  std::vector<std::uint32_t> count(p.num_cells(), 0);
  std::vector<std::uint32_t> hit;
  std::unordered_map<std::uint32_t, Range> ranges;
  std::uint32_t worst = 0;
  for (std::uint32_t i = 0; i < p.num_cells(); ++i) {
    ranges.clear();
    for (VertexId u : p.cell(i)) {
      if (u >= g.num_vertices()) throw UniverseMismatch("partition covers a vertex not in the graph");
      for (VertexId w : g.neighbors(u)) {
        const std::uint32_t c = p.cell_of(w);
        if (c == kNoCell) throw UniverseMismatch("graph vertex missing from partition");
        if (count[c]++ == 0) hit.push_back(c);
      }
      for (std::uint32_t c : hit) {
        auto [it, inserted] = ranges.try_emplace(c, Range{count[c], count[c], 0});
        it->second.lo = std::min(it->second.lo, count[c]);
        it->second.hi = std::max(it->second.hi, count[c]);
        ++it->second.members;
        count[c] = 0;
      }
      hit.clear();
    }
    const auto size = static_cast<std::uint32_t>(p.cell(i).size());
    for (const auto& [c, r] : ranges) {
      const std::uint32_t lo = r.members < size ? 0 : r.lo;
      worst = std::max(worst, r.hi - lo);
    }
  }
  return worst;
}

void write_partition(std::ostream& out, const Partition& p, const PartitionFileHeader& header) {
  out << "# posa-partition n=" << header.n;
  if (header.epsilon) out << " epsilon=" << *header.epsilon;
  if (!header.algorithm.empty()) out << " algorithm=" << header.algorithm;
  if (!header.graph_hash.empty()) out << " graph=" << header.graph_hash;
  out << " cells=" << p.num_cells() << '\n';
  for (std::uint32_t i = 0; i < p.num_cells(); ++i) {
    out << i << '\t';
    bool first = true;
    for (VertexId v : p.cell(i)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::size_t line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(std::string("bad ") + what + " `" + std::string(text) + "`", line_no);
  }
  return value;
}

// Returns the declared cell count.
std::optional<std::uint32_t> parse_header(std::string_view line, PartitionFileHeader& header,
                                          std::size_t line_no) {
  std::optional<std::uint32_t> cells;
  bool saw_n = false;
  std::istringstream fields{std::string(line)};
  std::string token;
  while (fields >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    std::string_view key(token.data(), eq);
    std::string_view value(token.data() + eq + 1, token.size() - eq - 1);
    if (key == "n") {
      header.n = parse_number<VertexId>(value, line_no, "n");
      saw_n = true;
    } else if (key == "epsilon") {
      header.epsilon = parse_number<std::uint32_t>(value, line_no, "epsilon");
    } else if (key == "algorithm") {
      header.algorithm = value;
    } else if (key == "graph") {
      header.graph_hash = value;
    } else if (key == "cells") {
      cells = parse_number<std::uint32_t>(value, line_no, "cells");
    }
  }
  if (!saw_n) throw ParseError("partition header lacks n=", line_no);
  return cells;
}

}  // namespace

PartitionFile read_partition(std::istream& in) {
  PartitionFile file;
  std::vector<std::vector<VertexId>> cells;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::optional<std::uint32_t> declared_cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!saw_header && line.find("posa-partition") != std::string::npos) {
        declared_cells = parse_header(line, file.header, line_no);
        saw_header = true;
      }
      continue;
    }
    if (!saw_header) throw ParseError("missing `# posa-partition` header", line_no);
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected `index\\tmembers`", line_no);
    const auto index =
        parse_number<std::uint32_t>(std::string_view(line).substr(0, tab), line_no, "cell index");
    if (index != cells.size()) throw ParseError("cell indices must count up from 0", line_no);
    std::vector<VertexId> members;
    std::istringstream rest(line.substr(tab + 1));
    std::string token;
    while (rest >> token) members.push_back(parse_number<VertexId>(token, line_no, "vertex id"));
    if (members.empty()) throw ParseError("empty cell", line_no);
    cells.push_back(std::move(members));
  }
  try {
    file.partition = Partition::FromCells(std::move(cells));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
  if (!saw_header) throw ParseError("missing `# posa-partition` header", line_no);
  if (file.partition.universe_size() != file.header.n) {
    throw ParseError("cells cover " + std::to_string(file.partition.universe_size()) +
                         " vertices but the header says n=" + std::to_string(file.header.n),
                     line_no);
  }
  if (declared_cells && *declared_cells != file.partition.num_cells()) {
    throw ParseError("header says cells=" + std::to_string(*declared_cells) + " but found " +
                         std::to_string(file.partition.num_cells()),
                     line_no);
  }
  return file;
}

}  // namespace posa
