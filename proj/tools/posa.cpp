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

// posa: command-line driver. Every command can write a run manifest (JSON)
// recording the resolved options, input hashes, seed, version and timings.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage or validation error,
// 3 malformed input, 4 integrity violation, 5 I/O failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posa/centrality.hpp"
#include "posa/coevolution.hpp"
#include "posa/errors.hpp"
#include "posa/generator.hpp"
#include "posa/graph.hpp"
#include "posa/hash.hpp"
#include "posa/parallel.hpp"
#include "posa/partition.hpp"
#include "posa/similarity.hpp"

#ifndef POSA_VERSION
#define POSA_VERSION "unknown"
#endif

namespace posa::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

enum ExitCode { kOk = 0, kUnexpected = 1, kUsage = 2, kParse = 3, kIntegrity = 4, kIo = 5 };

struct Globals {
  std::uint32_t workers = 1;
  std::uint64_t seed = 1;
  std::string manifest_out;
};

// Collects everything the manifest needs while a command runs.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  void input(const std::string& path, const std::string& bytes) {
    Fnv1a h;
    h.add(bytes);
    inputs_.push_back({{"path", path}, {"fnv1a64", hex64(h.value())}, {"bytes", bytes.size()}});
  }
  void output(const std::string& path) { outputs_.push_back(path); }

  // Times `fn` under `phase`.
  template <typename Fn>
  auto timed(const std::string& phase, Fn&& fn) {
    const auto t0 = Clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      timings_[phase] = ms_since(t0);
    } else {
      auto result = fn();
      timings_[phase] = ms_since(t0);
      return result;
    }
  }

  json& stats() { return stats_; }

  json to_json(const CLI::App& sub, const Globals& g, const std::vector<std::string>& argv) const {
    json options = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
      const std::string key = opt->get_name();
      if (opt->get_expected_max() == 0) {
        options[key] = opt->count() > 0;
      } else if (opt->count() > 0) {
        options[key] = opt->results().size() == 1 ? json(opt->results()[0]) : json(opt->results());
      } else if (!opt->get_default_str().empty()) {
        options[key] = opt->get_default_str();
      }
    }
    json timings = json::object();
    for (const auto& [k, v] : timings_) timings[k] = v;
    timings["total_ms"] = ms_since(start_);
    return {{"tool", "posa"},
            {"version", POSA_VERSION},
            {"command", command_},
            {"argv", argv},
            {"workers", g.workers},
            {"seed", g.seed},
            {"options", options},
            {"inputs", inputs_},
            {"outputs", outputs_},
            {"stats", stats_},
            {"timings", timings}};
  }

 private:
  static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }

  std::string command_;
  Clock::time_point start_ = Clock::now();
  json inputs_ = json::array();
  json outputs_ = json::array();
  json stats_ = json::object();
  std::map<std::string, double> timings_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open `" + path + "` for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading `" + path + "`");
  return buf.str();
}

std::string read_input(const std::string& path, RunManifest& m) {
  std::string bytes = slurp(path);
  m.input(path, bytes);
  return bytes;
}

// Opens `path` for writing, or stdout for "-".
class Output {
 public:
  Output(const std::string& path, RunManifest& m) : path_(path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open `" + path + "` for writing");
    m.output(path);
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
  void close() {
    stream().flush();
    if (!stream()) throw IoError("error writing `" + path_ + "`");
    if (file_.is_open()) file_.close();
  }

 private:
  std::string path_;
  std::ofstream file_;
};

void write_text(const std::string& path, const std::string& text, RunManifest& m) {
  Output out(path, m);
  out.stream() << text;
  out.close();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Measure> parse_measures(const std::string& text) {
  std::vector<Measure> out;
  for (const auto& name : split_list(text)) {
    auto m = parse_measure(name);
    if (!m) throw InvalidArgument("unknown measure `" + name + "`");
    out.push_back(*m);
  }
  if (out.empty()) throw InvalidArgument("no measures given");
  return out;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- partition ------------------------------------------------------------

struct PartitionArgs {
  std::string input;
  std::string method = "eep";
  long long epsilon = 0;
  std::string output;
  std::string labels_out;
  std::uint64_t progress = 0;
};

PartitionMethod method_from(const std::string& name, long long epsilon) {
  const Epsilon eps = Epsilon::FromSigned(epsilon);
  if (name == "eep") return PartitionMethod::EpsilonEquitable(eps.value());
  if (name == "ep" || name == "ep-oracle") return PartitionMethod::Equitable();
  if (name == "degree") return PartitionMethod::Degree();
  throw InvalidArgument("unknown method `" + name + "` (expected eep, ep or degree)");
}

void run_partition(const PartitionArgs& a, const Globals& g, RunManifest& m) {
  const PartitionMethod method = method_from(a.method, a.epsilon);
  const std::string bytes = read_input(a.input, m);
  std::istringstream in(bytes);
  LoadedGraph lg = m.timed("load_ms", [&] { return load_edge_list(in); });
  m.stats()["vertices"] = lg.graph.num_vertices();
  m.stats()["edges"] = lg.graph.num_edges();
  m.stats()["self_loops_dropped"] = lg.stats.self_loops;
  m.stats()["duplicates_dropped"] = lg.stats.duplicates;

  Partition p;
  if (method.kind == PartitionMethod::Kind::kEpsilonEquitable) {
    EngineConfig cfg{.workers = g.workers,
                     .progress_interval = a.progress,
                     .progress = a.progress ? &std::cerr : nullptr};
    EngineRun run =
        m.timed("refine_ms", [&] { return run_parallel_eep(lg.graph, Epsilon(method.epsilon), cfg); });
    p = std::move(run.partition);
    m.stats()["iterations"] = run.trace.iterations.size();
    json iters = json::array();
    for (const auto& it : run.trace.iterations) {
      iters.push_back({it.active_cell_size, it.active_after, it.cells_after, it.work});
    }
    m.stats()["iteration_fields"] = {"active_cell_size", "active_after", "cells_after", "work"};
    m.stats()["per_iteration"] = std::move(iters);
  } else {
    p = m.timed("refine_ms", [&] { return compute_partition(lg.graph, method, g.workers); });
  }
  m.stats()["cells"] = p.num_cells();
  m.stats()["max_degree_spread"] = max_degree_spread(lg.graph, p);

  PartitionFileHeader header{lg.graph.num_vertices(),
                             method.kind == PartitionMethod::Kind::kEpsilonEquitable
                                 ? std::optional<std::uint32_t>(method.epsilon)
                                 : std::nullopt,
                             method.name(), hex64(lg.graph.fingerprint())};
  Output out(a.output, m);
  write_partition(out.stream(), p, header);
  out.close();
  if (!a.labels_out.empty()) {
    Output labels(a.labels_out, m);
    lg.labels.write(labels.stream());
    labels.close();
  }
}

// ---- similarity -----------------------------------------------------------

struct SimilarityArgs {
  std::string first;
  std::string second;
  std::string labels;
  std::string format = "text";
};

void run_similarity(const SimilarityArgs& a, const Globals&, RunManifest& m) {
  auto load = [&](const std::string& path) {
    std::istringstream in(read_input(path, m));
    try {
      return read_partition(in);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what(), 0);
    }
  };
  const PartitionFile p1 = load(a.first);
  const PartitionFile p2 = load(a.second);
  if (!a.labels.empty()) {
    std::istringstream in(read_input(a.labels, m));
    const VertexLabelMap labels = VertexLabelMap::read(in);
    for (const PartitionFile* f : {&p1, &p2}) {
      if (f->partition.id_bound() > labels.size()) {
        throw UniverseMismatch("partition uses vertex id " +
                               std::to_string(f->partition.id_bound() - 1) +
                               " but the label map has only " + std::to_string(labels.size()) +
                               " labels");
      }
    }
  }
  if (!p1.partition.same_universe(p2.partition)) {
    throw UniverseMismatch("the two partitions cover different vertex sets (" +
                           std::to_string(p1.partition.universe_size()) + " vs " +
                           std::to_string(p2.partition.universe_size()) + " vertices)");
  }
  const SimilarityScore s = m.timed("score_ms", [&] {
    return similarity_score(p1.partition, p2.partition);
  });
  const json record{{"value", s.value},
                    {"first_cells", s.first_cells},
                    {"second_cells", s.second_cells},
                    {"intersection_cells", s.intersection_cells},
                    {"universe", s.universe},
                    {"pairwise_form", s.pairwise_form},
                    {"harmonic_form", s.harmonic_form},
                    {"degenerate", s.degenerate}};
  m.stats() = record;
  if (a.format == "json") {
    std::cout << record.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : record.items()) {
      std::cout << k << '=' << (v.is_number_float() ? fmt_double(v.get<double>()) : v.dump())
                << '\n';
    }
  }
}

// ---- centrality -----------------------------------------------------------

struct CentralityArgs {
  std::string input;
  std::string measures = "degree,betweenness,triangles,shapley";
  std::string output = "-";
};

void run_centrality(const CentralityArgs& a, const Globals& g, RunManifest& m) {
  const std::vector<Measure> measures = parse_measures(a.measures);
  std::istringstream in(read_input(a.input, m));
  LoadedGraph lg = m.timed("load_ms", [&] { return load_edge_list(in); });
  std::vector<CentralityVector> scores;
  for (Measure x : measures) {
    scores.push_back(m.timed(std::string(measure_name(x)) + "_ms",
                             [&] { return compute_centrality(lg.graph, x, g.workers); }));
  }
  Output out(a.output, m);
  out.stream() << "label";
  for (Measure x : measures) out.stream() << ',' << measure_name(x);
  out.stream() << '\n';
  for (VertexId v = 0; v < lg.graph.num_vertices(); ++v) {
    out.stream() << lg.labels.label(v);
    for (const auto& s : scores) out.stream() << ',' << fmt_double(s.scores[v]);
    out.stream() << '\n';
  }
  out.close();
  m.stats()["vertices"] = lg.graph.num_vertices();
}

// ---- snapshots / coevolve shared input -------------------------------------

struct LogArgs {
  std::string log;
  std::string cutoffs;
  bool directed = false;
  bool reciprocal = false;
};

SnapshotSeries load_series(const LogArgs& a, RunManifest& m) {
  if (a.reciprocal && !a.directed) {
    throw InvalidArgument("--reciprocal needs a directed log (--directed)");
  }
  std::vector<Timestamp> cutoffs;
  for (const auto& c : split_list(a.cutoffs)) cutoffs.push_back(parse_timestamp(c));
  const SnapshotSpec spec(std::move(cutoffs));
  std::istringstream in(read_input(a.log, m));
  TemporalEdgeLog log = m.timed("load_ms", [&] { return read_temporal_log(in, a.directed); });
  if (a.reciprocal) {
    log = m.timed("reciprocal_ms", [&] { return reciprocal_projection(log); });
  }
  SnapshotSeries s = m.timed("snapshot_ms", [&] { return build_snapshots(log, spec); });
  json shapes = json::array();
  for (std::size_t i = 0; i < s.graphs.size(); ++i) {
    shapes.push_back({{"cutoff", spec.cutoffs()[i]},
                      {"vertices", s.graphs[i].num_vertices()},
                      {"edges", s.graphs[i].num_edges()}});
  }
  m.stats()["events"] = log.events.size();
  m.stats()["snapshots"] = std::move(shapes);
  return s;
}

struct SnapshotsArgs {
  LogArgs log;
  std::string out_dir;
};

void run_snapshots(const SnapshotsArgs& a, const Globals&, RunManifest& m) {
  const SnapshotSeries s = load_series(a.log, m);
  const std::vector<Timestamp> cutoffs = [&] {
    std::vector<Timestamp> c;
    for (const auto& x : split_list(a.log.cutoffs)) c.push_back(parse_timestamp(x));
    return c;
  }();
  if (!a.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw IoError("cannot create `" + a.out_dir + "`: " + ec.message());
    std::ostringstream labels;
    s.labels.write(labels);
    write_text(a.out_dir + "/labels.tsv", labels.str(), m);
    for (std::size_t i = 0; i < s.graphs.size(); ++i) {
      std::ostringstream edges;
      for (auto [u, v] : s.graphs[i].edges()) {
        edges << s.labels.label(u) << ' ' << s.labels.label(v) << '\n';
      }
      write_text(a.out_dir + "/snapshot_" + std::to_string(i) + ".edges", edges.str(), m);
    }
  }
  for (std::size_t i = 0; i < s.graphs.size(); ++i) {
    std::cout << "snapshot=" << i << " cutoff=" << cutoffs[i]
              << " vertices=" << s.graphs[i].num_vertices()
              << " edges=" << s.graphs[i].num_edges() << '\n';
  }
}

// ---- coevolve -------------------------------------------------------------

struct CoevolveArgs {
  LogArgs log;
  std::size_t earlier = 0;
  std::size_t later = 1;
  std::string method = "eep:0";
  std::string measures = "degree,betweenness,triangles,shapley";
  std::string bin_edges;
  std::uint32_t bin_count = 20;
  std::uint64_t cap = 1000000;
  bool all_pairs = false;
  std::string report = "-";
  std::string csv;
  std::string overlap_methods;
  std::string overlap_out;
};

void run_coevolve(const CoevolveArgs& a, const Globals& g, RunManifest& m) {
  const PartitionMethod method = PartitionMethod::Parse(a.method);
  const std::vector<Measure> measures = parse_measures(a.measures);
  std::optional<Bins> bins;
  if (a.bin_edges.empty()) {
    bins = Bins::Integer(a.bin_count);
  } else {
    std::vector<double> edges;
    for (const auto& e : split_list(a.bin_edges)) {
      try {
        std::size_t used = 0;
        edges.push_back(std::stod(e, &used));
        if (used != e.size()) throw std::invalid_argument(e);
      } catch (const std::logic_error&) {
        throw InvalidArgument("bad bin edge `" + e + "`");
      }
    }
    bins.emplace(std::move(edges));
  }

  const SnapshotSeries s = load_series(a.log, m);
  if (a.earlier >= a.later || a.later >= s.graphs.size()) {
    throw InvalidArgument("need --earlier < --later < number of cutoffs (" +
                          std::to_string(s.graphs.size()) + ")");
  }
  const Graph& early = s.graphs[a.earlier];
  const Graph& late = s.graphs[a.later];
  const Partition positions =
      m.timed("partition_ms", [&] { return compute_partition(early, method, g.workers); });
  std::vector<CentralityVector> before, after;
  m.timed("centrality_ms", [&] {
    for (Measure x : measures) {
      before.push_back(compute_centrality(early, x, g.workers));
      after.push_back(compute_centrality(late, x, g.workers));
    }
  });
  CoevolutionReport r = m.timed("histogram_ms", [&] {
    return coevolution_report(positions, before, after, *bins,
                              a.all_pairs ? std::nullopt : std::optional(a.cap), g.seed,
                              g.workers);
  });
  r.earlier = a.earlier;
  r.later = a.later;
  r.method = method;

  json hist = json::array();
  for (const auto& h : r.histograms) {
    hist.push_back({{"measure", measure_name(h.measure)},
                    {"counts", h.counts},
                    {"percentages", h.percentages},
                    {"total", h.total}});
  }
  const json report{{"earlier", r.earlier},
                    {"later", r.later},
                    {"method", method.name()},
                    {"epsilon", method.kind == PartitionMethod::Kind::kEpsilonEquitable
                                    ? json(method.epsilon)
                                    : json(nullptr)},
                    {"positions", r.positions},
                    {"bin_edges", r.bin_edges},
                    {"overflow_bin", true},
                    {"sampling",
                     {{"population", r.population},
                      {"pairs", r.pair_count},
                      {"sampled", r.sampled},
                      {"cap", a.all_pairs ? json(nullptr) : json(a.cap)},
                      {"seed", r.seed}}},
                    {"histograms", hist}};
  m.stats()["positions"] = r.positions;
  m.stats()["pairs"] = r.pair_count;
  m.stats()["sampled"] = r.sampled;
  {
    Output out(a.report, m);
    out.stream() << report.dump(2) << '\n';
    out.close();
  }
  if (!a.csv.empty()) {
    Output out(a.csv, m);
    out.stream() << "bin_lo,bin_hi,measure,count,pct\n";
    for (const auto& h : r.histograms) {
      for (std::size_t k = 0; k < h.counts.size(); ++k) {
        out.stream() << fmt_double(r.bin_edges[k]) << ','
                     << (k + 1 < r.bin_edges.size() ? fmt_double(r.bin_edges[k + 1]) : "inf")
                     << ',' << measure_name(h.measure) << ',' << h.counts[k] << ','
                     << fmt_double(h.percentages[k]) << '\n';
      }
    }
    out.close();
  }
  if (!a.overlap_methods.empty()) {
    std::vector<PartitionMethod> methods;
    for (const auto& name : split_list(a.overlap_methods)) {
      methods.push_back(PartitionMethod::Parse(name));
    }
    const OverlapMatrix om =
        m.timed("overlap_ms", [&] { return overlap_matrix(s.graphs, methods, g.workers); });
    Output out(a.overlap_out, m);
    out.stream() << "earlier,later,method,score,percent,first_cells,second_cells,"
                    "intersection_cells,universe\n";
    for (const auto& e : om.entries) {
      out.stream() << e.earlier << ',' << e.later << ',' << e.method.name() << ','
                   << fmt_double(e.score.value) << ',' << fmt_double(e.percent) << ','
                   << e.score.first_cells << ',' << e.score.second_cells << ','
                   << e.score.intersection_cells << ',' << e.score.universe << '\n';
    }
    out.close();
  }
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string model = "powerlaw";
  VertexId n = 1000;
  double gamma = 2.5;
  double p = 0.01;
  std::uint32_t edges_per_vertex = 2;
  std::string output = "-";
};

void run_gen(const GenArgs& a, const Globals& g, RunManifest& m) {
  Output out(a.output, m);
  if (a.model == "powerlaw") {
    GeneratedGraph gg =
        m.timed("generate_ms", [&] { return generate_power_law({a.n, a.gamma, g.seed}); });
    for (auto [u, v] : gg.graph.edges()) out.stream() << u << ' ' << v << '\n';
    m.stats()["edges"] = gg.graph.num_edges();
    m.stats()["erased_self_loops"] = gg.erased_self_loops;
    m.stats()["erased_multi_edges"] = gg.erased_multi_edges;
    m.stats()["fingerprint"] = hex64(gg.graph.fingerprint());
  } else if (a.model == "er") {
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw InvalidArgument("--p must lie in [0, 1]");
    Graph gr = m.timed("generate_ms", [&] { return generate_erdos_renyi(a.n, a.p, g.seed); });
    for (auto [u, v] : gr.edges()) out.stream() << u << ' ' << v << '\n';
    m.stats()["edges"] = gr.num_edges();
    m.stats()["fingerprint"] = hex64(gr.fingerprint());
  } else if (a.model == "pa") {
    TemporalEdgeLog log = m.timed("generate_ms", [&] {
      return generate_preferential_attachment_log({a.n, a.edges_per_vertex, g.seed});
    });
    for (const auto& e : log.events) {
      out.stream() << e.source << ' ' << e.target << ' ' << e.time << '\n';
    }
    m.stats()["events"] = log.events.size();
  } else {
    throw InvalidArgument("unknown model `" + a.model + "` (expected powerlaw, er or pa)");
  }
  out.close();
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "25000,50000,100000";
  std::string gammas = "2.5,2.9";
  std::string epsilons = "2,5,8";
  std::uint32_t repeats = 1;
  std::string output = "-";
};

template <typename T>
std::vector<T> parse_numbers(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) {
    std::istringstream in(item);
    T value{};
    if (!(in >> value) || !in.eof()) {
      throw InvalidArgument(std::string("bad ") + what + " `" + item + "`");
    }
    out.push_back(value);
  }
  if (out.empty()) throw InvalidArgument(std::string("empty ") + what + " list");
  return out;
}

void run_bench(const BenchArgs& a, const Globals& g, RunManifest& m) {
  const auto sizes = parse_numbers<VertexId>(a.sizes, "size");
  const auto gammas = parse_numbers<double>(a.gammas, "gamma");
  std::vector<std::uint32_t> eps;
  for (long long e : parse_numbers<long long>(a.epsilons, "epsilon")) {
    eps.push_back(Epsilon::FromSigned(e).value());
  }
  if (a.repeats < 1) throw InvalidArgument("--repeats must be at least 1");

  Output out(a.output, m);
  out.stream() << "n,gamma,epsilon,workers,seed,repeat,edges,iterations,cells,ms\n";
  std::uint64_t rows = 0;
  for (VertexId n : sizes) {
    for (double gamma : gammas) {
      const Graph graph = generate_power_law({n, gamma, g.seed}).graph;
      for (std::uint32_t e : eps) {
        for (std::uint32_t r = 0; r < a.repeats; ++r) {
          EngineRun run = run_parallel_eep(graph, Epsilon(e), {.workers = g.workers});
          out.stream() << n << ',' << gamma << ',' << e << ',' << g.workers << ',' << g.seed
                       << ',' << r << ',' << graph.num_edges() << ','
                       << run.trace.iterations.size() << ',' << run.partition.num_cells() << ','
                       << fmt_double(run.elapsed_ms) << '\n';
          out.stream().flush();
          ++rows;
        }
      }
    }
  }
  out.close();
  m.stats()["rows"] = rows;
}

// ---- driver ---------------------------------------------------------------

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "posa: " << kind << ": " << e.what() << '\n';
  return code;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Positional analysis of large graphs: epsilon-equitable partitions, "
               "partition similarity and co-evolution of same-position vertices."};
  app.set_version_flag("--version", std::string(POSA_VERSION));
  app.require_subcommand(1);
  // Global flags are accepted before or after the command name.
  app.fallthrough();

  Globals g;
  app.add_option("--workers", g.workers, "Shard workers for parallel operations")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Root seed for generation and pair sampling")
      ->capture_default_str();
  app.add_option("--manifest-out", g.manifest_out, "Write the run manifest (JSON) here");

  PartitionArgs pa;
  CLI::App* partition = app.add_subcommand("partition", "Partition the vertices of a graph");
  partition->add_option("--input,-i", pa.input, "Edge list")->required();
  partition->add_option("--method", pa.method, "eep, ep (exact equitable) or degree")
      ->capture_default_str();
  partition->add_option("--epsilon,-e", pa.epsilon, "Tolerance for eep")->capture_default_str();
  partition->add_option("--output,-o", pa.output, "Partition file")->required();
  partition->add_option("--labels-out", pa.labels_out, "Write the label map here");
  partition->add_option("--progress", pa.progress,
                        "Log every N-th iteration to stderr (0 = off)")
      ->capture_default_str();

  SimilarityArgs sa;
  CLI::App* similarity = app.add_subcommand("similarity", "Score two partitions");
  similarity->add_option("first", sa.first, "First partition file")->required();
  similarity->add_option("second", sa.second, "Second partition file")->required();
  similarity->add_option("--labels", sa.labels, "Shared label map");
  similarity->add_option("--format", sa.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  CentralityArgs ca;
  CLI::App* centrality = app.add_subcommand("centrality", "Per-vertex centrality scores (CSV)");
  centrality->add_option("--input,-i", ca.input, "Edge list")->required();
  centrality->add_option("--measures", ca.measures, "Comma-separated measures")
      ->capture_default_str();
  centrality->add_option("--output,-o", ca.output, "CSV file, - for stdout")
      ->capture_default_str();

  auto add_log_options = [](CLI::App* sub, LogArgs& l) {
    sub->add_option("--log", l.log, "Temporal edge list: source target time")->required();
    sub->add_option("--cutoffs", l.cutoffs,
                    "Comma-separated cutoffs, unix seconds or YYYY-MM-DD[THH:MM:SSZ]")
        ->required();
    sub->add_flag("--directed", l.directed, "Events are directed");
    sub->add_flag("--reciprocal", l.reciprocal,
                  "Keep only reciprocated links, stamped at reciprocation time");
  };

  SnapshotsArgs sn;
  CLI::App* snapshots = app.add_subcommand("snapshots", "Cut a temporal log into snapshots");
  add_log_options(snapshots, sn.log);
  snapshots->add_option("--out-dir", sn.out_dir, "Write labels.tsv and snapshot_<i>.edges");

  CoevolveArgs co;
  CLI::App* coevolve =
      app.add_subcommand("coevolve", "Pair-difference histograms for same-position pairs");
  add_log_options(coevolve, co.log);
  coevolve->add_option("--earlier", co.earlier, "Earlier snapshot index")->capture_default_str();
  coevolve->add_option("--later", co.later, "Later snapshot index")->capture_default_str();
  coevolve->add_option("--method", co.method, "eep:<eps>, ep or degree")->capture_default_str();
  coevolve->add_option("--measures", co.measures, "Comma-separated measures")
      ->capture_default_str();
  coevolve->add_option("--bin-edges", co.bin_edges,
                       "Comma-separated bin edges starting at 0 (overrides --bin-count)");
  coevolve->add_option("--bin-count", co.bin_count, "Unit-width bins before the overflow bin")
      ->capture_default_str();
  coevolve->add_option("--cap", co.cap, "Sample at most this many pairs")->capture_default_str();
  coevolve->add_flag("--all-pairs", co.all_pairs, "Enumerate every pair, ignoring --cap");
  coevolve->add_option("--report", co.report, "JSON report, - for stdout")->capture_default_str();
  coevolve->add_option("--csv", co.csv, "Flat CSV: bin_lo,bin_hi,measure,count,pct");
  CLI::Option* overlap_out =
      coevolve->add_option("--overlap-out", co.overlap_out, "Overlap CSV, - for stdout");
  coevolve
      ->add_option("--overlap-methods", co.overlap_methods,
                   "Also score every snapshot pair under these methods")
      ->needs(overlap_out);

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic graph or temporal log");
  gen->add_option("--model", ga.model, "powerlaw, er, or pa (temporal log)")
      ->capture_default_str();
  gen->add_option("--n", ga.n, "Vertices")->capture_default_str();
  gen->add_option("--gamma", ga.gamma, "Power-law exponent")->capture_default_str();
  gen->add_option("--p", ga.p, "Edge probability (er)")->capture_default_str();
  gen->add_option("--edges-per-vertex", ga.edges_per_vertex, "Edges per arrival (pa)")
      ->capture_default_str();
  gen->add_option("--output,-o", ga.output, "Output file, - for stdout")->capture_default_str();

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Time eep refinement on generated graphs (CSV)");
  bench->add_option("--sizes", ba.sizes, "Comma-separated vertex counts")->capture_default_str();
  bench->add_option("--gammas", ba.gammas, "Comma-separated exponents")->capture_default_str();
  bench->add_option("--epsilons", ba.epsilons, "Comma-separated tolerances")
      ->capture_default_str();
  bench->add_option("--repeats", ba.repeats, "Runs per grid cell")->capture_default_str();
  bench->add_option("--output,-o", ba.output, "CSV file, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  RunManifest manifest(sub->get_name());
  try {
    if (sub == partition) run_partition(pa, g, manifest);
    if (sub == similarity) run_similarity(sa, g, manifest);
    if (sub == centrality) run_centrality(ca, g, manifest);
    if (sub == snapshots) run_snapshots(sn, g, manifest);
    if (sub == coevolve) run_coevolve(co, g, manifest);
    if (sub == gen) run_gen(ga, g, manifest);
    if (sub == bench) run_bench(ba, g, manifest);

    if (!g.manifest_out.empty()) {
      const json j = manifest.to_json(*sub, g, std::vector<std::string>(argv, argv + argc));
      std::ofstream out(g.manifest_out, std::ios::trunc);
      out << j.dump(2) << '\n';
      if (!out) throw IoError("cannot write manifest `" + g.manifest_out + "`");
    }
  } catch (const ParseError& e) {
    return report("parse error", e, kParse);
  } catch (const InvalidArgument& e) {
    return report("invalid argument", e, kUsage);
  } catch (const IntegrityError& e) {
    return report("integrity error", e, kIntegrity);
  } catch (const IoError& e) {
    return report("i/o error", e, kIo);
  } catch (const std::exception& e) {
    return report("error", e, kUnexpected);
  }
  return kOk;
}

}  // namespace
}  // namespace posa::cli

int main(int argc, char** argv) { return posa::cli::main_impl(argc, argv); }
