#include "dsd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <tuple>
#include <unordered_map>

namespace dsd {
namespace {

void check_range(std::size_t n, const Edge& e) {
  if (e.u >= n || e.v >= n) {
    throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                     ") out of range for n = " + std::to_string(n));
  }
}

std::vector<std::int64_t> identity_labels(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::int64_t{0});
  return labels;
}

// Builds CSR offsets/targets from (source, target) pairs already sorted by source.
void build_csr(std::size_t n, std::span<const Edge> sorted, bool by_head, std::vector<std::size_t>& offsets,
               std::vector<VertexId>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : sorted) ++offsets[(by_head ? e.v : e.u) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(sorted.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : sorted) {
    if (by_head) {
      targets[cursor[e.v]++] = e.u;
    } else {
      targets[cursor[e.u]++] = e.v;
    }
  }
}

struct RawEdges {
  std::vector<Edge> edges;
  std::vector<std::int64_t> labels;
};

bool parse_int(std::string_view token, std::int64_t& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

RawEdges read_raw(std::istream& in) {
  RawEdges raw;
  std::unordered_map<std::int64_t, VertexId> ids;
  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<VertexId>(raw.labels.size()));
    if (inserted) raw.labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() && std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
      std::size_t start = pos;
      while (pos < rest.size() && !std::isspace(static_cast<unsigned char>(rest[pos]))) ++pos;
      if (pos > start) tokens.push_back(rest.substr(start, pos - start));
    }
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two integer tokens, got " + std::to_string(tokens.size()));
    }
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_int(tokens[0], a) || !parse_int(tokens[1], b)) {
      throw ParseError(line_no, "non-integer vertex label");
    }
    VertexId u = intern(a);
    VertexId v = intern(b);
    raw.edges.push_back({u, v});
  }
  if (raw.edges.empty()) throw GraphError("edge list contains no edges");
  return raw;
}

}  // namespace

UndirectedGraph::UndirectedGraph(std::size_t n, std::span<const Edge> edges) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    check_range(n, e);
    if (e.u == e.v) continue;
    edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<Edge> both;
  both.reserve(2 * edges_.size());
  for (const Edge& e : edges_) {
    both.push_back(e);
    both.push_back({e.v, e.u});
  }
  std::sort(both.begin(), both.end());
  build_csr(n, both, false, offsets_, adjacency_);
  for (VertexId v = 0; v < n; ++v) max_degree_ = std::max(max_degree_, degree(v));
  labels_ = identity_labels(n);
}

void UndirectedGraph::set_labels(std::vector<std::int64_t> labels) {
  if (labels.size() != num_vertices()) throw GraphError("label count does not match vertex count");
  labels_ = std::move(labels);
}

DirectedGraph::DirectedGraph(std::size_t n, std::span<const Edge> arcs) {
  arcs_.reserve(arcs.size());
  for (const Edge& e : arcs) {
    check_range(n, e);
    if (e.u != e.v) arcs_.push_back(e);
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  build_csr(n, arcs_, false, out_offsets_, out_adj_);

  std::vector<Edge> by_head(arcs_);
  std::sort(by_head.begin(), by_head.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.v, a.u) < std::tie(b.v, b.u);
  });
  build_csr(n, by_head, true, in_offsets_, in_adj_);
  for (VertexId v = 0; v < n; ++v) {
    max_out_ = std::max(max_out_, out_degree(v));
    max_in_ = std::max(max_in_, in_degree(v));
  }
  labels_ = identity_labels(n);
}

void DirectedGraph::set_labels(std::vector<std::int64_t> labels) {
  if (labels.size() != num_vertices()) throw GraphError("label count does not match vertex count");
  labels_ = std::move(labels);
}

DirectedGraph DirectedGraph::transposed() const {
  std::vector<Edge> reversed;
  reversed.reserve(arcs_.size());
  for (const Edge& e : arcs_) reversed.push_back({e.v, e.u});
  DirectedGraph t(num_vertices(), reversed);
  t.labels_ = labels_;
  return t;
}

LoadedGraph<UndirectedGraph> load_undirected(std::istream& in) {
  RawEdges raw = read_raw(in);
  LoadedGraph<UndirectedGraph> out;
  out.self_loops_dropped = static_cast<std::size_t>(
      std::count_if(raw.edges.begin(), raw.edges.end(), [](const Edge& e) { return e.u == e.v; }));
  out.graph = UndirectedGraph(raw.labels.size(), raw.edges);
  out.duplicates_dropped = raw.edges.size() - out.self_loops_dropped - out.graph.num_edges();
  out.graph.set_labels(std::move(raw.labels));
  return out;
}

LoadedGraph<DirectedGraph> load_directed(std::istream& in) {
  RawEdges raw = read_raw(in);
  LoadedGraph<DirectedGraph> out;
  out.self_loops_dropped = static_cast<std::size_t>(
      std::count_if(raw.edges.begin(), raw.edges.end(), [](const Edge& e) { return e.u == e.v; }));
  out.graph = DirectedGraph(raw.labels.size(), raw.edges);
  out.duplicates_dropped = raw.edges.size() - out.self_loops_dropped - out.graph.num_edges();
  out.graph.set_labels(std::move(raw.labels));
  return out;
}

LoadedGraph<UndirectedGraph> load_undirected_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return load_undirected(in);
}

LoadedGraph<DirectedGraph> load_directed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return load_directed(in);
}

void write_edge_list(std::ostream& out, const UndirectedGraph& g) {
  auto labels = g.labels();
  std::vector<std::pair<std::int64_t, std::int64_t>> lines;
  lines.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    lines.emplace_back(std::min(labels[e.u], labels[e.v]), std::max(labels[e.u], labels[e.v]));
  }
  std::sort(lines.begin(), lines.end());
  for (auto [a, b] : lines) out << a << ' ' << b << '\n';
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  auto labels = g.labels();
  std::vector<std::pair<std::int64_t, std::int64_t>> lines;
  lines.reserve(g.num_edges());
  for (const Edge& e : g.arcs()) lines.emplace_back(labels[e.u], labels[e.v]);
  std::sort(lines.begin(), lines.end());
  for (auto [a, b] : lines) out << a << ' ' << b << '\n';
}

double density(const UndirectedGraph& g) {
  if (g.num_vertices() == 0) return 0.0;
  return static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

std::size_t count_edges(const UndirectedGraph& g, std::span<const VertexId> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (VertexId v : s) in.at(v) = 1;
  std::size_t twice = 0;
  for (VertexId v : s) {
    for (VertexId w : g.neighbors(v)) twice += in[w];
  }
  return twice / 2;
}

std::size_t count_arcs(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t) {
  std::vector<char> in_t(d.num_vertices(), 0);
  for (VertexId v : t) in_t.at(v) = 1;
  std::size_t count = 0;
  for (VertexId u : s) {
    for (VertexId v : d.out_neighbors(u)) count += in_t[v];
  }
  return count;
}

double density(const UndirectedGraph& g, std::span<const VertexId> s) {
  if (s.empty()) return 0.0;
  return static_cast<double>(count_edges(g, s)) / static_cast<double>(s.size());
}

double density(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t) {
  if (s.empty() || t.empty()) throw GraphError("directed density needs non-empty S and T");
  return static_cast<double>(count_arcs(d, s, t)) /
         std::sqrt(static_cast<double>(s.size()) * static_cast<double>(t.size()));
}

double c_bias_factor(double c, double c_actual) {
  return 2.0 * std::sqrt(c) * std::sqrt(c_actual) / (c + c_actual);
}

double c_biased_density(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t, double c) {
  if (!(c > 0.0)) throw GraphError("ratio c must be positive");
  double rho = density(d, s, t);
  double actual = static_cast<double>(s.size()) / static_cast<double>(t.size());
  return c_bias_factor(c, actual) * rho;
}

InducedSubgraph induced_subgraph(const UndirectedGraph& g, std::span<const VertexId> s) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> members(s.begin(), s.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  constexpr VertexId kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local(n, kAbsent);
  for (VertexId i = 0; i < members.size(); ++i) {
    if (members[i] >= n) throw GraphError("vertex " + std::to_string(members[i]) + " out of range");
    local[members[i]] = i;
  }
  std::vector<Edge> edges;
  for (VertexId v : members) {
    for (VertexId w : g.neighbors(v)) {
      if (v < w && local[w] != kAbsent) edges.push_back({local[v], local[w]});
    }
  }
  InducedSubgraph out{UndirectedGraph(members.size(), edges), members};
  std::vector<std::int64_t> labels;
  labels.reserve(members.size());
  for (VertexId v : members) labels.push_back(g.labels()[v]);
  out.graph.set_labels(std::move(labels));
  return out;
}

InducedPairSubgraph induced_pair_subgraph(const DirectedGraph& d, std::span<const VertexId> s,
                                          std::span<const VertexId> t) {
  const std::size_t n = d.num_vertices();
  std::vector<char> in_s(n, 0);
  std::vector<char> in_t(n, 0);
  for (VertexId v : s) {
    if (v >= n) throw GraphError("vertex " + std::to_string(v) + " out of range");
    in_s[v] = 1;
  }
  for (VertexId v : t) {
    if (v >= n) throw GraphError("vertex " + std::to_string(v) + " out of range");
    in_t[v] = 1;
  }
  std::vector<VertexId> members;
  constexpr VertexId kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local(n, kAbsent);
  for (VertexId v = 0; v < n; ++v) {
    if (in_s[v] || in_t[v]) {
      local[v] = static_cast<VertexId>(members.size());
      members.push_back(v);
    }
  }
  std::vector<Edge> arcs;
  for (VertexId u = 0; u < n; ++u) {
    if (!in_s[u]) continue;
    for (VertexId v : d.out_neighbors(u)) {
      if (in_t[v]) arcs.push_back({local[u], local[v]});
    }
  }
  InducedPairSubgraph out{DirectedGraph(members.size(), arcs), members};
  std::vector<std::int64_t> labels;
  for (VertexId v : members) labels.push_back(d.labels()[v]);
  out.graph.set_labels(std::move(labels));
  return out;
}

std::vector<VertexSet> connected_components(const UndirectedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> components;
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    VertexSet component;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

VertexSet map_to_parent(std::span<const VertexId> ids, std::span<const VertexId> to_parent) {
  VertexSet out;
  out.reserve(ids.size());
  for (VertexId v : ids) out.push_back(to_parent[v]);
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet all_vertices(std::size_t n) {
  VertexSet out(n);
  std::iota(out.begin(), out.end(), VertexId{0});
  return out;
}

DsResult make_result(const UndirectedGraph& g, VertexSet s) {
  std::sort(s.begin(), s.end());
  DsResult r;
  r.density = density(g, s);
  r.upper_bound = r.density;
  r.s = std::move(s);
  return r;
}

DsResult make_result(const DirectedGraph& d, VertexSet s, VertexSet t) {
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  DsResult r;
  r.density = density(d, s, t);
  r.ratio = static_cast<double>(s.size()) / static_cast<double>(t.size());
  r.upper_bound = r.density;
  r.s = std::move(s);
  r.t = std::move(t);
  return r;
}

VertexSet densest_component(const UndirectedGraph& g, std::span<const VertexId> s) {
  if (s.empty()) return {};
  InducedSubgraph sub = induced_subgraph(g, s);
  VertexSet best;
  std::size_t best_edges = 0;
  for (const VertexSet& comp : connected_components(sub.graph)) {
    std::size_t edges = count_edges(sub.graph, comp);
    if (best.empty() || edges * best.size() > best_edges * comp.size()) {
      best = comp;
      best_edges = edges;
    }
  }
  return map_to_parent(best, sub.to_parent);
}

}  // namespace dsd
