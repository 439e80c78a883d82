#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsd {

/// Dense vertex index in [0, n).
using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<VertexId>;

struct Edge {
  VertexId u;
  VertexId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Simple undirected graph in CSR form. Immutable after construction.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  /// Builds from an edge list over vertices [0, n). Self-loops and duplicate
  /// edges (in either orientation) are dropped; out-of-range ids throw.
  UndirectedGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  /// Canonical edges, u < v, sorted lexicographically.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Original input label of every vertex (identity unless loaded from text).
  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::int64_t> labels);

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> labels_;
  std::size_t max_degree_ = 0;
};

/// Simple directed graph with both out- and in-adjacency.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Duplicate arcs and self-loops are dropped; out-of-range ids throw.
  DirectedGraph(std::size_t n, std::span<const Edge> arcs);

  std::size_t num_vertices() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return arcs_.size(); }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {out_adj_.data() + out_offsets_[v], out_adj_.data() + out_offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const {
    return {in_adj_.data() + in_offsets_[v], in_adj_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(VertexId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }
  std::size_t max_out_degree() const noexcept { return max_out_; }
  std::size_t max_in_degree() const noexcept { return max_in_; }

  /// Arcs sorted lexicographically by (tail, head).
  std::span<const Edge> arcs() const noexcept { return arcs_; }

  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::int64_t> labels);

  /// Same vertex set with every arc reversed.
  DirectedGraph transposed() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.out_offsets_ == b.out_offsets_ && a.out_adj_ == b.out_adj_;
  }

 private:
  std::vector<std::size_t> out_offsets_;
  std::vector<VertexId> out_adj_;
  std::vector<std::size_t> in_offsets_;
  std::vector<VertexId> in_adj_;
  std::vector<Edge> arcs_;
  std::vector<std::int64_t> labels_;
  std::size_t max_out_ = 0;
  std::size_t max_in_ = 0;
};

template <typename Graph>
struct LoadedGraph {
  Graph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Parses a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped. Raw labels are remapped to ids in order of first
/// appearance.
LoadedGraph<UndirectedGraph> load_undirected(std::istream& in);
LoadedGraph<DirectedGraph> load_directed(std::istream& in);
LoadedGraph<UndirectedGraph> load_undirected_file(const std::string& path);
LoadedGraph<DirectedGraph> load_directed_file(const std::string& path);

/// Canonical text: one "u v" line per edge using original labels, in edge order.
void write_edge_list(std::ostream& out, const UndirectedGraph& g);
void write_edge_list(std::ostream& out, const DirectedGraph& g);

// Densities --------------------------------------------------------------

double density(const UndirectedGraph& g);

/// |E(S)| for the subgraph induced by `s`.
std::size_t count_edges(const UndirectedGraph& g, std::span<const VertexId> s);

/// |E(S) ∩ (S × T)|.
std::size_t count_arcs(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t);

/// |E(S)| / |S| of the subgraph induced by `s`; 0 for an empty set.
double density(const UndirectedGraph& g, std::span<const VertexId> s);

/// |E(S,T)| / sqrt(|S||T|). Throws GraphError if S or T is empty.
double density(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t);

/// 2 sqrt(c c') / (c + c') where c' is the actual size ratio |S|/|T|.
double c_bias_factor(double c, double c_actual);

/// c-biased density: c_bias_factor(c, |S|/|T|) * density(D, S, T).
double c_biased_density(const DirectedGraph& d, std::span<const VertexId> s, std::span<const VertexId> t, double c);

// Subgraphs --------------------------------------------------------------

struct InducedSubgraph {
  UndirectedGraph graph;
  std::vector<VertexId> to_parent;
};

struct InducedPairSubgraph {
  DirectedGraph graph;
  std::vector<VertexId> to_parent;
};

/// Subgraph induced by `s`; ids are renumbered in increasing parent order.
InducedSubgraph induced_subgraph(const UndirectedGraph& g, std::span<const VertexId> s);

/// Vertices S ∪ T with exactly the arcs of E ∩ (S × T).
InducedPairSubgraph induced_pair_subgraph(const DirectedGraph& d, std::span<const VertexId> s,
                                          std::span<const VertexId> t);

/// Connected components ordered by smallest member; each component sorted.
std::vector<VertexSet> connected_components(const UndirectedGraph& g);

/// The densest connected component of G[s] (ties keep the component with
/// the smallest member), in parent ids. Empty when `s` is empty.
VertexSet densest_component(const UndirectedGraph& g, std::span<const VertexId> s);

/// Maps ids of a subgraph back to its parent; result is sorted.
VertexSet map_to_parent(std::span<const VertexId> ids, std::span<const VertexId> to_parent);

VertexSet all_vertices(std::size_t n);

// Results ---------------------------------------------------------------

struct RunStats {
  std::size_t iterations = 0;
  std::size_t reductions = 0;
  std::size_t ratios_probed = 0;
  /// Edges in the working graph after the first reduction (m without one).
  std::size_t reduced_edges = 0;
  double elapsed_ms = 0.0;
};

/// A densest-subgraph answer. For undirected results `t` is empty and
/// `ratio` is 0.
struct DsResult {
  VertexSet s;
  VertexSet t;
  double density = 0.0;
  double ratio = 0.0;
  /// Best known upper bound on the optimum; equals `density` when certified.
  double upper_bound = 0.0;
  bool verified = false;
  RunStats stats;
};

DsResult make_result(const UndirectedGraph& g, VertexSet s);
DsResult make_result(const DirectedGraph& d, VertexSet s, VertexSet t);

}  // namespace dsd
