#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dsd {

/// Residual network with Dinic-style phases. Each call to
/// blocking_flow_round() computes BFS levels and saturates a blocking flow in
/// the level graph, which is the unit of work FlowApp budgets in.
///
/// `Cap` is an arithmetic type; integral types give exact cuts. For floating
/// capacities, residuals at or below `tolerance` count as saturated.
template <typename Cap>
class FlowNetwork {
 public:
  using NodeId = std::uint32_t;

  FlowNetwork(std::size_t nodes, NodeId source, NodeId sink, Cap tolerance = Cap{0})
      : adjacency_(nodes), level_(nodes), cursor_(nodes), source_(source), sink_(sink), tolerance_(tolerance) {}

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  NodeId source() const noexcept { return source_; }
  NodeId sink() const noexcept { return sink_; }

  /// Adds from->to with the given capacity plus its residual twin. Returns the
  /// index of the forward arc.
  std::size_t add_arc(NodeId from, NodeId to, Cap capacity, Cap reverse_capacity = Cap{0}) {
    std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, capacity});
    arcs_.push_back({from, reverse_capacity, reverse_capacity});
    adjacency_[from].push_back(static_cast<std::uint32_t>(id));
    adjacency_[to].push_back(static_cast<std::uint32_t>(id + 1));
    return id;
  }

  Cap capacity(std::size_t arc) const { return arcs_[arc].capacity; }
  Cap residual(std::size_t arc) const { return arcs_[arc].residual; }
  Cap flow(std::size_t arc) const { return arcs_[arc].capacity - arcs_[arc].residual; }

  /// Total flow pushed out of the source so far.
  Cap flow_value() const noexcept { return value_; }
  std::size_t rounds() const noexcept { return rounds_; }

  /// One phase: level graph + blocking flow. Returns false (and pushes
  /// nothing) when the sink is unreachable, i.e. the flow is maximum.
  bool blocking_flow_round() {
    if (!build_levels()) return false;
    std::fill(cursor_.begin(), cursor_.end(), 0);
    ++rounds_;
    push_blocking_flow();
    return true;
  }

  /// Runs phases to completion and returns the maximum flow value.
  Cap max_flow() {
    while (blocking_flow_round()) {
    }
    return value_;
  }

  bool has_augmenting_path() { return build_levels(); }

  /// Nodes reachable from the source in the residual network. After
  /// max_flow() this is the source side of the minimal minimum cut.
  std::vector<NodeId> source_side() {
    build_levels();
    std::vector<NodeId> side;
    for (NodeId v = 0; v < num_nodes(); ++v) {
      if (level_[v] >= 0) side.push_back(v);
    }
    return side;
  }

  /// BFS layers from the source in the current residual network.
  std::vector<std::vector<NodeId>> residual_layers() {
    build_levels();
    std::vector<std::vector<NodeId>> layers;
    for (NodeId v = 0; v < num_nodes(); ++v) {
      if (level_[v] < 0) continue;
      auto l = static_cast<std::size_t>(level_[v]);
      if (layers.size() <= l) layers.resize(l + 1);
      layers[l].push_back(v);
    }
    return layers;
  }

 private:
  struct Arc {
    NodeId to;
    Cap residual;
    Cap capacity;
  };

  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<NodeId> queue;
    queue.reserve(num_nodes());
    level_[source_] = 0;
    queue.push_back(source_);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId v = queue[head];
      for (std::uint32_t id : adjacency_[v]) {
        const Arc& a = arcs_[id];
        if (a.residual > tolerance_ && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  // Iterative DFS over the level graph; dead ends are pruned by clearing
  // their level so each arc is retired at most once per phase.
  void push_blocking_flow() {
    std::vector<std::uint32_t> path;
    NodeId v = source_;
    while (true) {
      if (v == sink_) {
        Cap bottleneck = arcs_[path.front()].residual;
        for (std::uint32_t id : path) bottleneck = std::min(bottleneck, arcs_[id].residual);
        std::size_t cut_at = path.size();
        for (std::size_t i = 0; i < path.size(); ++i) {
          arcs_[path[i]].residual -= bottleneck;
          arcs_[path[i] ^ 1U].residual += bottleneck;
          if (cut_at == path.size() && arcs_[path[i]].residual <= tolerance_) cut_at = i;
        }
        value_ += bottleneck;
        path.resize(cut_at);
        v = path.empty() ? source_ : arcs_[path.back()].to;
        continue;
      }
      bool advanced = false;
      auto& edges = adjacency_[v];
      for (std::size_t& i = cursor_[v]; i < edges.size(); ++i) {
        const Arc& a = arcs_[edges[i]];
        if (a.residual > tolerance_ && level_[a.to] == level_[v] + 1) {
          path.push_back(edges[i]);
          v = a.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      level_[v] = -1;
      if (v == source_) return;
      std::uint32_t back = path.back();
      path.pop_back();
      v = arcs_[back ^ 1U].to;
      ++cursor_[v];
    }
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  NodeId source_;
  NodeId sink_;
  Cap tolerance_;
  Cap value_{0};
  std::size_t rounds_ = 0;
};

}  // namespace dsd
