#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace majsim {

/// Undirected simple connected graph on vertices 0..n-1.
/// Immutable once constructed; safe to share across threads.
class Graph {
 public:
  /// Builds from an explicit edge list. Edges may arrive in either
  /// orientation and are normalized to u < v. Throws format_error on
  /// out-of-range endpoints, self-loops or duplicate edges, and
  /// connectivity_error if some vertex is unreachable from vertex 0.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(edges_.size());
  }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  std::span<const int> neighbors(int v) const { return adjacency_[v]; }
  bool adjacent(int u, int v) const;

  /// Edges sorted lexicographically, each with u < v.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
};

Graph make_complete(int n);  // n >= 2
Graph make_cycle(int n);     // n >= 3
Graph make_path(int n);      // n >= 2
Graph make_star(int n);      // n >= 2, vertex 0 is the hub

/// Uniform-attachment random spanning tree plus extra_edges absent edges
/// sampled uniformly without replacement. Deterministic for a fixed seed.
Graph make_random_connected(int n, int extra_edges, std::uint64_t seed);

/// Parses the edge-list text format: a line "n m" followed by m lines
/// "u v" with 0 <= u < v < n, whitespace-separated.
Graph from_edge_list(std::string_view text);

/// Serializes to the same format; edges sorted lexicographically.
std::string to_edge_list(const Graph& g);

}  // namespace majsim
