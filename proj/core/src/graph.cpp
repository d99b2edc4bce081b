#include "majsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "majsim/errors.hpp"
#include "majsim/rng.hpp"

namespace majsim {

namespace {

void check_connected(int n, const std::vector<std::vector<int>>& adjacency) {
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int u : adjacency[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        frontier.push(u);
      }
    }
  }
  if (reached != n) {
    throw connectivity_error("graph is disconnected: reached " +
                             std::to_string(reached) + " of " +
                             std::to_string(n) + " vertices from vertex 0");
  }
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1) {
    throw format_error("graph needs at least one vertex, got n=" +
                       std::to_string(n));
  }
  n_ = n;
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw format_error("edge endpoint out of range: " + std::to_string(u) +
                         " " + std::to_string(v) + " with n=" +
                         std::to_string(n));
    }
    if (u == v) {
      throw format_error("self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw format_error("duplicate edge " + std::to_string(dup->first) + " " +
                       std::to_string(dup->second));
  }
  edges_ = std::move(edges);

  adjacency_.assign(n_, {});
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  check_connected(n_, adjacency_);
}

bool Graph::adjacent(int u, int v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Graph make_complete(int n) {
  if (n < 2) {
    throw invalid_size_error("complete graph needs n >= 2, got " +
                             std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph make_cycle(int n) {
  if (n < 3) {
    throw invalid_size_error("cycle needs n >= 3, got " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

Graph make_path(int n) {
  if (n < 2) {
    throw invalid_size_error("path needs n >= 2, got " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph make_star(int n) {
  if (n < 2) {
    throw invalid_size_error("star needs n >= 2, got " + std::to_string(n));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph(n, std::move(edges));
}

Graph make_random_connected(int n, int extra_edges, std::uint64_t seed) {
  if (n < 1) {
    throw invalid_size_error("random graph needs n >= 1, got " +
                             std::to_string(n));
  }
  const std::int64_t max_extra =
      static_cast<std::int64_t>(n) * (n - 1) / 2 - (n - 1);
  if (extra_edges < 0 || extra_edges > max_extra) {
    throw invalid_size_error("extra_edges=" + std::to_string(extra_edges) +
                             " infeasible for n=" + std::to_string(n) +
                             " (max " + std::to_string(max_extra) + ")");
  }

  Rng rng(seed);

  // Random spanning tree: shuffle the labels, then attach each vertex to a
  // uniformly chosen earlier one.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(i + 1)));
    std::swap(order[i], order[j]);
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1 + extra_edges));
  for (int k = 1; k < n; ++k) {
    int parent = order[rng.next_below(static_cast<std::uint32_t>(k))];
    int u = order[k];
    edges.emplace_back(std::min(u, parent), std::max(u, parent));
  }

  if (extra_edges > 0) {
    std::vector<std::pair<int, int>> tree = edges;
    std::sort(tree.begin(), tree.end());
    std::vector<std::pair<int, int>> absent;
    absent.reserve(static_cast<std::size_t>(max_extra));
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!std::binary_search(tree.begin(), tree.end(),
                                std::make_pair(u, v))) {
          absent.emplace_back(u, v);
        }
      }
    }
    // Partial Fisher-Yates: the first extra_edges entries are a uniform
    // sample without replacement.
    for (int i = 0; i < extra_edges; ++i) {
      int j = i + static_cast<int>(rng.next_below(
                      static_cast<std::uint32_t>(absent.size() - i)));
      std::swap(absent[i], absent[j]);
      edges.push_back(absent[i]);
    }
  }

  return Graph(n, std::move(edges));
}

Graph from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0, m = 0;
  if (!(in >> n >> m)) {
    throw format_error("edge list must start with \"n m\"");
  }
  if (n < 1) {
    throw format_error("vertex count must be positive, got " +
                       std::to_string(n));
  }
  if (m < 0) {
    throw format_error("edge count must be non-negative, got " +
                       std::to_string(m));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) {
      throw format_error("expected " + std::to_string(m) + " edges, got " +
                         std::to_string(k));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw format_error("edge endpoint out of range: " + std::to_string(u) +
                         " " + std::to_string(v));
    }
    if (u >= v) {
      throw format_error("edges must satisfy u < v, got " + std::to_string(u) +
                         " " + std::to_string(v));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::string leftover;
  if (in >> leftover) {
    throw format_error("unexpected trailing content: \"" + leftover + "\"");
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " +
                    std::to_string(g.edge_count()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

}  // namespace majsim
