#include "majsim/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "majsim/errors.hpp"

namespace majsim {

namespace {

constexpr double kSweepTolerance = 1e-12;
constexpr int kMaxSweeps = 10000;

struct Scratch {
  int n = 0;
  StateIndex full = 0;
  std::vector<StateIndex> nbr_mask;
  std::vector<int> deg;
};

Scratch make_scratch(const Graph& g, int cap) {
  const int n = g.vertex_count();
  if (n > cap) {
    throw capacity_error("n=" + std::to_string(n) +
                         " exceeds the enumeration cap of " +
                         std::to_string(cap));
  }
  Scratch s;
  s.n = n;
  s.full = static_cast<StateIndex>((1u << n) - 1);
  s.nbr_mask.assign(n, 0);
  s.deg.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) s.nbr_mask[v] |= (1u << u);
    s.deg[v] = g.degree(v);
  }
  return s;
}

int agree_count(const Scratch& s, StateIndex code, int v) {
  const bool plus = (code >> v) & 1u;
  const StateIndex same = (plus ? code : ~code) & s.full;
  return std::popcount(s.nbr_mask[v] & same);
}

bool state_absorbing(const Scratch& s, StateIndex code) {
  for (int v = 0; v < s.n; ++v) {
    if (2 * agree_count(s, code, v) < s.deg[v]) return false;
  }
  return true;
}

bool code_is_consensus(const Scratch& s, StateIndex code) {
  return code == 0 || code == s.full;
}

// Potential of a coded state, used to order solver sweeps: every flip
// strictly lowers it, so states sorted by potential see only already-settled
// successors.
std::int64_t code_potential(const Graph& g, const Scratch& s,
                            StateIndex code) {
  std::int64_t disagreeing = 0;
  for (auto [u, v] : g.edges()) {
    if ((((code >> u) ^ (code >> v)) & 1u) != 0) ++disagreeing;
  }
  const std::int64_t n = s.n;
  return 2 * disagreeing + n * (n - 1) - 2 * g.edge_count();
}

std::vector<StateIndex> potential_order(const Graph& g, const Scratch& s) {
  const std::size_t count = std::size_t{1} << s.n;
  std::vector<std::int64_t> z(count);
  for (StateIndex code = 0; code < count; ++code) {
    z[code] = code_potential(g, s, code);
  }
  std::vector<StateIndex> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](StateIndex a, StateIndex b) {
    return z[a] != z[b] ? z[a] < z[b] : a < b;
  });
  return order;
}

}  // namespace

StateIndex encode_state(const OpinionState& x) {
  if (x.size() > kExactVertexCap) {
    throw capacity_error("state too wide to encode: n=" +
                         std::to_string(x.size()));
  }
  StateIndex code = 0;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > 0) code |= (1u << i);
  }
  return code;
}

OpinionState decode_state(StateIndex code, int n) {
  if (n < 1 || n > kExactVertexCap) {
    throw capacity_error("cannot decode states for n=" + std::to_string(n));
  }
  std::vector<std::int8_t> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    values[i] = ((code >> i) & 1u) ? std::int8_t{1} : std::int8_t{-1};
  }
  return OpinionState(std::move(values));
}

std::vector<Transition> transitions(const Graph& g, StateIndex code) {
  const Scratch s = make_scratch(g, kExactVertexCap);
  const int n = s.n;
  std::vector<Transition> out;
  double flip_mass = 0.0;
  for (int v = 0; v < n; ++v) {
    const int agree = agree_count(s, code, v);
    const int dis = s.deg[v] - agree;
    if (dis > agree) {
      // Every disagreeing neighbor selection leads to the same flip, so the
      // row merges to one successor per unstable vertex.
      const double p = static_cast<double>(dis) /
                       (static_cast<double>(n) * s.deg[v]);
      out.push_back({code ^ (1u << v), p});
      flip_mass += p;
    }
  }
  const double self = 1.0 - flip_mass;
  if (out.empty()) {
    out.push_back({code, 1.0});
  } else if (self > 1e-12) {
    out.push_back({code, self});
  }
  return out;
}

std::vector<double> consensus_hit_probabilities(const Graph& g) {
  const Scratch s = make_scratch(g, kExactVertexCap);
  const std::size_t count = std::size_t{1} << s.n;

  std::vector<char> transient(count, 0);
  std::vector<double> h(count, 0.0);
  for (StateIndex code = 0; code < count; ++code) {
    if (code_is_consensus(s, code)) {
      h[code] = 1.0;
    } else if (!state_absorbing(s, code)) {
      transient[code] = 1;
    }
  }

  const std::vector<StateIndex> order = potential_order(g, s);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (StateIndex code : order) {
      if (!transient[code]) continue;
      double numerator = 0.0;
      double flip_mass = 0.0;
      for (int v = 0; v < s.n; ++v) {
        const int agree = agree_count(s, code, v);
        const int dis = s.deg[v] - agree;
        if (dis > agree) {
          const double w = static_cast<double>(dis) /
                           (static_cast<double>(s.n) * s.deg[v]);
          numerator += w * h[code ^ (1u << v)];
          flip_mass += w;
        }
      }
      // Self-loop mass solved out: h = sum(w_i h_i) / sum(w_i).
      const double value = numerator / flip_mass;
      max_change = std::max(max_change, std::abs(value - h[code]));
      h[code] = value;
    }
    if (max_change < kSweepTolerance) return h;
  }
  throw std::logic_error("hit-probability sweeps failed to converge");
}

std::vector<double> consensus_hit_probabilities_dense(const Graph& g) {
  const Scratch s = make_scratch(g, kDenseVertexCap);
  const std::size_t count = std::size_t{1} << s.n;

  std::vector<double> h(count, 0.0);
  std::vector<StateIndex> transient;
  std::vector<int> index(count, -1);
  for (StateIndex code = 0; code < count; ++code) {
    if (code_is_consensus(s, code)) {
      h[code] = 1.0;
    } else if (!state_absorbing(s, code)) {
      index[code] = static_cast<int>(transient.size());
      transient.push_back(code);
    }
  }
  const int t = static_cast<int>(transient.size());
  if (t == 0) return h;

  // (I - Q) x = R * 1_consensus over the transient block.
  std::vector<std::vector<double>> a(t, std::vector<double>(t, 0.0));
  std::vector<double> b(t, 0.0);
  for (int row = 0; row < t; ++row) {
    a[row][row] = 1.0;
    for (const Transition& tr : transitions(g, transient[row])) {
      if (index[tr.to] >= 0) {
        a[row][index[tr.to]] -= tr.probability;
      } else if (code_is_consensus(s, tr.to)) {
        b[row] += tr.probability;
      }
    }
  }

  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < t; ++col) {
    int pivot = col;
    for (int row = col + 1; row < t; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw std::logic_error("singular transient system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < t; ++row) {
      const double f = a[row][col] / a[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < t; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  for (int row = t - 1; row >= 0; --row) {
    double acc = b[row];
    for (int k = row + 1; k < t; ++k) acc -= a[row][k] * h[transient[k]];
    h[transient[row]] = acc / a[row][row];
  }
  return h;
}

std::vector<StateIndex> enumerate_absorbing(const Graph& g) {
  const Scratch s = make_scratch(g, kExactVertexCap);
  const std::size_t count = std::size_t{1} << s.n;
  std::vector<StateIndex> out;
  for (StateIndex code = 0; code < count; ++code) {
    if (state_absorbing(s, code)) out.push_back(code);
  }
  return out;
}

std::vector<bool> consensus_reachable_states(const Graph& g) {
  const Scratch s = make_scratch(g, kExactVertexCap);
  const std::size_t count = std::size_t{1} << s.n;
  std::vector<bool> reachable(count, false);
  // Proper successors sit strictly lower in potential, so one ascending pass
  // settles every state.
  for (StateIndex code : potential_order(g, s)) {
    if (code_is_consensus(s, code)) {
      reachable[code] = true;
      continue;
    }
    for (int v = 0; v < s.n && !reachable[code]; ++v) {
      const int agree = agree_count(s, code, v);
      if (s.deg[v] - agree > agree) {
        reachable[code] = reachable[code ^ (1u << v)];
      }
    }
  }
  return reachable;
}

bool can_reach_consensus(const Graph& g, StateIndex code) {
  const auto reachable = consensus_reachable_states(g);
  if (code >= reachable.size()) {
    throw parameter_error("state code out of range");
  }
  return reachable[code];
}

ExactAnalysis exact_consensus_probability(const Graph& g, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw parameter_error("probability must lie in [0,1], got " +
                          std::to_string(p));
  }
  ExactAnalysis analysis;
  analysis.n = g.vertex_count();
  analysis.p_initial = p;
  analysis.h = consensus_hit_probabilities(g);
  analysis.absorbing = enumerate_absorbing(g);

  const int n = analysis.n;
  std::vector<double> p_pow(n + 1, 1.0), q_pow(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    p_pow[k] = p_pow[k - 1] * p;
    q_pow[k] = q_pow[k - 1] * (1.0 - p);
  }
  double total = 0.0;
  const std::size_t count = std::size_t{1} << n;
  for (StateIndex code = 0; code < count; ++code) {
    const int ones = std::popcount(code);
    total += p_pow[ones] * q_pow[n - ones] * analysis.h[code];
  }
  // The initial masses sum to exactly 1 and every h is in [0,1], so any
  // excursion outside the unit interval is summation round-off.
  analysis.p_consensus = std::clamp(total, 0.0, 1.0);
  return analysis;
}

}  // namespace majsim
