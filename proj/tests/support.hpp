#pragma once

#include "sandpile/dynamics.hpp"
#include "sandpile/graph.hpp"
#include "sandpile/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sandpile::testing {

inline Graph data_graph(const std::string& file) { return read_graph_file(std::string(SANDPILE_DATA_DIR) + "/" + file); }

inline Graph mixed4() { return data_graph("mixed4.sg"); }
inline Graph directed4() { return data_graph("directed4.sg"); }
inline Graph diamond() { return data_graph("diamond.sg"); }
inline Graph gorenstein4() { return data_graph("gorenstein4.sg"); }
inline Graph triangle() { return data_graph("triangle.sg"); }
inline Graph k4() { return data_graph("k4.sg"); }

inline std::vector<Graph> named_graphs() { return {mixed4(), directed4(), diamond(), gorenstein4(), triangle(), k4()}; }

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Vec random_vec(Rng& rng, Index n, std::int64_t lo, std::int64_t hi) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

using EdgeList = std::vector<std::pair<int, int>>;

// Vertices v0..v{n-1}; the last one is the sink.
inline Graph simple_graph(int n, const EdgeList& edges) {
  GraphBuilder b;
  for (int v = 0; v < n; ++v) b.vertex("v" + std::to_string(v));
  for (auto [u, v] : edges) b.uedge("v" + std::to_string(u), "v" + std::to_string(v));
  return b.sink("v" + std::to_string(n - 1)).build();
}

inline bool connected(int n, const EdgeList& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  int comps = n;
  for (auto [u, v] : edges) {
    const int a = find(u), b = find(v);
    if (a != b) parent[static_cast<std::size_t>(a)] = b, --comps;
  }
  return comps == 1;
}

// Connected simple graphs on n vertices, one per isomorphism class.
inline std::vector<EdgeList> connected_simple_graphs(int n) {
  EdgeList pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::set<std::uint64_t> seen;
  std::vector<EdgeList> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    EdgeList edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) edges.push_back(pairs[i]);
    if (!connected(n, edges)) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t canon = ~std::uint64_t{0};
    do {
      std::uint64_t code = 0;
      for (auto [u, v] : edges) {
        int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
        if (a > b) std::swap(a, b);
        code |= std::uint64_t{1} << (a * n + b);
      }
      canon = std::min(canon, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(canon).second) out.push_back(edges);
  }
  return out;
}

inline std::vector<Graph> connected_graphs_up_to(int max_vertices, int min_vertices = 2) {
  std::vector<Graph> out;
  for (int n = min_vertices; n <= max_vertices; ++n)
    for (const auto& e : connected_simple_graphs(n)) out.push_back(simple_graph(n, e));
  return out;
}

// Random directed weighted graph on n vertices; every vertex reaches the sink.
inline Graph random_digraph(Rng& rng, int n, std::int64_t max_weight, double density = 0.5) {
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(n, n);
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) w(u, v) = uniform(rng, 1, max_weight);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  for (;;) {
    try {
      return Graph(names, w);
    } catch (const ValidationError&) {
      const int u = static_cast<int>(uniform(rng, 0, n - 2));
      w(u, static_cast<int>(uniform(rng, u + 1, n - 1))) += 1;
    }
  }
}

// Random undirected weighted connected graph on n vertices.
inline Graph random_ugraph(Rng& rng, int n, std::int64_t max_weight, double density = 0.5) {
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(n, n);
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(uniform(rng, 0, v - 1));
    w(u, v) = w(v, u) = uniform(rng, 1, max_weight);
  }
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (w(u, v) == 0 && coin(rng)) w(u, v) = w(v, u) = uniform(rng, 1, max_weight);
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  return Graph(names, w);
}

// Weight of spanning arborescences into the sink, by choosing one out-edge per
// nonsink vertex and rejecting choices with a cycle.
// Union of random directed cycles plus a path in both directions: in-degree equals out-degree everywhere.
inline Graph random_eulerian(Rng& rng, int n) {
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(n, n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int c = 0; c < 3; ++c) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const int len = static_cast<int>(uniform(rng, 2, n));
    for (int i = 0; i < len; ++i) w(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>((i + 1) % len)]) += 1;
  }
  for (int v = 0; v + 1 < n; ++v) w(v, v + 1) += 1, w(v + 1, v) += 1;
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  return Graph(names, w);
}

inline Integer arborescence_weight_oracle(const Graph& g) {
  const Index n = g.num_nonsink();
  std::vector<Index> choice(static_cast<std::size_t>(n), 0);
  Integer total = 0;
  std::function<void(Index, Integer)> go = [&](Index v, Integer w) {
    if (v == n) {
      for (Index start = 0; start < n; ++start) {
        Index cur = start;
        for (Index steps = 0; cur != g.sink(); ++steps) {
          if (steps > n) return;
          cur = choice[static_cast<std::size_t>(cur)];
        }
      }
      total += w;
      return;
    }
    for (Index u = 0; u < g.size(); ++u) {
      if (u == v || g.weight(v, u) == 0) continue;
      choice[static_cast<std::size_t>(v)] = u;
      go(v + 1, w * g.weight(v, u));
    }
  };
  go(0, 1);
  return total;
}

// Recurrents as the closure {(c_max + a)° : 0 <= a <= bound}.
inline std::set<Config, VecLess> recurrent_oracle(const Graph& g, std::int64_t bound) {
  const Index n = g.num_nonsink();
  const Config cmax = max_stable(g);
  std::set<Config, VecLess> out;
  Vec a = Vec::Zero(n);
  for (;;) {
    out.insert(stabilize(g, cmax + a).config);
    Index i = 0;
    while (i < n && a(i) == bound) a(i++) = 0;
    if (i == n) break;
    ++a(i);
  }
  return out;
}

// Superstable by the set-firing criterion: every nonempty S contains some v
// holding fewer grains than its edge weight leaving S.
inline bool set_firing_superstable(const Graph& g, const Config& c) {
  const Index n = g.num_nonsink();
  if (!is_nonnegative(c)) return false;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    bool blocked = false;
    for (Index v = 0; v < n && !blocked; ++v) {
      if (!(s >> v & 1)) continue;
      std::int64_t out = 0;
      for (Index u = 0; u < g.size(); ++u)
        if (u == g.sink() || !(s >> u & 1)) out += (u == v ? 0 : g.weight(v, u));
      blocked = c(v) < out;
    }
    if (!blocked) return false;
  }
  return true;
}

// gcd of all k x k minors, k = 1..n.
inline std::vector<Integer> determinantal_divisors(const IntMatrix& m) {
  const Index n = m.rows();
  std::vector<Integer> out;
  for (Index k = 1; k <= n; ++k) {
    Integer g = 0;
    std::vector<bool> rs(static_cast<std::size_t>(n), false), cs(static_cast<std::size_t>(n), false);
    std::fill(rs.end() - k, rs.end(), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.end() - k, cs.end(), true);
      do {
        IntMatrix sub(k, k);
        Index r = 0;
        for (Index i = 0; i < n; ++i) {
          if (!rs[static_cast<std::size_t>(i)]) continue;
          Index c = 0;
          for (Index j = 0; j < n; ++j)
            if (cs[static_cast<std::size_t>(j)]) sub(r, c++) = m(i, j);
          ++r;
        }
        g = boost::multiprecision::gcd(g, determinant(sub));
      } while (std::next_permutation(cs.begin(), cs.end()));
    } while (std::next_permutation(rs.begin(), rs.end()));
    out.push_back(abs(g));
  }
  return out;
}

}  // namespace sandpile::testing
