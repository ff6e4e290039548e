#include "sandpile/resolution.hpp"

#include "sandpile/group.hpp"
#include "sandpile/ideal.hpp"
#include "sandpile/parallel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace sandpile {

std::vector<std::vector<std::uint64_t>> SimplicialComplex::faces() const {
  if (ground > 63) throw CapExceeded("simplicial complex ground set larger than 63");
  std::set<std::uint64_t> all;
  for (const auto& f : facets) {
    std::uint64_t mask = 0;
    for (Index v : f) mask |= std::uint64_t{1} << v;
    // Enumerate submasks of mask, including 0.
    for (std::uint64_t s = mask;; s = (s - 1) & mask) {
      all.insert(s);
      if (s == 0) break;
    }
  }
  std::vector<std::vector<std::uint64_t>> out;
  for (auto s : all) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (out.size() <= k) out.resize(k + 1);
    out[k].push_back(s);
  }
  return out;
}

SimplicialComplex complex_from_supports(Index ground, const std::vector<Divisor>& members) {
  std::vector<std::uint64_t> supports;
  for (const auto& e : members) {
    std::uint64_t m = 0;
    for (Index v = 0; v < e.size(); ++v)
      if (e(v) != 0) m |= std::uint64_t{1} << v;
    supports.push_back(m);
  }
  std::sort(supports.begin(), supports.end());
  supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
  SimplicialComplex c;
  c.ground = ground;
  for (auto s : supports) {
    bool maximal = true;
    for (auto t : supports) maximal = maximal && (t == s || (s & t) != s);
    if (!maximal) continue;
    std::vector<Index> f;
    for (Index v = 0; v < ground; ++v)
      if ((s >> v) & 1) f.push_back(v);
    c.facets.push_back(std::move(f));
  }
  return c;
}

SimplicialComplex delta_complex(const DivisorClasses& classes, const Divisor& d) {
  return complex_from_supports(classes.graph().size(), classes.linear_system(d));
}

SimplicialComplex delta_complex(const Graph& g, const Divisor& d) { return delta_complex(DivisorClasses(g), d); }

namespace {

Matrix<std::int64_t> boundary(const std::vector<std::uint64_t>& rows, const std::vector<std::uint64_t>& cols) {
  Matrix<std::int64_t> m = Matrix<std::int64_t>::Zero(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::int64_t sign = 1;
    for (int v = 0; v < 64; ++v) {
      if (!((cols[j] >> v) & 1)) continue;
      const auto face = cols[j] & ~(std::uint64_t{1} << v);
      const auto it = std::lower_bound(rows.begin(), rows.end(), face);
      m(static_cast<Index>(it - rows.begin()), static_cast<Index>(j)) = sign;
      sign = -sign;
    }
  }
  return m;
}

template <typename RankFn>
std::vector<std::int64_t> homology(const SimplicialComplex& c, RankFn rank_of) {
  const auto faces = c.faces();
  if (faces.empty()) return {};
  // ranks[k] = rank of the boundary from faces[k] to faces[k-1]
  std::vector<std::int64_t> ranks(faces.size() + 1, 0);
  for (std::size_t k = 1; k < faces.size(); ++k) ranks[k] = rank_of(boundary(faces[k - 1], faces[k]));
  std::vector<std::int64_t> out(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k)
    out[k] = static_cast<std::int64_t>(faces[k].size()) - ranks[k] - ranks[k + 1];
  return out;
}

}  // namespace

std::vector<std::int64_t> reduced_homology_ranks(const SimplicialComplex& c) {
  return homology(c, [](const Matrix<std::int64_t>& m) -> std::int64_t {
    try {
      return static_cast<std::int64_t>(rank(m));
    } catch (const std::overflow_error&) {
      return static_cast<std::int64_t>(rank(cast_matrix<Integer>(m)));
    }
  });
}

std::vector<std::int64_t> reduced_homology_ranks_mod_p(const SimplicialComplex& c, std::int64_t p) {
  return homology(c, [p](const Matrix<std::int64_t>& m) { return static_cast<std::int64_t>(rank_mod_p(m, p)); });
}

std::int64_t BettiTable::beta(int i) const {
  if (i < 1 || static_cast<std::size_t>(i) > coarse.size()) return 0;
  return coarse[static_cast<std::size_t>(i - 1)];
}

std::vector<std::int64_t> BettiTable::h_vector() const {
  std::vector<std::int64_t> h;
  for (std::size_t d = 0; d < hilbert.size(); ++d) h.push_back(hilbert[d] - (d ? hilbert[d - 1] : 0));
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  return h;
}

namespace {

struct DegreeScan {
  std::int64_t classes = 0;
  std::vector<BettiEntry> entries;  // includes i = 0
};

Integer torsion_points(const Graph& g) {
  Integer p = 1;
  for (const auto& d : smith_normal_form(laplacian<Integer>(g)).factors)
    if (d != 0) p *= d;
  return p;
}

class BettiScanner {
 public:
  BettiScanner(const Graph& g, const Caps& caps)
      : g_(g), caps_(caps), classes_(g, caps),
        order_(SandpileOrder::for_graph(g, true)) {}

  DegreeScan scan(std::int64_t d) const {
    if (composition_count(d, g_.size()) > caps_.max_candidates)
      throw CapExceeded("Betti scan at degree " + std::to_string(d) + " exceeds candidate cap");
    std::unordered_map<Divisor, std::size_t, VecHash, VecEqual> index;
    std::vector<std::vector<Divisor>> buckets;
    for_each_composition(d, g_.size(), [&](const Vec& e) {
      auto [it, fresh] = index.try_emplace(classes_.key(e), buckets.size());
      if (fresh) buckets.emplace_back();
      buckets[it->second].push_back(e);
    });
    std::vector<std::vector<BettiEntry>> found(buckets.size());
    parallel_for(buckets.size(), caps_.threads, [&](std::size_t b) {
      const auto ranks = reduced_homology_ranks(complex_from_supports(g_.size(), buckets[b]));
      Divisor rep;
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        if (ranks[k] == 0) continue;
        if (rep.size() == 0) rep = representative(buckets[b]);
        found[b].push_back({static_cast<int>(k), rep, ranks[k]});
      }
    });
    DegreeScan out;
    out.classes = static_cast<std::int64_t>(buckets.size());
    for (auto& f : found)
      for (auto& e : f) out.entries.push_back(std::move(e));
    return out;
  }

 private:
  Divisor representative(const std::vector<Divisor>& members) const {
    const Divisor& any = members.front();
    const Config r = recurrent_equivalent(g_, any.head(g_.num_nonsink()));
    const Divisor lifted = lift(g_, r, any.sum() - r.sum());
    if (lifted(g_.sink()) >= 0) return lifted;
    return *std::max_element(members.begin(), members.end(),
                             [&](const Divisor& a, const Divisor& b) { return order_.less(a, b); });
  }

  const Graph& g_;
  Caps caps_;
  DivisorClasses classes_;
  SandpileOrder order_;
};

}  // namespace

BettiTable graded_betti(const Graph& g, const Caps& caps) {
  const BettiScanner scanner(g, caps);
  const Integer points = torsion_points(g);
  const std::int64_t edges = g.num_edges();
  const std::int64_t limit = edges + 2 * g.size() + 16;
  std::vector<DegreeScan> scans;
  auto build = [&](std::int64_t top) {
    while (static_cast<std::int64_t>(scans.size()) <= top) scans.push_back(scanner.scan(static_cast<std::int64_t>(scans.size())));
    BettiTable t;
    t.max_degree = top;
    t.coarse.assign(static_cast<std::size_t>(g.num_nonsink()), 0);
    for (std::int64_t d = 0; d <= top; ++d) {
      const auto& s = scans[static_cast<std::size_t>(d)];
      t.hilbert.push_back(s.classes);
      for (const auto& e : s.entries) {
        if (e.i == 0) continue;
        if (static_cast<std::size_t>(e.i) > t.coarse.size()) t.coarse.resize(static_cast<std::size_t>(e.i), 0);
        t.coarse[static_cast<std::size_t>(e.i - 1)] += e.multiplicity;
        t.graded.push_back(e);
      }
    }
    std::sort(t.graded.begin(), t.graded.end(), [](const BettiEntry& a, const BettiEntry& b) {
      if (a.i != b.i) return a.i < b.i;
      const auto da = a.degree.sum(), db = b.degree.sum();
      if (da != db) return da < db;
      return VecLess{}(a.degree, b.degree);
    });
    return t;
  };
  std::int64_t top = std::max<std::int64_t>(edges, 0);
  for (;; ++top) {
    BettiTable t = build(top);
    if (t.hilbert.back() < points) {
      if (top >= limit) return t;
      continue;
    }
    if (euler_check(g, t, caps) || top >= limit) return t;
  }
}

namespace {

using Poly = std::vector<std::int64_t>;

Poly times_one_minus_t(const Poly& p) {
  Poly out(p.size() + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i];
    out[i + 1] -= p[i];
  }
  return out;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

bool euler_check(const Graph& g, const BettiTable& table, const Caps& caps) {
  Poly lhs(1, 1);
  for (const auto& e : table.graded) {
    const auto d = static_cast<std::size_t>(e.degree.sum());
    if (lhs.size() <= d) lhs.resize(d + 1, 0);
    lhs[d] += (e.i % 2 ? -1 : 1) * e.multiplicity;
  }
  Poly rhs = sink_column_in_span(g) ? h_vector(g, caps).h : table.h_vector();
  for (Index k = 0; k < g.num_nonsink(); ++k) rhs = times_one_minus_t(rhs);
  trim(lhs);
  trim(rhs);
  return lhs == rhs;
}

namespace {

bool induced_connected(const Graph& g, const std::vector<Index>& block) {
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0), seen(static_cast<std::size_t>(g.size()), 0);
  for (Index v : block) in[static_cast<std::size_t>(v)] = 1;
  std::vector<Index> stack{block.front()};
  seen[static_cast<std::size_t>(block.front())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v = 0; v < g.size(); ++v)
      if (in[static_cast<std::size_t>(v)] && !seen[static_cast<std::size_t>(v)] && (g.weight(u, v) > 0 || g.weight(v, u) > 0)) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == block.size();
}

void partitions_rec(const Graph& g, int k, std::vector<int>& label, Index pos, int used, std::vector<Partition>& out) {
  const Index m = g.size();
  if (m - pos < k - used) return;
  if (pos == m) {
    if (used != k) return;
    Partition p(static_cast<std::size_t>(k));
    for (Index v = 0; v < m; ++v) p[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v);
    for (const auto& b : p)
      if (!induced_connected(g, b)) return;
    out.push_back(std::move(p));
    return;
  }
  for (int b = 0; b <= used && b < k; ++b) {
    label[static_cast<std::size_t>(pos)] = b;
    partitions_rec(g, k, label, pos + 1, std::max(used, b + 1), out);
  }
}

}  // namespace

std::vector<Partition> connected_partitions(const Graph& g, int k) {
  if (!g.is_undirected()) throw ValidationError("connected_partitions requires an undirected graph");
  if (g.size() > 12) throw CapExceeded("connected_partitions limited to 12 vertices");
  std::vector<Partition> out;
  if (k < 1 || k > g.size()) return out;
  std::vector<int> label(static_cast<std::size_t>(g.size()), 0);
  partitions_rec(g, k, label, 0, 0, out);
  return out;
}

Graph partition_graph(const Graph& g, const Partition& p) {
  std::vector<int> block(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t b = 0; b < p.size(); ++b)
    for (Index v : p[b]) {
      if (v < 0 || v >= g.size() || block[static_cast<std::size_t>(v)] >= 0) throw ValidationError("invalid partition");
      block[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  for (int b : block)
    if (b < 0) throw ValidationError("partition does not cover every vertex");
  for (const auto& b : p)
    if (b.empty() || !induced_connected(g, b)) throw ValidationError("partition block is empty or disconnected");
  const auto sink_block = static_cast<std::size_t>(block[static_cast<std::size_t>(g.sink())]);
  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < p.size(); ++b)
    if (b != sink_block) order.push_back(b);
  order.push_back(sink_block);
  std::vector<std::size_t> pos(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::string> names;
  for (auto b : order) {
    std::string name;
    for (Index v : p[b]) name += (name.empty() ? "" : "+") + g.name(v);
    names.push_back(name);
  }
  const auto k = static_cast<Index>(p.size());
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(k, k);
  for (Index u = 0; u < g.size(); ++u)
    for (Index v = 0; v < g.size(); ++v) {
      const auto bu = pos[static_cast<std::size_t>(block[static_cast<std::size_t>(u)])];
      const auto bv = pos[static_cast<std::size_t>(block[static_cast<std::size_t>(v)])];
      if (bu != bv) w(static_cast<Index>(bu), static_cast<Index>(bv)) += g.weight(u, v);
    }
  return Graph(std::move(names), std::move(w));
}

std::int64_t ConjectureRow::total() const {
  std::int64_t t = 0;
  for (auto c : contributions) t += c;
  return t;
}

std::vector<ConjectureRow> conjecture_check(const Graph& g, const BettiTable& table, const Caps& caps) {
  if (!g.is_undirected()) throw ValidationError("conjecture_check requires an undirected graph");
  std::vector<ConjectureRow> out;
  for (int k = 1; k <= g.num_nonsink(); ++k) {
    ConjectureRow row;
    row.k = k;
    row.beta = table.beta(k);
    for (const auto& p : connected_partitions(g, k + 1))
      row.contributions.push_back(static_cast<std::int64_t>(minimal_recurrents(partition_graph(g, p), caps).size()));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ConjectureRow> conjecture_check(const Graph& g, const Caps& caps) {
  if (!g.is_undirected()) throw ValidationError("conjecture_check requires an undirected graph");
  return conjecture_check(g, graded_betti(g, caps), caps);
}

}  // namespace sandpile
