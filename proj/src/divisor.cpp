#include "sandpile/divisor.hpp"

#include "sandpile/group.hpp"

#include <algorithm>

namespace sandpile {

namespace {

void require_undirected(const Graph& g, const char* what) {
  if (!g.is_undirected()) throw ValidationError(std::string(what) + " requires an undirected graph");
}

void require_length(const Graph& g, const Divisor& d) {
  if (d.size() != g.size())
    throw ValidationError("divisor has " + std::to_string(d.size()) + " entries, expected " + std::to_string(g.size()));
}

void compositions(std::int64_t left, Index pos, Vec& cur, const std::function<void(const Vec&)>& fn) {
  if (pos == cur.size() - 1) {
    cur(pos) = left;
    fn(cur);
    return;
  }
  for (std::int64_t x = left; x >= 0; --x) {
    cur(pos) = x;
    compositions(left - x, pos + 1, cur, fn);
  }
}

HermiteForm<std::int64_t> int64_hermite(const Graph& g) {
  const auto h = hermite_normal_form(laplacian<Integer>(g));
  Matrix<std::int64_t> basis(h.basis.rows(), h.basis.cols());
  for (Index j = 0; j < basis.cols(); ++j)
    for (Index i = 0; i < basis.rows(); ++i) basis(i, j) = to_int64(h.basis(i, j));
  return {std::move(basis), h.pivots};
}

}  // namespace

void for_each_composition(std::int64_t total, Index parts, const std::function<void(const Vec&)>& fn) {
  if (total < 0 || parts <= 0) return;
  Vec cur = Vec::Zero(parts);
  compositions(total, 0, cur, fn);
}

Integer composition_count(std::int64_t total, Index parts) {
  if (total < 0 || parts <= 0) return 0;
  Integer c = 1;
  for (Index i = 1; i < parts; ++i) c = c * (total + i) / i;
  return c;
}

DivisorClasses::DivisorClasses(const Graph& g, const Caps& caps)
    : g_(g), caps_(caps), reducer_(int64_hermite(g)) {}

Divisor DivisorClasses::key(const Divisor& d) const {
  require_length(g_, d);
  return reducer_.reduce(d);
}

bool DivisorClasses::equivalent(const Divisor& a, const Divisor& b) const {
  return a.sum() == b.sum() && key(a) == key(b);
}

bool DivisorClasses::has_effective(const Divisor& d) const {
  const auto deg = d.sum();
  if (deg < 0) return false;
  const Divisor k = key(d);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = effective_.find(deg);
  if (it == effective_.end()) {
    if (composition_count(deg, g_.size()) > caps_.max_candidates)
      throw CapExceeded("effective divisors of degree " + std::to_string(deg) + " exceed cap");
    std::unordered_set<Divisor, VecHash, VecEqual> keys;
    for_each_composition(deg, g_.size(), [&](const Vec& e) { keys.insert(reducer_.reduce(e)); });
    it = effective_.emplace(deg, std::move(keys)).first;
  }
  return it->second.count(k) > 0;
}

std::vector<Divisor> DivisorClasses::linear_system(const Divisor& d) const {
  require_length(g_, d);
  const auto deg = d.sum();
  std::vector<Divisor> out;
  if (deg < 0) return out;
  if (composition_count(deg, g_.size()) > caps_.max_candidates)
    throw CapExceeded("linear system scan of degree " + std::to_string(deg) + " exceeds cap");
  const Divisor k = key(d);
  for_each_composition(deg, g_.size(), [&](const Vec& e) {
    if (reducer_.reduce(e) == k) out.push_back(e);
  });
  return out;
}

bool is_equivalent(const Graph& g, const Divisor& a, const Divisor& b) {
  require_length(g, a);
  require_length(g, b);
  const LatticeReducer<Integer> red(laplacian<Integer>(g));
  return red.contains(cast_vector<Integer>(Vec(a - b)));
}

std::vector<Divisor> linear_system(const Graph& g, const Divisor& d, const Caps& caps) {
  return DivisorClasses(g, caps).linear_system(d);
}

int rank_r(const DivisorClasses& classes, const Divisor& d, std::int64_t max_degree) {
  const Graph& g = classes.graph();
  require_undirected(g, "rank_r");
  require_length(g, d);
  if (d.sum() > max_degree)
    throw CapExceeded("rank_r: degree " + std::to_string(d.sum()) + " exceeds cap " + std::to_string(max_degree));
  if (!classes.has_effective(d)) return -1;
  for (std::int64_t k = 1;; ++k) {
    bool all = true;
    for_each_composition(k, g.size(), [&](const Vec& e) {
      if (all && !classes.has_effective(d - e)) all = false;
    });
    if (!all) return static_cast<int>(k - 1);
  }
}

int rank_r(const Graph& g, const Divisor& d) {
  return rank_r(DivisorClasses(g), d, 2 * genus(g) + 2);
}

Divisor canonical(const Graph& g) {
  require_undirected(g, "canonical");
  return g.outdegrees().array() - 2;
}

std::int64_t riemann_roch_residual(const DivisorClasses& classes, const Divisor& d) {
  const Graph& g = classes.graph();
  const auto gen = genus(g);
  const auto cap = std::max<std::int64_t>(2 * gen + 2, d.sum());
  const Divisor k = canonical(g);
  return rank_r(classes, d, cap) - rank_r(classes, k - d, std::max<std::int64_t>(cap, (k - d).sum())) -
         (d.sum() + 1 - gen);
}

std::int64_t riemann_roch_residual(const Graph& g, const Divisor& d) {
  return riemann_roch_residual(DivisorClasses(g), d);
}

Divisor lift(const Graph& g, const Config& c, std::int64_t sink_value) {
  Divisor d(g.size());
  d.head(g.num_nonsink()) = c;
  d(g.sink()) = sink_value;
  return d;
}

std::vector<Config> maximal_superstables(const Graph& g, const Caps& caps) {
  const auto all = enumerate_superstables(g, caps);
  const std::unordered_set<Config, VecHash, VecEqual> set(all.begin(), all.end());
  std::vector<Config> out;
  for (const auto& c : all) {
    bool maximal = true;
    for (Index v = 0; v < c.size() && maximal; ++v) {
      Config up = c;
      up(v) += 1;
      maximal = set.count(up) == 0;
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

std::vector<Divisor> nonspecial_divisors(const Graph& g, const Caps& caps) {
  require_undirected(g, "nonspecial_divisors");
  const DivisorClasses classes(g, caps);
  std::vector<Divisor> out;
  for (const auto& c : maximal_superstables(g, caps)) {
    Divisor d = lift(g, c, -1);
    if (classes.has_effective(d)) throw std::logic_error("nonspecial representative has an effective equivalent");
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Config> minimal_recurrents(const Graph& g, const Caps& caps) {
  auto all = enumerate_recurrents(g, caps);
  const std::unordered_set<Config, VecHash, VecEqual> set(all.begin(), all.end());
  std::vector<Config> out;
  for (const auto& c : all) {
    bool minimal = true;
    for (Index v = 0; v < c.size() && minimal; ++v) {
      Config down = c;
      down(v) -= 1;
      minimal = set.count(down) == 0;
    }
    if (minimal) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), VecLess{});
  return out;
}

std::vector<Orientation> acyclic_orientations_unique_source(const Graph& g, const Caps& caps) {
  require_undirected(g, "acyclic_orientations_unique_source");
  std::vector<std::pair<Index, Index>> edges;
  for (Index u = 0; u < g.size(); ++u)
    for (Index v = u + 1; v < g.size(); ++v)
      if (g.weight(u, v) > 0) edges.emplace_back(u, v);
  if (edges.size() >= 62 || (std::int64_t{1} << edges.size()) > caps.max_box)
    throw CapExceeded("2^" + std::to_string(edges.size()) + " orientations exceed cap");
  const Index m = g.size();
  std::vector<Orientation> out;
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << edges.size()); ++mask) {
    Orientation o;
    Vec indeg = Vec::Zero(m);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [u, v] = edges[e];
      if ((mask >> e) & 1) std::swap(u, v);
      o.arcs.emplace_back(u, v);
      indeg(v) += g.weight(u, v);
    }
    bool unique_source = indeg(g.sink()) == 0;
    for (Index v = 0; v < m - 1 && unique_source; ++v) unique_source = indeg(v) > 0;
    if (!unique_source) continue;
    // Kahn's algorithm on the simple arcs.
    Vec remaining = Vec::Zero(m);
    for (const auto& [u, v] : o.arcs) remaining(v) += 1;
    std::vector<Index> ready{g.sink()};
    Index removed = 0;
    while (!ready.empty()) {
      const Index u = ready.back();
      ready.pop_back();
      ++removed;
      for (const auto& [a, b] : o.arcs)
        if (a == u && --remaining(b) == 0) ready.push_back(b);
    }
    if (removed != m) continue;
    o.config = indeg.head(m - 1).array() - 1;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace sandpile
