#pragma once

#include "sandpile/dynamics.hpp"
#include "sandpile/linalg.hpp"

#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sandpile {

// Calls fn on every nonnegative vector of the given length summing to total,
// in reverse lexicographic order of the first coordinate.
void for_each_composition(std::int64_t total, Index parts, const std::function<void(const Vec&)>& fn);
Integer composition_count(std::int64_t total, Index parts);

// Divisor classes modulo the column lattice of the full Laplacian.
class DivisorClasses {
 public:
  explicit DivisorClasses(const Graph& g, const Caps& caps = {});

  // Canonical coset representative; equal keys iff linearly equivalent.
  Divisor key(const Divisor& d) const;
  bool equivalent(const Divisor& a, const Divisor& b) const;
  // |d| is nonempty; memoized per degree.
  bool has_effective(const Divisor& d) const;
  std::vector<Divisor> linear_system(const Divisor& d) const;
  const Graph& graph() const { return g_; }

 private:
  Graph g_;
  Caps caps_;
  LatticeReducer<std::int64_t> reducer_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, std::unordered_set<Divisor, VecHash, VecEqual>> effective_;
};

bool is_equivalent(const Graph& g, const Divisor& a, const Divisor& b);
std::vector<Divisor> linear_system(const Graph& g, const Divisor& d, const Caps& caps = {});

// Default degree cap is 2g + 2.
int rank_r(const Graph& g, const Divisor& d);
int rank_r(const DivisorClasses& classes, const Divisor& d, std::int64_t max_degree);

Divisor canonical(const Graph& g);
std::int64_t riemann_roch_residual(const Graph& g, const Divisor& d);
std::int64_t riemann_roch_residual(const DivisorClasses& classes, const Divisor& d);

std::vector<Config> maximal_superstables(const Graph& g, const Caps& caps = {});
std::vector<Divisor> nonspecial_divisors(const Graph& g, const Caps& caps = {});
std::vector<Config> minimal_recurrents(const Graph& g, const Caps& caps = {});

struct Orientation {
  std::vector<std::pair<Index, Index>> arcs;  // tail, head over the simple underlying graph
  Config config;                              // sum (indeg(v) - 1) v over nonsink v
};

std::vector<Orientation> acyclic_orientations_unique_source(const Graph& g, const Caps& caps = {});

// Full divisor c + k s from a configuration.
Divisor lift(const Graph& g, const Config& c, std::int64_t sink_value);

}  // namespace sandpile
