#pragma once

#include "sandpile/divisor.hpp"

#include <cstdint>
#include <vector>

namespace sandpile {

// Stored by facets; a complex with no facets is the void complex, while a
// single empty facet is the complex containing only the empty face.
struct SimplicialComplex {
  Index ground = 0;
  std::vector<std::vector<Index>> facets;

  // Faces of each dimension as bitmasks over the ground set, index k+1 for dimension k.
  std::vector<std::vector<std::uint64_t>> faces() const;
};

SimplicialComplex delta_complex(const DivisorClasses& classes, const Divisor& d);
SimplicialComplex delta_complex(const Graph& g, const Divisor& d);
SimplicialComplex complex_from_supports(Index ground, const std::vector<Divisor>& members);

// Entry k+1 is the rank of reduced homology in dimension k, k >= -1.
std::vector<std::int64_t> reduced_homology_ranks(const SimplicialComplex& c);
std::vector<std::int64_t> reduced_homology_ranks_mod_p(const SimplicialComplex& c, std::int64_t p);

struct BettiEntry {
  int i = 0;
  Divisor degree;  // class representative, sink last
  std::int64_t multiplicity = 0;
};

struct BettiTable {
  std::vector<BettiEntry> graded;     // i >= 1, sorted by (i, deg, representative)
  std::vector<std::int64_t> coarse;   // beta_1 .. beta_n
  std::vector<std::int64_t> hilbert;  // classes of degree d with nonempty linear system
  std::int64_t max_degree = 0;        // last degree scanned

  std::int64_t beta(int i) const;
  // First differences of the homogeneous Hilbert function.
  std::vector<std::int64_t> h_vector() const;
};

BettiTable graded_betti(const Graph& g, const Caps& caps = {});

// 1 + sum_{i>=1} (-1)^i beta_{i,D} t^deg(D) equals h(t) (1-t)^n.
bool euler_check(const Graph& g, const BettiTable& table, const Caps& caps = {});

using Partition = std::vector<std::vector<Index>>;

std::vector<Partition> connected_partitions(const Graph& g, int k);
Graph partition_graph(const Graph& g, const Partition& p);

struct ConjectureRow {
  int k = 0;
  std::int64_t beta = 0;
  std::vector<std::int64_t> contributions;  // one per connected (k+1)-partition
  std::int64_t total() const;
  bool holds() const { return total() == beta; }
};

std::vector<ConjectureRow> conjecture_check(const Graph& g, const Caps& caps = {});
std::vector<ConjectureRow> conjecture_check(const Graph& g, const BettiTable& table, const Caps& caps = {});

}  // namespace sandpile
