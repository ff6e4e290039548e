#pragma once

#include "sandpile/resolution.hpp"

#include <map>
#include <optional>
#include <string>

namespace sandpile {

// Reduced-Laplacian form of a full-rank lattice basis: same column lattice,
// positive diagonal, nonpositive off-diagonal, column 0 of positive degree and
// every other column of degree zero, zero strictly above the superdiagonal.
IntMatrix lattice_to_laplacian_matrix(const IntMatrix& m);

// Graph v1..vn plus a fresh sink whose reduced Laplacian is the matrix above.
Graph lattice_to_laplacian(const IntMatrix& m);

// Graph on v1..vn plus sink with the given reduced Laplacian.
Graph graph_from_reduced_laplacian(const IntMatrix& m);

// Full Laplacian without the sink column.
IntMatrix restricted_laplacian(const Graph& g);

bool is_mixed(const IntMatrix& m);
bool is_mixed_dominating(const IntMatrix& m, int max_dim = 8);

// Joins s1 into g2 with edge weights beta (keyed by g2 vertex id) and adds
// back-edges s1 -> u of weight -d(u) for nonsink u of g1.
Graph wire(const Graph& g1, const Graph& g2, const Divisor& d, const std::map<std::string, std::int64_t>& beta);

struct Classification {
  std::optional<bool> loopy_tree;  // undirected graphs only
  bool complete_intersection = false;
  bool gorenstein = false;
  std::int64_t beta_1 = 0;
  std::int64_t beta_n = 0;
  std::vector<std::int64_t> h_vector;
  bool h_symmetric = false;
};

Classification classify(const Graph& g, const BettiTable& table);
Classification classify(const Graph& g, const Caps& caps = {});
bool is_complete_intersection(const Graph& g, const Caps& caps = {});
bool is_gorenstein(const Graph& g, const Caps& caps = {});

}  // namespace sandpile
