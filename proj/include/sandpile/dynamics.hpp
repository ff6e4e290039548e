#pragma once

#include "sandpile/error.hpp"
#include "sandpile/graph.hpp"

#include <vector>

namespace sandpile {

struct Stabilized {
  Config config;
  Script script;  // config = input - reduced_laplacian * script
};

struct Burning {
  Config config;
  Script script;  // config = reduced_laplacian * script, script >= 1
};

// c - reduced_laplacian * e_v; legality is not enforced.
Config fire(const Graph& g, Config c, Index v);
Config unfire(const Graph& g, Config c, Index v);

// reduced_laplacian * sigma without materializing the matrix.
Config topple(const Graph& g, const Script& sigma);

bool is_stable(const Graph& g, const Config& c);
bool is_nonnegative(const Config& c);

Stabilized stabilize(const Graph& g, Config c);
Config stable_add(const Graph& g, const Config& a, const Config& b);
Config max_stable(const Graph& g);

Burning min_burning_config(const Graph& g);

bool is_recurrent(const Graph& g, const Config& c);
bool is_recurrent(const Graph& g, const Config& c, const Burning& b);

Config identity(const Graph& g);

// The recurrent configuration equivalent to c modulo the reduced Laplacian
// lattice; c may have negative entries.
Config recurrent_equivalent(const Graph& g, const Config& c);

// Nonzero scripts 0 <= sigma <= bound sorted by (total, lex).
std::vector<Script> script_box(const Script& bound, const Caps& caps = {});

bool is_superstable(const Graph& g, const Config& c);
Stabilized superstabilize(const Graph& g, const Config& c, const Caps& caps = {});

// Reusable superstabilizer holding the burning script box and its topplings.
class Superstabilizer {
 public:
  explicit Superstabilizer(const Graph& g, const Caps& caps = {});
  Stabilized operator()(const Config& c) const;
  bool is_superstable(const Config& c) const;

 private:
  Graph g_;
  std::vector<Script> scripts_;
  std::vector<Config> loss_;
};

}  // namespace sandpile
