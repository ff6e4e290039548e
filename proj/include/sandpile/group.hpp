#pragma once

#include "sandpile/dynamics.hpp"
#include "sandpile/linalg.hpp"

#include <complex>
#include <vector>

namespace sandpile {

// Smith form of the reduced Laplacian with its unimodular transforms.
SmithForm<Integer> sandpile_smith_form(const Graph& g);
std::vector<Integer> invariant_factors(const Graph& g);

// BFS from c_max under stable addition of single grains.
std::vector<Config> enumerate_recurrents(const Graph& g, const Caps& caps = {});

// c_max - r over recurrents r, sorted by (degree, lex).
std::vector<Config> enumerate_superstables(const Graph& g, const Caps& caps = {});

Config group_add(const Graph& g, const Config& a, const Config& b);

using Point = std::vector<std::complex<double>>;

// One point per character of the sandpile group: chi(e_1), ..., chi(e_n).
std::vector<Point> orbit_points(const Graph& g, std::int64_t max_order = 10'000);

// Max |x^{u+} - x^{u-}| over Groebner basis binomials and orbit points.
double verify_vanishing(const Graph& g, std::int64_t max_order = 10'000);

}  // namespace sandpile
