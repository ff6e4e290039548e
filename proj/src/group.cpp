#include "sandpile/group.hpp"

#include "sandpile/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

namespace sandpile {

SmithForm<Integer> sandpile_smith_form(const Graph& g) {
  return smith_normal_form(reduced_laplacian<Integer>(g));
}

std::vector<Integer> invariant_factors(const Graph& g) { return sandpile_smith_form(g).factors; }

namespace {

void check_order(const Graph& g, std::int64_t cap) {
  const Integer order = spanning_tree_weight(g);
  if (order > cap) throw CapExceeded("group order " + order.str() + " exceeds cap " + std::to_string(cap));
}

}  // namespace

std::vector<Config> enumerate_recurrents(const Graph& g, const Caps& caps) {
  check_order(g, caps.max_order);
  const Index n = g.num_nonsink();
  std::vector<Config> out{max_stable(g)};
  std::unordered_set<Config, VecHash, VecEqual> seen{out.front()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Index v = 0; v < n; ++v) {
      Config c = out[head];
      c(v) += 1;
      Config r = stabilize(g, std::move(c)).config;
      if (seen.insert(r).second) out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Config> enumerate_superstables(const Graph& g, const Caps& caps) {
  const Config cmax = max_stable(g);
  std::vector<Config> out;
  for (const auto& r : enumerate_recurrents(g, caps)) out.push_back(cmax - r);
  std::sort(out.begin(), out.end(), [](const Config& a, const Config& b) {
    const auto da = a.sum(), db = b.sum();
    return da != db ? da < db : VecLess{}(a, b);
  });
  return out;
}

Config group_add(const Graph& g, const Config& a, const Config& b) {
  const Superstabilizer sup(g);
  if (!sup.is_superstable(a) || !sup.is_superstable(b)) throw ValidationError("group_add: operands must be superstable");
  return sup(a + b).config;
}

std::vector<Point> orbit_points(const Graph& g, std::int64_t max_order) {
  check_order(g, max_order);
  const auto snf = sandpile_smith_form(g);
  const Index n = g.num_nonsink();
  std::vector<Index> rows;
  std::vector<std::int64_t> mod;
  for (std::size_t j = 0; j < snf.factors.size(); ++j)
    if (snf.factors[j] > 1) {
      rows.push_back(static_cast<Index>(j));
      mod.push_back(to_int64(snf.factors[j]));
    }
  // image[j][i] = (U e_i)_j mod d_j
  std::vector<std::vector<std::int64_t>> image(rows.size(), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (Index i = 0; i < n; ++i) {
      Integer r = snf.U(rows[j], i) % mod[j];
      if (r < 0) r += mod[j];
      image[j][static_cast<std::size_t>(i)] = to_int64(r);
    }
  std::vector<Point> out;
  std::vector<std::int64_t> k(rows.size(), 0);
  for (;;) {
    Point p(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      double phase = 0;
      for (std::size_t j = 0; j < rows.size(); ++j)
        phase += static_cast<double>((k[j] * image[j][static_cast<std::size_t>(i)]) % mod[j]) / static_cast<double>(mod[j]);
      p[static_cast<std::size_t>(i)] = std::polar(1.0, 2 * std::numbers::pi * phase);
    }
    out.push_back(std::move(p));
    std::size_t j = 0;
    while (j < k.size() && ++k[j] == mod[j]) k[j++] = 0;
    if (j == k.size()) break;
  }
  return out;
}

double verify_vanishing(const Graph& g, std::int64_t max_order) {
  const auto points = orbit_points(g, max_order);
  const auto gb = groebner_basis(g, false);
  auto eval = [](const Point& p, const Exponent& e) {
    std::complex<double> x = 1;
    for (Index i = 0; i < e.size(); ++i)
      for (std::int64_t k = 0; k < e(i); ++k) x *= p[static_cast<std::size_t>(i)];
    return x;
  };
  double worst = 0;
  for (const auto& b : gb)
    for (const auto& p : points) worst = std::max(worst, std::abs(eval(p, b.plus) - eval(p, b.minus)));
  return worst;
}

}  // namespace sandpile
