#include "sandpile/group.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace sandpile;
using namespace sandpile::testing;

namespace {

std::set<Config, VecLess> as_set(const std::vector<Config>& xs) { return {xs.begin(), xs.end()}; }

std::vector<Integer> nontrivial(std::vector<Integer> f) {
  f.erase(std::remove(f.begin(), f.end(), Integer(1)), f.end());
  return f;
}

}  // namespace

TEST_CASE("invariant factors of the named graphs") {
  CHECK(invariant_factors(mixed4()) == std::vector<Integer>{1, 1, 21});
  CHECK(invariant_factors(diamond()) == std::vector<Integer>{1, 1, 8});
  CHECK(invariant_factors(gorenstein4()) == std::vector<Integer>{1, 1, 5});
  CHECK(invariant_factors(k4()) == std::vector<Integer>{1, 4, 4});
}

TEST_CASE("invariant factors match determinantal divisors") {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const Graph g = random_digraph(rng, static_cast<int>(uniform(rng, 2, 5)), 4);
    const auto dd = determinantal_divisors(reduced_laplacian(g));
    const auto f = invariant_factors(g);
    REQUIRE(f.size() == dd.size());
    Integer prev = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
      CHECK(f[k] == dd[k] / prev);
      prev = dd[k];
    }
  }
}

TEST_CASE("recurrents of the mixed four-vertex graph") {
  const std::vector<std::vector<std::int64_t>> listed = {
      {3, 3, 4}, {3, 3, 3}, {3, 2, 4}, {2, 3, 4}, {3, 3, 2}, {3, 2, 3}, {2, 3, 3}, {3, 1, 4}, {2, 2, 4}, {1, 3, 4}, {3, 2, 2},
      {2, 2, 3}, {1, 3, 3}, {3, 0, 4}, {2, 1, 4}, {1, 2, 4}, {0, 3, 4}, {1, 2, 3}, {0, 3, 3}, {2, 0, 4}, {1, 1, 4}};
  std::set<Config, VecLess> expect;
  for (const auto& c : listed) expect.insert(to_vec(c));
  const auto rec = enumerate_recurrents(mixed4());
  CHECK(rec.size() == 21);
  CHECK(as_set(rec) == expect);
}

TEST_CASE("diamond recurrents and superstables") {
  const Graph g = diamond();
  std::set<Config, VecLess> rec, sup;
  for (auto c : {make_vec({1, 2, 2}), make_vec({0, 2, 2}), make_vec({1, 1, 2}), make_vec({1, 2, 1}), make_vec({0, 1, 2}),
                 make_vec({0, 2, 1}), make_vec({1, 0, 2}), make_vec({1, 2, 0})})
    rec.insert(c);
  for (auto c : {make_vec({0, 0, 0}), make_vec({1, 0, 0}), make_vec({0, 1, 0}), make_vec({0, 0, 1}), make_vec({1, 1, 0}),
                 make_vec({1, 0, 1}), make_vec({0, 2, 0}), make_vec({0, 0, 2})})
    sup.insert(c);
  CHECK(as_set(enumerate_recurrents(g)) == rec);
  const auto ss = enumerate_superstables(g);
  CHECK(as_set(ss) == sup);
  for (std::size_t i = 1; i < ss.size(); ++i) CHECK(ss[i - 1].sum() <= ss[i].sum());
}

TEST_CASE("enumeration respects the order cap") {
  Caps caps;
  caps.max_order = 20;
  CHECK_THROWS_AS(enumerate_recurrents(mixed4(), caps), CapExceeded);
  caps.max_order = 21;
  CHECK(enumerate_recurrents(mixed4(), caps).size() == 21);
}

TEST_CASE("group law on superstable representatives") {
  Rng rng(42);
  for (const auto& g : {mixed4(), diamond(), gorenstein4(), directed4()}) {
    const auto sup = enumerate_superstables(g);
    const auto set = as_set(sup);
    const Config zero = Config::Zero(g.num_nonsink());
    auto pick = [&] { return sup[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(sup.size()) - 1))]; };
    for (int t = 0; t < 30; ++t) {
      const Config a = pick(), b = pick(), c = pick();
      CHECK(set.count(group_add(g, a, b)) == 1);
      CHECK(group_add(g, a, b) == group_add(g, b, a));
      CHECK(group_add(g, group_add(g, a, b), c) == group_add(g, a, group_add(g, b, c)));
      CHECK(group_add(g, a, zero) == a);
      // the class map to recurrents is a homomorphism onto stable addition
      CHECK(recurrent_equivalent(g, group_add(g, a, b)) ==
            stable_add(g, recurrent_equivalent(g, a), recurrent_equivalent(g, b)));
    }
  }
}

TEST_CASE("invariant factors do not depend on the sink for Eulerian graphs") {
  std::vector<Graph> graphs = connected_graphs_up_to(6);
  Rng rng(43);
  for (int t = 0; t < 30; ++t) graphs.push_back(random_eulerian(rng, static_cast<int>(uniform(rng, 2, 6))));
  for (const auto& g : graphs) {
    REQUIRE(is_eulerian(g));
    const auto base = nontrivial(invariant_factors(g));
    for (Index s = 0; s + 1 < g.size(); ++s) REQUIRE(nontrivial(invariant_factors(with_sink(g, s))) == base);
  }
}

TEST_CASE("orbit points form the character group") {
  for (const auto& g : {mixed4(), diamond(), gorenstein4()}) {
    const auto pts = orbit_points(g);
    CHECK(Integer(pts.size()) == spanning_tree_weight(g));
    std::set<std::vector<std::pair<long, long>>> distinct;
    for (const auto& p : pts) {
      std::vector<std::pair<long, long>> key;
      for (const auto& z : p) {
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
        key.emplace_back(std::lround(z.real() * 1e6), std::lround(z.imag() * 1e6));
      }
      distinct.insert(key);
    }
    CHECK(distinct.size() == pts.size());
    CHECK(verify_vanishing(g) < 1e-9);
  }
  CHECK_THROWS_AS(orbit_points(mixed4(), 10), CapExceeded);
}
