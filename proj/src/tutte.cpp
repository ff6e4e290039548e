#include "sandpile/ideal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sandpile {

Polynomial2 Polynomial2::monomial(int i, int j, Integer c) {
  Polynomial2 p;
  p.add_term(i, j, c);
  return p;
}

void Polynomial2::add_term(int i, int j, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  Polynomial2 out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

Integer Polynomial2::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer Polynomial2::evaluate(const Integer& x, const Integer& y) const {
  Integer total = 0;
  for (const auto& [k, c] : terms_) total += c * boost::multiprecision::pow(x, static_cast<unsigned>(k.first)) *
                                             boost::multiprecision::pow(y, static_cast<unsigned>(k.second));
  return total;
}

std::vector<Integer> Polynomial2::at_x(const Integer& x0) const {
  std::vector<Integer> out;
  for (const auto& [k, c] : terms_) {
    const auto j = static_cast<std::size_t>(k.second);
    if (out.size() <= j) out.resize(j + 1, 0);
    out[j] += c * boost::multiprecision::pow(x0, static_cast<unsigned>(k.first));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string Polynomial2::str() const {
  if (terms_.empty()) return "0";
  // Ascending total degree, then by x-degree descending.
  std::vector<std::pair<std::pair<int, int>, Integer>> t(terms_.begin(), terms_.end());
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da < db;
    return a.first.first > b.first.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : t) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    const bool bare = k.first == 0 && k.second == 0;
    if (mag != 1 || bare) out << mag;
    auto var = [&](const char* v, int e) {
      if (e == 0) return;
      out << v;
      if (e > 1) out << "^" << e;
    };
    var("x", k.first);
    var("y", k.second);
  }
  return out.str();
}

namespace {

// Undirected loopless multigraph as a symmetric weight matrix.
struct Multigraph {
  int k = 0;
  std::vector<std::int64_t> w;
  std::int64_t& at(int i, int j) { return w[static_cast<std::size_t>(i * k + j)]; }
  std::int64_t at(int i, int j) const { return w[static_cast<std::size_t>(i * k + j)]; }
};

// Relabels by (degree, neighbour degrees) so that isomorphic inputs often share
// a key; the key always encodes the full graph, so collisions are impossible.
std::vector<std::int64_t> canonical_key(const Multigraph& g) {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(g.k), 0);
  for (int i = 0; i < g.k; ++i)
    for (int j = 0; j < g.k; ++j) deg[static_cast<std::size_t>(i)] += g.at(i, j);
  std::vector<std::vector<std::int64_t>> sig(static_cast<std::size_t>(g.k));
  for (int i = 0; i < g.k; ++i) {
    auto& s = sig[static_cast<std::size_t>(i)];
    s.push_back(deg[static_cast<std::size_t>(i)]);
    std::vector<std::int64_t> nb;
    for (int j = 0; j < g.k; ++j)
      if (g.at(i, j) > 0) nb.push_back(deg[static_cast<std::size_t>(j)] * 1000 + g.at(i, j));
    std::sort(nb.begin(), nb.end());
    s.insert(s.end(), nb.begin(), nb.end());
  }
  std::vector<int> perm(static_cast<std::size_t>(g.k));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
  std::vector<std::int64_t> key{g.k};
  for (int i = 0; i < g.k; ++i)
    for (int j = i + 1; j < g.k; ++j) key.push_back(g.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
  return key;
}

bool connected_without(const Multigraph& g, int u, int v) {
  std::vector<char> seen(static_cast<std::size_t>(g.k), 0);
  std::vector<int> stack{u};
  seen[static_cast<std::size_t>(u)] = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    if (a == v) return true;
    for (int b = 0; b < g.k; ++b) {
      if (seen[static_cast<std::size_t>(b)] || g.at(a, b) == 0) continue;
      if ((a == u && b == v) || (a == v && b == u)) continue;
      seen[static_cast<std::size_t>(b)] = 1;
      stack.push_back(b);
    }
  }
  return false;
}

Multigraph contract(const Multigraph& g, int u, int v) {
  Multigraph out;
  out.k = g.k - 1;
  out.w.assign(static_cast<std::size_t>(out.k * out.k), 0);
  auto map = [&](int a) { return a == v ? u - (u > v) : a - (a > v); };
  for (int a = 0; a < g.k; ++a)
    for (int b = 0; b < g.k; ++b) {
      if ((a == u && b == v) || (a == v && b == u)) continue;
      const int ma = map(a), mb = map(b);
      if (ma != mb) out.at(ma, mb) += g.at(a, b);
    }
  return out;
}

class TutteSolver {
 public:
  Polynomial2 solve(const Multigraph& g) {
    int u = -1, v = -1;
    for (int a = 0; a < g.k && u < 0; ++a)
      for (int b = a + 1; b < g.k; ++b)
        if (g.at(a, b) > 0) {
          u = a;
          v = b;
          break;
        }
    if (u < 0) return Polynomial2::monomial(0, 0);
    auto key = canonical_key(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::int64_t w = g.at(u, v);
    Polynomial2 parallel;  // 1 + y + ... + y^{w-1}
    for (int i = 0; i < w; ++i) parallel += Polynomial2::monomial(0, i);
    const Polynomial2 contracted = solve(contract(g, u, v));
    Polynomial2 result;
    if (!connected_without(g, u, v)) {
      result = (parallel + Polynomial2::monomial(1, 0) + Polynomial2::monomial(0, 0, -1)) * contracted;
    } else {
      Multigraph deleted = g;
      deleted.at(u, v) = deleted.at(v, u) = 0;
      result = solve(deleted) + parallel * contracted;
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  std::map<std::vector<std::int64_t>, Polynomial2> memo_;
};

}  // namespace

Polynomial2 tutte(const Graph& g) {
  if (!g.is_undirected()) throw ValidationError("tutte requires an undirected graph");
  Multigraph m;
  m.k = static_cast<int>(g.size());
  m.w.assign(static_cast<std::size_t>(m.k * m.k), 0);
  std::int64_t loops = 0;
  for (int i = 0; i < m.k; ++i)
    for (int j = 0; j < m.k; ++j) {
      if (i == j)
        loops += g.weight(i, i);
      else
        m.at(i, j) = g.weight(i, j);
    }
  TutteSolver solver;
  return Polynomial2::monomial(0, static_cast<int>(loops)) * solver.solve(m);
}

bool merino_check(const Graph& g) {
  if (!g.is_undirected()) throw ValidationError("merino_check requires an undirected graph");
  const Polynomial2 t = tutte(g);
  const auto h = h_vector(g).h;
  const auto t1 = t.at_x(1);
  std::vector<Integer> reversed(h.rbegin(), h.rend());
  if (t1 != reversed) return false;
  return t.evaluate(1, 1) == spanning_tree_weight(g);
}

}  // namespace sandpile
