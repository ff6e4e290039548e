#include "sandpile/ideal.hpp"

#include "sandpile/group.hpp"
#include "sandpile/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sandpile {

Binomial Binomial::from_lattice(const Vec& l) {
  return {l.cwiseMax(0), (-l).cwiseMax(0)};
}

SandpileOrder::SandpileOrder(std::vector<Index> precedence) : prec_(std::move(precedence)) {
  std::vector<Index> sorted = prec_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<Index>(i)) throw ValidationError("precedence is not a permutation");
}

SandpileOrder SandpileOrder::for_graph(const Graph& g, bool homogeneous) {
  const auto dist = sink_distances(g);
  std::vector<Index> prec(static_cast<std::size_t>(g.num_nonsink()));
  std::iota(prec.begin(), prec.end(), Index{0});
  std::stable_sort(prec.begin(), prec.end(), [&](Index a, Index b) {
    return dist[static_cast<std::size_t>(a)] > dist[static_cast<std::size_t>(b)];
  });
  if (homogeneous) prec.push_back(g.sink());
  return SandpileOrder(std::move(prec));
}

int SandpileOrder::compare(const Exponent& a, const Exponent& b) const {
  const auto n = static_cast<Index>(prec_.size());
  if (a.size() != n || b.size() != n) throw ValidationError("monomial_cmp: exponent length mismatch");
  const auto da = a.sum(), db = b.sum();
  if (da != db) return da < db ? -1 : 1;
  for (auto it = prec_.rbegin(); it != prec_.rend(); ++it) {
    const auto d = a(*it) - b(*it);
    if (d != 0) return d < 0 ? 1 : -1;
  }
  return 0;
}

Binomial SandpileOrder::normalize(Binomial b) const {
  if (compare(b.plus, b.minus) < 0) std::swap(b.plus, b.minus);
  return b;
}

std::vector<Binomial> toppling_generators(const Graph& g) {
  const Index n = g.num_nonsink();
  std::vector<Binomial> out;
  for (Index i = 0; i < n; ++i) {
    Script e = Script::Zero(n);
    e(i) = 1;
    out.push_back(Binomial::from_lattice(topple(g, e)));
  }
  out.push_back({min_burning_config(g).config, Exponent::Zero(n)});
  return out;
}

bool divides(const Exponent& a, const Exponent& b) { return (a.array() <= b.array()).all(); }

std::vector<Binomial> minimalize_basis(const std::vector<Binomial>& gb) {
  std::vector<Binomial> out;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gb.size() && !redundant; ++j) {
      if (i == j || !divides(gb[j].plus, gb[i].plus)) continue;
      redundant = gb[j].plus != gb[i].plus || j < i;
    }
    if (!redundant) out.push_back(gb[i]);
  }
  return out;
}

std::vector<Binomial> groebner_basis(const Graph& g, bool minimalize, const Caps& caps) {
  const auto order = SandpileOrder::for_graph(g);
  std::vector<Binomial> out;
  for (const auto& sigma : script_box(min_burning_config(g).script, caps)) {
    Binomial b = Binomial::from_lattice(topple(g, sigma));
    if (b.plus == b.minus) continue;
    out.push_back(order.normalize(std::move(b)));
  }
  return minimalize ? minimalize_basis(out) : out;
}

Exponent normal_form(const std::vector<Binomial>& gb, const SandpileOrder& order, Exponent m) {
  if (!is_nonnegative(m)) throw ValidationError("normal_form: negative exponent");
  std::vector<Binomial> oriented;
  oriented.reserve(gb.size());
  for (const auto& b : gb) oriented.push_back(order.normalize(b));
  for (bool step = true; step;) {
    step = false;
    for (const auto& b : oriented)
      if (divides(b.plus, m)) {
        m += b.minus - b.plus;
        step = true;
        break;
      }
  }
  return m;
}

bool reduces_to_zero(const std::vector<Binomial>& gb, const SandpileOrder& order, const Binomial& b) {
  return normal_form(gb, order, b.plus) == normal_form(gb, order, b.minus);
}

bool sink_column_in_span(const Graph& g) {
  const IntMatrix lap = laplacian<Integer>(g);
  const LatticeReducer<Integer> red(IntMatrix(lap.leftCols(g.num_nonsink())));
  return red.contains(lap.col(g.sink()));
}

HomogeneousBasis homogeneous_basis(const Graph& g, bool minimalize, const Caps& caps) {
  HomogeneousBasis out;
  out.hypothesis_holds = sink_column_in_span(g);
  const Index n = g.num_nonsink();
  for (const auto& b : groebner_basis(g, minimalize, caps)) {
    Binomial h{Exponent::Zero(n + 1), Exponent::Zero(n + 1)};
    h.plus.head(n) = b.plus;
    h.minus.head(n) = b.minus;
    const auto gap = b.plus.sum() - b.minus.sum();
    if (gap >= 0)
      h.minus(n) = gap;
    else
      h.plus(n) = -gap;
    out.basis.push_back(std::move(h));
  }
  return out;
}

HVector h_vector(const Graph& g, const Caps& caps) {
  HVector out;
  for (const auto& c : enumerate_superstables(g, caps)) {
    const auto d = static_cast<std::size_t>(c.sum());
    if (out.h.size() <= d) out.h.resize(d + 1, 0);
    out.h[d] += 1;
  }
  out.postulation = static_cast<int>(out.h.size()) - 1;
  return out;
}

std::int64_t affine_hilbert(const Graph& g, std::int64_t d, const Caps& caps) {
  if (d < 0) throw ValidationError("affine_hilbert: negative degree");
  const auto h = h_vector(g, caps).h;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < h.size() && static_cast<std::int64_t>(i) <= d; ++i) total += h[i];
  return total;
}

std::string binomial_str(const Binomial& b) {
  auto vec = [](const Exponent& e) {
    std::ostringstream s;
    s << "x^(";
    for (Index i = 0; i < e.size(); ++i) s << (i ? "," : "") << e(i);
    s << ")";
    return s.str();
  };
  return vec(b.plus) + " - " + vec(b.minus);
}

}  // namespace sandpile
