#include "sandpile/structure.hpp"

#include <algorithm>
#include <set>

namespace sandpile {

namespace {

using detail::abs_value;
using detail::floor_div;

Integer column_degree(const IntMatrix& m, Index j) {
  Integer s = 0;
  for (Index i = 0; i < m.rows(); ++i) s += m(i, j);
  return s;
}

// Euclid over values f(j), j in [first, cols): afterwards exactly one column,
// moved to `first`, has nonzero value. Ties pick the lowest index.
template <typename ValueFn>
void euclid(IntMatrix& m, Index first, ValueFn value) {
  for (;;) {
    Index best = -1;
    Integer best_abs;
    std::vector<Index> nonzero;
    for (Index j = first; j < m.cols(); ++j) {
      const Integer v = value(m, j);
      if (v == 0) continue;
      nonzero.push_back(j);
      if (best < 0 || abs_value(v) < best_abs) {
        best = j;
        best_abs = abs_value(v);
      }
    }
    if (best < 0) throw ValidationError("lattice_to_laplacian: input is singular");
    if (nonzero.size() == 1) {
      if (best != first) m.col(first).swap(m.col(best));
      return;
    }
    const Integer pivot = value(m, best);
    for (Index j : nonzero) {
      if (j == best) continue;
      const Integer q = floor_div(value(m, j), pivot);
      m.col(j) -= q * m.col(best);
    }
  }
}

}  // namespace

IntMatrix lattice_to_laplacian_matrix(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw ValidationError("lattice_to_laplacian: matrix must be square");
  const Index n = input.rows();
  if (n == 0) throw ValidationError("lattice_to_laplacian: empty matrix");
  if (determinant(input) == 0) throw ValidationError("lattice_to_laplacian: input is singular");
  IntMatrix c = input;

  euclid(c, 0, column_degree);
  if (column_degree(c, 0) < 0) c.col(0) = -c.col(0);

  for (Index k = 1; k + 1 < n; ++k) {
    euclid(c, k, [k](const IntMatrix& m, Index j) { return m(k - 1, j); });
    if (c(k - 1, k) < 0) c.col(k) = -c.col(k);
    c.col(k) = -c.col(k);
  }
  if (n >= 2 && c(n - 2, n - 1) > 0) c.col(n - 1) = -c.col(n - 1);

  for (Index k = n - 2; k >= 0; --k) {
    for (Index i = k + 2; i < n; ++i)
      while (c(i - 1, k) > 0) c.col(k) += c.col(i);
    IntVector v = -c.col(k + 1);
    for (Index i = k + 2; i < n; ++i) v = abs_value(c(i - 1, i)) * v + v(i - 1) * c.col(i);
    while (c(k, k) <= 0 || c(n - 1, k) > 0) c.col(k) += v;
  }
  return c;
}

Graph graph_from_reduced_laplacian(const IntMatrix& m) {
  const Index n = m.rows();
  std::vector<std::string> names;
  for (Index i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
  names.push_back("s");
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(n + 1, n + 1);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      if (m(i, j) > 0) throw ValidationError("reduced Laplacian has a positive off-diagonal entry");
      w(j, i) = to_int64(-m(i, j));
    }
    const Integer deg = column_degree(m, j);
    if (deg < 0) throw ValidationError("reduced Laplacian has a column of negative degree");
    w(j, n) = to_int64(deg);
  }
  return Graph(std::move(names), std::move(w));
}

Graph lattice_to_laplacian(const IntMatrix& m) { return graph_from_reduced_laplacian(lattice_to_laplacian_matrix(m)); }

IntMatrix restricted_laplacian(const Graph& g) { return laplacian<Integer>(g).leftCols(g.num_nonsink()); }

namespace {

bool column_mixed(const IntMatrix& m, const std::vector<Index>& rows, Index col) {
  bool pos = false, neg = false;
  for (Index r : rows) {
    pos = pos || m(r, col) > 0;
    neg = neg || m(r, col) < 0;
  }
  return pos && neg;
}

void subsets(Index n, Index k, Index start, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
  if (static_cast<Index>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (Index i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Index>> choose(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace

bool is_mixed(const IntMatrix& m) {
  std::vector<Index> rows(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  for (Index j = 0; j < m.cols(); ++j)
    if (!column_mixed(m, rows, j)) return false;
  return true;
}

bool is_mixed_dominating(const IntMatrix& m, int max_dim) {
  if (m.rows() > max_dim || m.cols() > max_dim)
    throw CapExceeded("mixed-dominating scan limited to " + std::to_string(max_dim) + " rows and columns");
  const Index top = std::min(m.rows(), m.cols());
  for (Index k = 2; k <= top; ++k) {
    const auto row_sets = choose(m.rows(), k);
    for (const auto& cols : choose(m.cols(), k))
      for (const auto& rows : row_sets) {
        bool mixed = true;
        for (Index j : cols) mixed = mixed && column_mixed(m, rows, j);
        if (mixed) return false;
      }
  }
  return true;
}

Graph wire(const Graph& g1, const Graph& g2, const Divisor& d, const std::map<std::string, std::int64_t>& beta) {
  if (!g1.sink_is_absolute() || !g2.sink_is_absolute()) throw ValidationError("wire: both graphs need absolute sinks");
  if (d.size() != g1.size()) throw ValidationError("wire: divisor length does not match the first graph");
  for (const auto& name : g1.names())
    if (g2.find(name)) throw ValidationError("wire: vertex '" + name + "' appears in both graphs");
  const Index n1 = g1.size(), n2 = g2.size();
  for (Index u = 0; u < n1 - 1; ++u)
    if (d(u) > 0) throw ValidationError("wire: divisor may be positive only at the first sink");
  std::int64_t total = 0;
  for (const auto& [id, w] : beta) {
    if (!g2.find(id)) throw ValidationError("wire: unknown vertex '" + id + "' in the second graph");
    if (w < 0) throw ValidationError("wire: negative edge weight");
    total += w;
  }
  if (total <= 0) throw ValidationError("wire: at least one edge from the first sink into the second graph is required");
  if (d.sum() != total)
    throw ValidationError("wire: divisor degree must equal the total weight of the edges into the second graph");
  if (!DivisorClasses(g1).has_effective(d)) throw ValidationError("wire: wiring divisor has an empty linear system");

  std::vector<std::string> names(g1.names());
  names.insert(names.end(), g2.names().begin(), g2.names().end());
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(n1 + n2, n1 + n2);
  w.topLeftCorner(n1, n1) = g1.weights();
  w.bottomRightCorner(n2, n2) = g2.weights();
  const Index s1 = n1 - 1;
  for (Index u = 0; u < s1; ++u) w(s1, u) = -d(u);
  for (const auto& [id, wt] : beta) w(s1, n1 + *g2.find(id)) += wt;
  return Graph(std::move(names), std::move(w));
}

Classification classify(const Graph& g, const BettiTable& table) {
  Classification c;
  if (g.is_undirected()) c.loopy_tree = is_loopy_tree(g);
  const Index n = g.num_nonsink();
  c.beta_1 = table.beta(1);
  c.beta_n = n == 0 ? 1 : table.beta(static_cast<int>(n));
  c.complete_intersection = c.beta_1 == n;
  c.gorenstein = c.beta_n == 1;
  c.h_vector = table.h_vector();
  c.h_symmetric = std::equal(c.h_vector.begin(), c.h_vector.end(), c.h_vector.rbegin());
  if (c.h_symmetric != c.gorenstein)
    throw std::logic_error("Gorenstein verdict disagrees with h-vector symmetry");
  return c;
}

Classification classify(const Graph& g, const Caps& caps) { return classify(g, graded_betti(g, caps)); }

bool is_complete_intersection(const Graph& g, const Caps& caps) { return classify(g, caps).complete_intersection; }

bool is_gorenstein(const Graph& g, const Caps& caps) { return classify(g, caps).gorenstein; }

}  // namespace sandpile
