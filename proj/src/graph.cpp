#include "sandpile/graph.hpp"

#include "sandpile/error.hpp"
#include "sandpile/linalg.hpp"

#include <deque>
#include <fstream>
#include <sstream>

namespace sandpile {

std::int64_t to_int64(const Integer& x) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("integer does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

Graph::Graph(std::vector<std::string> names, Matrix<std::int64_t> weights)
    : names_(std::move(names)), w_(std::move(weights)) {
  const Index m = static_cast<Index>(names_.size());
  if (m == 0) throw ValidationError("graph needs at least the sink vertex");
  if (w_.rows() != m || w_.cols() != m) throw ValidationError("weight matrix size does not match vertex count");
  if ((w_.array() < 0).any()) throw ValidationError("negative edge weight");
  out_ = w_.rowwise().sum();
  in_ = w_.colwise().sum().transpose();
  undirected_ = (w_ == w_.transpose());
  const auto ok = reaches_sink(*this);
  for (Index v = 0; v < m; ++v)
    if (!ok[static_cast<std::size_t>(v)])
      throw ValidationError("sink is not globally accessible from vertex '" + names_[static_cast<std::size_t>(v)] + "'");
}

std::optional<Index> Graph::find(std::string_view id) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == id) return static_cast<Index>(i);
  return std::nullopt;
}

std::int64_t Graph::num_edges() const {
  if (!undirected_) return w_.sum();
  std::int64_t e = 0;
  for (Index i = 0; i < size(); ++i)
    for (Index j = i; j < size(); ++j) e += w_(i, j);
  return e;
}

Index GraphBuilder::touch(const std::string& id) {
  if (id.empty()) throw ValidationError("empty vertex id");
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  const Index k = static_cast<Index>(order_.size());
  order_.push_back(id);
  index_.emplace(id, k);
  return k;
}

GraphBuilder& GraphBuilder::vertex(const std::string& id) {
  touch(id);
  return *this;
}

GraphBuilder& GraphBuilder::edge(const std::string& u, const std::string& v, std::int64_t w) {
  if (w < 1) throw ValidationError("edge weight must be positive: " + u + " -> " + v);
  const Index a = touch(u), b = touch(v);
  w_[{a, b}] += w;
  return *this;
}

GraphBuilder& GraphBuilder::uedge(const std::string& u, const std::string& v, std::int64_t w) {
  if (u == v) return edge(u, v, w);
  edge(u, v, w);
  return edge(v, u, w);
}

GraphBuilder& GraphBuilder::sink(const std::string& id) {
  if (sink_) throw ValidationError("sink declared more than once");
  touch(id);
  sink_ = id;
  return *this;
}

Graph GraphBuilder::build() const {
  if (!sink_) throw ValidationError("missing sink directive");
  const Index s = index_.at(*sink_);
  const Index m = static_cast<Index>(order_.size());
  std::vector<Index> pos(static_cast<std::size_t>(m));
  std::vector<std::string> names;
  for (Index v = 0, k = 0; v < m; ++v) {
    if (v == s) continue;
    pos[static_cast<std::size_t>(v)] = k++;
    names.push_back(order_[static_cast<std::size_t>(v)]);
  }
  pos[static_cast<std::size_t>(s)] = m - 1;
  names.push_back(*sink_);
  Matrix<std::int64_t> w = Matrix<std::int64_t>::Zero(m, m);
  for (const auto& [uv, wt] : w_) w(pos[static_cast<std::size_t>(uv.first)], pos[static_cast<std::size_t>(uv.second)]) += wt;
  return Graph(std::move(names), std::move(w));
}

namespace {

std::int64_t parse_weight(const std::string& tok, int line) {
  std::size_t used = 0;
  long long w = 0;
  try {
    w = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw ValidationError("line " + std::to_string(line) + ": bad weight '" + tok + "'");
  if (w < 1) throw ValidationError("line " + std::to_string(line) + ": weight must be positive");
  return w;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  GraphBuilder b;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(line) + ": ";
    if (tok[0] == "sink" && tok.size() == 2) {
      b.sink(tok[1]);
    } else if (tok[0] == "vertex" && tok.size() == 2) {
      b.vertex(tok[1]);
    } else if (tok[0] == "edge" && tok.size() == 4) {
      b.edge(tok[1], tok[2], parse_weight(tok[3], line));
    } else if (tok[0] == "uedge" && tok.size() == 4) {
      b.uedge(tok[1], tok[2], parse_weight(tok[3], line));
    } else {
      throw ValidationError(where + "malformed directive '" + raw + "'");
    }
  }
  return b.build();
}

Graph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::string to_graph_text(const Graph& g) {
  std::ostringstream out;
  out << "sink " << g.name(g.sink()) << "\n";
  for (Index v = 0; v < g.size(); ++v) out << "vertex " << g.name(v) << "\n";
  for (Index u = 0; u < g.size(); ++u)
    for (Index v = 0; v < g.size(); ++v)
      if (g.weight(u, v) > 0) out << "edge " << g.name(u) << " " << g.name(v) << " " << g.weight(u, v) << "\n";
  return out.str();
}

IntMatrix parse_matrix(std::istream& in) {
  std::vector<std::vector<Integer>> rows;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<Integer> row;
    for (std::string t; ls >> t;) {
      try {
        row.emplace_back(t);
      } catch (const std::exception&) {
        throw ValidationError("bad matrix entry '" + t + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != c) throw ValidationError("ragged matrix rows");
    for (Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  return parse_matrix(in);
}

Integer spanning_tree_weight(const Graph& g) { return determinant(reduced_laplacian<Integer>(g)); }

bool is_eulerian(const Graph& g) { return g.outdegrees() == g.weights().colwise().sum().transpose(); }

namespace {

void require_undirected(const Graph& g, const char* what) {
  if (!g.is_undirected()) throw ValidationError(std::string(what) + " requires an undirected graph");
}

}  // namespace

bool is_loopy_tree(const Graph& g) {
  require_undirected(g, "is_loopy_tree");
  Index simple_edges = 0;
  for (Index i = 0; i < g.size(); ++i)
    for (Index j = i + 1; j < g.size(); ++j) simple_edges += g.weight(i, j) > 0;
  // Connected by global accessibility, so a tree iff |E| = |V| - 1.
  return simple_edges == g.size() - 1;
}

std::int64_t genus(const Graph& g) {
  require_undirected(g, "genus");
  return g.num_edges() - g.size() + 1;
}

std::vector<int> sink_distances(const Graph& g) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<Index> q{g.sink()};
  dist[static_cast<std::size_t>(g.sink())] = 0;
  while (!q.empty()) {
    const Index v = q.front();
    q.pop_front();
    for (Index u = 0; u < g.size(); ++u)
      if (g.weight(u, v) > 0 && dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(u);
      }
  }
  return dist;
}

std::vector<bool> reaches_sink(const Graph& g) {
  const auto d = sink_distances(g);
  std::vector<bool> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] >= 0;
  return out;
}

Graph with_sink(const Graph& g, Index new_sink) {
  std::vector<Index> perm;
  for (Index v = 0; v < g.size(); ++v)
    if (v != new_sink) perm.push_back(v);
  perm.push_back(new_sink);
  std::vector<std::string> names;
  Matrix<std::int64_t> w(g.size(), g.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    names.push_back(g.name(perm[i]));
    for (std::size_t j = 0; j < perm.size(); ++j)
      w(static_cast<Index>(i), static_cast<Index>(j)) = g.weight(perm[i], perm[j]);
  }
  return Graph(std::move(names), std::move(w));
}

std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b) {
  using Rational = boost::multiprecision::mpq_rational;
  const Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_integral: shape mismatch");
  Matrix<Rational> m(n, n + 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = Rational(a(i, j));
    m(i, n) = Rational(b(i));
  }
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw std::invalid_argument("solve_integral: singular matrix");
    m.row(k).swap(m.row(p));
    for (Index i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (Index j = k; j <= n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  IntVector x(n);
  for (Index i = 0; i < n; ++i) {
    const Rational v = m(i, n) / m(i, i);
    if (boost::multiprecision::denominator(v) != 1) return std::nullopt;
    x(i) = boost::multiprecision::numerator(v);
  }
  return x;
}

}  // namespace sandpile
