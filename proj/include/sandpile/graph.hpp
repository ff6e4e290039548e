#pragma once

#include "sandpile/integer.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sandpile {

// Weighted directed multigraph with a globally accessible sink.
// Vertex indices 0..n-1 are the nonsink vertices in first-appearance order;
// index n is the sink.
class Graph {
 public:
  Graph(std::vector<std::string> names, Matrix<std::int64_t> weights);

  Index size() const { return static_cast<Index>(names_.size()); }
  Index num_nonsink() const { return size() - 1; }
  Index sink() const { return size() - 1; }

  const std::string& name(Index v) const { return names_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Index> find(std::string_view id) const;

  std::int64_t weight(Index u, Index v) const { return w_(u, v); }
  const Matrix<std::int64_t>& weights() const { return w_; }
  std::int64_t outdeg(Index v) const { return out_(v); }
  std::int64_t indeg(Index v) const { return in_(v); }
  const Vec& outdegrees() const { return out_; }

  bool is_undirected() const { return undirected_; }
  bool sink_is_absolute() const { return out_(sink()) == w_(sink(), sink()); }

  // Total weight; each undirected pair counted once for undirected graphs.
  std::int64_t num_edges() const;

 private:
  std::vector<std::string> names_;
  Matrix<std::int64_t> w_;
  Vec out_, in_;
  bool undirected_ = false;
};

class GraphBuilder {
 public:
  GraphBuilder& vertex(const std::string& id);
  GraphBuilder& edge(const std::string& u, const std::string& v, std::int64_t w = 1);
  GraphBuilder& uedge(const std::string& u, const std::string& v, std::int64_t w = 1);
  GraphBuilder& sink(const std::string& id);
  // Throws ValidationError if the sink is missing or not globally accessible.
  Graph build() const;

 private:
  Index touch(const std::string& id);
  std::vector<std::string> order_;
  std::map<std::string, Index> index_;
  std::map<std::pair<Index, Index>, std::int64_t> w_;
  std::optional<std::string> sink_;
};

Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
Graph read_graph_file(const std::string& path);
std::string to_graph_text(const Graph& g);

IntMatrix parse_matrix(std::istream& in);
IntMatrix read_matrix_file(const std::string& path);

// Column j is outdeg(v_j) v_j - sum_u wt(v_j, u) u.
template <typename S = Integer>
Matrix<S> laplacian(const Graph& g) {
  const Index m = g.size();
  Matrix<S> out = Matrix<S>::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    out(j, j) = S(g.outdeg(j));
    for (Index i = 0; i < m; ++i) out(i, j) -= S(g.weight(j, i));
  }
  return out;
}

template <typename S = Integer>
Matrix<S> reduced_laplacian(const Graph& g) {
  const Index n = g.num_nonsink();
  return laplacian<S>(g).topLeftCorner(n, n);
}

Integer spanning_tree_weight(const Graph& g);

bool is_eulerian(const Graph& g);
bool is_loopy_tree(const Graph& g);
std::int64_t genus(const Graph& g);

// Unweighted directed distance from each vertex to the sink.
std::vector<int> sink_distances(const Graph& g);

// Vertices from which the sink can be reached.
std::vector<bool> reaches_sink(const Graph& g);

// Same vertices and edges with a different sink.
Graph with_sink(const Graph& g, Index new_sink);

}  // namespace sandpile
