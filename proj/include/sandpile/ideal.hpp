#pragma once

#include "sandpile/dynamics.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sandpile {

// x^plus - x^minus with disjoint supports.
struct Binomial {
  Exponent plus;
  Exponent minus;

  static Binomial from_lattice(const Vec& l);
  Vec lattice_vector() const { return plus - minus; }
  bool operator==(const Binomial& o) const { return plus == o.plus && minus == o.minus; }
};

// Graded reverse lexicographic order over a variable precedence
// (precedence[0] is the largest variable).
class SandpileOrder {
 public:
  explicit SandpileOrder(std::vector<Index> precedence);

  // Farther from the sink ranks higher; ties go to the lower index. The
  // homogeneous variant appends the sink as the smallest variable.
  static SandpileOrder for_graph(const Graph& g, bool homogeneous = false);

  // Negative, zero or positive as a <, =, > b.
  int compare(const Exponent& a, const Exponent& b) const;
  bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }
  const std::vector<Index>& precedence() const { return prec_; }

  // Orients b so that plus is the leading term.
  Binomial normalize(Binomial b) const;

 private:
  std::vector<Index> prec_;
};

std::vector<Binomial> toppling_generators(const Graph& g);

// All nonzero binomials of E(reduced_laplacian * sigma) for 0 <= sigma <= sigma_b,
// ordered by sigma, with plus as leading term.
std::vector<Binomial> groebner_basis(const Graph& g, bool minimalize, const Caps& caps = {});

// Drops members whose leading term is divisible by an earlier-kept or strictly
// smaller leading term.
std::vector<Binomial> minimalize_basis(const std::vector<Binomial>& gb);

bool divides(const Exponent& a, const Exponent& b);

Exponent normal_form(const std::vector<Binomial>& gb, const SandpileOrder& order, Exponent m);

// True iff the binomial reduces to zero.
bool reduces_to_zero(const std::vector<Binomial>& gb, const SandpileOrder& order, const Binomial& b);

struct HomogeneousBasis {
  // Sink column of the full Laplacian lies in the span of the others.
  bool hypothesis_holds = false;
  // Homogenization of the affine basis by the sink variable (last coordinate).
  std::vector<Binomial> basis;
};

bool sink_column_in_span(const Graph& g);
HomogeneousBasis homogeneous_basis(const Graph& g, bool minimalize = false, const Caps& caps = {});

struct HVector {
  std::vector<std::int64_t> h;
  int postulation = 0;
};

HVector h_vector(const Graph& g, const Caps& caps = {});
std::int64_t affine_hilbert(const Graph& g, std::int64_t d, const Caps& caps = {});

// Sparse bivariate integer polynomial keyed by (x-degree, y-degree).
class Polynomial2 {
 public:
  Polynomial2() = default;
  static Polynomial2 monomial(int i, int j, Integer c = 1);

  Polynomial2& operator+=(const Polynomial2& o);
  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);
  bool operator==(const Polynomial2& o) const { return terms_ == o.terms_; }

  Integer coefficient(int i, int j) const;
  Integer evaluate(const Integer& x, const Integer& y) const;
  // Coefficients of p(x0, y) in increasing powers of y.
  std::vector<Integer> at_x(const Integer& x0) const;
  const std::map<std::pair<int, int>, Integer>& terms() const { return terms_; }
  std::string str() const;

 private:
  void add_term(int i, int j, const Integer& c);
  std::map<std::pair<int, int>, Integer> terms_;
};

// Deletion-contraction with memoization; weight-w edges count as w parallel edges.
Polynomial2 tutte(const Graph& g);

// T(1,y) equals the reversed h-polynomial and T(1,1) equals the group order.
bool merino_check(const Graph& g);

std::string binomial_str(const Binomial& b);

}  // namespace sandpile
