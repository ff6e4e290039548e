#pragma once

// Exact integer linear algebra over a generic scalar. Instantiated with Integer
// for exact results and with std::int64_t for hot paths, where intermediate
// products are widened to 128 bits and narrowing failures throw.

#include "sandpile/integer.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sandpile {

namespace detail {

template <typename S>
struct Wide {
  using type = S;
  static S narrow(const type& x) { return x; }
};

template <>
struct Wide<std::int64_t> {
  using type = __int128;
  static std::int64_t narrow(type x) {
    if (x > static_cast<type>(INT64_MAX) || x < static_cast<type>(INT64_MIN))
      throw std::overflow_error("int64 overflow in exact linear algebra");
    return static_cast<std::int64_t>(x);
  }
};

template <typename S>
S abs_value(const S& x) {
  return x < 0 ? S(-x) : x;
}

// Rounds toward negative infinity.
template <typename S>
S floor_div(const S& a, const S& b) {
  S q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// a*x - b*y with widened intermediates.
template <typename S>
S mul_sub(const S& a, const S& x, const S& b, const S& y) {
  using W = typename Wide<S>::type;
  return Wide<S>::narrow(W(a) * W(x) - W(b) * W(y));
}

template <typename S>
S mul_sub_div(const S& a, const S& x, const S& b, const S& y, const S& d) {
  using W = typename Wide<S>::type;
  return Wide<S>::narrow((W(a) * W(x) - W(b) * W(y)) / W(d));
}

template <typename S>
void axpy_col(Matrix<S>& m, Index dst, const S& q, Index src) {
  for (Index i = 0; i < m.rows(); ++i) m(i, dst) = mul_sub(S(1), m(i, dst), q, m(i, src));
}

template <typename S>
void axpy_row(Matrix<S>& m, Index dst, const S& q, Index src) {
  for (Index j = 0; j < m.cols(); ++j) m(dst, j) = mul_sub(S(1), m(dst, j), q, m(src, j));
}

}  // namespace detail

// Fraction-free (Bareiss) determinant.
template <typename S>
S determinant(Matrix<S> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Index n = a.rows();
  if (n == 0) return S(1);
  S sign(1), prev(1);
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return S(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = detail::mul_sub_div(a(k, k), a(i, j), a(i, k), a(k, j), prev);
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Fraction-free row echelon rank.
template <typename S>
Index rank(Matrix<S> a) {
  Index r = 0;
  S prev(1);
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) a.row(r).swap(a.row(p));
    for (Index i = r + 1; i < a.rows(); ++i) {
      for (Index j = c + 1; j < a.cols(); ++j)
        a(i, j) = detail::mul_sub_div(a(r, c), a(i, j), a(i, c), a(r, j), prev);
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

// Rank over Z/p; p < 2^31.
inline Index rank_mod_p(const Matrix<std::int64_t>& m, std::int64_t p) {
  Matrix<std::int64_t> a = m;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) a(i, j) = ((a(i, j) % p) + p) % p;
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  Index r = 0;
  for (Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Index piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    a.row(r).swap(a.row(piv));
    const std::int64_t s = inv(a(r, c));
    for (Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const std::int64_t f = a(i, c) * s % p;
      for (Index j = c; j < a.cols(); ++j) a(i, j) = ((a(i, j) - f * a(r, j)) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Column-style Hermite normal form of the lattice spanned by the columns of a.
// Column k has a positive pivot at pivots[k], zeros above it, pivot rows strictly
// increase, and entries to the left of a pivot lie in [0, pivot).
template <typename S>
struct HermiteForm {
  Matrix<S> basis;
  std::vector<Index> pivots;
};

template <typename S>
HermiteForm<S> hermite_normal_form(Matrix<S> a) {
  using detail::abs_value;
  HermiteForm<S> out;
  Index c = 0;
  for (Index r = 0; r < a.rows() && c < a.cols(); ++r) {
    for (;;) {
      Index best = -1;
      for (Index j = c; j < a.cols(); ++j)
        if (a(r, j) != 0 && (best < 0 || abs_value(a(r, j)) < abs_value(a(r, best)))) best = j;
      if (best < 0) break;
      if (best != c) a.col(c).swap(a.col(best));
      bool single = true;
      for (Index j = c + 1; j < a.cols(); ++j) {
        if (a(r, j) == 0) continue;
        detail::axpy_col(a, j, detail::floor_div(a(r, j), a(r, c)), c);
        if (a(r, j) != 0) single = false;
      }
      if (single) break;
    }
    if (a(r, c) == 0) {
      bool any = false;
      for (Index j = c; j < a.cols(); ++j) any = any || a(r, j) != 0;
      if (!any) continue;
    }
    if (a(r, c) < 0) a.col(c) = -a.col(c);
    for (Index j = 0; j < c; ++j)
      if (a(r, j) < 0 || a(r, j) >= a(r, c)) detail::axpy_col(a, j, detail::floor_div(a(r, j), a(r, c)), c);
    out.pivots.push_back(r);
    ++c;
  }
  out.basis = a.leftCols(c);
  return out;
}

// Canonical coset representatives modulo a column lattice.
template <typename S>
class LatticeReducer {
 public:
  LatticeReducer() = default;
  explicit LatticeReducer(HermiteForm<S> h) : h_(std::move(h)) {}
  explicit LatticeReducer(const Matrix<S>& generators) : h_(hermite_normal_form(generators)) {}

  Vector<S> reduce(Vector<S> x) const {
    for (std::size_t k = 0; k < h_.pivots.size(); ++k) {
      const Index r = h_.pivots[k];
      const S q = detail::floor_div(x(r), h_.basis(r, static_cast<Index>(k)));
      if (q == 0) continue;
      for (Index i = r; i < x.size(); ++i)
        x(i) = detail::mul_sub(S(1), x(i), q, h_.basis(i, static_cast<Index>(k)));
    }
    return x;
  }

  bool contains(const Vector<S>& x) const {
    const Vector<S> r = reduce(x);
    for (Index i = 0; i < r.size(); ++i)
      if (r(i) != 0) return false;
    return true;
  }

  const HermiteForm<S>& hermite() const { return h_; }

 private:
  HermiteForm<S> h_;
};

// U * a * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
template <typename S>
struct SmithForm {
  Matrix<S> U, D, V;
  std::vector<S> factors;
};

template <typename S>
SmithForm<S> smith_normal_form(const Matrix<S>& a) {
  using detail::abs_value;
  const Index m = a.rows(), n = a.cols();
  SmithForm<S> out;
  Matrix<S>& D = out.D;
  D = a;
  out.U = Matrix<S>::Identity(m, m);
  out.V = Matrix<S>::Identity(n, n);
  const Index t_end = std::min(m, n);
  Index t = 0;
  for (; t < t_end; ++t) {
    bool empty = false;
    for (;;) {
      Index bi = -1, bj = -1;
      for (Index j = t; j < n; ++j)
        for (Index i = t; i < m; ++i)
          if (D(i, j) != 0 && (bi < 0 || abs_value(D(i, j)) < abs_value(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) {
        empty = true;
        break;
      }
      if (bi != t) {
        D.row(t).swap(D.row(bi));
        out.U.row(t).swap(out.U.row(bi));
      }
      if (bj != t) {
        D.col(t).swap(D.col(bj));
        out.V.col(t).swap(out.V.col(bj));
      }
      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const S q = D(i, t) / D(t, t);
        detail::axpy_row(D, i, q, t);
        detail::axpy_row(out.U, i, q, t);
        if (D(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const S q = D(t, j) / D(t, t);
        detail::axpy_col(D, j, q, t);
        detail::axpy_col(out.V, j, q, t);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      detail::axpy_row(D, t, S(-1), bad);
      detail::axpy_row(out.U, t, S(-1), bad);
    }
    if (empty) break;
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      out.U.row(t) = -out.U.row(t);
    }
  }
  for (Index i = 0; i < t_end; ++i) out.factors.push_back(D(i, i));
  return out;
}

// Unique integral solution of a square nonsingular system, if one exists.
std::optional<IntVector> solve_integral(const IntMatrix& a, const IntVector& b);

}  // namespace sandpile
