#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sandpile {

using Integer = boost::multiprecision::mpz_int;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

// Chip counts, firing scripts, exponent vectors and divisors stay machine-sized.
using Vec = Vector<std::int64_t>;
using Config = Vec;
using Script = Vec;
using Exponent = Vec;
using Divisor = Vec;

template <typename To, typename From>
Matrix<To> cast_matrix(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = static_cast<To>(m(i, j));
  return out;
}

template <typename To, typename From>
Vector<To> cast_vector(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = static_cast<To>(v(i));
  return out;
}

// Throws std::overflow_error when x does not fit.
std::int64_t to_int64(const Integer& x);

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::size_t h = static_cast<std::size_t>(v.size()) * 0x9e3779b97f4a7c15ULL;
    for (Index i = 0; i < v.size(); ++i)
      h ^= std::hash<std::int64_t>{}(v(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct VecEqual {
  bool operator()(const Vec& a, const Vec& b) const noexcept {
    return a.size() == b.size() && (a.size() == 0 || a == b);
  }
};

// Lexicographic; shorter vectors first.
struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    for (Index i = 0; i < a.size(); ++i)
      if (a(i) != b(i)) return a(i) < b(i);
    return false;
  }
};

inline Vec make_vec(std::initializer_list<std::int64_t> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

inline Vec to_vec(const std::vector<std::int64_t>& xs) {
  Vec v(static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Index>(i)) = xs[i];
  return v;
}

inline std::vector<std::int64_t> to_std(const Vec& v) {
  return std::vector<std::int64_t>(v.data(), v.data() + v.size());
}

}  // namespace sandpile
