#pragma once

// Dense square matrices over Rat (exact) or double (flows), with minors,
// rank and inversion. Indices are 0-based throughout.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/rational.hpp"

namespace tnn {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, T(0)) {
    if (n < 1) throw Error(Errc::SizeMismatch, "matrix size must be positive");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows)
      : Matrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n_)
        throw Error(Errc::SizeMismatch, "matrix literal is not square");
      int j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = d[i];
    return m;
  }

  int n() const { return n_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    const int n = a.n_;
    Matrix c(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const T& aik = a(i, k);
        if (ScalarTraits<T>::is_zero(aik) && ScalarTraits<T>::exact) continue;
        for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

  Matrix transpose() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.n_ != n_) throw Error(Errc::SizeMismatch, "matrix size mismatch");
  }

  int n_ = 0;
  std::vector<T> a_;
};

using RatMatrix = Matrix<Rat>;
using FloatMatrix = Matrix<double>;

inline FloatMatrix to_float(const RatMatrix& m) {
  FloatMatrix f(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) f(i, j) = m(i, j).get_d();
  return f;
}

/// Exact rational image of a double matrix (every double is a dyadic rational).
inline RatMatrix to_rat(const FloatMatrix& m) {
  RatMatrix r(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  double d = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      d = std::max(d, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(a(i, j) - b(i, j))));
  return d;
}

template <class T>
double max_abs(const Matrix<T>& a) {
  double d = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      d = std::max(d, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(a(i, j))));
  return d;
}

// ------------------------------------------------------- permutations

/// P_w with (P_w)_{ij} = 1 iff i = w(j). Then P_u P_v = P_{uv}, and for
/// a in P_u^{-1} N P_u the entry a_{ij} can be nonzero only if u(i) <= u(j).
template <class T = Rat>
Matrix<T> perm_matrix(const Permutation& w) {
  Matrix<T> p(w.n());
  for (int j = 0; j < w.n(); ++j) p(w(j), j) = T(1);
  return p;
}

/// x * P_w^{-1}: column j of the result is column w^{-1}(j) of x.
template <class T>
Matrix<T> mul_perm_inv_right(const Matrix<T>& x, const Permutation& w) {
  const auto inv = w.inverse();
  Matrix<T> out(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) out(i, j) = x(i, inv(j));
  return out;
}

/// P_w * x: row i of the result is row w^{-1}(i) of x.
template <class T>
Matrix<T> mul_perm_left(const Permutation& w, const Matrix<T>& x) {
  const auto inv = w.inverse();
  Matrix<T> out(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) out(i, j) = x(inv(i), j);
  return out;
}

/// P_w^{-1} * x * P_w: entry (i,j) is x_{w(i), w(j)}.
template <class T>
Matrix<T> conj_by_perm(const Matrix<T>& x, const Permutation& w) {
  Matrix<T> out(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) out(i, j) = x(w(i), w(j));
  return out;
}

/// P_w * x * P_w^{-1}: entry (w(i), w(j)) is x_{ij}.
template <class T>
Matrix<T> conj_by_perm_inv(const Matrix<T>& x, const Permutation& w) {
  Matrix<T> out(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) out(w(i), w(j)) = x(i, j);
  return out;
}

// ------------------------------------------------------- determinants

/// Determinant by Bareiss fraction-free elimination with row pivoting.
/// Pivots are chosen by magnitude, which only matters for doubles.
template <class T>
T determinant(std::vector<std::vector<T>> m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return T(1);
  T sign(1), prev(1);
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (ScalarTraits<T>::abs(m[r][c]) > ScalarTraits<T>::abs(m[piv][c])) piv = r;
    if (ScalarTraits<T>::is_zero(m[piv][c])) return T(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      sign = -sign;
    }
    for (int r = c + 1; r < k; ++r) {
      for (int j = c + 1; j < k; ++j) {
        T v = m[c][c] * m[r][j] - m[r][c] * m[c][j];
        v /= prev;  // exact division for integral inputs
        m[r][j] = v;
      }
      m[r][c] = T(0);
    }
    prev = m[c][c];
  }
  return sign * m[k - 1][k - 1];
}

template <class T>
T determinant(const Matrix<T>& x) {
  std::vector<std::vector<T>> m(x.n(), std::vector<T>(x.n()));
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) m[i][j] = x(i, j);
  return determinant(std::move(m));
}

/// Minor with the given (0-based, strictly increasing) rows and columns.
template <class T>
T minor(const Matrix<T>& x, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size())
    throw Error(Errc::SizeMismatch, "minor: row and column sets differ in size");
  auto check = [&](const std::vector<int>& idx) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= x.n())
        throw Error(Errc::IndexOutOfRange, "minor index " + std::to_string(idx[k]));
      if (k && idx[k] <= idx[k - 1])
        throw Error(Errc::IndexOutOfRange, "minor indices must be strictly increasing");
    }
  };
  check(rows);
  check(cols);
  std::vector<std::vector<T>> m(rows.size(), std::vector<T>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = x(rows[i], cols[j]);
  return determinant(std::move(m));
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Rank of the block rows [r0, r1) x cols [c0, c1). Exact for Rat; for
/// doubles a pivot counts when it exceeds tol * max(1, max |entry|).
template <class T>
int block_rank(const Matrix<T>& x, int r0, int r1, int c0, int c1, double tol = 0.0) {
  const int rows = r1 - r0, cols = c1 - c0;
  if (rows <= 0 || cols <= 0) return 0;
  std::vector<std::vector<T>> m(rows, std::vector<T>(cols));
  double scale = 1.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      m[i][j] = x(r0 + i, c0 + j);
      scale = std::max(scale, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(m[i][j])));
    }
  auto negligible = [&](const T& v) {
    if constexpr (ScalarTraits<T>::exact) return ScalarTraits<T>::is_zero(v);
    else return ScalarTraits<T>::abs(v) <= tol * scale;
  };
  int rank = 0;
  std::vector<bool> used_col(cols, false);
  for (int r = 0; r < rows && rank < std::min(rows, cols); ++r) {
    // full pivoting over the remaining rows and columns
    int pr = -1, pc = -1;
    T best(0);
    for (int i = r; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        if (used_col[j]) continue;
        if (pr < 0 || ScalarTraits<T>::abs(m[i][j]) > best) {
          best = ScalarTraits<T>::abs(m[i][j]);
          pr = i;
          pc = j;
        }
      }
    if (pr < 0 || negligible(m[pr][pc])) break;
    std::swap(m[pr], m[r]);
    used_col[pc] = true;
    ++rank;
    for (int i = r + 1; i < rows; ++i) {
      if (ScalarTraits<T>::is_zero(m[i][pc]) && ScalarTraits<T>::exact) continue;
      const T f = m[i][pc] / m[r][pc];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
      m[i][pc] = T(0);
    }
  }
  return rank;
}

/// Inverse by Gauss-Jordan with partial pivoting; throws Singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& x) {
  const int n = x.n();
  Matrix<T> a = x, inv = Matrix<T>::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (ScalarTraits<T>::abs(a(r, c)) > ScalarTraits<T>::abs(a(piv, c))) piv = r;
    if (ScalarTraits<T>::is_zero(a(piv, c))) throw Error(Errc::Singular, "matrix is singular");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const T p = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || ScalarTraits<T>::is_zero(a(r, c))) continue;
      const T f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace tnn
