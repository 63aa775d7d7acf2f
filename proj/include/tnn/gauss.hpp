#pragma once

// Gaussian decomposition x = [x]_- [x]_0 [x]_+ (unipotent lower, diagonal,
// unipotent upper) and the structural predicates for the subgroups
// N, N_-, B, B_-, H, G_0 and G_0 u of GL(n).

#include <optional>
#include <string>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/matrix.hpp"

namespace tnn {

template <class T>
struct GaussFactors {
  Matrix<T> lower;  // [x]_-
  Matrix<T> diag;   // [x]_0
  Matrix<T> upper;  // [x]_+
};

/// Elimination without pivoting. Returns the factors, or the order k (1-based)
/// of the first vanishing leading principal minor. The k-th pivot equals
/// Delta_k / Delta_{k-1}, so the first zero pivot is the first zero minor.
template <class T>
std::optional<GaussFactors<T>> try_gauss_decompose(const Matrix<T>& x, int* failed_at = nullptr) {
  const int n = x.n();
  Matrix<T> u = x;
  Matrix<T> l = Matrix<T>::identity(n);
  for (int k = 0; k < n; ++k) {
    if (ScalarTraits<T>::is_zero(u(k, k))) {
      if (failed_at) *failed_at = k + 1;
      return std::nullopt;
    }
    for (int i = k + 1; i < n; ++i) {
      if (ScalarTraits<T>::is_zero(u(i, k))) continue;
      const T f = u(i, k) / u(k, k);
      l(i, k) = f;
      for (int j = k + 1; j < n; ++j) u(i, j) -= f * u(k, j);
      u(i, k) = T(0);
    }
  }
  Matrix<T> d(n);
  for (int k = 0; k < n; ++k) {
    d(k, k) = u(k, k);
    const T p = u(k, k);
    for (int j = k; j < n; ++j) u(k, j) /= p;
    u(k, k) = T(1);
  }
  return GaussFactors<T>{std::move(l), std::move(d), std::move(u)};
}

/// Throws NotInG0 naming the first vanishing leading principal minor.
template <class T>
GaussFactors<T> gauss_decompose(const Matrix<T>& x) {
  int k = 0;
  auto f = try_gauss_decompose(x, &k);
  if (!f)
    throw Error(Errc::NotInG0,
                "leading principal minor of order " + std::to_string(k) + " vanishes");
  return std::move(*f);
}

template <class T>
Matrix<T> gauss_plus(const Matrix<T>& x) { return gauss_decompose(x).upper; }

template <class T>
Matrix<T> gauss_minus(const Matrix<T>& x) { return gauss_decompose(x).lower; }

template <class T>
Matrix<T> gauss_zero(const Matrix<T>& x) { return gauss_decompose(x).diag; }

/// Delta_1, ..., Delta_n.
template <class T>
std::vector<T> leading_principal_minors(const Matrix<T>& x) {
  std::vector<T> out;
  std::vector<int> idx;
  for (int k = 0; k < x.n(); ++k) {
    idx.push_back(k);
    out.push_back(minor(x, idx, idx));
  }
  return out;
}

// ------------------------------------------------------------ predicates

template <class T>
bool is_upper_triangular(const Matrix<T>& x) {
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < i; ++j)
      if (!ScalarTraits<T>::is_zero(x(i, j))) return false;
  return true;
}

template <class T>
bool is_lower_triangular(const Matrix<T>& x) { return is_upper_triangular(x.transpose()); }

template <class T>
bool has_unit_diagonal(const Matrix<T>& x) {
  for (int i = 0; i < x.n(); ++i)
    if (x(i, i) != T(1)) return false;
  return true;
}

template <class T>
bool has_invertible_diagonal(const Matrix<T>& x) {
  for (int i = 0; i < x.n(); ++i)
    if (ScalarTraits<T>::is_zero(x(i, i))) return false;
  return true;
}

template <class T>
bool is_in_N(const Matrix<T>& x) { return is_upper_triangular(x) && has_unit_diagonal(x); }

template <class T>
bool is_in_N_minus(const Matrix<T>& x) { return is_lower_triangular(x) && has_unit_diagonal(x); }

template <class T>
bool is_in_B(const Matrix<T>& x) { return is_upper_triangular(x) && has_invertible_diagonal(x); }

template <class T>
bool is_in_B_minus(const Matrix<T>& x) {
  return is_lower_triangular(x) && has_invertible_diagonal(x);
}

template <class T>
bool is_in_H(const Matrix<T>& x) { return is_in_B(x) && is_lower_triangular(x); }

/// G_0 = N_- H N, tested through the leading principal minors.
template <class T>
bool is_in_G0(const Matrix<T>& x) {
  for (const auto& m : leading_principal_minors(x))
    if (ScalarTraits<T>::is_zero(m)) return false;
  return true;
}

/// x in G_0 u, i.e. x P_u^{-1} in G_0.
template <class T>
bool is_in_G0_u(const Matrix<T>& x, const Permutation& u) {
  return is_in_G0(mul_perm_inv_right(x, u));
}

/// N(w) = w^{-1} B w cap N: x in N with x_{ij} = 0 whenever i < j, w(i) > w(j).
template <class T>
bool in_N_of_w(const Matrix<T>& x, const Permutation& w) {
  if (!is_in_N(x)) return false;
  for (int i = 0; i < x.n(); ++i)
    for (int j = i + 1; j < x.n(); ++j)
      if (w(i) > w(j) && !ScalarTraits<T>::is_zero(x(i, j))) return false;
  return true;
}

/// N_-(w) = w^{-1} B w cap N_-: x in N_- with x_{ij} = 0 whenever i > j, w(i) > w(j).
template <class T>
bool in_Nminus_of_w(const Matrix<T>& x, const Permutation& w) {
  if (!is_in_N_minus(x)) return false;
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < i; ++j)
      if (w(i) > w(j) && !ScalarTraits<T>::is_zero(x(i, j))) return false;
  return true;
}

}  // namespace tnn
