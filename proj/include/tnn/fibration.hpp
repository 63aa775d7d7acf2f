#pragma once

// The projection pi_u onto a cell, the factorization x = x_u x^u, the shift
// element n_1 between two points of a Bruhat cell, and the fiber-to-fiber
// map rho. Everything is templated on the scalar so the same formulas run
// exactly over Rat and numerically over double.

#include <string>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/gauss.hpp"
#include "tnn/matrix.hpp"
#include "tnn/tnn.hpp"

namespace tnn {

/// Conjugation by the torus element d(tau): entry (i,j) is scaled by
/// tau^{j-i}. The scalar factor of d(tau) cancels and is never formed.
template <class T>
Matrix<T> conj_d(const T& tau, const Matrix<T>& x) {
  if (!(tau > T(0))) throw Error(Errc::NonPositiveTau, "conj_d needs tau > 0");
  const int n = x.n();
  std::vector<T> pow(n, T(1));  // tau^0 .. tau^{n-1}
  for (int k = 1; k < n; ++k) pow[k] = pow[k - 1] * tau;
  Matrix<T> out = x;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j > i) out(i, j) *= pow[j - i];
      else if (j < i) out(i, j) /= pow[i - j];
    }
  return out;
}

template <class T>
struct FiberFrame {
  Permutation u;
  Matrix<T> x;          // point of N cap G_0 u
  Matrix<T> x_u;        // pi_u(x), in N^u
  Matrix<T> x_upper_u;  // x^u, in N(u)
  Matrix<T> A;          // u^{-1} [x u^{-1}]_+ u
  Matrix<T> y;          // [A]_-, in N_-(u)
};

/// x = x_u x^u with
///   A = u^{-1}[x u^{-1}]_+ u,  y = [A]_-,  x^u = [A]_+,  x_u = [u y]_+.
template <class T>
FiberFrame<T> factor_u(const Matrix<T>& x, const Permutation& u) {
  if (x.n() != u.n()) throw Error(Errc::SizeMismatch, "factor_u: rank mismatch");
  if (!is_in_N(x)) throw Error(Errc::NotUnipotentUpper, "factor_u expects x in N");
  int k = 0;
  auto outer = try_gauss_decompose(mul_perm_inv_right(x, u), &k);
  if (!outer)
    throw Error(Errc::NotInG0u, "x u^{-1} has vanishing leading principal minor of order " +
                                    std::to_string(k) + " (u = " + u.to_string() + ")");
  Matrix<T> A = conj_by_perm(outer->upper, u);
  auto inner = try_gauss_decompose(A);
  if (!inner) throw Error(Errc::InternalInvariant, "A = u^{-1}[xu^{-1}]_+u is not in G_0");
  auto base = try_gauss_decompose(mul_perm_left(u, inner->lower));
  if (!base) throw Error(Errc::InternalInvariant, "u [A]_- is not in G_0");
  return FiberFrame<T>{u, x, std::move(base->upper), std::move(inner->upper), std::move(A),
                       std::move(inner->lower)};
}

template <class T>
Matrix<T> pi_u(const Matrix<T>& x, const Permutation& u) {
  return factor_u(x, u).x_u;
}

namespace detail {

/// n_1 = w^{-1} ([xt_w w^{-1}]_+)^{-1} [x_w w^{-1}]_+ w, no cell checks.
template <class T>
Matrix<T> shift_element(const Matrix<T>& x_w, const Matrix<T>& xt_w, const Permutation& w) {
  auto a = try_gauss_decompose(mul_perm_inv_right(xt_w, w));
  auto b = try_gauss_decompose(mul_perm_inv_right(x_w, w));
  if (!a || !b) throw Error(Errc::InternalInvariant, "cell representative is not in G_0 w");
  return conj_by_perm(inverse(a->upper) * b->upper, w);
}

/// rho without precondition checks; shared by the exact and float paths.
template <class T>
Matrix<T> rho_unchecked(const Matrix<T>& xt, const Matrix<T>& x_u, const Permutation& u) {
  const auto frame = factor_u(xt, u);
  const auto n1 = shift_element(x_u, frame.x_u, u);
  auto inner = try_gauss_decompose(inverse(frame.x_upper_u) * n1);
  if (!inner) throw Error(Errc::InternalInvariant, "(x~^u)^{-1} n_1 is not in G_0");
  auto outer = try_gauss_decompose(xt * inner->lower);
  if (!outer) throw Error(Errc::InternalInvariant, "x~ n_- is not in G_0");
  return std::move(outer->upper);
}

}  // namespace detail

/// The unique n_1 in N_-(w) with x_w = [xt_w n_1]_+, for x_w, xt_w in N^w.
inline RatMatrix recover_shift(const RatMatrix& x_w, const RatMatrix& xt_w,
                               const Permutation& w) {
  if (!in_N_upper_w(x_w, w) || !in_N_upper_w(xt_w, w))
    throw Error(Errc::CellMismatch, "recover_shift: arguments must lie in N^" + w.to_string());
  return detail::shift_element(x_w, xt_w, w);
}

/// rho_{x_u}: moves xt in N cap G_0 u into the fiber of pi_u over x_u,
/// preserving its Bruhat cell:
///   n_1 = shift(x_u, pi_u(xt)),  n_- = [(xt^u)^{-1} n_1]_-,  x' = [xt n_-]_+.
inline RatMatrix rho(const RatMatrix& xt, const RatMatrix& x_u, const Permutation& u) {
  if (!in_N_upper_w(x_u, u))
    throw Error(Errc::CellMismatch, "rho: base point must lie in N^" + u.to_string());
  return detail::rho_unchecked(xt, x_u, u);
}

/// Float rho for the integrator; the caller guarantees the preconditions.
inline FloatMatrix rho(const FloatMatrix& xt, const FloatMatrix& x_u, const Permutation& u) {
  return detail::rho_unchecked(xt, x_u, u);
}

}  // namespace tnn
