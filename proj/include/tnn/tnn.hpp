#pragma once

// Totally nonnegative unipotent matrices: Lusztig parametrization of the
// cells, the all-minors test and Bruhat-cell identification.

#include <optional>
#include <string>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/error.hpp"
#include "tnn/gauss.hpp"
#include "tnn/matrix.hpp"

namespace tnn {

/// Largest rank for which is_tnn enumerates minors.
inline constexpr int kMaxTnnRank = 6;

struct CellPoint {
  RatMatrix matrix;  // in N
  Permutation cell;  // w with matrix in B_- w B_-
  bool tnn = false;
};

/// x_i(t): identity plus t at (i, i+1), i a 1-based generator index.
template <class T = Rat>
Matrix<T> chevalley_x(int i, const T& t, int n) {
  if (i < 1 || i > n - 1)
    throw Error(Errc::IndexOutOfRange,
                "x_" + std::to_string(i) + " outside rank " + std::to_string(n));
  auto m = Matrix<T>::identity(n);
  m(i - 1, i) = t;
  return m;
}

/// x_{a_1}(t_1) ... x_{a_l}(t_l) without any certification.
template <class T = Rat>
Matrix<T> lusztig_matrix(const ReducedWord& word, const std::vector<T>& params) {
  if (params.size() != word.size())
    throw Error(Errc::LengthMismatch, "word has " + std::to_string(word.size()) +
                                          " letters but " + std::to_string(params.size()) +
                                          " parameters were given");
  const int n = word.target.n();
  auto x = Matrix<T>::identity(n);
  for (std::size_t k = 0; k < params.size(); ++k) {
    // right multiplication by x_a(t) adds t * column a to column a+1
    const int a = word.letters[k] - 1;
    for (int r = 0; r <= a; ++r) x(r, a + 1) += params[k] * x(r, a);
  }
  return x;
}

/// Every minor of x is >= 0. Exhaustive; requires x in N and n <= 6.
inline bool is_tnn(const RatMatrix& x) {
  if (!is_in_N(x)) throw Error(Errc::NotUnipotentUpper, "is_tnn expects a matrix in N");
  if (x.n() > kMaxTnnRank) throw Error(Errc::RankTooLarge, "is_tnn guard is n <= 6");
  const int n = x.n();
  for (int k = 1; k <= n; ++k) {
    const auto sets = subsets_of_size(n, k);
    for (const auto& rows : sets)
      for (const auto& cols : sets) {
        // a unipotent upper matrix has zero minors unless rows[t] <= cols[t]
        bool trivially_zero = false;
        for (int t = 0; t < k; ++t)
          if (rows[t] > cols[t]) trivially_zero = true;
        if (trivially_zero) continue;
        if (sgn(minor(x, rows, cols)) < 0) return false;
      }
  }
  return true;
}

namespace detail {

/// Recovers w from the ranks r(i,j) = rank x[rows < i, cols >= j], which are
/// invariant under x -> b_- x b'_-; P_w has its 1 in row w(k), column k.
template <class RankFn>
std::optional<Permutation> cell_from_ranks(int n, RankFn rank) {
  std::vector<std::vector<int>> r(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = rank(i, j);
  std::vector<int> image(n, -1);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      const int jump = r[i + 1][k] - r[i][k] - r[i + 1][k + 1] + r[i][k + 1];
      if (jump == 1) {
        if (image[k] != -1) return std::nullopt;
        image[k] = i;
      } else if (jump != 0) {
        return std::nullopt;
      }
    }
  try {
    return Permutation(image);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// The unique w with x in B_- w B_-.
inline Permutation cell_of(const RatMatrix& x) {
  if (sgn(determinant(x)) == 0) throw Error(Errc::Singular, "cell_of: singular matrix");
  const int n = x.n();
  auto w = detail::cell_from_ranks(n, [&](int i, int j) { return block_rank(x, 0, i, j, n); });
  if (!w) throw Error(Errc::InternalInvariant, "cell_of: rank jumps do not form a permutation");
  return *w;
}

/// Floating-point cell label using numerical ranks with relative tolerance.
inline std::optional<Permutation> cell_label(const FloatMatrix& x, double tol = 1e-9) {
  const int n = x.n();
  return detail::cell_from_ranks(n,
                                 [&](int i, int j) { return block_rank(x, 0, i, j, n, tol); });
}

/// Product along a reduced word with positive parameters, certified to lie
/// in the totally positive cell of the word's target.
inline CellPoint lusztig_point(const ReducedWord& word, const std::vector<Rat>& params) {
  for (const auto& t : params)
    if (sgn(t) <= 0)
      throw Error(Errc::NonPositiveParameter, "Lusztig parameter " + to_string(t) + " <= 0");
  auto x = lusztig_matrix(word, params);
  CellPoint p{x, cell_of(x), is_tnn(x)};
  if (!p.tnn || p.cell != word.target)
    throw Error(Errc::InternalInvariant, "Lusztig point of " + word.to_string() +
                                             " landed in cell " + p.cell.to_string());
  return p;
}

/// N^w = B_- w B_- cap N.
inline bool in_N_upper_w(const RatMatrix& x, const Permutation& w) {
  return is_in_N(x) && cell_of(x) == w;
}

/// x in Y_{>=u}. Computes both TNN and G_0 u membership and the Bruhat
/// comparison with the cell of x, and insists that the two routes agree.
inline bool in_Y_geq_u(const RatMatrix& x, const Permutation& u) {
  if (!is_tnn(x)) return false;
  const bool via_g0u = is_in_G0_u(x, u);
  const bool via_cell = bruhat_leq(u, cell_of(x));
  if (via_g0u != via_cell)
    throw Error(Errc::InternalInvariant,
                "G_0 u membership and Bruhat comparison disagree for u = " + u.to_string());
  return via_g0u;
}

}  // namespace tnn
