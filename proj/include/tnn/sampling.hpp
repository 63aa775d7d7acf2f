#pragma once

// Seeded random generation of rationals, cell points and fiber points.
// All randomness flows through an explicitly passed std::mt19937_64.

#include <cstdint>
#include <random>
#include <vector>

#include "tnn/coxeter.hpp"
#include "tnn/fibration.hpp"
#include "tnn/matrix.hpp"
#include "tnn/tnn.hpp"

namespace tnn {

using Rng = std::mt19937_64;

/// splitmix64 step, used to derive independent per-case seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// p/q with 1 <= p <= max_num, 1 <= q <= max_den.
inline Rat random_positive_rat(Rng& rng, int max_num = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// Any rational p/q with |p| <= max_num, 1 <= q <= max_den.
inline Rat random_rat(Rng& rng, int max_num = 9, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Rat> random_params(Rng& rng, std::size_t count) {
  std::vector<Rat> t;
  t.reserve(count);
  for (std::size_t k = 0; k < count; ++k) t.push_back(random_positive_rat(rng));
  return t;
}

inline RatMatrix random_rat_matrix(Rng& rng, int n) {
  RatMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = random_rat(rng);
  return m;
}

/// Random element of N (not necessarily TNN).
inline RatMatrix random_unipotent_upper(Rng& rng, int n) {
  auto m = RatMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = random_rat(rng);
  return m;
}

/// Random element of N_- (not necessarily TNN).
inline RatMatrix random_unipotent_lower(Rng& rng, int n) {
  return random_unipotent_upper(rng, n).transpose();
}

inline Permutation random_permutation(Rng& rng, int n) {
  auto all = all_permutations(n);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

/// Point of Y°_w through the canonical reduced word with random parameters.
inline RatMatrix random_cell_point(Rng& rng, const Permutation& w) {
  const auto word = reduced_word(w);
  return lusztig_matrix(word, random_params(rng, word.size()));
}

/// The fixed base point of Y°_u used for fibers: all Lusztig parameters 1.
inline RatMatrix standard_base_point(const Permutation& u) {
  const auto word = reduced_word(u);
  return lusztig_matrix(word, std::vector<Rat>(word.size(), Rat(1)));
}

/// Uniform choice among {w : u < w}, or among {w : u <= w} when allow_equal.
inline Permutation random_above(Rng& rng, const Permutation& u, bool allow_equal = false) {
  std::vector<Permutation> up;
  for (auto& w : all_permutations(u.n()))
    if (bruhat_leq(u, w) && (allow_equal || w != u)) up.push_back(std::move(w));
  if (up.empty()) throw Error(Errc::NotComparable, "no element strictly above " + u.to_string());
  std::uniform_int_distribution<std::size_t> pick(0, up.size() - 1);
  return up[pick(rng)];
}

}  // namespace tnn
