#include <gtest/gtest.h>

#include "tnn/gauss.hpp"
#include "tnn/matrix.hpp"
#include "tnn/rational.hpp"
#include "tnn/sampling.hpp"

using namespace tnn;

namespace {

Rat cofactor_det(const std::vector<std::vector<Rat>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rat(1);
  if (n == 1) return m[0][0];
  Rat d(0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rat>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rat> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    const Rat term = m[0][c] * cofactor_det(sub);
    d += (c % 2 == 0) ? term : Rat(-term);
  }
  return d;
}

std::vector<std::vector<Rat>> rows_of(const RatMatrix& x, const std::vector<int>& r,
                                      const std::vector<int>& c) {
  std::vector<std::vector<Rat>> out;
  for (int i : r) {
    std::vector<Rat> row;
    for (int j : c) row.push_back(x(i, j));
    out.push_back(row);
  }
  return out;
}

RatMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  RatMatrix m(static_cast<int>(rows.size()));
  int i = 0;
  for (auto& r : rows) {
    int j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

RatMatrix random_g0(Rng& rng, int n) {
  RatMatrix x = random_rat_matrix(rng, n);
  while (!is_in_G0(x)) x = random_rat_matrix(rng, n);
  return x;
}

}  // namespace

TEST(Rational, ParseCanonical) {
  EXPECT_EQ(parse_rat("3/6"), Rat(1, 2));
  EXPECT_EQ(to_string(parse_rat("3/6")), "1/2");
  EXPECT_EQ(to_string(parse_rat("-4/2")), "-2");
  EXPECT_EQ(to_string(parse_rat("0/5")), "0");
  for (const char* bad : {"", "1/0", "abc", "1/-2", "1.5", "--1", "/3", "2/"})
    EXPECT_THROW(parse_rat(bad), Error) << bad;
}

TEST(Minor, Examples) {
  const auto id = RatMatrix::identity(3);
  EXPECT_EQ(minor(id, {0, 1}, {0, 1}), Rat(1));
  RatMatrix x = RatMatrix::identity(3);
  x(0, 1) = Rat(3, 2);
  x(0, 2) = Rat(5);
  x(1, 2) = Rat(-2, 7);
  EXPECT_EQ(minor(x, {0, 1}, {1, 2}), x(0, 1) * x(1, 2) - x(0, 2));
  EXPECT_THROW(minor(x, {0, 1}, {1}), Error);
  EXPECT_THROW(minor(x, {0, 3}, {0, 1}), Error);
  EXPECT_THROW(minor(x, {1, 0}, {0, 1}), Error);
}

TEST(Minor, AllIndexPairsAgreeWithCofactorOracle) {
  Rng rng(11);
  const int n = 4;
  const auto x = random_rat_matrix(rng, n);
  for (int k = 1; k <= n; ++k)
    for (const auto& r : subsets_of_size(n, k))
      for (const auto& c : subsets_of_size(n, k))
        ASSERT_EQ(minor(x, r, c), cofactor_det(rows_of(x, r, c)));
}

TEST(Determinant, AgreesWithCofactorOracle) {
  Rng rng(12);
  for (int n = 1; n <= 5; ++n)
    for (int rep = 0; rep < 10; ++rep) {
      const auto x = random_rat_matrix(rng, n);
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      EXPECT_EQ(determinant(x), cofactor_det(rows_of(x, all, all)));
    }
}

TEST(Inverse, RoundTripAndSingular) {
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    auto x = random_rat_matrix(rng, 4);
    if (sgn(determinant(x)) == 0) continue;
    EXPECT_EQ(x * inverse(x), RatMatrix::identity(4));
  }
  EXPECT_THROW(inverse(mat({{1, 2}, {2, 4}})), Error);
}

TEST(PermHelpers, AgreeWithExplicitProducts) {
  Rng rng(14);
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_rat_matrix(rng, 4);
    const auto w = random_permutation(rng, 4);
    const auto P = perm_matrix(w), Pinv = perm_matrix(w.inverse());
    EXPECT_EQ(mul_perm_inv_right(x, w), x * Pinv);
    EXPECT_EQ(mul_perm_left(w, x), P * x);
    EXPECT_EQ(conj_by_perm(x, w), Pinv * x * P);
    EXPECT_EQ(conj_by_perm_inv(x, w), P * x * Pinv);
  }
}

TEST(BlockRank, FloatAgreesWithExact) {
  Rng rng(15);
  for (int rep = 0; rep < 30; ++rep) {
    const auto w = random_permutation(rng, 4);
    const auto x = random_cell_point(rng, w);
    for (int i = 1; i <= 4; ++i)
      for (int j = 0; j < 4; ++j)
        EXPECT_EQ(block_rank(x, 0, i, j, 4), block_rank(to_float(x), 0, i, j, 4, 1e-9));
  }
}

TEST(Gauss, Examples) {
  const auto id = RatMatrix::identity(3);
  const auto f = gauss_decompose(id);
  EXPECT_EQ(f.lower, id);
  EXPECT_EQ(f.diag, id);
  EXPECT_EQ(f.upper, id);

  const auto g = gauss_decompose(mat({{1, 1}, {1, 2}}));
  EXPECT_EQ(g.lower, mat({{1, 0}, {1, 1}}));
  EXPECT_EQ(g.diag, mat({{1, 0}, {0, 1}}));
  EXPECT_EQ(g.upper, mat({{1, 1}, {0, 1}}));

  try {
    gauss_decompose(perm_matrix(Permutation::simple(1, 3)));
    FAIL() << "expected NotInG0";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInG0);
  }
  int k = 0;
  EXPECT_FALSE(try_gauss_decompose(mat({{1, 2, 0}, {2, 4, 0}, {0, 0, 1}}), &k));
  EXPECT_EQ(k, 2);
  EXPECT_EQ(gauss_plus(id), id);
}

TEST(Gauss, RoundTripAndPivotsMatchLeadingMinors) {
  Rng rng(16);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + rep % 5;
    const auto x = random_g0(rng, n);
    const auto f = gauss_decompose(x);
    ASSERT_EQ(f.lower * f.diag * f.upper, x);
    ASSERT_TRUE(is_in_N_minus(f.lower));
    ASSERT_TRUE(is_in_N(f.upper));
    ASSERT_TRUE(is_in_H(f.diag));
    // d_k = Delta_k / Delta_{k-1}
    Rat prev(1);
    for (int kk = 1; kk <= n; ++kk) {
      std::vector<int> idx(kk);
      for (int i = 0; i < kk; ++i) idx[i] = i;
      const Rat d = cofactor_det(rows_of(x, idx, idx));
      ASSERT_EQ(f.diag(kk - 1, kk - 1), d / prev);
      prev = d;
    }
  }
}

TEST(Gauss, PlusOfPlusTimes) {
  Rng rng(17);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 4;
    const auto x = random_g0(rng, n);
    const auto y = random_rat_matrix(rng, n);
    if (!is_in_G0(RatMatrix(x * y)) || !is_in_G0(RatMatrix(y * x))) continue;
    EXPECT_EQ(gauss_plus(RatMatrix(gauss_plus(x) * y)), gauss_plus(RatMatrix(x * y)));
    EXPECT_EQ(gauss_minus(RatMatrix(y * gauss_minus(x))), gauss_minus(RatMatrix(y * x)))
        << "mirror identity [y[x]_-]_- = [yx]_-";
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Gauss, ConjugatedLowerUnipotentLiesInNminusN) {
  Rng rng(18);
  for (int rep = 0; rep < 200; ++rep) {
    const auto w = random_permutation(rng, 4);
    const auto z = conj_by_perm(random_unipotent_lower(rng, 4), w);
    const auto f = try_gauss_decompose(z);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->diag, RatMatrix::identity(4));
  }
}

TEST(Gauss, FactorsOfConjugatedBorelStayConjugated) {
  Rng rng(19);
  for (int rep = 0; rep < 200; ++rep) {
    const auto w = random_permutation(rng, 4);
    RatMatrix b = random_unipotent_lower(rng, 4);
    for (int i = 0; i < 4; ++i) b(i, i) = random_positive_rat(rng);
    const auto f = gauss_decompose(conj_by_perm(b, w));
    // [z]_+- in w^{-1} N_- w: conjugating back by w gives lower unipotent matrices
    EXPECT_TRUE(is_in_N_minus(conj_by_perm_inv(f.lower, w)));
    EXPECT_TRUE(is_in_N_minus(conj_by_perm_inv(f.upper, w)));
  }
}

TEST(Predicates, Identity) {
  const auto id = RatMatrix::identity(3);
  EXPECT_TRUE(is_in_N(id));
  EXPECT_TRUE(is_in_N_minus(id));
  EXPECT_TRUE(is_in_B(id));
  EXPECT_TRUE(is_in_B_minus(id));
  EXPECT_TRUE(is_in_H(id));
  EXPECT_TRUE(is_in_G0(id));
  for (const auto& w : all_permutations(3)) {
    EXPECT_TRUE(in_N_of_w(id, w));
    EXPECT_TRUE(in_Nminus_of_w(id, w));
  }
}

TEST(Predicates, Shapes) {
  auto m = mat({{2, 1}, {0, 3}});
  EXPECT_TRUE(is_in_B(m));
  EXPECT_FALSE(is_in_N(m));
  EXPECT_FALSE(is_in_B_minus(m));
  EXPECT_FALSE(is_in_H(m));
  EXPECT_TRUE(is_in_H(mat({{2, 0}, {0, 3}})));
  EXPECT_FALSE(is_in_G0(mat({{0, 1}, {1, 0}})));
}

TEST(Predicates, G0uOnSL3Example) {
  const auto s1 = Permutation::simple(1, 3);
  RatMatrix x = RatMatrix::identity(3);
  x(0, 1) = Rat(5, 3);
  EXPECT_TRUE(is_in_G0_u(x, s1));
  x(0, 1) = 0;
  x(0, 2) = 2;
  x(1, 2) = 7;
  EXPECT_FALSE(is_in_G0_u(x, s1));
}

TEST(Predicates, NofWOnSL3Example) {
  const auto s1 = Permutation::simple(1, 3);
  RatMatrix x = RatMatrix::identity(3);
  x(0, 2) = 4;
  x(1, 2) = Rat(1, 3);
  EXPECT_TRUE(in_N_of_w(x, s1));
  x(0, 1) = 1;
  EXPECT_FALSE(in_N_of_w(x, s1));
}

TEST(Predicates, NofWIsConjugatedIntoN) {
  Rng rng(20);
  for (int rep = 0; rep < 100; ++rep) {
    const auto w = random_permutation(rng, 4);
    auto x = random_unipotent_upper(rng, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (w(i) > w(j)) x(i, j) = 0;
    ASSERT_TRUE(in_N_of_w(x, w));
    EXPECT_TRUE(is_in_N(conj_by_perm_inv(x, w)));  // P_w x P_w^{-1}
  }
}
