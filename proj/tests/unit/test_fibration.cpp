#include <gtest/gtest.h>

#include "tnn/fibration.hpp"
#include "tnn/sampling.hpp"

using namespace tnn;

namespace {

RatMatrix unipotent3(const Rat& x12, const Rat& x23, const Rat& x13) {
  auto x = RatMatrix::identity(3);
  x(0, 1) = x12;
  x(1, 2) = x23;
  x(0, 2) = x13;
  return x;
}

const Permutation s1 = Permutation::simple(1, 3);

}  // namespace

TEST(Factor, SL3Example) {
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const Rat a = random_positive_rat(rng), b = random_rat(rng), c = random_rat(rng);
    const auto x = unipotent3(a, b, c);
    const auto f = factor_u(x, s1);
    EXPECT_EQ(f.x_u, unipotent3(a, 0, 0));
    EXPECT_EQ(f.x_upper_u, unipotent3(0, b, c - a * b));
    EXPECT_EQ(f.x_u * f.x_upper_u, x);
  }
}

TEST(Factor, BaseCellIsFixed) {
  Rng rng(32);
  for (const auto& u : all_permutations(4)) {
    const auto x = random_cell_point(rng, u);
    const auto f = factor_u(x, u);
    EXPECT_EQ(f.x_u, x);
    EXPECT_EQ(f.x_upper_u, RatMatrix::identity(4));
  }
}

TEST(Factor, RoundTripOnTopCellOfS4) {
  Rng rng(33);
  const auto top = Permutation::longest(4);
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = random_cell_point(rng, top);
    const auto u = random_permutation(rng, 4);
    const auto f = factor_u(x, u);
    EXPECT_EQ(f.x_u * f.x_upper_u, x);
    EXPECT_EQ(cell_of(f.x_u), u);
    EXPECT_TRUE(in_N_of_w(f.x_upper_u, u));
    EXPECT_TRUE(in_Nminus_of_w(f.y, u));
    EXPECT_EQ(f.A, f.y * f.x_upper_u);
    EXPECT_EQ(gauss_plus(mul_perm_left(u, f.y)), f.x_u);
    EXPECT_TRUE(is_tnn(f.x_u));
  }
}

TEST(Factor, UniquenessOnNonTnnPoints) {
  Rng rng(34);
  int checked = 0;
  for (int rep = 0; rep < 200 && checked < 50; ++rep) {
    const int n = 3 + rep % 3;
    const auto x = random_unipotent_upper(rng, n);
    const auto u = random_permutation(rng, n);
    if (!is_in_G0_u(x, u)) continue;
    const auto f = factor_u(x, u);
    const auto g = factor_u(RatMatrix(f.x_u * f.x_upper_u), u);
    EXPECT_EQ(g.x_u, f.x_u);
    EXPECT_EQ(g.x_upper_u, f.x_upper_u);
    EXPECT_EQ(cell_of(f.x_u), u);
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Factor, Errors) {
  try {
    factor_u(unipotent3(0, 1, 1), s1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInG0u);
  }
  auto lower = RatMatrix::identity(3);
  lower(2, 0) = 1;
  EXPECT_THROW(factor_u(lower, s1), Error);
  EXPECT_THROW(factor_u(RatMatrix::identity(4), s1), Error);
}

TEST(PiU, FiberOfTheAPoint) {
  Rng rng(35);
  const Rat a(5, 2);
  for (int rep = 0; rep < 30; ++rep) {
    // TNN points with x12 = a: 0 <= x13 <= a x23
    const Rat x23 = random_positive_rat(rng);
    const Rat x13 = a * x23 * make_rat(rep % 7, 6);
    const auto x = unipotent3(a, x23, x13);
    ASSERT_TRUE(in_Y_geq_u(x, s1));
    EXPECT_EQ(pi_u(x, s1), unipotent3(a, 0, 0));
  }
}

TEST(PiU, IdempotentAndTnnPreserving) {
  Rng rng(36);
  for (int rep = 0; rep < 200; ++rep) {
    const auto u = random_permutation(rng, 4);
    const auto x = random_cell_point(rng, random_above(rng, u, true));
    const auto p = pi_u(x, u);
    EXPECT_EQ(pi_u(p, u), p);
    EXPECT_TRUE(is_tnn(p));
  }
}

TEST(RecoverShift, Examples) {
  Rng rng(37);
  const auto x = random_cell_point(rng, Permutation::longest(4));
  EXPECT_EQ(recover_shift(x, x, Permutation::longest(4)), RatMatrix::identity(4));

  const Rat a(7, 3), at(2, 5);
  const auto n1 = recover_shift(unipotent3(a, 0, 0), unipotent3(at, 0, 0), s1);
  auto expect = RatMatrix::identity(3);
  expect(1, 0) = 1 / a - 1 / at;
  EXPECT_EQ(n1, expect);

  EXPECT_THROW(recover_shift(unipotent3(a, 0, 0), unipotent3(0, 1, 0), s1), Error);
}

TEST(RecoverShift, DefiningIdentity) {
  Rng rng(38);
  for (int rep = 0; rep < 100; ++rep) {
    const auto w = random_permutation(rng, 4);
    const auto x = random_cell_point(rng, w), xt = random_cell_point(rng, w);
    const auto n1 = recover_shift(x, xt, w);
    EXPECT_TRUE(in_Nminus_of_w(n1, w));
    EXPECT_EQ(gauss_plus(RatMatrix(xt * n1)), x);
  }
}

TEST(Rho, SL3ClosedForms) {
  Rng rng(39);
  for (int rep = 0; rep < 50; ++rep) {
    const Rat a = random_positive_rat(rng);
    const auto xt = random_cell_point(rng, random_above(rng, s1, true));
    const Rat t12 = xt(0, 1), t13 = xt(0, 2), t23 = xt(1, 2);
    const auto xp = rho(xt, unipotent3(a, 0, 0), s1);
    EXPECT_EQ(xp, unipotent3(a, (t12 * t23 - t13) / a + t13 / t12, a * t13 / t12));
    // n_- = [(x~^u)^{-1} n_1]_- has (2,1)-entry 1/a - 1/x~12
    const auto f = factor_u(xt, s1);
    const auto n1 = recover_shift(unipotent3(a, 0, 0), f.x_u, s1);
    const auto nm = gauss_minus(RatMatrix(inverse(f.x_upper_u) * n1));
    EXPECT_EQ(nm(1, 0), 1 / a - 1 / t12);
    EXPECT_TRUE(is_tnn(xp));
  }
}

TEST(Rho, FixesPointsOverTheSameBase) {
  Rng rng(40);
  for (int rep = 0; rep < 50; ++rep) {
    const auto u = random_permutation(rng, 4);
    const auto x = random_cell_point(rng, random_above(rng, u, true));
    EXPECT_EQ(rho(x, pi_u(x, u), u), x);
  }
}

TEST(Rho, ContractAndInversePair) {
  Rng rng(41);
  for (int rep = 0; rep < 150; ++rep) {
    const auto u = random_permutation(rng, 4);
    const auto w = random_above(rng, u, true);
    const auto xt = random_cell_point(rng, w);
    const auto base = random_cell_point(rng, u);
    const auto xp = rho(xt, base, u);
    EXPECT_EQ(pi_u(xp, u), base);
    EXPECT_EQ(cell_of(xp), w);
    EXPECT_TRUE(is_tnn(xp));
    EXPECT_EQ(rho(xp, pi_u(xt, u), u), xt);
  }
}

TEST(Rho, BaseMustLieInTheCell) {
  const auto xt = unipotent3(1, 1, Rat(1, 2));
  try {
    rho(xt, RatMatrix::identity(3), s1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CellMismatch);
  }
}

TEST(ConjD, Examples) {
  const auto x = unipotent3(2, 3, 5);
  EXPECT_EQ(conj_d(Rat(1), x), x);
  EXPECT_EQ(conj_d(Rat(3), x), unipotent3(6, 9, 45));
  EXPECT_THROW(conj_d(Rat(0), x), Error);
  EXPECT_THROW(conj_d(Rat(-1), x), Error);
  // agrees with the explicit torus element diag(tau^{-1}, tau^{-2}, ...) up to scalar
  RatMatrix m(3);
  Rng rng(42);
  m = random_rat_matrix(rng, 3);
  const Rat tau(2, 7);
  const auto d = RatMatrix::diagonal({1 / tau, 1 / (tau * tau), 1 / (tau * tau * tau)});
  EXPECT_EQ(conj_d(tau, m), d * m * inverse(d));
}

TEST(Equivariance, TorusCommutesWithFactorization) {
  Rng rng(43);
  const std::vector<Rat> taus = {Rat(1, 3), Rat(2), Rat(7, 5)};
  for (int rep = 0; rep < 60; ++rep) {
    const Rat tau = taus[rep % 3];
    const auto u = random_permutation(rng, 4);
    const auto x = random_cell_point(rng, random_above(rng, u, true));
    const auto f = factor_u(x, u);
    const auto ft = factor_u(conj_d(tau, x), u);
    EXPECT_EQ(ft.x_u, conj_d(tau, f.x_u));
    EXPECT_EQ(ft.x_upper_u, conj_d(tau, f.x_upper_u));
    EXPECT_EQ(cell_of(conj_d(tau, x)), cell_of(x));
    EXPECT_TRUE(is_tnn(conj_d(tau, x)));
    // base point: d x_u d^{-1} = [u d y d^{-1}]_+, shift n_1 = d y^{-1} d^{-1} y
    EXPECT_EQ(conj_d(tau, f.x_u), gauss_plus(mul_perm_left(u, conj_d(tau, f.y))));
    EXPECT_EQ(recover_shift(f.x_u, conj_d(tau, f.x_u), u), conj_d(tau, inverse(f.y)) * f.y);
    // rho of the conjugated point: x ([d A^{-1} d^{-1} A]_+)^{-1}
    EXPECT_EQ(rho(conj_d(tau, x), f.x_u, u),
              x * inverse(gauss_plus(RatMatrix(conj_d(tau, inverse(f.A)) * f.A))));
  }
}
