#include "fano4/arith.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace fano4;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Leibniz expansion.
Integer leibniz(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Integer total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Integer t = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) t *= m(i, p[i]);
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace

TEST(Arith, HermiteIsEchelonAndUnimodular) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    IntMatrix M = random_matrix(rng, r, c, -4, 4);
    auto h = hermite_normal_form(M);
    ASSERT_EQ(h.U * M, h.H);
    Integer du = determinant(h.U);
    ASSERT_TRUE(du == 1 || du == -1);
    // Pivots strictly move right, positive, entries above reduced.
    std::size_t last = 0;
    for (std::size_t i = 0; i < h.rank; ++i) {
      std::size_t p = 0;
      while (h.H(i, p) == 0) ++p;
      if (i > 0) { ASSERT_GT(p, last); }
      last = p;
      ASSERT_GT(h.H(i, p), 0);
      for (std::size_t k = 0; k < i; ++k) {
        ASSERT_GE(h.H(k, p), 0);
        ASSERT_LT(h.H(k, p), h.H(i, p));
      }
    }
    for (std::size_t i = h.rank; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) ASSERT_EQ(h.H(i, j), 0);
    ASSERT_EQ(h.rank, rank(M));
  }
}

TEST(Arith, DeterminantMatchesLeibniz) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix M = random_matrix(rng, n, n, -5, 5);
    ASSERT_EQ(determinant(M), leibniz(M));
  }
}

TEST(Arith, KernelIsSaturated) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 2 + rng() % 5, c = 1 + rng() % 4;
    IntMatrix M = random_matrix(rng, r, c, -3, 3);
    auto K = integer_kernel(M);
    ASSERT_EQ(K.size(), r - rank(M));
    for (const auto& k : K) ASSERT_TRUE(is_zero(mul(k, M)));
    if (K.empty()) continue;
    // A random integer combination divided by its content is still in the kernel
    // and must be an integer combination of the basis.
    IVec v(r, 0);
    for (const auto& k : K) {
      int a = static_cast<int>(rng() % 7) - 3;
      for (std::size_t i = 0; i < r; ++i) v[i] += a * k[i];
    }
    if (is_zero(v)) continue;
    v = primitive(v);
    auto x = solve_columns(K, to_qvec(v));
    ASSERT_TRUE(x.has_value());
    for (const auto& q : *x) ASSERT_EQ(q.get_den(), 1);
  }
}

TEST(Arith, KernelOfLatticeWithTorsionQuotient) {
  // Columns (2, 0) and (0, 2): left kernel of a 3x2 matrix whose naive kernel
  // vector (2, -2, 2)/2 must come out primitive.
  IntMatrix M{{2, 2}, {2, 4}, {0, 2}};
  auto K = integer_kernel(M);
  ASSERT_EQ(K.size(), 1u);
  EXPECT_EQ(content(K[0]), 1);
  EXPECT_TRUE(is_zero(mul(K[0], M)));
}

TEST(Arith, OrthogonalComplementAndRank) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 2 + rng() % 4, k = 1 + rng() % d;
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < k; ++i) {
      IVec v(d);
      for (auto& x : v) x = static_cast<int>(rng() % 7) - 3;
      rows.push_back(v);
    }
    auto oc = orthogonal_complement(rows, d);
    ASSERT_EQ(oc.size() + rank(rows, d), d);
    for (const auto& o : oc)
      for (const auto& r : rows) ASSERT_EQ(dot(o, r), 0);
  }
}

TEST(Arith, SolveRationalExact) {
  IntMatrix A{{3, 1}, {1, 2}};
  auto x = solve_rational(A, {Rational(1), Rational(0)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(2, 5));
  EXPECT_EQ((*x)[1], Rational(-1, 5));
  IntMatrix S{{1, 2}, {2, 4}};
  EXPECT_FALSE(solve_rational(S, {Rational(1), Rational(0)}).has_value());
}

TEST(Arith, PrimitiveAndErrors) {
  EXPECT_EQ(primitive(ivec({4, -6, 8})), ivec({2, -3, 4}));
  EXPECT_EQ(primitive(QVec{Rational(1, 2), Rational(1, 3)}), ivec({3, 2}));
  EXPECT_THROW(hermite_normal_form(IntMatrix(0, 3)), DimensionError);
}
