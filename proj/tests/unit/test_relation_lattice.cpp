#include <gtest/gtest.h>

#include <cmath>

#include "lacuna/arith.hpp"
#include "lacuna/cyclotomic.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/relation_lattice.hpp"
#include "oracles.hpp"

using namespace lacuna;

namespace {

BallQuery ball_at(const std::vector<std::int64_t>& anchor, double radius)
{
  BallQuery q;
  q.n = static_cast<std::int64_t>(anchor.size());
  q.radius = radius;
  for (auto a : anchor)
    q.center.emplace_back(a);
  return q;
}

/// Brute-force count over a box of basis coefficients.
std::uint64_t brute_ball(const RelationBasis& b, const std::vector<Rational>& center,
                         double radius, int box)
{
  const std::size_t r = b.vectors.size();
  std::vector<int> coef(r, -box);
  std::uint64_t count = 0;
  while (true) {
    double d2 = 0;
    for (std::int64_t l = 0; l < b.n; ++l) {
      double x = 0;
      for (std::size_t i = 0; i < r; ++i)
        x += coef[i] * static_cast<double>(b.vectors[i][l]);
      const double diff = x - to_double(center[l]);
      d2 += diff * diff;
    }
    count += d2 <= radius * radius + 1e-9;
    std::size_t i = 0;
    while (i < r && coef[i] == box)
      coef[i++] = -box;
    if (i == r)
      return count;
    ++coef[i];
  }
}

} // namespace

TEST(RelationBasis, Examples)
{
  const auto b4 = build_basis(4);
  EXPECT_EQ(b4.rank, 2);
  EXPECT_EQ(b4.vectors, (std::vector<std::vector<std::int64_t>>{{1, 0, 1, 0}, {0, 1, 0, 1}}));
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const auto b = build_basis(p);
    ASSERT_EQ(b.rank, 1);
    EXPECT_EQ(b.vectors[0], std::vector<std::int64_t>(static_cast<std::size_t>(p), 1));
  }
  EXPECT_THROW(build_basis(1), InvalidParameters);
}

TEST(RelationBasis, Twelve)
{
  const auto b = build_basis(12);
  EXPECT_EQ(b.rank, 8);
  EXPECT_GT(b.gram_det, 0);
  for (const auto& v : b.vectors) {
    std::vector<std::int64_t> shifted(v.begin(), v.end());
    EXPECT_LT(oracle::evaluate_at_root(shifted), 1e-9L);
    EXPECT_TRUE(vanishes_dense(shifted));
  }
}

TEST(RelationBasis, InvariantsUpTo120)
{
  for (std::int64_t n = 2; n <= 120; ++n) {
    const auto b = build_basis(n);
    ASSERT_EQ(b.rank, n - oracle::totient(n));
    ASSERT_EQ(static_cast<std::int64_t>(b.vectors.size()), b.rank);
    for (const auto& v : b.vectors)
      ASSERT_TRUE(vanishes_dense(v)) << "n=" << n;
    for (std::size_t i = 0; i < b.gram.size(); ++i)
      for (std::size_t j = 0; j < b.gram.size(); ++j)
        ASSERT_GE(b.gram[i][j], 0);
    ASSERT_GT(b.gram_det, 0);
    ASSERT_EQ(b.gram_det, integer_determinant(b.gram));
    ASSERT_LE(mesh_max_length(b), omega(n) * std::sqrt(static_cast<double>(n)) + 1e-9);
  }
}

TEST(RelationBasis, SpansTheRelations)
{
  // Shifted p-gon sums generate R, so each must be an integer combination of
  // the basis. Solve gram * x = basis * v over the rationals.
  for (std::int64_t n : {6, 10, 12, 18, 20, 30, 36}) {
    const auto b = build_basis(n);
    const std::size_t r = b.vectors.size();
    for (const auto& pp : factorize(n))
      for (std::int64_t shift = 0; shift < n / pp.prime; ++shift) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
        for (std::int64_t t = 0; t < pp.prime; ++t)
          v[static_cast<std::size_t>(shift + t * (n / pp.prime))] = 1;
        std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j)
            m[i][j] = b.gram[i][j];
          std::int64_t dot = 0;
          for (std::int64_t l = 0; l < n; ++l)
            dot += b.vectors[i][l] * v[l];
          m[i][r] = dot;
        }
        for (std::size_t c = 0; c < r; ++c) {
          std::size_t piv = c;
          while (m[piv][c] == 0)
            ++piv;
          std::swap(m[piv], m[c]);
          for (std::size_t i = 0; i < r; ++i) {
            if (i == c || m[i][c] == 0)
              continue;
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= r; ++j)
              m[i][j] -= f * m[c][j];
          }
        }
        std::vector<std::int64_t> rebuilt(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < r; ++i) {
          const Rational x = m[i][r] / m[i][i];
          ASSERT_EQ(x.get_den(), 1) << "n=" << n << " p=" << pp.prime << " shift=" << shift;
          for (std::int64_t l = 0; l < n; ++l)
            rebuilt[l] += x.get_num().get_si() * b.vectors[i][l];
        }
        ASSERT_EQ(rebuilt, v);
      }
  }
}

TEST(MeshLength, Examples)
{
  EXPECT_DOUBLE_EQ(mesh_max_length(build_basis(4)), 2.0);
  EXPECT_DOUBLE_EQ(mesh_max_length(build_basis(9)), 3.0);
  EXPECT_LE(mesh_max_length(build_basis(6)), 2 * std::sqrt(6.0));
  for (std::int64_t q : {2, 3, 4, 5, 8, 9, 25, 27, 49, 64}) {
    EXPECT_NEAR(mesh_max_length(build_basis(q)), std::sqrt(static_cast<double>(q)), 1e-12);
  }
}

TEST(EnumerateBall, Examples)
{
  const auto b4 = build_basis(4);
  const std::vector<std::int64_t> zero4(4, 0);
  EXPECT_EQ(enumerate_ball(b4, ball_at(zero4, 0), zero4), 1u);
  for (std::int64_t p : {3, 5, 7}) {
    const auto b = build_basis(p);
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(p), 0);
    for (double r : {0.0, 1.0, 5.0, 10.0, 20.0}) {
      const auto expected = 2 * static_cast<std::uint64_t>(std::floor(r / std::sqrt(p))) + 1;
      EXPECT_EQ(enumerate_ball(b, ball_at(zero, r), zero), expected) << p << " " << r;
    }
  }
}

TEST(EnumerateBall, MatchesBruteForce)
{
  for (std::int64_t n : {4, 6, 8, 9, 10}) {
    const auto b = build_basis(n);
    std::vector<std::int64_t> anchor(static_cast<std::size_t>(n), 0);
    anchor[1] = 2; // arbitrary translate
    BallQuery q = ball_at(anchor, 3.5);
    q.center[0] = Rational(1, 3);
    q.center[2] = Rational(-5, 2);
    // Shift the count to the coset: brute force on x - anchor.
    std::vector<Rational> rel_center;
    for (std::int64_t l = 0; l < n; ++l)
      rel_center.push_back(q.center[l] - anchor[l]);
    EXPECT_EQ(enumerate_ball(b, q, anchor), brute_ball(b, rel_center, 3.5, 5)) << "n=" << n;
  }
}

TEST(EnumerateBall, GuardRaisesResourceLimit)
{
  const auto b = build_basis(30);
  const std::vector<std::int64_t> zero(30, 0);
  EXPECT_THROW(enumerate_ball(b, ball_at(zero, 200), zero), ResourceLimit);
  EXPECT_THROW(enumerate_ball(b, ball_at(zero, 20), zero, 10.0), ResourceLimit);
}

TEST(EnumerateBall, MatchesFiberOracle)
{
  struct Case
  {
    int q, m;
  };
  for (const Case c : {Case{2, 3}, Case{2, 5}, Case{4, 3}, Case{3, 5}}) {
    const std::int64_t n = c.q * c.m;
    const auto b = build_basis(n);
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(n), 0);
    for (std::int64_t r : {3, 5, 10}) {
      if (n == 15 && r == 10)
        continue;
      EXPECT_EQ(enumerate_ball(b, ball_at(zero, static_cast<double>(r)), zero),
                oracle::ball_count_two_factor(c.q, c.m, r * r))
          << "n=" << n << " r=" << r;
    }
  }
}

TEST(VolumeBound, Examples)
{
  for (std::int64_t p : {3, 5, 7}) {
    const auto b = build_basis(p);
    const double sp = std::sqrt(static_cast<double>(p));
    for (double r : {0.0, 4.0, 20.0})
      EXPECT_NEAR(volume_count_bound(b, r), 2 * (r + sp) / sp, 1e-9);
  }
  for (std::int64_t n : {4, 6, 12, 30})
    EXPECT_GE(volume_count_bound(build_basis(n), 0), 1.0);
}

TEST(VolumeBound, DominatesEnumeration)
{
  for (std::int64_t n : {4, 6, 8, 9, 10, 12})
    for (double r : {5.0, 10.0}) {
      const auto b = build_basis(n);
      const std::vector<std::int64_t> zero(static_cast<std::size_t>(n), 0);
      const auto count = enumerate_ball(b, ball_at(zero, r), zero);
      EXPECT_LE(static_cast<double>(count), volume_count_bound(b, r)) << n << " " << r;
    }
}

TEST(IntegerDeterminant, SmallMatrices)
{
  EXPECT_EQ(integer_determinant({{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(integer_determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}), -3);
}
