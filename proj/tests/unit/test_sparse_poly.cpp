#include <gtest/gtest.h>

#include <array>
#include <map>
#include <sstream>

#include "lacuna/errors.hpp"
#include "lacuna/sparse_poly.hpp"
#include "oracles.hpp"

using namespace lacuna;

namespace {

std::vector<std::int64_t> exps(const SparsePoly& f) { return f.exponents(); }

} // namespace

TEST(SparsePoly, RejectsBrokenInvariants)
{
  EXPECT_THROW(SparsePoly({2, 1}, 5), InvalidParameters);
  EXPECT_THROW(SparsePoly({1, 1}, 5), InvalidParameters);
  EXPECT_THROW(SparsePoly({0, 1}, 5), InvalidParameters);
  EXPECT_THROW(SparsePoly({1, 6}, 5), InvalidParameters);
  EXPECT_THROW(SparsePoly({1}, 0), InvalidParameters);
  EXPECT_EQ(SparsePoly({1, 4}, 5).term_count(), 2);
}

TEST(SampleRandom, ForcedSubsets)
{
  for (std::uint64_t seed : {0ULL, 7ULL, 0xdeadbeefULL}) {
    EXPECT_EQ(exps(sample_random(3, 3, seed, 0)), (std::vector<std::int64_t>{1, 2, 3}));
    EXPECT_EQ(exps(sample_random(1, 1, seed, 5)), (std::vector<std::int64_t>{1}));
  }
}

TEST(SampleRandom, RejectsKAboveN) { EXPECT_THROW(sample_random(4, 3, 1, 0), InvalidParameters); }

TEST(SampleRandom, RegressionFixture)
{
  const auto f = sample_random(5, 100, 42, 0);
  EXPECT_EQ(exps(f), (std::vector<std::int64_t>{9, 23, 29, 41, 48}));
  EXPECT_EQ(f, sample_random(5, 100, 42, 0));
  EXPECT_NE(f, sample_random(5, 100, 42, 1));
}

TEST(SampleRandom, SortedDistinctInRange)
{
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto f = sample_random(30, 1000, 3, i);
    ASSERT_EQ(f.term_count(), 30);
    for (std::size_t j = 1; j < f.exponents().size(); ++j)
      ASSERT_LT(f.exponents()[j - 1], f.exponents()[j]);
    ASSERT_GE(f.exponents().front(), 1);
    ASSERT_LE(f.exponents().back(), 1000);
  }
}

TEST(SampleRandom, ChiSquareUniformOverSixSubsets)
{
  std::map<std::vector<std::int64_t>, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i)
    ++counts[exps(sample_random(2, 4, 2024, static_cast<std::uint64_t>(i)))];
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0;
  const double expected = draws / 6.0;
  for (const auto& [subset, c] : counts)
    chi2 += (c - expected) * (c - expected) / expected;
  // Upper 0.001 quantile of chi-square with 5 degrees of freedom.
  EXPECT_LT(chi2, 20.515);
}

TEST(ReduceModCyclic, Examples)
{
  EXPECT_EQ(reduce_mod_cyclic(SparsePoly({1, 3, 4}, 4), 3).counts,
            (std::vector<std::int64_t>{2, 2, 0}));
  EXPECT_EQ(reduce_mod_cyclic(SparsePoly({2}, 2), 2).counts, (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(reduce_mod_cyclic(SparsePoly({1, 2, 3, 4, 5, 6}, 6), 1).counts,
            (std::vector<std::int64_t>{7}));
  EXPECT_THROW(reduce_mod_cyclic(SparsePoly({1}, 1), 0), InvalidParameters);
}

TEST(ReduceModCyclic, MassAndConstant)
{
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto f = sample_random(1 + static_cast<std::int64_t>(i % 20), 200, 9, i);
    for (std::int64_t n : {1, 2, 7, 30, 199}) {
      const auto c = reduce_mod_cyclic(f, n);
      std::int64_t sum = 0;
      for (auto v : c.counts)
        sum += v;
      ASSERT_EQ(sum, f.term_count() + 1);
      ASSERT_GE(c.counts[0], 1);
      ASSERT_EQ(c.shifted()[0], c.counts[0] - 1);
    }
  }
}

TEST(AtomProbability, Examples)
{
  std::array<std::int64_t, 3> c{2, 1, 1};
  EXPECT_EQ(atom_probability(c, 4, 3, 12), Rational(32, 165));
  std::array<std::int64_t, 1> single{7};
  EXPECT_EQ(atom_probability(single, 7, 1, 30), Rational(1));
  std::array<std::int64_t, 2> impossible{0, 4};
  EXPECT_EQ(atom_probability(impossible, 4, 2, 4), Rational(0));
  std::array<std::int64_t, 3> bad_sum{1, 1, 1};
  EXPECT_THROW(atom_probability(bad_sum, 4, 3, 12), InvalidParameters);
}

TEST(AtomProbability, ResidueClassSizes)
{
  EXPECT_EQ(residue_class_size(0, 3, 12), 4);
  EXPECT_EQ(residue_class_size(1, 5, 12), 3);
  EXPECT_EQ(residue_class_size(3, 5, 12), 2);
}

TEST(AtomProbability, ExactMassIsOne)
{
  for (std::int64_t N = 1; N <= 20; N += 3)
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(6, N); ++k)
      for (std::int64_t n = 1; n <= std::min<std::int64_t>(5, N); ++n) {
        Rational total = 0;
        oracle::for_each_composition(k, n, [&](const std::vector<std::int64_t>& c) {
          total += atom_probability(c, k, n, N);
        });
        ASSERT_EQ(total, Rational(1)) << "N=" << N << " k=" << k << " n=" << n;
      }
}

TEST(AtomProbability, MatchesDirectCount)
{
  // Count subsets of [1, 12] by residue profile mod 3 and compare.
  std::map<std::vector<std::int64_t>, std::int64_t> tally;
  std::int64_t total = 0;
  oracle::for_each_subset(4, 12, [&](const std::vector<std::int64_t>& s) {
    std::vector<std::int64_t> c(3, 0);
    for (auto e : s)
      ++c[e % 3];
    ++tally[c];
    ++total;
  });
  for (const auto& [c, count] : tally) {
    Rational expected(count, total);
    expected.canonicalize();
    EXPECT_EQ(atom_probability(c, 4, 3, 12), expected);
  }
}

TEST(MultinomialWeight, Examples)
{
  std::array<std::int64_t, 3> a{2, 1, 1}, b{4, 0, 0};
  std::array<std::int64_t, 2> c{2, 2};
  EXPECT_EQ(multinomial_weight(a, 4, 3), Rational(4, 27));
  EXPECT_EQ(multinomial_weight(b, 4, 3), Rational(1, 81));
  EXPECT_EQ(multinomial_weight(c, 4, 2), Rational(3, 8));
  std::array<std::int64_t, 2> negative{5, -1};
  EXPECT_THROW(multinomial_weight(negative, 4, 2), InvalidParameters);
}

TEST(MultinomialWeight, MassIsOne)
{
  for (std::int64_t k = 0; k <= 8; ++k)
    for (std::int64_t n = 1; n <= 5; ++n) {
      Rational total = 0;
      oracle::for_each_composition(k, n, [&](const std::vector<std::int64_t>& c) {
        total += multinomial_weight(c, k, n);
      });
      ASSERT_EQ(total, Rational(1)) << "k=" << k << " n=" << n;
    }
}

TEST(MultinomialWeight, AtomRatioConvergesInN)
{
  struct Case
  {
    std::vector<std::int64_t> c;
    std::int64_t k, n;
  };
  for (const Case& cs : {Case{{2, 1, 1}, 4, 3}, Case{{1, 1}, 2, 2}, Case{{0, 2, 1, 0, 2}, 5, 5}}) {
    const Rational w = multinomial_weight(cs.c, cs.k, cs.n);
    double previous = -1;
    for (std::int64_t scale : {10, 100, 1000}) {
      const Rational ratio = atom_probability(cs.c, cs.k, cs.n, cs.n * scale) / w;
      const double err = std::abs(to_double(ratio) - 1.0);
      if (previous >= 0)
        EXPECT_LE(err * 10, previous * 1.0000001) << "scale " << scale;
      previous = err;
    }
  }
}

TEST(PolyText, ParsesCommentsAndBlankLines)
{
  std::istringstream in("# header\n1 2\n\n  3 7 9  \n5\n");
  const auto polys = read_polys(in);
  ASSERT_EQ(polys.size(), 3u);
  EXPECT_EQ(exps(polys[1]), (std::vector<std::int64_t>{3, 7, 9}));
  EXPECT_EQ(polys[1].degree_cap(), 9);
  EXPECT_EQ(format_poly(polys[1]), "3 7 9");
}

TEST(PolyText, ReportsLineNumber)
{
  std::istringstream in("1 2\n# ok\n3 x\n");
  try {
    read_polys(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream unsorted("4 2\n");
  EXPECT_THROW(read_polys(unsorted), ParseError);
}
