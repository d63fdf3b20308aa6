#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lacuna/bounds.hpp"
#include "lacuna/cyclotomic.hpp"
#include "lacuna/errors.hpp"
#include "lacuna/experiment.hpp"
#include "lacuna/io.hpp"
#include "oracles.hpp"

using namespace lacuna;

TEST(Wilson, BasicShape)
{
  const auto a = wilson_interval(0, 100);
  EXPECT_EQ(a.low, 0);
  EXPECT_GT(a.high, 0);
  const auto b = wilson_interval(100, 100);
  EXPECT_EQ(b.high, 1);
  EXPECT_LT(b.low, 1);
  // Reference values from statsmodels' proportion_confint(method="wilson").
  const auto c = wilson_interval(50, 100);
  EXPECT_NEAR(c.low, 0.4038315303659956, 1e-12);
  EXPECT_NEAR(c.high, 0.5961684696340044, 1e-12);
  const auto d = wilson_interval(3, 40);
  EXPECT_NEAR(d.low, 0.025836025774588184, 1e-12);
  EXPECT_NEAR(d.high, 0.1986423352431055, 1e-12);
}

TEST(ParallelCount, IndependentOfWorkers)
{
  auto hit = [](std::int64_t i) { return (i * 2654435761LL) % 7 < 3; };
  const auto base = parallel_count(100003, 1, hit);
  for (unsigned w : {2u, 3u, 8u, 16u})
    EXPECT_EQ(parallel_count(100003, w, hit), base);
}

TEST(EstimatePhiN, Examples)
{
  const auto a = estimate_phi_n(4, 12, 2, 2000, 1);
  EXPECT_EQ(a.hits, 0);
  const auto b = estimate_phi_n(2, 2, 3, 50, 9);
  EXPECT_EQ(b.estimate, 1.0);
  const auto c = estimate_phi_n(5, 12, 2, 20000, 3);
  EXPECT_LE(c.ci_low, 25.0 / 66);
  EXPECT_GE(c.ci_high, 25.0 / 66);
  EXPECT_LE(c.ci_low, c.estimate);
  EXPECT_LE(c.estimate, c.ci_high);
  EXPECT_THROW(estimate_phi_n(5, 4, 2, 10, 1), InvalidParameters);
  EXPECT_THROW(estimate_phi_n(2, 4, 2, 0, 1), InvalidParameters);
}

TEST(EstimateAny, Examples)
{
  EXPECT_EQ(estimate_any_cyclotomic(1, 1, 20, 4).estimate, 1.0);
  const auto r = estimate_any_cyclotomic(3, 30, 500, 4, SweepMode::fs_pruned);
  EXPECT_EQ(r.event.label(), "any:fs-pruned");
  EXPECT_EQ(r.mode, EstimateMode::monte_carlo);
}

TEST(Exhaustive, Examples)
{
  const auto a = exhaustive_enumeration(5, 12, Event::phi(2));
  EXPECT_EQ(*a.exact_value, Rational(25, 66));
  EXPECT_EQ(a.trials, 792);
  EXPECT_EQ(a.ci_low, a.estimate);
  EXPECT_EQ(a.ci_high, a.estimate);
  EXPECT_EQ(*exhaustive_enumeration(4, 12, Event::phi(3)).exact_value, Rational(0));
  for (std::int64_t N = 1; N <= 9; ++N)
    EXPECT_EQ(*exhaustive_enumeration(N, N, Event::any()).exact_value, Rational(1));
  EXPECT_THROW(exhaustive_enumeration(12, 60, Event::any()), ResourceLimit);
}

TEST(Exhaustive, AnyCyclotomicMatchesOracle)
{
  // Count k = 4 subsets of [1, 12] with some Phi_n factor, phi(n) <= 12.
  std::int64_t hits = 0, total = 0;
  oracle::for_each_subset(4, 12, [&](const std::vector<std::int64_t>& s) {
    ++total;
    for (std::int64_t n = 2; n <= 200; ++n) {
      if (oracle::totient(n) > 12)
        continue;
      std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
      c[0] = 1;
      for (auto e : s)
        ++c[static_cast<std::size_t>(e % n)];
      if (oracle::evaluate_at_root(c) < 1e-9L) {
        ++hits;
        break;
      }
    }
  });
  ASSERT_EQ(total, 495);
  const auto full = exhaustive_enumeration(4, 12, Event::any(SweepMode::full_sweep));
  const auto pruned = exhaustive_enumeration(4, 12, Event::any(SweepMode::fs_pruned));
  Rational expected(hits, 495);
  expected.canonicalize();
  EXPECT_EQ(*full.exact_value, expected);
  EXPECT_EQ(*pruned.exact_value, *full.exact_value);
}

TEST(MonteCarlo, CoverageOfExactValue)
{
  // The exact value should fall inside the 95% interval most of the time.
  const double exact = 25.0 / 66;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = estimate_phi_n(5, 12, 2, 1000, seed, 1);
    inside += r.ci_low <= exact && exact <= r.ci_high;
  }
  EXPECT_GE(inside, 93);
}

TEST(Determinism, WorkerCountAndReruns)
{
  const auto a = estimate_any_cyclotomic(6, 200, 3000, 17, SweepMode::full_sweep, 1);
  const auto b = estimate_any_cyclotomic(6, 200, 3000, 17, SweepMode::full_sweep, 8);
  EXPECT_EQ(io::report_csv_row(a), io::report_csv_row(b));
  const auto c = estimate_any_cyclotomic(6, 200, 3000, 17, SweepMode::full_sweep, 3);
  EXPECT_EQ(c.hits, a.hits);
}

TEST(DecaySeries, ShapeAndDeterminism)
{
  const auto one = decay_series({5}, 500, 300, 2);
  ASSERT_EQ(one.size(), 1u);
  const auto a = decay_series({3, 5, 7}, 500, 300, 2);
  const auto b = decay_series({3, 5, 7}, 500, 300, 2);
  std::ostringstream sa, sb;
  io::write_reports(sa, a, false);
  io::write_reports(sb, b, false);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a[1].k, 5);
}

TEST(Domination, EstimateBelowEq3Bound)
{
  for (std::int64_t n : {7, 9})
    for (std::int64_t k : {63, 126}) {
      const auto r = estimate_phi_n(k, 100000, n, 4000, 5);
      const double half = (r.ci_high - r.ci_low) / 2;
      EXPECT_LE(r.estimate, eq3_lattice_bound(k, n).value() + 3 * half) << n << " " << k;
    }
}
