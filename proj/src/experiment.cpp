#include "lacuna/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lacuna/errors.hpp"
#include "lacuna/sparse_poly.hpp"

namespace lacuna {

std::string to_string(EstimateMode mode)
{
  return mode == EstimateMode::monte_carlo ? "monte-carlo" : "exhaustive";
}

std::string Event::label() const
{
  return n ? std::to_string(*n) : "any:" + to_string(sweep);
}

WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials)
{
  require(trials >= 1 && hits >= 0 && hits <= trials, "wilson_interval: invalid counts");
  constexpr double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / t;
  const double denom = 1 + z * z / t;
  const double center = (p + z * z / (2 * t)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / t + z * z / (4 * t * t)) / denom;
  return {std::clamp(std::min(center - half, p), 0.0, 1.0),
          std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

unsigned default_workers()
{
  return std::max(1u, std::thread::hardware_concurrency());
}

std::int64_t parallel_count(std::int64_t total, unsigned workers,
                            const std::function<bool(std::int64_t)>& hit)
{
  if (workers == 0)
    workers = default_workers();
  workers = static_cast<unsigned>(
      std::min<std::int64_t>(workers, std::max<std::int64_t>(1, total)));
  std::vector<std::int64_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    const std::int64_t begin = total * w / workers;
    const std::int64_t end = total * (w + 1) / workers;
    std::int64_t local = 0;
    for (std::int64_t i = begin; i < end; ++i)
      local += hit(i) ? 1 : 0;
    partial[w] = local;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run, w);
  }
  std::int64_t sum = 0;
  for (std::int64_t v : partial)
    sum += v;
  return sum;
}

namespace {

void check_sizes(std::int64_t k, std::int64_t degree_cap, std::int64_t trials)
{
  require(k >= 1, "k must be positive");
  require(degree_cap >= 1, "N must be positive");
  require(k <= degree_cap, "k must not exceed N");
  require(trials >= 1, "trials must be positive");
}

EstimateReport monte_carlo_report(std::int64_t k, std::int64_t degree_cap, Event event,
                                  std::int64_t trials, std::int64_t hits, std::uint64_t seed)
{
  EstimateReport r;
  r.k = k;
  r.degree_cap = degree_cap;
  r.event = event;
  r.trials = trials;
  r.hits = hits;
  r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  const auto ci = wilson_interval(hits, trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.seed = seed;
  r.mode = EstimateMode::monte_carlo;
  return r;
}

} // namespace

EstimateReport estimate_phi_n(std::int64_t k, std::int64_t degree_cap, std::int64_t n,
                              std::int64_t trials, std::uint64_t seed, unsigned workers)
{
  check_sizes(k, degree_cap, trials);
  require(n >= 1, "n must be positive");
  const std::int64_t hits = parallel_count(trials, workers, [&](std::int64_t i) {
    return divides_phi_dense(sample_random(k, degree_cap, seed, static_cast<std::uint64_t>(i)),
                             n);
  });
  return monte_carlo_report(k, degree_cap, Event::phi(n), trials, hits, seed);
}

EstimateReport estimate_any_cyclotomic(std::int64_t k, std::int64_t degree_cap,
                                       std::int64_t trials, std::uint64_t seed, SweepMode mode,
                                       unsigned workers,
                                       std::optional<std::int64_t> cap_override)
{
  check_sizes(k, degree_cap, trials);
  const CyclotomicSweep sweep(degree_cap, mode, k, cap_override);
  const std::int64_t hits = parallel_count(trials, workers, [&](std::int64_t i) {
    return sweep.any(sample_random(k, degree_cap, seed, static_cast<std::uint64_t>(i)));
  });
  return monte_carlo_report(k, degree_cap, Event::any(mode, cap_override), trials, hits, seed);
}

EstimateReport exhaustive_enumeration(std::int64_t k, std::int64_t degree_cap,
                                      const Event& event, unsigned workers)
{
  require(k >= 1 && degree_cap >= 1 && k <= degree_cap, "exhaustive: need 1 <= k <= N");
  const BigInt total_big = binomial(degree_cap, k);
  if (total_big > kExhaustiveGuard)
    throw ResourceLimit("exhaustive enumeration: binomial(N, k) = " + total_big.get_str() +
                        " exceeds 1e7");
  const std::int64_t total = total_big.get_si();

  std::optional<CyclotomicSweep> sweep;
  if (!event.n)
    sweep.emplace(degree_cap, event.sweep, k, event.cap_override);
  auto test = [&](const SparsePoly& f) {
    return event.n ? divides_phi_dense(f, *event.n) : sweep->any(f);
  };

  // Subsets in lexicographic order, materialized in batches so the tests
  // can be spread over workers.
  std::vector<std::int64_t> current(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i)
    current[i] = i + 1;
  auto advance = [&]() {
    std::int64_t i = k - 1;
    while (i >= 0 && current[i] == degree_cap - (k - 1 - i))
      --i;
    if (i < 0)
      return false;
    ++current[i];
    for (std::int64_t j = i + 1; j < k; ++j)
      current[j] = current[j - 1] + 1;
    return true;
  };

  std::int64_t hits = 0;
  constexpr std::int64_t batch_size = 1 << 16;
  std::vector<std::vector<std::int64_t>> batch;
  bool more = true;
  while (more) {
    batch.clear();
    while (more && static_cast<std::int64_t>(batch.size()) < batch_size) {
      batch.push_back(current);
      more = advance();
    }
    hits += parallel_count(static_cast<std::int64_t>(batch.size()), workers,
                           [&](std::int64_t i) { return test(SparsePoly(batch[i], degree_cap)); });
  }

  EstimateReport r;
  r.k = k;
  r.degree_cap = degree_cap;
  r.event = event;
  r.trials = total;
  r.hits = hits;
  Rational exact(hits, total);
  exact.canonicalize();
  r.exact_value = exact;
  r.estimate = exact.get_d();
  r.ci_low = r.estimate;
  r.ci_high = r.estimate;
  r.mode = EstimateMode::exhaustive;
  return r;
}

std::vector<EstimateReport> decay_series(const std::vector<std::int64_t>& ks,
                                         std::int64_t degree_cap, std::int64_t trials,
                                         std::uint64_t seed, SweepMode mode, unsigned workers)
{
  require(!ks.empty(), "decay_series: empty k list");
  std::vector<EstimateReport> out;
  out.reserve(ks.size());
  for (std::int64_t k : ks)
    out.push_back(estimate_any_cyclotomic(k, degree_cap, trials, seed, mode, workers));
  return out;
}

} // namespace lacuna
