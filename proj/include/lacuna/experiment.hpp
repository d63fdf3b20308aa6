#ifndef LACUNA_EXPERIMENT_HPP
#define LACUNA_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/arith.hpp"
#include "lacuna/cyclotomic.hpp"

namespace lacuna {

enum class EstimateMode
{
  monte_carlo,
  exhaustive,
};

std::string to_string(EstimateMode mode);

/// Event whose probability is estimated: Phi_n | F for a fixed n, or F has
/// some cyclotomic factor (searched with `sweep`).
struct Event
{
  std::optional<std::int64_t> n;
  SweepMode sweep = SweepMode::full_sweep;
  std::optional<std::int64_t> cap_override;

  static Event phi(std::int64_t n) { return Event{n, SweepMode::full_sweep, std::nullopt}; }
  static Event any(SweepMode sweep = SweepMode::full_sweep,
                   std::optional<std::int64_t> cap_override = std::nullopt)
  {
    return Event{std::nullopt, sweep, cap_override};
  }

  /// "n" for a fixed modulus, otherwise "any:<sweep mode>".
  std::string label() const;
};

struct EstimateReport
{
  std::int64_t k = 0;
  std::int64_t degree_cap = 0;
  Event event;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t seed = 0;
  EstimateMode mode = EstimateMode::monte_carlo;
  std::optional<Rational> exact_value;
};

struct WilsonInterval
{
  double low;
  double high;
};

/// 95% Wilson score interval for hits out of trials.
WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials);

/// Worker count used when 0 is requested.
unsigned default_workers();

/// Counts indices in [0, total) satisfying `hit`, split over `workers`
/// threads in contiguous chunks. The result does not depend on `workers`.
std::int64_t parallel_count(std::int64_t total, unsigned workers,
                            const std::function<bool(std::int64_t)>& hit);

EstimateReport estimate_phi_n(std::int64_t k, std::int64_t degree_cap, std::int64_t n,
                              std::int64_t trials, std::uint64_t seed, unsigned workers = 0);

EstimateReport estimate_any_cyclotomic(std::int64_t k, std::int64_t degree_cap,
                                       std::int64_t trials, std::uint64_t seed,
                                       SweepMode mode = SweepMode::full_sweep,
                                       unsigned workers = 0,
                                       std::optional<std::int64_t> cap_override = std::nullopt);

/// Upper limit on binomial(N, k) for exhaustive enumeration.
inline constexpr std::int64_t kExhaustiveGuard = 10'000'000;

EstimateReport exhaustive_enumeration(std::int64_t k, std::int64_t degree_cap,
                                      const Event& event, unsigned workers = 0);

/// One Monte Carlo report per k (any-cyclotomic event), same N, trials, seed.
std::vector<EstimateReport> decay_series(const std::vector<std::int64_t>& ks,
                                         std::int64_t degree_cap, std::int64_t trials,
                                         std::uint64_t seed,
                                         SweepMode mode = SweepMode::fs_pruned,
                                         unsigned workers = 0);

} // namespace lacuna

#endif // LACUNA_EXPERIMENT_HPP
