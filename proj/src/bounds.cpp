#include "lacuna/bounds.hpp"

#include <algorithm>
#include <functional>
#include <numbers>

#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kCandidateGuard = 5'000'000;
constexpr std::int64_t kMidrangeExplicitTerms = 2'000'000;

// Explicit phi(n)/n lower bound for n >= 3 (Rosser-Schoenfeld form).
double totient_ratio_lower_bound(double n)
{
  const double ll = std::log(std::log(std::max(n, 3.0)));
  return 1.0 / (1.7810724179901979 * ll + 2.50637 / ll);
}

} // namespace

double log_add(double a, double b)
{
  if (a == kNegInf)
    return b;
  if (b == kNegInf)
    return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double chernoff_binomial(std::int64_t trials, double p, double delta)
{
  require(trials >= 0, "chernoff_binomial: trials must be non-negative");
  require(p > 0 && p <= 1, "chernoff_binomial: p must lie in (0, 1]");
  require(delta > 0 && delta < 1, "chernoff_binomial: delta must lie in (0, 1)");
  const double mu = static_cast<double>(trials) * p;
  return 2.0 * std::exp(-delta * delta * mu / 3.0);
}

CandidateSet fs_candidates(std::int64_t k, std::optional<std::int64_t> max_member)
{
  require(k >= 1, "fs_candidates: k must be positive");
  const std::int64_t limit = max_member.value_or(std::numeric_limits<std::int64_t>::max());
  const auto primes = primes_up_to(k + 1);

  CandidateSet out;
  out.k = k;
  // Sum of (p - 2) over the chosen primes is at most k - 1.
  std::function<void(std::size_t, std::int64_t, std::int64_t)> walk =
      [&](std::size_t from, std::int64_t budget, std::int64_t product) {
        if (product <= limit)
          out.members.push_back(product);
        if (out.members.size() > kCandidateGuard)
          throw ResourceLimit("fs_candidates: more than 5e6 admissible moduli");
        for (std::size_t i = from; i < primes.size(); ++i) {
          const std::int64_t p = primes[i];
          if (p - 2 > budget || product > limit / p)
            break;
          walk(i + 1, budget - (p - 2), product * p);
        }
      };
  walk(0, k - 1, 1);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

double log_max_fs_candidate(std::int64_t k)
{
  require(k >= 1, "log_max_fs_candidate: k must be positive");
  const std::int64_t capacity = k - 1;
  std::vector<double> best(static_cast<std::size_t>(capacity) + 1, 0.0);
  for (std::int64_t p : primes_up_to(k + 1)) {
    if (p == 2)
      continue; // weight zero, always taken below
    const std::int64_t w = p - 2;
    for (std::int64_t c = capacity; c >= w; --c)
      best[c] = std::max(best[c], best[c - w] + std::log(static_cast<double>(p)));
  }
  return std::log(2.0) + best[capacity];
}

SquarefreeRecursion squarefree_bound_recursion(std::int64_t k)
{
  require(k >= 1, "squarefree_bound_recursion: k must be positive");
  SquarefreeRecursion out;
  // C_l = sum_{j=1}^{l} (7 + j - 1); compare 5 C_l < 7k exactly.
  for (std::int64_t l = 1;; ++l) {
    const std::int64_t c = 7 * l + l * (l - 1) / 2;
    if (5 * c >= 7 * k)
      break;
    out.partial_sums.push_back(c);
  }
  out.depth = static_cast<std::int64_t>(out.partial_sums.size());

  out.bounds.push_back(7);
  for (std::int64_t l = 1; l <= out.depth; ++l) {
    BigInt b;
    mpz_ui_pow_ui(b.get_mpz_t(), 2, static_cast<unsigned long>(l));
    for (std::int64_t j = 1; j <= l + 1; ++j)
      b *= 7 + (j - 1);
    out.bounds.push_back(b);
  }

  const double s = 2.0 * std::sqrt(static_cast<double>(k));
  out.log_closing_scale = s * std::log(2.0) + std::lgamma(s + 1.0);
  out.depth_below_two_sqrt_k = static_cast<double>(out.depth) < s;
  return out;
}

std::string to_string(Convention convention)
{
  return convention == Convention::paper_c ? "paper-c" : "exact-c-prime";
}

double log_central_atom(double k, std::int64_t n)
{
  const double dn = static_cast<double>(n);
  return std::lgamma(k + 1.0) - dn * std::lgamma(k / dn + 1.0) - k * std::log(dn);
}

double central_atom(double k, std::int64_t n)
{
  return std::exp(log_central_atom(k, n));
}

std::optional<Rational> central_atom_exact(std::int64_t k, std::int64_t n)
{
  require(k >= 0 && n >= 1, "central_atom_exact: invalid arguments");
  if (k % n != 0)
    return std::nullopt;
  BigInt denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigInt part = factorial(k / n);
  for (std::int64_t i = 0; i < n; ++i)
    denom *= part;
  Rational q(factorial(k), denom);
  q.canonicalize();
  return q;
}

double log_unit_ball_volume(std::int64_t d)
{
  const double h = static_cast<double>(d) / 2.0;
  return h * std::log(std::numbers::pi) - std::lgamma(h + 1.0);
}

namespace {

double eq3_log(std::int64_t k, std::int64_t n)
{
  const double dk = static_cast<double>(k);
  const std::int64_t rank = n - totient(n);
  const double radius = 2.1 * std::sqrt(dk) * std::log(dk);
  return log_central_atom(dk, n) + static_cast<double>(rank) * std::log(radius) +
         log_unit_ball_volume(rank);
}

} // namespace

SmallNValue small_n_exact(std::int64_t k, std::int64_t n, Convention convention)
{
  require(n >= 2 && n <= 6, "small_n_exact: n must lie in {2, ..., 6}");
  require(k >= 1, "small_n_exact: k must be positive");
  const std::int64_t s = convention == Convention::exact_c_prime ? 1 : 0;

  // n = 4 and n = 6 sum over many atoms and keep a factorial table.
  const bool many_atoms = n == 4 || n == 6;
  const bool exact_available =
      !many_atoms || k <= (n == 4 ? kSmallNExactLimit4 : kSmallNExactLimit6);
  std::vector<BigInt> fact;
  if (many_atoms && exact_available) {
    fact.resize(static_cast<std::size_t>(k) + 1);
    fact[0] = 1;
    for (std::size_t i = 1; i < fact.size(); ++i)
      fact[i] = fact[i - 1] * static_cast<unsigned long>(i);
  }
  auto fact_of = [&](std::int64_t v) { return fact.empty() ? factorial(v) : fact[v]; };
  auto inv_fact_ok = [&](std::int64_t v) { return v >= 0 && v <= k; };

  // Sum of k! / prod c_j! over atoms c with f(zeta_n) = 0, where the true
  // counts are c' = c + s e_0.
  BigInt ways = 0;
  const BigInt k_fact = exact_available ? fact_of(k) : BigInt(1);
  auto add_atom = [&](std::initializer_list<std::int64_t> c) {
    BigInt d = 1;
    for (std::int64_t v : c) {
      if (!inv_fact_ok(v))
        return;
      d *= fact_of(v);
    }
    ways += k_fact / d;
  };

  if (exact_available) {
    switch (n) {
    case 2:
      // c'_0 = c'_1
      if ((k - s) % 2 == 0)
        add_atom({(k - s) / 2, (k + s) / 2});
      break;
    case 3:
    case 5: {
      // every c'_j equal
      if ((k + s) % n == 0) {
        const std::int64_t t = (k + s) / n;
        if (n == 3)
          add_atom({t - s, t, t});
        else
          add_atom({t - s, t, t, t, t});
      }
      break;
    }
    case 4:
      // c'_0 = c'_2, c'_1 = c'_3
      for (std::int64_t a = s; 2 * a - s <= k; ++a) {
        const std::int64_t twice_b = k + s - 2 * a;
        if (twice_b >= 0 && twice_b % 2 == 0)
          add_atom({a - s, twice_b / 2, a, twice_b / 2});
      }
      break;
    case 6:
      // with d_j = c'_j - c'_{j+3}: d_0 = d_2 = g and d_1 = -g
      for (std::int64_t g = -(k + 1); g <= k + 1; ++g) {
        const std::int64_t twice = k + s - g;
        if (twice < 0 || twice % 2 != 0)
          continue;
        const std::int64_t total = twice / 2; // c'_3 + c'_4 + c'_5
        for (std::int64_t c3 = 0; c3 <= total; ++c3)
          for (std::int64_t c4 = 0; c3 + c4 <= total; ++c4) {
            const std::int64_t c5 = total - c3 - c4;
            add_atom({c3 + g - s, c4 - g, c5 + g, c3, c4, c5});
          }
      }
      break;
    }
  }

  SmallNValue out;
  if (exact_available) {
    BigInt nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    Rational q(ways, nk);
    q.canonicalize();
    out.exact = q;
  }
  out.asymptotic = small_n_asymptotic(k, n);
  return out;
}

double small_n_asymptotic(std::int64_t k, std::int64_t n)
{
  require(n >= 2 && n <= 6, "small_n_asymptotic: n must lie in {2, ..., 6}");
  require(k >= 1, "small_n_asymptotic: k must be positive");
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  if (n == 4 || n == 6)
    return k >= 2 ? std::exp(eq3_log(k, n)) : 0.0;
  return std::exp(dn / 2 * std::log(dn) - (dn - 1) / 2 * std::log(2 * std::numbers::pi * dk));
}

Bound eq3_lattice_bound(std::int64_t k, std::int64_t n)
{
  require(n >= 2, "eq3_lattice_bound: n must be at least 2");
  require(k >= 2, "eq3_lattice_bound: k must be at least 2");
  return Bound{eq3_log(k, n)};
}

Bound chernoff_tail_bound(std::int64_t k)
{
  require(k >= 3, "chernoff_tail_bound: k must be at least 3");
  const double lk = std::log(static_cast<double>(k));
  return Bound{std::log(2.0) + 2 * lk - lk * lk / 3.0};
}

MidrangeBound midrange_bound(std::int64_t k, std::int64_t n)
{
  require(k >= 1 && n >= 2, "midrange_bound: need k >= 1 and n >= 2");
  const double dk = static_cast<double>(k);
  const double dn = static_cast<double>(n);
  const double phi = static_cast<double>(totient(n));

  MidrangeBound out;
  out.m = dk * phi / (2 * dn);
  out.k_tail = std::exp(-dk * phi / (12 * dn));
  out.large_m_branch =
      std::exp(0.5 * std::log(out.m) - (phi - 1) / 2 * std::log(2 * std::numbers::pi));
  out.small_m_branch = std::exp(std::lgamma(out.m + 1) - out.m * std::log(phi));
  out.large_m_selected = out.m >= phi;
  out.heaviest_atom = out.large_m_selected ? out.large_m_branch : out.small_m_branch;
  out.conservative = std::max(out.large_m_branch, out.small_m_branch);
  return out;
}

LargeNBound large_n_bound(std::int64_t k, std::int64_t n, std::int64_t kernel)
{
  require(k >= 1 && n >= 1, "large_n_bound: need k >= 1 and n >= 1");
  require(kernel >= 1 && n % kernel == 0, "large_n_bound: kernel must divide n");
  require(is_squarefree(kernel), "large_n_bound: kernel must be squarefree");
  const double dk = static_cast<double>(k);
  LargeNBound out;
  out.b = static_cast<double>(n / kernel);
  const double lb = std::log(out.b);
  out.three_term = Bound{3 * std::log(dk) - 2 * lb};
  out.two_term = Bound{std::lgamma(dk + 1) - std::lgamma(dk / 2 + 1) - dk / 2 * lb};
  return out;
}

BoundBreakdown total_bound(std::int64_t k, std::optional<double> c)
{
  require(k >= 8, "total_bound: k must be at least 8");
  const double dk = static_cast<double>(k);
  const double lk = std::log(dk);

  BoundBreakdown out;
  out.k = k;
  out.c = c ? *c : log_max_fs_candidate(k) / (std::sqrt(dk) * lk);
  const double log_max_kernel = out.c * std::sqrt(dk) * lk;

  auto push = [&](std::string label, std::int64_t lo, std::optional<std::int64_t> hi,
                  double log_raw, std::string tag) {
    BoundRow row{std::move(label), lo, hi, 0, log_raw, std::move(tag)};
    row.bound = Bound{log_raw}.value();
    out.rows.push_back(std::move(row));
  };

  for (std::int64_t n = 2; n <= 6; ++n) {
    const double v = small_n_asymptotic(k, n);
    push("n=" + std::to_string(n), n, n, std::log(v), "small-n-exact");
  }

  // Range boundaries; empty ranges are kept as rows with n_hi < n_lo.
  const double s4 = dk / std::exp(std::sqrt(lk));
  const auto hi4 = std::max<std::int64_t>(6, static_cast<std::int64_t>(std::floor(s4)));
  const double log_s5 = dk / (24 * lk);
  const double max_index = 4e18;
  const double s5 = log_s5 < std::log(max_index) ? std::exp(log_s5) : max_index;
  const auto hi5 = std::max<std::int64_t>(hi4, static_cast<std::int64_t>(std::floor(s5)));

  const std::int64_t explicit_hi = std::min<std::int64_t>(hi5, hi4 + kMidrangeExplicitTerms);
  const auto phi = totient_sieve(std::max<std::int64_t>(explicit_hi, 6));

  {
    double acc = kNegInf;
    for (std::int64_t n = 7; n <= hi4; ++n)
      acc = log_add(acc, eq3_log(k, n));
    if (hi4 >= 3)
      acc = log_add(acc, chernoff_tail_bound(k).log_raw);
    push("lattice", 7, hi4, acc, "eq3-lattice");
  }

  {
    double acc = kNegInf;
    for (std::int64_t n = hi4 + 1; n <= explicit_hi; ++n) {
      const double ph = static_cast<double>(phi[n]);
      const double dn = static_cast<double>(n);
      const double m = dk * ph / (2 * dn);
      double atom = m >= ph ? 0.5 * std::log(m) - (ph - 1) / 2 * std::log(2 * std::numbers::pi)
                            : std::lgamma(m + 1) - m * std::log(ph);
      acc = log_add(acc, log_add(-dk * ph / (12 * dn), atom));
    }
    if (hi5 > explicit_hi) {
      // Uniform per-n estimate beyond the explicitly summed prefix.
      const double rho = totient_ratio_lower_bound(static_cast<double>(hi5));
      const double first = static_cast<double>(explicit_hi + 1);
      const double per_n = log_add(
          -dk * rho / 12,
          std::max(0.5 * lk - (rho * first - 1) / 2 * std::log(2 * std::numbers::pi),
                   lk + 1 - dk * rho / 2));
      acc = log_add(acc, std::log(static_cast<double>(hi5 - explicit_hi)) + per_n);
    }
    push("midrange", hi4 + 1, hi5, acc, "midrange-K");
  }

  {
    // sum_{n > hi5} 1/n^2 <= 1/hi5 and sum_{n > hi5} n^{-k/2} <= hi5^{1-k/2}/(k/2 - 1).
    const double lh = std::log(static_cast<double>(hi5));
    const double three = 3 * lk + 2 * log_max_kernel - lh;
    const double two = std::lgamma(dk + 1) - std::lgamma(dk / 2 + 1) +
                       dk / 2 * log_max_kernel + (1 - dk / 2) * lh - std::log(dk / 2 - 1);
    push("large-n", hi5 + 1, std::nullopt, log_add(three, two), "large-n-residue");
  }

  for (const auto& row : out.rows)
    out.total += row.bound;
  return out;
}

} // namespace lacuna
