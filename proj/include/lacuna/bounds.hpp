#ifndef LACUNA_BOUNDS_HPP
#define LACUNA_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/arith.hpp"

namespace lacuna {

/// A probability bound kept in log space. `value()` is the bound clipped to
/// [0, 1]; `raw()` may exceed 1 (or overflow to infinity).
struct Bound
{
  double log_raw = -std::numeric_limits<double>::infinity();

  static Bound from_raw(double raw) { return Bound{std::log(raw)}; }
  double raw() const { return std::exp(log_raw); }
  double value() const { return log_raw >= 0 ? 1.0 : std::exp(log_raw); }
};

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

/// P(|X - mu| >= delta mu) <= 2 exp(-delta^2 mu / 3) for X ~ Bin(trials, p).
double chernoff_binomial(std::int64_t trials, double p, double delta);

/// Squarefree m with 2 + sum_{p | m} (p - 2) <= k + 1.
struct CandidateSet
{
  std::int64_t k = 0;
  std::vector<std::int64_t> members;
};

/// Every admissible m, or only those <= max_member when given.
CandidateSet fs_candidates(std::int64_t k,
                           std::optional<std::int64_t> max_member = std::nullopt);

/// log of the largest admissible m, by a knapsack over primes <= k + 1.
double log_max_fs_candidate(std::int64_t k);

/// Reference curve for the squarefree-part recursion C_l, B_l.
struct SquarefreeRecursion
{
  std::vector<std::int64_t> partial_sums; // C_1, C_2, ... while C_l < 7k/5
  std::vector<BigInt> bounds;             // B_0, B_1, ..., B_depth
  std::int64_t depth = 0;                 // number of C_l below 7k/5
  double log_closing_scale = 0;           // log(2^{2 sqrt k} (2 sqrt k)!), constant omitted
  bool depth_below_two_sqrt_k = true;
};

SquarefreeRecursion squarefree_bound_recursion(std::int64_t k);

enum class Convention
{
  paper_c,     // constant term dropped from c_0
  exact_c_prime // the true residue counts
};

std::string to_string(Convention convention);

struct SmallNValue
{
  std::optional<Rational> exact; // multinomial-model probability of Phi_n | f
  double asymptotic = 0;         // leading-order value for large k
};

/// Largest k with an exact value for n = 4 and n = 6 (the atom sums grow
/// linearly and quadratically in k).
inline constexpr std::int64_t kSmallNExactLimit4 = 3000;
inline constexpr std::int64_t kSmallNExactLimit6 = 300;

/// Small moduli n in {2, ..., 6}.
SmallNValue small_n_exact(std::int64_t k, std::int64_t n, Convention convention);

/// Leading-order value of P(Phi_n | f): n^{n/2} (2 pi k)^{-(n-1)/2} for the
/// single-atom cases n = 2, 3, 5 and the lattice bound for n = 4, 6.
double small_n_asymptotic(std::int64_t k, std::int64_t n);

/// k! / Gamma(k/n + 1)^n / n^k, the heaviest multinomial atom.
double log_central_atom(double k, std::int64_t n);
double central_atom(double k, std::int64_t n);

/// Exact central atom when n | k.
std::optional<Rational> central_atom_exact(std::int64_t k, std::int64_t n);

/// Volume of the unit ball in dimension d, in log space.
double log_unit_ball_volume(std::int64_t d);

/// Lattice-counting bound on P(f in R and near its mean) for n >= 7.
Bound eq3_lattice_bound(std::int64_t k, std::int64_t n);

/// 2 k^2 exp(-(log k)^2 / 3): far-from-mean relations, all small n at once.
Bound chernoff_tail_bound(std::int64_t k);

struct MidrangeBound
{
  double m = 0;              // k phi(n) / (2n)
  double k_tail = 0;         // exp(-k phi(n) / (12 n))
  double large_m_branch = 0; // sqrt(m) / sqrt(2 pi)^{phi(n) - 1}
  double small_m_branch = 0; // m! / phi(n)^m
  bool large_m_selected = true;
  double heaviest_atom = 0;  // the selected branch
  double conservative = 0;   // max of both branches
};

MidrangeBound midrange_bound(std::int64_t k, std::int64_t n);

struct LargeNBound
{
  double b = 0;
  Bound three_term; // k^3 / b^2
  Bound two_term;   // k! / (k/2)! * b^{-k/2}
};

/// n = a b with a a squarefree divisor of n.
LargeNBound large_n_bound(std::int64_t k, std::int64_t n, std::int64_t kernel);

struct BoundRow
{
  std::string label;
  std::int64_t n_lo = 0;
  std::optional<std::int64_t> n_hi; // empty means unbounded
  double bound = 0;                 // clipped to [0, 1]
  double log_raw = 0;
  std::string formula_tag;
};

struct BoundBreakdown
{
  std::int64_t k = 0;
  double c = 0; // exponent constant with max kernel = exp(c sqrt(k) log k)
  std::vector<BoundRow> rows;
  double total = 0; // sum of clipped rows
  double probability_bound() const { return total < 1 ? total : 1.0; }
};

/// Per-range aggregation for k >= 8. `c` defaults to the value matching the
/// largest admissible squarefree kernel for this k.
BoundBreakdown total_bound(std::int64_t k, std::optional<double> c = std::nullopt);

} // namespace lacuna

#endif // LACUNA_BOUNDS_HPP
