#ifndef LACUNA_ARITH_HPP
#define LACUNA_ARITH_HPP

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace lacuna {

using BigInt = mpz_class;
using Rational = mpq_class;

struct PrimePower
{
  std::int64_t prime;
  int exponent;
  std::int64_t value; // prime^exponent
};

BigInt factorial(std::int64_t n);

/// Zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Trial-division factorization, primes in increasing order.
std::vector<PrimePower> factorize(std::int64_t n);

std::int64_t totient(std::int64_t n);
int omega(std::int64_t n);
std::int64_t squarefree_kernel(std::int64_t n);
bool is_squarefree(std::int64_t n);

std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// phi[i] for 0 <= i <= limit (phi[0] = 0).
std::vector<std::int64_t> totient_sieve(std::int64_t limit);

/// Smallest prime factor for 0 <= i <= limit (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factor_sieve(std::int64_t limit);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Non-negative remainder.
inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Natural log of Gamma(x + 1), i.e. log x! extended to reals.
double log_factorial(double x);

double to_double(const Rational& q);

} // namespace lacuna

#endif // LACUNA_ARITH_HPP
