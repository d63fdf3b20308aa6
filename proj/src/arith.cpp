#include "lacuna/arith.hpp"

#include <cmath>
#include <numeric>

#include "lacuna/errors.hpp"

namespace lacuna {

BigInt factorial(std::int64_t n)
{
  require(n >= 0, "factorial of a negative number");
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
  return result;
}

BigInt binomial(std::int64_t n, std::int64_t k)
{
  if (n < 0 || k < 0 || k > n)
    return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return result;
}

std::vector<PrimePower> factorize(std::int64_t n)
{
  require(n >= 1, "factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0)
      continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1)
    out.push_back({n, 1, n});
  return out;
}

std::int64_t totient(std::int64_t n)
{
  std::int64_t phi = n;
  for (const auto& pp : factorize(n))
    phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

int omega(std::int64_t n)
{
  return static_cast<int>(factorize(n).size());
}

std::int64_t squarefree_kernel(std::int64_t n)
{
  std::int64_t kernel = 1;
  for (const auto& pp : factorize(n))
    kernel *= pp.prime;
  return kernel;
}

bool is_squarefree(std::int64_t n)
{
  for (const auto& pp : factorize(n))
    if (pp.exponent > 1)
      return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit)
{
  std::vector<std::int64_t> primes;
  if (limit < 2)
    return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i])
      continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i)
      composite[j] = true;
  }
  return primes;
}

std::vector<std::int64_t> totient_sieve(std::int64_t limit)
{
  std::vector<std::int64_t> phi(static_cast<std::size_t>(limit) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (phi[i] != i)
      continue; // composite, already touched
    for (std::int64_t j = i; j <= limit; j += i)
      phi[j] -= phi[j] / i;
  }
  return phi;
}

std::vector<std::int32_t> smallest_prime_factor_sieve(std::int64_t limit)
{
  std::vector<std::int32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0)
      continue;
    for (std::int64_t j = i; j <= limit; j += i)
      if (spf[j] == 0)
        spf[j] = static_cast<std::int32_t>(i);
  }
  return spf;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
  if (m == 1)
    return 0;
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  require(old_r == 1, "mod_inverse: arguments not coprime");
  return mod(old_s, m);
}

double log_factorial(double x)
{
  return std::lgamma(x + 1.0);
}

double to_double(const Rational& q)
{
  return q.get_d();
}

} // namespace lacuna
