#include "lacuna/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "lacuna/bounds.hpp"
#include "lacuna/errors.hpp"

namespace lacuna {

DensePoly::DensePoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients))
{
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

DensePoly DensePoly::from_counts(std::span<const std::int64_t> counts)
{
  std::vector<BigInt> c;
  c.reserve(counts.size());
  for (std::int64_t v : counts)
    c.emplace_back(static_cast<long>(v));
  return DensePoly(std::move(c));
}

namespace {

// Long division by a divisor with unit leading coefficient. Leaves the
// remainder in `work` and writes quotient coefficients when requested.
void divide_in_place(std::vector<BigInt>& work, const DensePoly& divisor,
                     std::vector<BigInt>* quotient)
{
  require(!divisor.is_zero(), "division by the zero polynomial");
  const auto& d = divisor.coefficients();
  const std::size_t dn = d.size() - 1;
  const BigInt& lead = d.back();
  require(lead == 1 || lead == -1, "divisor must have leading coefficient +-1");
  if (quotient)
    quotient->assign(work.size() > dn ? work.size() - dn : 0, 0);
  for (std::size_t top = work.size(); top-- > dn;) {
    if (work[top] == 0)
      continue;
    BigInt factor = lead == 1 ? BigInt(work[top]) : BigInt(-work[top]);
    const std::size_t shift = top - dn;
    for (std::size_t i = 0; i <= dn; ++i)
      if (d[i] != 0)
        work[shift + i] -= factor * d[i];
    if (quotient)
      (*quotient)[shift] = factor;
  }
}

} // namespace

DensePoly poly_remainder(const DensePoly& dividend, const DensePoly& divisor)
{
  std::vector<BigInt> work = dividend.coefficients();
  divide_in_place(work, divisor, nullptr);
  return DensePoly(std::move(work));
}

DensePoly poly_exact_quotient(const DensePoly& dividend, const DensePoly& divisor)
{
  std::vector<BigInt> work = dividend.coefficients();
  std::vector<BigInt> quotient;
  divide_in_place(work, divisor, &quotient);
  require(DensePoly(std::move(work)).is_zero(), "division is not exact");
  return DensePoly(std::move(quotient));
}

const DensePoly& cyclotomic_poly(std::int64_t n)
{
  require(n >= 1, "cyclotomic_poly: n must be positive");
  static std::mutex lock;
  static std::map<std::int64_t, std::unique_ptr<DensePoly>> cache;
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(n); it != cache.end())
      return *it->second;
  }

  std::vector<BigInt> xn1(static_cast<std::size_t>(n) + 1, 0);
  xn1[0] = -1;
  xn1[static_cast<std::size_t>(n)] = 1;
  DensePoly phi(std::move(xn1));
  for (std::int64_t d = 1; d < n; ++d)
    if (n % d == 0)
      phi = poly_exact_quotient(phi, cyclotomic_poly(d));

  std::lock_guard guard(lock);
  auto [it, inserted] = cache.emplace(n, std::make_unique<DensePoly>(std::move(phi)));
  return *it->second;
}

bool vanishes_dense(std::span<const std::int64_t> coeffs)
{
  require(!coeffs.empty(), "vanishes_dense: empty coefficient vector");
  auto n = static_cast<std::int64_t>(coeffs.size());
  return poly_remainder(DensePoly::from_counts(coeffs), cyclotomic_poly(n)).is_zero();
}

bool divides_phi_dense(const SparsePoly& poly, std::int64_t n)
{
  require(n >= 1, "divides_phi_dense: n must be positive");
  return vanishes_dense(reduce_mod_cyclic(poly, n).counts);
}

namespace {

struct Term
{
  std::int64_t exp;
  std::int64_t coeff;
};

// Merges equal exponents and drops zero coefficients.
void combine(std::vector<Term>& terms)
{
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Term t = terms[i++];
    while (i < terms.size() && terms[i].exp == t.exp)
      t.coeff += terms[i++].coeff;
    if (t.coeff != 0)
      terms[out++] = t;
  }
  terms.resize(out);
}

// Does sum coeff * zeta_M^exp vanish, with M the product of `peel`?
// Exponents lie in [0, M).
bool peel_vanishes(std::vector<Term> terms, std::span<const PrimePower> peel,
                   std::int64_t modulus)
{
  combine(terms);
  if (terms.empty())
    return true;
  if (terms.size() == 1 || peel.empty())
    return false;

  const PrimePower& pp = peel.front();
  const std::int64_t q = pp.value;
  const std::int64_t p = pp.prime;
  const std::int64_t block = q / p; // p^{e-1}
  const std::int64_t rest = modulus / q;
  const std::int64_t inv_rest = mod_inverse(rest % q, q);
  const std::int64_t inv_q = rest == 1 ? 0 : mod_inverse(q % rest, rest);

  // zeta_M^l = zeta_q^alpha * zeta_rest^beta, alpha = p^{e-1} s + r.
  struct Split
  {
    std::int64_t r, s, beta, coeff;
  };
  std::vector<Split> split;
  split.reserve(terms.size());
  for (const Term& t : terms) {
    std::int64_t alpha = static_cast<std::int64_t>(
        static_cast<__int128>(t.exp % q) * inv_rest % q);
    std::int64_t beta =
        rest == 1 ? 0
                  : static_cast<std::int64_t>(static_cast<__int128>(t.exp % rest) * inv_q % rest);
    split.push_back({alpha % block, alpha / block, beta, t.coeff});
  }
  std::sort(split.begin(), split.end(), [](const Split& a, const Split& b) {
    return a.r != b.r ? a.r < b.r : a.s < b.s;
  });

  const auto next = peel.subspan(1);
  for (std::size_t i = 0; i < split.size();) {
    std::size_t j = i;
    while (j < split.size() && split[j].r == split[i].r)
      ++j;
    // Within the r-group, the component s = p - 1 is rewritten as minus the
    // sum of the others, leaving phi(q)/block reduced components per r.
    std::vector<Term> top;
    std::size_t top_begin = j;
    for (std::size_t t = i; t < j; ++t)
      if (split[t].s == p - 1) {
        top_begin = std::min(top_begin, t);
        top.push_back({split[t].beta, -split[t].coeff});
      }

    std::optional<bool> top_alone;
    std::size_t t = i;
    for (std::int64_t s = 0; s < p - 1; ++s) {
      std::vector<Term> comp;
      while (t < top_begin && split[t].s == s) {
        comp.push_back({split[t].beta, split[t].coeff});
        ++t;
      }
      if (comp.empty()) {
        if (top.empty())
          continue;
        if (!top_alone)
          top_alone = peel_vanishes(top, next, rest);
        if (!*top_alone)
          return false;
        continue;
      }
      comp.insert(comp.end(), top.begin(), top.end());
      if (!peel_vanishes(std::move(comp), next, rest))
        return false;
    }
    i = j;
  }
  return true;
}

std::vector<PrimePower> peel_order(std::int64_t n)
{
  auto pps = factorize(n);
  std::sort(pps.begin(), pps.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.value > b.value; });
  return pps;
}

bool structural_terms(std::vector<Term> terms, std::int64_t n,
                      std::span<const PrimePower> order)
{
  if (n == 1) {
    std::int64_t total = 0;
    for (const Term& t : terms)
      total += t.coeff;
    return total == 0;
  }
  return peel_vanishes(std::move(terms), order, n);
}

} // namespace

bool vanishes_structural(std::span<const std::int64_t> coeffs)
{
  require(!coeffs.empty(), "vanishes_structural: empty coefficient vector");
  auto n = static_cast<std::int64_t>(coeffs.size());
  std::vector<Term> terms;
  for (std::int64_t j = 0; j < n; ++j)
    if (coeffs[j] != 0)
      terms.push_back({j, coeffs[j]});
  auto order = peel_order(n);
  return structural_terms(std::move(terms), n, order);
}

bool divides_phi_structural(const SparsePoly& poly, std::int64_t n)
{
  require(n >= 1, "divides_phi_structural: n must be positive");
  std::vector<Term> terms;
  terms.reserve(poly.exponents().size() + 1);
  terms.push_back({0, 1});
  for (std::int64_t e : poly.exponents())
    terms.push_back({e % n, 1});
  auto order = peel_order(n);
  return structural_terms(std::move(terms), n, order);
}

bool SplitSums::part_vanishes(std::size_t i) const
{
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(n), 0);
  for (std::int64_t e : parts.at(i))
    ++coeffs[static_cast<std::size_t>(e % n)];
  return vanishes_structural(coeffs);
}

SplitSums conway_jones_split(const SparsePoly& poly, std::int64_t n, std::int64_t b)
{
  require(n >= 1, "conway_jones_split: n must be positive");
  require(b >= 1 && n % b == 0, "conway_jones_split: b must divide n");
  SplitSums out;
  out.n = n;
  out.b = b;
  out.parts.resize(static_cast<std::size_t>(b));
  out.parts[0].push_back(0);
  for (std::int64_t e : poly.exponents())
    out.parts[static_cast<std::size_t>(e % b)].push_back(e);
  return out;
}

namespace {

// Explicit lower bound phi(n) > n / (e^gamma log log n + 2.50637 / log log n),
// valid for n >= 3; increasing in n.
double totient_lower_bound(double n)
{
  const double ll = std::log(std::log(n));
  return n / (1.7810724179901979 * ll + 2.50637 / ll);
}

std::int64_t over_cap(std::int64_t degree_cap)
{
  const double target = static_cast<double>(degree_cap);
  double lo = 3, hi = 6;
  while (totient_lower_bound(hi) <= target)
    hi *= 2;
  while (hi - lo > 1) {
    double mid = std::floor((lo + hi) / 2);
    (totient_lower_bound(mid) > target ? hi : lo) = mid;
  }
  // phi(n) >= sqrt(n / 2) gives the fallback cap 2 N^2.
  const auto quadratic = 2 * degree_cap * degree_cap;
  return std::min<std::int64_t>(static_cast<std::int64_t>(hi), std::max<std::int64_t>(quadratic, 2));
}

} // namespace

std::int64_t sweep_cap(std::int64_t degree_cap)
{
  require(degree_cap >= 1, "sweep_cap: N must be positive");
  const std::int64_t limit = over_cap(degree_cap);
  const auto phi = totient_sieve(limit);
  for (std::int64_t n = limit; n >= 1; --n)
    if (phi[n] <= degree_cap)
      return n;
  return 1;
}

std::string to_string(SweepMode mode)
{
  return mode == SweepMode::full_sweep ? "full-sweep" : "fs-pruned";
}

SweepMode parse_sweep_mode(const std::string& text)
{
  if (text == "full-sweep")
    return SweepMode::full_sweep;
  if (text == "fs-pruned")
    return SweepMode::fs_pruned;
  throw InvalidParameters("unknown sweep mode '" + text + "'");
}

CyclotomicSweep::CyclotomicSweep(std::int64_t degree_cap, SweepMode mode, std::int64_t k,
                                 std::optional<std::int64_t> cap_override)
    : cap_(cap_override ? *cap_override : sweep_cap(degree_cap)), mode_(mode)
{
  require(cap_ >= 1, "sweep cap must be positive");
  std::vector<std::int64_t> ns;
  if (mode == SweepMode::full_sweep) {
    for (std::int64_t n = 2; n <= cap_; ++n)
      ns.push_back(n);
  } else {
    require(k >= 1, "fs-pruned sweep needs k >= 1");
    for (std::int64_t kernel : fs_candidates(k, cap_).members) {
      if (kernel < 2)
        continue;
      // Every n <= cap whose prime support is exactly that of the kernel.
      const auto primes = factorize(kernel);
      std::vector<std::int64_t> stack{kernel};
      while (!stack.empty()) {
        std::int64_t v = stack.back();
        stack.pop_back();
        ns.push_back(v);
        for (const auto& pp : primes)
          if (v <= cap_ / pp.prime)
            stack.push_back(v * pp.prime);
      }
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }

  const auto spf = smallest_prime_factor_sieve(cap_);
  moduli_.reserve(ns.size());
  for (std::int64_t n : ns) {
    Modulus m{n, 1, {}};
    for (std::int64_t v = n; v > 1;) {
      std::int64_t p = spf[v];
      PrimePower pp{p, 0, 1};
      while (v % p == 0) {
        v /= p;
        ++pp.exponent;
        pp.value *= p;
      }
      m.phi *= pp.value / p * (p - 1);
      m.peel_order.push_back(pp);
    }
    std::sort(m.peel_order.begin(), m.peel_order.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value > b.value; });
    moduli_.push_back(std::move(m));
  }
}

bool CyclotomicSweep::divides(const SparsePoly& poly, const Modulus& m) const
{
  std::vector<Term> terms;
  terms.reserve(poly.exponents().size() + 1);
  terms.push_back({0, 1});
  for (std::int64_t e : poly.exponents())
    terms.push_back({e % m.n, 1});
  return peel_vanishes(std::move(terms), m.peel_order, m.n);
}

std::vector<std::int64_t> CyclotomicSweep::factors(const SparsePoly& poly) const
{
  std::vector<std::int64_t> out;
  for (const auto& m : moduli_)
    if (m.phi <= poly.degree() && divides(poly, m))
      out.push_back(m.n);
  return out;
}

bool CyclotomicSweep::any(const SparsePoly& poly) const
{
  for (const auto& m : moduli_)
    if (m.phi <= poly.degree() && divides(poly, m))
      return true;
  return false;
}

std::vector<std::int64_t> CyclotomicSweep::moduli() const
{
  std::vector<std::int64_t> out;
  out.reserve(moduli_.size());
  for (const auto& m : moduli_)
    out.push_back(m.n);
  return out;
}

std::vector<std::int64_t> find_cyclotomic_factors(const SparsePoly& poly, SweepMode mode,
                                                  std::optional<std::int64_t> cap_override)
{
  CyclotomicSweep sweep(poly.degree_cap(), mode, std::max<std::int64_t>(1, poly.term_count()),
                        cap_override);
  return sweep.factors(poly);
}

bool has_cyclotomic_factor(const SparsePoly& poly)
{
  return !find_cyclotomic_factors(poly, SweepMode::full_sweep).empty();
}

} // namespace lacuna
