#include "lacuna/sparse_poly.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <random>
#include <sstream>

#include "lacuna/errors.hpp"

namespace lacuna {

SparsePoly::SparsePoly(std::vector<std::int64_t> exponents, std::int64_t degree_cap)
    : exponents_(std::move(exponents)), degree_cap_(degree_cap)
{
  require(degree_cap_ >= 1, "degree cap must be positive");
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    require(exponents_[i] >= 1 && exponents_[i] <= degree_cap_,
            "exponent " + std::to_string(exponents_[i]) + " outside [1, " +
                std::to_string(degree_cap_) + "]");
    require(i == 0 || exponents_[i - 1] < exponents_[i],
            "exponents must be strictly increasing");
  }
}

SparsePoly SparsePoly::from_exponents(std::vector<std::int64_t> exponents)
{
  std::int64_t cap = exponents.empty() ? 1 : std::max<std::int64_t>(1, exponents.back());
  return SparsePoly(std::move(exponents), cap);
}

std::vector<std::int64_t> CoefficientVector::shifted() const
{
  std::vector<std::int64_t> c = counts;
  if (!c.empty())
    c[0] -= 1;
  return c;
}

namespace {

// Unbiased draw from [0, bound) by rejection on the top of the 64-bit range;
// std::uniform_int_distribution is not reproducible across standard libraries.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound)
{
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = gen();
    if (x < limit)
      return x % bound;
  }
}

} // namespace

SparsePoly sample_random(std::int64_t k, std::int64_t degree_cap, std::uint64_t seed,
                         std::uint64_t index)
{
  require(k >= 1 && degree_cap >= 1, "sample_random: k and N must be positive");
  require(k <= degree_cap, "sample_random: k exceeds N");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);

  // Floyd's algorithm on a sorted vector.
  std::vector<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  for (std::int64_t j = degree_cap - k + 1; j <= degree_cap; ++j) {
    auto t = static_cast<std::int64_t>(bounded(gen, static_cast<std::uint64_t>(j))) + 1;
    auto it = std::lower_bound(chosen.begin(), chosen.end(), t);
    if (it != chosen.end() && *it == t)
      chosen.push_back(j); // j exceeds every element chosen so far
    else
      chosen.insert(it, t);
  }
  return SparsePoly(std::move(chosen), degree_cap);
}

CoefficientVector reduce_mod_cyclic(const SparsePoly& poly, std::int64_t n)
{
  require(n >= 1, "reduce_mod_cyclic: modulus must be positive");
  CoefficientVector out;
  out.k = poly.term_count();
  out.counts.assign(static_cast<std::size_t>(n), 0);
  out.counts[0] = 1;
  for (std::int64_t e : poly.exponents())
    ++out.counts[static_cast<std::size_t>(e % n)];
  return out;
}

std::int64_t residue_class_size(std::int64_t residue, std::int64_t n, std::int64_t degree_cap)
{
  // j = 0 counts the multiples n, 2n, ... inside [1, N].
  if (residue == 0)
    return degree_cap / n;
  if (residue > degree_cap)
    return 0;
  return (degree_cap - residue) / n + 1;
}

namespace {

void check_atom(std::span<const std::int64_t> shifted, std::int64_t k, std::int64_t n)
{
  require(n >= 1, "modulus must be positive");
  require(static_cast<std::int64_t>(shifted.size()) == n,
          "coefficient vector length must equal the modulus");
  std::int64_t total = 0;
  for (std::int64_t c : shifted) {
    require(c >= 0, "coefficient vector entries must be non-negative");
    total += c;
  }
  require(total == k, "coefficient vector must sum to k");
}

} // namespace

Rational atom_probability(std::span<const std::int64_t> shifted, std::int64_t k,
                          std::int64_t n, std::int64_t degree_cap)
{
  check_atom(shifted, k, n);
  require(n <= degree_cap, "atom_probability: n must not exceed N");
  require(k <= degree_cap, "atom_probability: k must not exceed N");
  BigInt ways = 1;
  for (std::int64_t j = 0; j < n && ways != 0; ++j)
    ways *= binomial(residue_class_size(j, n, degree_cap), shifted[j]);
  Rational p(ways, binomial(degree_cap, k));
  p.canonicalize();
  return p;
}

Rational multinomial_weight(std::span<const std::int64_t> shifted, std::int64_t k,
                            std::int64_t n)
{
  check_atom(shifted, k, n);
  BigInt denom = 1;
  for (std::int64_t c : shifted)
    denom *= factorial(c);
  BigInt nk;
  mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  Rational w(factorial(k), denom * nk);
  w.canonicalize();
  return w;
}

SparsePoly parse_poly_line(const std::string& line, std::int64_t line_number,
                           std::int64_t degree_cap)
{
  std::vector<std::int64_t> exps;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j)
      throw ParseError(line_number, "not an integer: '" + line.substr(i, j - i) + "'");
    exps.push_back(value);
    i = j;
  }
  for (std::size_t t = 0; t < exps.size(); ++t) {
    if (exps[t] < 1)
      throw ParseError(line_number, "exponents must be positive");
    if (t > 0 && exps[t - 1] >= exps[t])
      throw ParseError(line_number, "exponents must be strictly increasing");
  }
  if (degree_cap > 0) {
    if (!exps.empty() && exps.back() > degree_cap)
      throw ParseError(line_number, "exponent exceeds the degree cap");
    return SparsePoly(std::move(exps), degree_cap);
  }
  return SparsePoly::from_exponents(std::move(exps));
}

std::vector<SparsePoly> read_polys(std::istream& in, std::int64_t degree_cap)
{
  std::vector<SparsePoly> out;
  std::string line;
  std::int64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    out.push_back(parse_poly_line(line, number, degree_cap));
  }
  return out;
}

std::string format_poly(const SparsePoly& poly)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < poly.exponents().size(); ++i)
    os << (i ? " " : "") << poly.exponents()[i];
  return os.str();
}

} // namespace lacuna
