#ifndef LACUNA_SPARSE_POLY_HPP
#define LACUNA_SPARSE_POLY_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lacuna/arith.hpp"

namespace lacuna {

/// F(x) = 1 + sum_i x^{e_i} with 1 <= e_1 < ... < e_k <= N.
class SparsePoly
{
public:
  SparsePoly(std::vector<std::int64_t> exponents, std::int64_t degree_cap);

  /// Degree cap taken to be the largest exponent (1 for the constant polynomial).
  static SparsePoly from_exponents(std::vector<std::int64_t> exponents);

  const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
  std::int64_t degree_cap() const noexcept { return degree_cap_; }
  std::int64_t term_count() const noexcept
  {
    return static_cast<std::int64_t>(exponents_.size());
  }
  std::int64_t degree() const noexcept
  {
    return exponents_.empty() ? 0 : exponents_.back();
  }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

private:
  std::vector<std::int64_t> exponents_;
  std::int64_t degree_cap_;
};

/// Residue counts c'_j of F mod (x^n - 1).
struct CoefficientVector
{
  std::int64_t k = 0;
  std::vector<std::int64_t> counts;

  std::int64_t modulus() const noexcept
  {
    return static_cast<std::int64_t>(counts.size());
  }

  /// c with c_0 = c'_0 - 1, i.e. the constant term removed.
  std::vector<std::int64_t> shifted() const;
};

/// Uniform k-subset of [1, N]; a pure function of (seed, index).
SparsePoly sample_random(std::int64_t k, std::int64_t degree_cap, std::uint64_t seed,
                         std::uint64_t index);

CoefficientVector reduce_mod_cyclic(const SparsePoly& poly, std::int64_t n);

/// #{ e in [1, N] : e = residue mod n }.
std::int64_t residue_class_size(std::int64_t residue, std::int64_t n, std::int64_t degree_cap);

/// Exact probability that a uniformly chosen exponent set has shifted
/// coefficient vector c modulo n.
Rational atom_probability(std::span<const std::int64_t> shifted, std::int64_t k,
                          std::int64_t n, std::int64_t degree_cap);

/// Multinomial(k; n equally likely outcomes) weight of the atom c.
Rational multinomial_weight(std::span<const std::int64_t> shifted, std::int64_t k,
                            std::int64_t n);

/// Reads the line format: ascending exponents separated by whitespace,
/// '#' starts a comment line, blank lines are skipped. When degree_cap is
/// positive it is applied to every polynomial, otherwise each polynomial
/// takes its own degree as cap.
std::vector<SparsePoly> read_polys(std::istream& in, std::int64_t degree_cap = 0);

SparsePoly parse_poly_line(const std::string& line, std::int64_t line_number,
                           std::int64_t degree_cap = 0);

std::string format_poly(const SparsePoly& poly);

} // namespace lacuna

#endif // LACUNA_SPARSE_POLY_HPP
