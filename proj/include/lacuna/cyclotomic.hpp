#ifndef LACUNA_CYCLOTOMIC_HPP
#define LACUNA_CYCLOTOMIC_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacuna/arith.hpp"
#include "lacuna/sparse_poly.hpp"

namespace lacuna {

/// Dense integer polynomial, coefficient i multiplies x^i. The highest
/// stored coefficient is non-zero; the zero polynomial has no coefficients.
class DensePoly
{
public:
  DensePoly() = default;
  explicit DensePoly(std::vector<BigInt> coefficients);

  static DensePoly from_counts(std::span<const std::int64_t> counts);

  /// -1 for the zero polynomial.
  std::int64_t degree() const noexcept
  {
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }

  friend bool operator==(const DensePoly&, const DensePoly&) = default;

private:
  std::vector<BigInt> coeffs_;
};

/// Remainder of a modulo a divisor whose leading coefficient is +1 or -1.
DensePoly poly_remainder(const DensePoly& dividend, const DensePoly& divisor);

/// Quotient of an exact division by a divisor with leading coefficient +-1.
DensePoly poly_exact_quotient(const DensePoly& dividend, const DensePoly& divisor);

/// Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d.
/// Results are memoized process-wide.
const DensePoly& cyclotomic_poly(std::int64_t n);

/// Phi_n | F, via the exact remainder of F mod (x^n - 1) by Phi_n.
bool divides_phi_dense(const SparsePoly& poly, std::int64_t n);

/// Phi_n | F, decided by prime-power peeling without forming Phi_n.
bool divides_phi_structural(const SparsePoly& poly, std::int64_t n);

/// Does sum_j coeffs[j] * zeta_n^j vanish (n = coeffs.size())? Dense route.
bool vanishes_dense(std::span<const std::int64_t> coeffs);

/// Same question answered by prime-power peeling.
bool vanishes_structural(std::span<const std::int64_t> coeffs);

/// Exponents of F (constant term as exponent 0) grouped by residue mod b.
struct SplitSums
{
  std::int64_t n = 0;
  std::int64_t b = 0;
  std::vector<std::vector<std::int64_t>> parts;

  /// Whether part i, read as a sum of powers of zeta_n, is zero.
  bool part_vanishes(std::size_t i) const;
};

SplitSums conway_jones_split(const SparsePoly& poly, std::int64_t n, std::int64_t b);

/// Largest n with phi(n) <= N.
std::int64_t sweep_cap(std::int64_t degree_cap);

enum class SweepMode
{
  full_sweep,
  fs_pruned,
};

std::string to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& text);

/// Precomputed list of moduli to test for a fixed degree cap and term count.
/// Immutable after construction and safe to share between threads.
class CyclotomicSweep
{
public:
  CyclotomicSweep(std::int64_t degree_cap, SweepMode mode, std::int64_t k,
                  std::optional<std::int64_t> cap_override = std::nullopt);

  /// Sorted list of every tested n with Phi_n | F.
  std::vector<std::int64_t> factors(const SparsePoly& poly) const;

  /// Stops at the first divisor found.
  bool any(const SparsePoly& poly) const;

  std::int64_t cap() const noexcept { return cap_; }
  SweepMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return moduli_.size(); }
  std::vector<std::int64_t> moduli() const;

private:
  struct Modulus
  {
    std::int64_t n;
    std::int64_t phi;
    std::vector<PrimePower> peel_order;
  };

  bool divides(const SparsePoly& poly, const Modulus& m) const;

  std::int64_t cap_;
  SweepMode mode_;
  std::vector<Modulus> moduli_;
};

std::vector<std::int64_t> find_cyclotomic_factors(
    const SparsePoly& poly, SweepMode mode = SweepMode::full_sweep,
    std::optional<std::int64_t> cap_override = std::nullopt);

bool has_cyclotomic_factor(const SparsePoly& poly);

} // namespace lacuna

#endif // LACUNA_CYCLOTOMIC_HPP
