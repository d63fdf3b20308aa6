#ifndef LACUNA_RELATION_LATTICE_HPP
#define LACUNA_RELATION_LATTICE_HPP

#include <cstdint>
#include <vector>

#include "lacuna/arith.hpp"

namespace lacuna {

/// Basis of the lattice R of integer relations among the n-th roots of
/// unity. Coordinate l of a vector multiplies zeta_n^l.
struct RelationBasis
{
  std::int64_t n = 0;
  std::int64_t rank = 0; // n - phi(n)
  std::vector<PrimePower> prime_powers;
  std::vector<std::vector<std::int64_t>> vectors;
  std::vector<std::vector<std::int64_t>> gram;
  BigInt gram_det;

  /// sqrt(det gram), the volume of the fundamental mesh.
  double mesh_volume() const;
};

/// Built by induction on the prime factors of n: shifts of the prime-power
/// relations for the first factor, then for each further factor q = p^e the
/// union of (all shifts by zeta_q of the previous basis) and (power basis
/// of the previous cyclotomic ring) x (shifts of the p-gon relation in zeta_q).
RelationBasis build_basis(std::int64_t n);

/// Exact determinant of a square integer matrix (fraction-free elimination).
BigInt integer_determinant(const std::vector<std::vector<std::int64_t>>& matrix);

/// Length of the sum of all basis vectors, the longest point of the mesh
/// when pairwise inner products are non-negative.
double mesh_max_length(const RelationBasis& basis);

struct BallQuery
{
  std::vector<Rational> center;
  double radius = 0;
  std::int64_t n = 0;
};

/// Default workload guard for enumerate_ball, in predicted search-tree nodes
/// (Gaussian heuristic). 10^9 nodes is roughly a quarter minute of work.
inline constexpr double kBallEnumerationGuard = 1e9;

/// Number of x with x - anchor in R and |x - center| <= radius.
std::uint64_t enumerate_ball(const RelationBasis& basis, const BallQuery& query,
                             const std::vector<std::int64_t>& anchor,
                             double guard = kBallEnumerationGuard);

/// Predicted number of interior search nodes for enumerate_ball.
double predicted_ball_workload(const RelationBasis& basis, const BallQuery& query,
                               const std::vector<std::int64_t>& anchor);

/// (radius + mesh length)^rank * unit-ball volume / mesh volume.
double volume_count_bound(const RelationBasis& basis, double radius);

} // namespace lacuna

#endif // LACUNA_RELATION_LATTICE_HPP
