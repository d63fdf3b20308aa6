#include "lacuna/relation_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "lacuna/bounds.hpp"
#include "lacuna/errors.hpp"

namespace lacuna {

double RelationBasis::mesh_volume() const
{
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, gram_det.get_mpz_t());
  return std::sqrt(mant) * std::pow(2.0, static_cast<double>(exp2) / 2.0);
}

RelationBasis build_basis(std::int64_t n)
{
  require(n >= 2, "build_basis: n must be at least 2");
  RelationBasis out;
  out.n = n;
  out.prime_powers = factorize(n);
  const auto& pps = out.prime_powers;

  // Supports in mixed-radix tuple coordinates: index = sum_i a_i * stride_i,
  // where a_i is the exponent of the fixed primitive q_i-th root zeta_i.
  std::vector<std::int64_t> stride(pps.size());
  std::int64_t size = 1;
  for (std::size_t i = 0; i < pps.size(); ++i) {
    stride[i] = size;
    size *= pps[i].value;
  }

  std::vector<std::vector<std::int64_t>> supports;
  std::int64_t prev = 1; // product of the prime powers already processed
  for (std::size_t j = 0; j < pps.size(); ++j) {
    const std::int64_t q = pps[j].value;
    const std::int64_t p = pps[j].prime;
    const std::int64_t block = q / p;
    std::vector<std::vector<std::int64_t>> next;

    // zeta_j^i * y for every earlier relation y.
    for (std::int64_t i = 0; i < q; ++i)
      for (const auto& y : supports) {
        std::vector<std::int64_t> v;
        v.reserve(y.size());
        for (std::int64_t t : y)
          v.push_back(t + prev * i);
        next.push_back(std::move(v));
      }

    // zeta_prev^t * zeta_j^i * (1 + zeta_j^block + ... + zeta_j^{block (p-1)}),
    // with zeta_prev = zeta_1 ... zeta_{j-1} and t below phi(prev).
    const std::int64_t phi_prev = totient(prev);
    for (std::int64_t t = 0; t < phi_prev; ++t) {
      std::int64_t base = 0;
      for (std::size_t i = 0; i < j; ++i)
        base += (t % pps[i].value) * stride[i];
      for (std::int64_t i = 0; i < block; ++i) {
        std::vector<std::int64_t> v;
        v.reserve(static_cast<std::size_t>(p));
        for (std::int64_t s = 0; s < p; ++s)
          v.push_back(base + prev * (i + s * block));
        next.push_back(std::move(v));
      }
    }
    supports = std::move(next);
    prev *= q;
  }

  // zeta_i = zeta_n^{n / q_i}, so the tuple (a_i) is the power sum_i a_i n/q_i.
  auto to_power = [&](std::int64_t index) {
    std::int64_t l = 0;
    for (std::size_t i = 0; i < pps.size(); ++i) {
      const std::int64_t a = (index / stride[i]) % pps[i].value;
      l = (l + a * (n / pps[i].value)) % n;
    }
    return l;
  };

  out.rank = static_cast<std::int64_t>(supports.size());
  out.vectors.assign(supports.size(), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  std::vector<std::vector<std::size_t>> incidence(static_cast<std::size_t>(n));
  for (std::size_t v = 0; v < supports.size(); ++v)
    for (std::int64_t index : supports[v]) {
      const auto l = static_cast<std::size_t>(to_power(index));
      ++out.vectors[v][l];
      incidence[l].push_back(v);
    }

  out.gram.assign(supports.size(), std::vector<std::int64_t>(supports.size(), 0));
  for (std::size_t l = 0; l < incidence.size(); ++l) {
    const auto& vs = incidence[l];
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = 0; b < vs.size(); ++b)
        out.gram[vs[a]][vs[b]] += out.vectors[vs[a]][l] * out.vectors[vs[b]][l];
  }
  out.gram_det = integer_determinant(out.gram);
  return out;
}

BigInt integer_determinant(const std::vector<std::vector<std::int64_t>>& matrix)
{
  const std::size_t size = matrix.size();
  if (size == 0)
    return 1;
  std::vector<std::vector<BigInt>> a(size, std::vector<BigInt>(size));
  for (std::size_t i = 0; i < size; ++i) {
    require(matrix[i].size() == size, "integer_determinant: matrix is not square");
    for (std::size_t j = 0; j < size; ++j)
      a[i][j] = static_cast<long>(matrix[i][j]);
  }

  // Bareiss: after step k every entry is a k x k minor, divisions are exact.
  BigInt previous = 1;
  int sign = 1;
  BigInt tmp;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < size && a[swap][k] == 0)
        ++swap;
      if (swap == size)
        return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        tmp = a[i][j] * a[k][k];
        tmp -= a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = a[k][k];
  }
  BigInt det = a[size - 1][size - 1];
  if (sign < 0)
    det = -det;
  return det;
}

double mesh_max_length(const RelationBasis& basis)
{
  std::vector<std::int64_t> sum(static_cast<std::size_t>(basis.n), 0);
  for (const auto& v : basis.vectors)
    for (std::size_t l = 0; l < v.size(); ++l)
      sum[l] += v[l];
  double sq = 0;
  for (std::int64_t s : sum)
    sq += static_cast<double>(s) * static_cast<double>(s);
  return std::sqrt(sq);
}

double volume_count_bound(const RelationBasis& basis, double radius)
{
  require(radius >= 0, "volume_count_bound: radius must be non-negative");
  const double inflated = radius + mesh_max_length(basis);
  const double log_bound = static_cast<double>(basis.rank) * std::log(inflated) +
                           log_unit_ball_volume(basis.rank) - std::log(basis.mesh_volume());
  return std::exp(log_bound);
}

namespace {

// Fincke-Pohst setup. Coordinates are permuted so that the innermost
// search level uses the shortest basis vector.
struct BallSetup
{
  std::size_t rank = 0;
  std::int64_t scale = 1;                   // common denominator D of the center
  std::vector<std::int64_t> offset;         // D * (anchor - center), integral
  std::vector<std::size_t> order;           // permutation of basis vectors
  std::vector<std::vector<double>> chol;    // upper triangular, G = R^T R
  std::vector<double> coeff_center;         // real minimizer u of |x - center|
  double budget = 0;                        // rho^2 in the coefficient metric
  __int128 exact_limit = 0;                 // floor(D^2 r^2 (1 + 1e-9))
  bool fits_int64 = false;                  // every search quantity fits in 64 bits
};

BallSetup prepare(const RelationBasis& basis, const BallQuery& query,
                  const std::vector<std::int64_t>& anchor)
{
  const auto n = static_cast<std::size_t>(basis.n);
  require(query.n == basis.n, "enumerate_ball: query modulus differs from the basis");
  require(query.center.size() == n && anchor.size() == n,
          "enumerate_ball: center and anchor must have length n");
  require(query.radius >= 0, "enumerate_ball: radius must be non-negative");

  BallSetup s;
  s.rank = static_cast<std::size_t>(basis.rank);

  BigInt lcm = 1;
  for (const auto& c : query.center)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  require(lcm.fits_slong_p() && lcm < 1'000'000, "enumerate_ball: center denominator too large");
  s.scale = lcm.get_si();
  s.offset.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    Rational v = Rational(static_cast<long>(anchor[l])) - query.center[l];
    v *= static_cast<long>(s.scale);
    require(v.get_den() == 1 && v.get_num().fits_slong_p(), "enumerate_ball: offset overflow");
    s.offset[l] = v.get_num().get_si();
  }

  s.order.resize(s.rank);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) {
    return basis.gram[a][a] < basis.gram[b][b];
  });

  const std::size_t r = s.rank;
  std::vector<std::vector<double>> g(r, std::vector<double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      g[i][j] = static_cast<double>(basis.gram[s.order[i]][s.order[j]]);

  // Cholesky, G = L L^T; chol holds R = L^T.
  std::vector<std::vector<double>> low(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = g[i][j];
      for (std::size_t t = 0; t < j; ++t)
        acc -= low[i][t] * low[j][t];
      if (i == j) {
        require(acc > 0, "enumerate_ball: Gram matrix is not positive definite");
        low[i][i] = std::sqrt(acc);
      } else {
        low[i][j] = acc / low[j][j];
      }
    }
  s.chol.assign(r, std::vector<double>(r, 0.0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      s.chol[i][j] = low[j][i];

  // Minimizer of |d + B^T z|^2 with d = offset / D: G u = -B d.
  const double d_scale = static_cast<double>(s.scale);
  std::vector<double> rhs(r, 0.0);
  double d_norm2 = 0;
  for (std::size_t l = 0; l < n; ++l)
    d_norm2 += std::pow(static_cast<double>(s.offset[l]) / d_scale, 2);
  for (std::size_t i = 0; i < r; ++i) {
    double acc = 0;
    const auto& v = basis.vectors[s.order[i]];
    for (std::size_t l = 0; l < n; ++l)
      acc += static_cast<double>(v[l]) * static_cast<double>(s.offset[l]);
    rhs[i] = -acc / d_scale;
  }
  std::vector<double> tmp(r);
  for (std::size_t i = 0; i < r; ++i) {
    double acc = rhs[i];
    for (std::size_t t = 0; t < i; ++t)
      acc -= low[i][t] * tmp[t];
    tmp[i] = acc / low[i][i];
  }
  s.coeff_center.assign(r, 0.0);
  double u_gu = 0;
  for (std::size_t i = r; i-- > 0;) {
    double acc = tmp[i];
    for (std::size_t t = i + 1; t < r; ++t)
      acc -= s.chol[i][t] * s.coeff_center[t];
    s.coeff_center[i] = acc / s.chol[i][i];
    u_gu += tmp[i] * tmp[i];
  }

  const double radius2 = query.radius * query.radius;
  const double perp2 = std::max(0.0, d_norm2 - u_gu);
  s.budget = radius2 * (1 + 1e-9) + 1e-9 - perp2 + 1e-9 * (1 + d_norm2);

  const long double limit = static_cast<long double>(s.scale) * s.scale *
                            static_cast<long double>(query.radius) * query.radius *
                            (1.0L + 1e-9L);
  s.exact_limit = static_cast<__int128>(std::floor(limit));

  // Bounding box of the coefficient ellipsoid: |z_j - u_j| <= rho sqrt((G^-1)_jj).
  // It bounds |y_i|, <y_i, b_k> and the innermost quadratic, deciding whether
  // 64-bit arithmetic is exact.
  const double rho2 = std::max(0.0, s.budget);
  double y_max = std::sqrt(d_norm2) * d_scale + 1, b_max = 0, z_max = 0;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<double> col(r, 0.0); // column j of L^{-1}
    for (std::size_t i = j; i < r; ++i) {
      double acc = i == j ? 1.0 : 0.0;
      for (std::size_t t = j; t < i; ++t)
        acc -= low[i][t] * col[t];
      col[i] = acc / low[i][i];
    }
    double inv_jj = 0;
    for (double v : col)
      inv_jj += v * v;
    const double zj = std::abs(s.coeff_center[j]) + std::sqrt(rho2 * inv_jj) * 1.01 + 2;
    const double bj = std::sqrt(g[j][j]);
    z_max = std::max(z_max, zj);
    b_max = std::max(b_max, bj);
    y_max += d_scale * zj * bj;
  }
  y_max = std::max(y_max, d_scale * (query.radius + 1));
  const double u = 2 * d_scale * (y_max + 1) * (b_max + 1) * (z_max + 2);
  s.fits_int64 = u < 7.0e8;
  return s;
}

// Depth-first search over basis coefficients z. With y_i = offset + D sum_{j >= i} z_j b_j
// the search keeps |y_i|^2 and <y_i, b_k> (k < i) in exact integers, so each node
// costs O(rank) regardless of n.
template <typename Int>
struct Enumerator
{
  const BallSetup& s;
  std::vector<std::vector<std::int64_t>> gram; // permuted to the search order
  std::vector<std::int64_t> z;
  std::vector<Int> norm;                  // norm[i] = |y_i|^2
  std::vector<std::vector<Int>> dots;     // dots[i][k] = <y_i, b_k>
  std::uint64_t count = 0;

  Enumerator(const RelationBasis& basis, const BallSetup& setup)
      : s(setup), gram(setup.rank, std::vector<std::int64_t>(setup.rank)), z(setup.rank, 0),
        norm(setup.rank + 1, 0), dots(setup.rank + 1)
  {
    const std::size_t r = setup.rank;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        gram[i][j] = basis.gram[setup.order[i]][setup.order[j]];
    for (std::size_t i = 0; i <= r; ++i)
      dots[i].assign(i, 0);
    for (std::size_t l = 0; l < setup.offset.size(); ++l) {
      const Int o = setup.offset[l];
      norm[r] += o * o;
      for (std::size_t k = 0; k < r; ++k)
        dots[r][k] += o * basis.vectors[setup.order[k]][l];
    }
  }

  // Exact count of integers t with qa t^2 + qb t + qc <= limit.
  std::uint64_t count_quadratic(Int qa, Int qb, Int qc) const
  {
    const Int limit = static_cast<Int>(s.exact_limit);
    const Int disc = qb * qb - 4 * qa * (qc - limit);
    if (disc < 0)
      return 0;
    auto value = [&](Int t) { return (qa * t + qb) * t + qc; };
    const double root = std::sqrt(static_cast<double>(disc));
    const double two_a = 2.0 * static_cast<double>(qa);
    const double mid = -static_cast<double>(qb);
    auto lo = static_cast<Int>(std::ceil((mid - root) / two_a));
    auto hi = static_cast<Int>(std::floor((mid + root) / two_a));
    while (value(lo - 1) <= limit)
      --lo;
    while (lo <= hi && value(lo) > limit)
      ++lo;
    while (value(hi + 1) <= limit)
      ++hi;
    while (hi >= lo && value(hi) > limit)
      --hi;
    return hi >= lo ? static_cast<std::uint64_t>(hi - lo + 1) : 0;
  }

  // Levels 1 and 0 together: the innermost coefficient is counted in closed form.
  void last_two_levels(double used)
  {
    const double r11 = s.chol[1][1];
    double center = s.coeff_center[1];
    for (std::size_t j = 2; j < s.rank; ++j)
      center -= s.chol[1][j] / r11 * (static_cast<double>(z[j]) - s.coeff_center[j]);
    const double remaining = s.budget - used;
    if (remaining < -1e-9)
      return;
    const double half = std::sqrt(std::max(0.0, remaining)) / r11;
    const double slack = 1e-7 * (1 + std::abs(center));
    const auto lo = static_cast<std::int64_t>(std::ceil(center - half - slack));
    const auto hi = static_cast<std::int64_t>(std::floor(center + half + slack));

    const Int d = s.scale;
    const Int qa = d * d * gram[0][0];
    const Int n2 = norm[2], p1 = dots[2][1], p0 = dots[2][0];
    const Int g11 = gram[1][1], g10 = gram[1][0];
    for (std::int64_t t = lo; t <= hi; ++t) {
      const Int dt = d * t;
      const Int n1 = n2 + (2 * p1 + dt * g11) * dt;
      const Int dot0 = p0 + dt * g10;
      count += count_quadratic(qa, 2 * d * dot0, n1);
    }
  }

  void descend(std::size_t level, double used)
  {
    if (level == 0) {
      const Int d = s.scale;
      count += count_quadratic(d * d * gram[0][0], 2 * d * dots[1][0], norm[1]);
      return;
    }
    if (level == 1) {
      last_two_levels(used);
      return;
    }
    const double rii = s.chol[level][level];
    double center = s.coeff_center[level];
    for (std::size_t j = level + 1; j < s.rank; ++j)
      center -= s.chol[level][j] / rii * (static_cast<double>(z[j]) - s.coeff_center[j]);
    const double remaining = s.budget - used;
    if (remaining < -1e-9)
      return;
    const double half = std::sqrt(std::max(0.0, remaining)) / rii;
    const double slack = 1e-7 * (1 + std::abs(center));
    const auto lo = static_cast<std::int64_t>(std::ceil(center - half - slack));
    const auto hi = static_cast<std::int64_t>(std::floor(center + half + slack));

    const Int d = s.scale;
    const auto& g = gram[level];
    const auto& above = dots[level + 1];
    auto& here = dots[level];
    for (std::int64_t t = lo; t <= hi; ++t) {
      z[level] = t;
      const Int dt = d * t;
      norm[level] = norm[level + 1] + 2 * dt * above[level] + dt * dt * g[level];
      for (std::size_t k = 0; k < level; ++k)
        here[k] = above[k] + dt * g[k];
      const double dev = static_cast<double>(t) - center;
      descend(level - 1, used + rii * rii * dev * dev);
    }
  }
};

double predicted_nodes(const BallSetup& s)
{
  // Gaussian heuristic over the levels above the innermost one.
  const double rho = std::sqrt(std::max(0.0, s.budget));
  double total = static_cast<double>(s.rank);
  double log_det = 0;
  for (std::size_t m = 1; m < s.rank; ++m) {
    log_det += std::log(s.chol[s.rank - m][s.rank - m]);
    if (rho > 0)
      total += std::exp(log_unit_ball_volume(static_cast<std::int64_t>(m)) +
                        static_cast<double>(m) * std::log(rho) - log_det);
  }
  return total;
}

} // namespace

double predicted_ball_workload(const RelationBasis& basis, const BallQuery& query,
                               const std::vector<std::int64_t>& anchor)
{
  return predicted_nodes(prepare(basis, query, anchor));
}

std::uint64_t enumerate_ball(const RelationBasis& basis, const BallQuery& query,
                             const std::vector<std::int64_t>& anchor, double guard)
{
  const BallSetup setup = prepare(basis, query, anchor);
  const double workload = predicted_nodes(setup);
  if (workload > guard)
    throw ResourceLimit("enumerate_ball: predicted workload " + std::to_string(workload) +
                        " exceeds the guard");
  if (setup.rank == 0)
    return 0;
  if (setup.fits_int64) {
    Enumerator<std::int64_t> e(basis, setup);
    e.descend(setup.rank - 1, 0.0);
    return e.count;
  }
  Enumerator<__int128> e(basis, setup);
  e.descend(setup.rank - 1, 0.0);
  return e.count;
}

} // namespace lacuna
