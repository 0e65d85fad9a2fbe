#pragma once

// Local potentials, the 2x2 weight matrix with its Perron-Frobenius eigen
// data and spectral coefficients, block partition functions by three
// independent routes, and the locality reductions.
//
// All logarithms are base 2, matching the 2^phi block weights; pressures
// downstream come out in bits per symbol.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "bfp/config.hpp"
#include "bfp/errors.hpp"

namespace bfp {

struct potential1 {
  double phi0 = 0.0;
  double phi1 = 0.0;

  double at(int x0) const noexcept { return x0 ? phi1 : phi0; }
  double sup_norm() const noexcept {
    return std::max(std::abs(phi0), std::abs(phi1));
  }
};

struct potential2 {
  // phi[a][b] is the weight exponent of reading symbol b after symbol a.
  std::array<std::array<double, 2>, 2> phi{{{0.0, 0.0}, {0.0, 0.0}}};

  double at(int a, int b) const noexcept { return phi[a][b]; }
  double sup_norm() const noexcept {
    double m = 0.0;
    for (auto& row : phi)
      for (double v : row) m = std::max(m, std::abs(v));
    return m;
  }

  static potential2 constant(double c) {
    potential2 p;
    p.phi = {{{c, c}, {c, c}}};
    return p;
  }

  static potential2 from_1local(const potential1& g) {
    potential2 p;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) p.phi[a][b] = g.at(a);
    return p;
  }
};

struct potential4 {
  std::array<double, 16> phi{};  // indexed by x0 x1 x2 x3, x0 highest bit

  double at(int x0, int x1, int x2, int x3) const noexcept {
    return phi[static_cast<std::size_t>(x0 << 3 | x1 << 2 | x2 << 1 | x3)];
  }
  double sup_norm() const noexcept {
    double m = 0.0;
    for (double v : phi) m = std::max(m, std::abs(v));
    return m;
  }
};

// Integer power with the 0^0 = 1 convention, exact for the eigen formula's
// lambda^(n-1) factors even when an eigenvalue is zero or negative.
template <class Real>
Real powi(Real base, std::int64_t exp) {
  Real out = 1;
  Real b = base;
  for (std::int64_t e = exp; e > 0; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

template <class Real = double>
struct transfer_data {
  Real m[2][2];
  Real trace;
  Real det;
  Real lambda_plus;
  Real lambda_minus;
  Real c_plus[2][2];
  Real c_minus[2][2];

  // log2 Z^n_{a,b} evaluated through the spectral form; never overflows
  // because the subdominant ratio has modulus < 1.
  Real log2_z(int a, int b, std::int64_t n) const {
    Real ratio = lambda_minus / lambda_plus;
    Real inner = c_plus[a][b] + c_minus[a][b] * powi(ratio, n - 1);
    return static_cast<Real>(n - 1) * std::log2(lambda_plus) +
           std::log2(inner);
  }
};

template <class Real = double>
transfer_data<Real> build_transfer(const potential2& phi) {
  transfer_data<Real> t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      t.m[a][b] = std::exp2(static_cast<Real>(phi.at(a, b)));
  t.trace = t.m[0][0] + t.m[1][1];
  t.det = t.m[0][0] * t.m[1][1] - t.m[0][1] * t.m[1][0];
  // Discriminant in its manifestly positive form.
  Real diff = t.m[0][0] - t.m[1][1];
  Real disc = diff * diff + 4 * t.m[0][1] * t.m[1][0];
  Real root = std::sqrt(disc);
  t.lambda_plus = (t.trace + root) / 2;
  t.lambda_minus = (t.trace - root) / 2;
  // Spectral projectors via the resolvent form; C+ + C- = I by construction.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Real id = a == b ? Real(1) : Real(0);
      t.c_plus[a][b] = (t.m[a][b] - t.lambda_minus * id) / root;
      t.c_minus[a][b] = (t.lambda_plus * id - t.m[a][b]) / root;
    }
  }
  return t;
}

enum class z_method { power, eigen, enumerate };

namespace detail {

template <class Real>
Real z_by_power(const transfer_data<Real>& t, int a, int b, std::int64_t n) {
  // (M^(n-1))_{a,b} by repeated multiplication.
  Real acc[2][2] = {{1, 0}, {0, 1}};
  for (std::int64_t i = 1; i < n; ++i) {
    Real next[2][2];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        next[r][c] = acc[r][0] * t.m[0][c] + acc[r][1] * t.m[1][c];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) acc[r][c] = next[r][c];
  }
  return acc[a][b];
}

template <class Real>
Real z_by_eigen(const transfer_data<Real>& t, int a, int b, std::int64_t n) {
  return t.c_plus[a][b] * powi(t.lambda_plus, n - 1) +
         t.c_minus[a][b] * powi(t.lambda_minus, n - 1);
}

template <class Real>
Real z_by_enumeration(const potential2& phi, int a, int b, std::int64_t n) {
  if (n == 1) return a == b ? Real(1) : Real(0);
  std::int64_t interior = n - 2;
  Real sum = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << interior); ++mask) {
    Real weight = 0;
    int prev = a;
    for (std::int64_t j = 0; j < interior; ++j) {
      int cur = (mask >> (interior - 1 - j)) & 1;
      weight += static_cast<Real>(phi.at(prev, cur));
      prev = cur;
    }
    weight += static_cast<Real>(phi.at(prev, b));
    sum += std::exp2(weight);
  }
  return sum;
}

}  // namespace detail

// Weighted count of length-n blocks from symbol a to symbol b. The three
// methods agree; `enumerate` walks all 2^(n-2) interior blocks and is
// capped accordingly.
template <class Real = double>
Real partition_z(const potential2& phi, int a, int b, std::int64_t n,
                 z_method method = z_method::power, const run_config& cfg = {}) {
  if (n < 1) throw invalid_argument_error("partition function needs n >= 1");
  transfer_data<Real> t = build_transfer<Real>(phi);
  switch (method) {
    case z_method::power:
      return detail::z_by_power(t, a, b, n);
    case z_method::eigen:
      return detail::z_by_eigen(t, a, b, n);
    case z_method::enumerate:
      if (n > 24)
        throw method_cap("enumeration is capped at n = 24, got " +
                         std::to_string(n));
      (void)cfg;
      return detail::z_by_enumeration<Real>(phi, a, b, n);
  }
  throw invalid_argument_error("unknown partition method");
}

// When phi(0,0) + phi(1,1) = phi(0,1) + phi(1,0) the weight matrix is
// singular and the pressure only sees the diagonal: psi(i) = phi(i,i).
inline std::optional<potential1> det_zero_reduce(const potential2& phi,
                                                 double tol) {
  double gap = phi.at(0, 0) + phi.at(1, 1) - phi.at(0, 1) - phi.at(1, 0);
  if (std::abs(gap) > tol) return std::nullopt;
  return potential1{phi.at(0, 0), phi.at(1, 1)};
}

// Restriction of a 4-local potential to odd coordinates when every even
// coordinate is zero: two evaluations per transition.
inline potential2 reduce_4local(const potential4& phi) {
  potential2 psi;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      psi.phi[a][b] = phi.at(0, a, 0, b) + phi.at(a, 0, b, 0);
  return psi;
}

}  // namespace bfp
