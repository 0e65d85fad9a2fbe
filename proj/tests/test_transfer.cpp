#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bfp/transfer.hpp"

using namespace bfp;

namespace {

potential2 random_phi(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  potential2 p;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) p.phi[a][b] = dist(rng);
  return p;
}

}  // namespace

TEST_CASE("build_transfer on the flat potential") {
  auto t = build_transfer(potential2{});
  CHECK(t.lambda_plus == doctest::Approx(2.0));
  CHECK(t.lambda_minus == doctest::Approx(0.0));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(t.c_plus[a][b] == doctest::Approx(0.5));
      CHECK(t.c_minus[a][b] == doctest::Approx(a == b ? 0.5 : -0.5));
    }
}

TEST_CASE("build_transfer on pinned matrices") {
  potential2 additive;  // phi(a,b) = a + b: rank-1 matrix [[1,2],[2,4]]
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) additive.phi[a][b] = a + b;
  auto t1 = build_transfer(additive);
  CHECK(t1.lambda_plus == doctest::Approx(5.0));
  CHECK(t1.lambda_minus == doctest::Approx(0.0).epsilon(1e-14));

  potential2 corner;  // phi(0,0) = 1 else 0: [[2,1],[1,1]]
  corner.phi[0][0] = 1.0;
  auto t2 = build_transfer(corner);
  CHECK(t2.lambda_plus == doctest::Approx((3.0 + std::sqrt(5.0)) / 2));
  CHECK(t2.lambda_minus == doctest::Approx((3.0 - std::sqrt(5.0)) / 2));
}

TEST_CASE("spectral structure invariants on random potentials") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 500; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    auto t = build_transfer(phi);
    // Discriminant strictly positive, dominant eigenvalue dominates.
    double diff = t.m[0][0] - t.m[1][1];
    CHECK(diff * diff + 4 * t.m[0][1] * t.m[1][0] > 0.0);
    CHECK(t.lambda_plus > std::abs(t.lambda_minus));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        CHECK(t.c_plus[a][b] > 0.0);
        double id = a == b ? 1.0 : 0.0;
        CHECK(t.c_plus[a][b] + t.c_minus[a][b] ==
              doctest::Approx(id).epsilon(1e-12));
      }
    // Cayley-Hamilton: lambda+ + lambda- = tr, lambda+ * lambda- = det.
    CHECK(t.lambda_plus + t.lambda_minus == doctest::Approx(t.trace));
    CHECK(t.lambda_plus * t.lambda_minus ==
          doctest::Approx(t.det).epsilon(1e-10));
  }
}

TEST_CASE("partition_z pinned values") {
  CHECK(partition_z(potential2{}, 0, 0, 5) == doctest::Approx(8.0));
  CHECK(partition_z(potential2{}, 0, 1, 2) == doctest::Approx(1.0));
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 20; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    for (auto method : {z_method::power, z_method::eigen, z_method::enumerate}) {
      CHECK(partition_z(phi, 0, 0, 1, method) == doctest::Approx(1.0));
      CHECK(partition_z(phi, 1, 1, 1, method) == doctest::Approx(1.0));
      CHECK(partition_z(phi, 0, 1, 1, method) == doctest::Approx(0.0));
      CHECK(partition_z(phi, 1, 0, 1, method) == doctest::Approx(0.0));
    }
  }
  CHECK_THROWS_AS(partition_z(potential2{}, 0, 0, 25, z_method::enumerate),
                  bfp::method_cap);
  CHECK_THROWS_AS(partition_z(potential2{}, 0, 0, 0), bfp::invalid_argument_error);
}

TEST_CASE("eigen route tracks the power route to 1e-9 relative") {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 200; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    for (std::int64_t n : {2, 3, 5, 10, 25, 50}) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double zp = partition_z(phi, a, b, n, z_method::power);
          double ze = partition_z(phi, a, b, n, z_method::eigen);
          CHECK(std::abs(ze - zp) / zp <= 1e-9);
        }
    }
  }
}

TEST_CASE("enumeration route is exact against the power route") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 40; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    for (std::int64_t n : {2, 3, 7, 12, 16}) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double zp = partition_z(phi, a, b, n, z_method::power);
          double zn = partition_z(phi, a, b, n, z_method::enumerate);
          CHECK(std::abs(zn - zp) / zp <= 1e-12);
        }
    }
  }
}

TEST_CASE("partition growth approaches the dominant eigenvalue") {
  // log2 Z^n / n = log2 lambda+ + (log2 C+ - log2 lambda+ + o(1)) / n, so the
  // n = 50 error must sit inside the first-order envelope and halve by n = 100.
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 200; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    auto t = build_transfer(phi);
    double z50 = partition_z(phi, 0, 0, 50, z_method::power);
    CHECK(z50 > 0.0);
    double loglam = std::log2(t.lambda_plus);
    double err50 = std::abs(std::log2(z50) / 50.0 - loglam);
    double envelope =
        (std::abs(std::log2(t.c_plus[0][0])) + std::abs(loglam) + 0.5) / 50.0;
    CHECK(err50 <= envelope);
    double z100 = partition_z(phi, 0, 0, 100, z_method::power);
    double err100 = std::abs(std::log2(z100) / 100.0 - loglam);
    CHECK(err100 <= err50 * 0.51 + 1e-12);
  }
  // Z^n > 0 for n >= 2 on a spread of random potentials.
  for (int iter = 0; iter < 50; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    for (std::int64_t n : {2, 3, 10, 50})
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          CHECK(partition_z(phi, a, b, n, z_method::power) > 0.0);
  }
}

TEST_CASE("stable log2_z agrees with direct logs") {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 100; ++iter) {
    auto phi = random_phi(rng, -2.0, 2.0);
    auto t = build_transfer(phi);
    for (std::int64_t n : {2, 5, 17, 40}) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double direct = std::log2(partition_z(phi, a, b, n, z_method::power));
          CHECK(t.log2_z(a, b, n) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
  }
}

TEST_CASE("det_zero_reduce") {
  potential2 additive;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) additive.phi[a][b] = a + b;
  auto psi = det_zero_reduce(additive, 1e-12);
  REQUIRE(psi.has_value());
  CHECK(psi->phi0 == doctest::Approx(0.0));
  CHECK(psi->phi1 == doctest::Approx(2.0));

  potential2 corner;
  corner.phi[0][0] = 1.0;
  CHECK_FALSE(det_zero_reduce(corner, 1e-12).has_value());

  auto flat = det_zero_reduce(potential2::constant(0.7), 1e-12);
  REQUIRE(flat.has_value());
  CHECK(flat->phi0 == doctest::Approx(0.7));
  CHECK(flat->phi1 == doctest::Approx(0.7));
}

TEST_CASE("reduce_4local") {
  potential4 zero{};
  auto psi0 = reduce_4local(zero);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(psi0.at(a, b) == doctest::Approx(0.0));

  potential4 ind{};  // indicator of the block 0000
  ind.phi[0] = 1.0;
  auto psi1 = reduce_4local(ind);
  // Only (0,0) sees the all-zero block, in both of its evaluations.
  CHECK(psi1.at(0, 0) == doctest::Approx(2.0));
  CHECK(psi1.at(0, 1) == doctest::Approx(0.0));
  CHECK(psi1.at(1, 0) == doctest::Approx(0.0));
  CHECK(psi1.at(1, 1) == doctest::Approx(0.0));

  // phi depending only on x1 collapses to g(x0) + g(0).
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  double g0 = dist(rng), g1 = dist(rng);
  potential4 only_x1{};
  for (int i = 0; i < 16; ++i)
    only_x1.phi[static_cast<std::size_t>(i)] = (i & 0b0100) ? g1 : g0;
  auto psi2 = reduce_4local(only_x1);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(psi2.at(a, b) == doctest::Approx((a ? g1 : g0) + g0));
}

TEST_CASE("extended precision instantiation") {
  auto t = build_transfer<long double>(potential2::constant(0.25));
  CHECK(static_cast<double>(t.lambda_plus) ==
        doctest::Approx(2.0 * std::exp2(0.25)));
  long double z = partition_z<long double>(potential2::constant(0.25), 0, 0, 10);
  double zd = partition_z(potential2::constant(0.25), 0, 0, 10);
  CHECK(static_cast<double>(z) == doctest::Approx(zd).epsilon(1e-12));
}
