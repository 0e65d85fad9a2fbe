#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bfp/pressure.hpp"

using namespace bfp;

namespace {

rational rat(long long n, long long d) { return rational(bigint(n), bigint(d)); }

modulus_set set_of(std::initializer_list<long long> xs) {
  std::vector<bigint> ms;
  for (long long x : xs) ms.emplace_back(x);
  return modulus_set(std::move(ms));
}

potential2 random_phi2(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  potential2 p;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) p.phi[a][b] = dist(rng);
  return p;
}

const potential2 kCorner = [] {
  potential2 p;
  p.phi[0][0] = 1.0;  // phi = 1_{00}
  return p;
}();

}  // namespace

TEST_CASE("pressure_full_shift pinned values") {
  CHECK(pressure_full_shift(potential2{}).value == doctest::Approx(1.0));
  potential2 additive;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) additive.phi[a][b] = a + b;
  CHECK(pressure_full_shift(additive).value == doctest::Approx(std::log2(5.0)));
  CHECK(pressure_full_shift(kCorner).value ==
        doctest::Approx(std::log2((3.0 + std::sqrt(5.0)) / 2)));
}

TEST_CASE("pressure_one_hereditary pinned values") {
  CHECK(pressure_one_hereditary(rat(1, 3), potential1{}).value ==
        doctest::Approx(1.0 / 3.0));
  auto r = pressure_one_hereditary(rat(1, 3), potential1{0.0, 1.0});
  CHECK(r.value == doctest::Approx(std::log2(3.0) / 3.0));
  REQUIRE(r.equilibrium.has_value());
  CHECK(r.equilibrium->p == doctest::Approx(1.0 / 3.0));
  CHECK(r.equilibrium->kind == subshift_kind::hereditary);

  potential1 any{0.4, -0.9};
  CHECK(pressure_one_hereditary(rational(1), any).value ==
        doctest::Approx(std::log2(std::exp2(0.4) + std::exp2(-0.9))));
  CHECK(pressure_one_hereditary(rational(0), any).value ==
        doctest::Approx(any.phi0));
  CHECK_THROWS_AS(pressure_one_hereditary(rat(3, 2), potential1{}),
                  bfp::invalid_argument_error);
}

TEST_CASE("pressure_one_sandwich pinned values") {
  CHECK(pressure_one_sandwich(rat(2, 3), rational(0), rat(1, 3),
                              potential1{})
            .value == doctest::Approx(1.0 / 3.0));
  // Degenerate joining: no off-diagonal mass.
  potential1 any{0.7, -0.2};
  CHECK(pressure_one_sandwich(rat(1, 4), rat(3, 4), rational(0), any).value ==
        doctest::Approx(0.25 * 0.7 + 0.75 * -0.2));
  CHECK(pressure_one_sandwich(rational(0), rational(0), rational(1),
                              potential1{})
            .value == doctest::Approx(1.0));
  CHECK_THROWS_AS(pressure_one_sandwich(rat(1, 2), rat(1, 2), rat(1, 2),
                                        potential1{}),
                  bfp::simplex_violation);
  CHECK_THROWS_AS(pressure_one_sandwich(rat(3, 2), -rat(1, 2), rational(0),
                                        potential1{}),
                  bfp::simplex_violation);
}

TEST_CASE("entropy_value pinned values") {
  CHECK(entropy_hereditary(set_of({2, 3})) == rat(1, 3));
  CHECK(entropy_sandwich({periodic_word::parse("010"),
                          periodic_word::parse("011")}) == rat(1, 3));
  CHECK(entropy_value(subshift_kind::hereditary, rational(0)) == rational(0));
  CHECK(entropy_sandwich({periodic_word::zeros(), periodic_word::parse("01")}) ==
        rat(1, 2));
}

TEST_CASE("pressure_from_gap_stats pinned values") {
  auto hered = gap_stats_of({periodic_word::zeros(), eta_word(set_of({2, 3}))});
  CHECK(pressure_from_gap_stats(hered, potential2{}).value ==
        doctest::Approx(1.0 / 3.0));

  auto pair = gap_stats_of({periodic_word::parse("010"),
                            periodic_word::parse("011")});
  CHECK(pressure_from_gap_stats(pair, potential2{}).value ==
        doctest::Approx(1.0 / 3.0));

  CHECK(pressure_from_gap_stats(gap_stats::full_shift(), kCorner).value ==
        doctest::Approx(pressure_full_shift(kCorner).value));
}

TEST_CASE("pressure_periodic_sandwich pinned values") {
  CHECK(pressure_periodic_sandwich({periodic_word::zeros(),
                                    periodic_word::parse("01")},
                                   potential2{})
            .value == doctest::Approx(0.5));

  potential2 edge;  // phi(0,1) = 1 else 0
  edge.phi[0][1] = 1.0;
  CHECK(pressure_periodic_sandwich({periodic_word::parse("010"),
                                    periodic_word::parse("011")},
                                   edge)
            .value == doctest::Approx(2.0 / 3.0));

  // Full-shift specialization is bit-exact.
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    auto phi = random_phi2(rng, -2.0, 2.0);
    CHECK(pressure_periodic_sandwich({periodic_word::zeros(),
                                      periodic_word::ones()},
                                     phi)
              .value == pressure_full_shift(phi).value);
  }
}

TEST_CASE("pressure_bfree_hereditary pinned values") {
  CHECK(pressure_bfree_hereditary(set_of({2, 3}), potential2{}).value ==
        doctest::Approx(1.0 / 3.0));
  CHECK(pressure_bfree_hereditary(set_of({2, 3, 5}), potential2{}).value ==
        doctest::Approx(4.0 / 15.0));
  CHECK(pressure_bfree_hereditary(set_of({2, 3}), kCorner).value ==
        doctest::Approx(1.0 / 3.0 + std::log2(5.0) / 3.0));
  CHECK(pressure_bfree_hereditary(modulus_set{}, potential2{}).value ==
        doctest::Approx(1.0));
}

TEST_CASE("hereditary pressure agrees with the explicit sandwich pair") {
  std::mt19937_64 rng(71);
  for (auto s : {set_of({2, 3}), set_of({3}), set_of({2, 3, 5}),
                 set_of({4, 6, 9}), set_of({3, 5})}) {
    sandwich_pair pair{periodic_word::zeros(), eta_word(s)};
    for (int i = 0; i < 10; ++i) {
      auto phi = random_phi2(rng, -2.0, 2.0);
      CHECK(pressure_bfree_hereditary(s, phi).value ==
            doctest::Approx(pressure_periodic_sandwich(pair, phi).value)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("hereditary pressure works past the lcm cap on coprime sets") {
  bfp::run_config tiny;
  tiny.lcm_cap = 10;
  std::mt19937_64 rng(73);
  for (int i = 0; i < 10; ++i) {
    auto phi = random_phi2(rng, -1.0, 1.0);
    double a = pressure_bfree_hereditary(set_of({2, 3, 5}), phi).value;
    double b = pressure_bfree_hereditary(set_of({2, 3, 5}), phi, tiny).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pressure_bfree_hereditary(set_of({4, 6, 9}), potential2{}, tiny),
                  bfp::period_overflow);
}

TEST_CASE("decomposition parts sum to the value") {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 100; ++i) {
    auto phi = random_phi2(rng, -2.0, 2.0);
    auto s = set_of({2, 3, 5});
    auto rep = pressure_bfree_hereditary(s, phi);
    REQUIRE(rep.decomp.has_value());
    CHECK(rep.decomp->leading + rep.decomp->c_term + rep.decomp->correction ==
          doctest::Approx(rep.value).epsilon(1e-10));
  }
}

TEST_CASE("lin_chen_2inB pinned values and cross-check") {
  CHECK(lin_chen_2inB(set_of({2, 3}), 0, 0, 0).value ==
        doctest::Approx(1.0 / 3.0));
  CHECK(lin_chen_2inB(set_of({2, 3, 5}), 0, 0, 0).value ==
        doctest::Approx(4.0 / 15.0));
  CHECK(lin_chen_2inB(set_of({2, 3}), 1, 0, 0).value ==
        doctest::Approx(1.0 / 3.0 + std::log2(5.0) / 3.0));
  CHECK_THROWS_AS(lin_chen_2inB(set_of({3, 5}), 0, 0, 0), bfp::requires_two);

  // phi = a00 1_{00} + a01 1_{01} + a1 1_{x0=1} as a 2-local potential.
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (auto s : {set_of({2, 3}), set_of({2, 3, 5}), set_of({2, 5, 9})}) {
    for (int i = 0; i < 100; ++i) {
      double a00 = dist(rng), a01 = dist(rng), a1 = dist(rng);
      potential2 phi;
      phi.phi[0][0] = a00;
      phi.phi[0][1] = a01;
      phi.phi[1][0] = a1;
      phi.phi[1][1] = a1;
      CHECK(std::abs(lin_chen_2inB(s, a00, a01, a1).value -
                     pressure_bfree_hereditary(s, phi).value) <= 1e-10);
    }
  }
}

TEST_CASE("pressure_4local_2inB pinned values") {
  CHECK(pressure_4local_2inB(set_of({2, 3}), potential4{}).value ==
        doctest::Approx(1.0 / 3.0));
  CHECK(pressure_4local_2inB(set_of({2}), potential4{}).value ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(pressure_4local_2inB(set_of({3, 5}), potential4{}),
                  bfp::requires_two);

  // Potentials seeing only x0 must reproduce the single-coordinate theorem.
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 25; ++i) {
    double g0 = dist(rng), g1 = dist(rng);
    potential4 phi{};
    for (int idx = 0; idx < 16; ++idx)
      phi.phi[static_cast<std::size_t>(idx)] = (idx & 0b1000) ? g1 : g0;
    double lhs = pressure_4local_2inB(set_of({2, 3}), phi).value;
    double rhs = pressure_one_hereditary(rat(1, 3), potential1{g0, g1}).value;
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("det-zero potentials collapse to the single-coordinate formula") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto s : {set_of({2, 3}), set_of({2, 3, 5}), set_of({4, 6, 9}),
                 set_of({3, 4, 5}), set_of({2, 3, 25})}) {
    rational d = bfree_density(s);
    for (int i = 0; i < 40; ++i) {
      potential2 phi;
      phi.phi[0][0] = dist(rng);
      phi.phi[0][1] = dist(rng);
      phi.phi[1][0] = dist(rng);
      phi.phi[1][1] = phi.phi[0][1] + phi.phi[1][0] - phi.phi[0][0];
      auto psi = det_zero_reduce(phi, 1e-9);
      REQUIRE(psi.has_value());
      double two_local = pressure_bfree_hereditary(s, phi).value;
      double one_local = pressure_one_hereditary(d, *psi).value;
      CHECK(std::abs(two_local - one_local) <= 1e-10);
    }
  }
}

TEST_CASE("adding moduli never increases the pressure") {
  std::mt19937_64 rng(101);
  std::vector<modulus_set> chain = {set_of({2}), set_of({2, 3}),
                                    set_of({2, 3, 5}), set_of({2, 3, 5, 7})};
  for (int i = 0; i < 20; ++i) {
    auto phi = random_phi2(rng, -2.0, 2.0);
    double prev = pressure_full_shift(phi).value;
    for (const auto& s : chain) {
      double cur = pressure_bfree_hereditary(s, phi).value;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("equilibrium_cylinder pinned values") {
  auto eta = eta_word(set_of({2, 3}));
  for (double p : {0.2, 0.5, 0.8}) {
    CHECK(equilibrium_cylinder(eta, p, cylinder_pattern::single(0, 1)) ==
          doctest::Approx((1.0 - p) / 3.0));
    CHECK(equilibrium_cylinder(eta, p, cylinder_pattern::single(0, 0)) ==
          doctest::Approx(2.0 / 3.0 + p / 3.0));
  }
  // All-zero width-1 pattern on any word: 1 - nu(1)(1-p).
  auto w = periodic_word::parse("0110100");
  rational nu1 = cylinder_frequency(w, cylinder_pattern::single(0, 1));
  CHECK(equilibrium_cylinder(w, 0.3, cylinder_pattern::single(0, 0)) ==
        doctest::Approx(1.0 - nu1.to_double() * 0.7));
  CHECK_THROWS_AS(equilibrium_cylinder(eta, 0.0, cylinder_pattern::single(0, 1)),
                  bfp::invalid_argument_error);
}

TEST_CASE("equilibrium identity residual vanishes") {
  CHECK(equilibrium_identity_residual(set_of({2, 3}), potential1{}) <= 1e-12);
  CHECK(equilibrium_identity_residual(set_of({2, 3, 5}), potential1{0.0, 1.0}) <=
        1e-12);
  CHECK(equilibrium_identity_residual(set_of({2}), potential1{-1.3, 0.4}) <=
        1e-12);
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto s : {set_of({2, 3}), set_of({3, 4, 5}), set_of({2, 3, 25}),
                 set_of({4, 6, 9})}) {
    for (int i = 0; i < 50; ++i)
      CHECK(equilibrium_identity_residual(s, potential1{dist(rng), dist(rng)}) <=
            1e-12);
  }
}

TEST_CASE("tempo_correction pinned and structural checks") {
  auto zero = tempo_correction(set_of({2, 3}), potential2{}, 1.0);
  CHECK(zero.correction == doctest::Approx(0.0));
  CHECK(zero.ratio == doctest::Approx(0.0));
  CHECK(zero.reciprocal == rat(5, 6));
  CHECK(zero.density == rat(1, 3));

  // T equals the correction slot of the decomposition.
  auto rep = pressure_bfree_hereditary(set_of({2, 3}), kCorner);
  auto rec = tempo_correction(set_of({2, 3}), kCorner, 1.0);
  REQUIRE(rep.decomp.has_value());
  CHECK(std::abs(rec.correction -
                 (rep.value - rep.decomp->leading - rep.decomp->c_term)) <=
        1e-10);

  CHECK_THROWS_AS(tempo_correction(set_of({4, 6, 9}), potential2{}, 1.0),
                  bfp::coprimality_required);
  CHECK_THROWS_AS(tempo_correction(set_of({2, 3}), potential2{}, 2.5),
                  bfp::invalid_argument_error);

  // Growing coprime prime pairs: the ratio stays bounded.
  potential2 generic;
  generic.phi[0][0] = 0.35;
  generic.phi[0][1] = -0.2;
  generic.phi[1][0] = 0.15;
  generic.phi[1][1] = 0.4;
  double prev_ratio = -1.0;
  for (auto s : {set_of({101, 103}), set_of({1009, 1013})}) {
    auto r = tempo_correction(s, generic, 1.0);
    if (prev_ratio >= 0.0) CHECK(r.ratio <= prev_ratio * 1.1);
    prev_ratio = r.ratio;
  }
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(0.25) ==
        doctest::Approx(-0.25 * std::log2(0.25) - 0.75 * std::log2(0.75)));
}
