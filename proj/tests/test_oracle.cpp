#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "bfp/oracle.hpp"
#include "bfp/pressure.hpp"

using namespace bfp;

namespace {

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

sandwich_pair random_pair(std::mt19937_64& rng, std::size_t max_period) {
  while (true) {
    std::size_t s = 1 + rng() % max_period;
    std::vector<std::uint8_t> lo(s), hi(s);
    for (std::size_t i = 0; i < s; ++i) {
      switch (rng() % 3) {
        case 0: lo[i] = 0; hi[i] = 0; break;
        case 1: lo[i] = 1; hi[i] = 1; break;
        default: lo[i] = 0; hi[i] = 1; break;
      }
    }
    sandwich_pair p{periodic_word(lo), periodic_word(hi)};
    if (!p.is_full_shift()) return p;
  }
}

}  // namespace

TEST_CASE("log2_sum_exp2") {
  CHECK(log2_sum_exp2({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(log2_sum_exp2({3.0}) == doctest::Approx(3.0));
  CHECK(log2_sum_exp2({1000.0, 1000.0}) == doctest::Approx(1001.0));
  CHECK(std::isinf(log2_sum_exp2({})));
}

TEST_CASE("enumerate_blocks pinned languages") {
  CHECK(enumerate_blocks(language_spec::full(3)).size() == 8);

  auto b2 = enumerate_blocks(language_spec::hereditary(set_of({2}), 2));
  std::vector<std::string> names;
  for (auto b : b2) names.push_back(block_to_string(b, 2));
  CHECK(names == std::vector<std::string>{"00", "01", "10"});

  sandwich_pair p{periodic_word::parse("010"), periodic_word::parse("011")};
  auto b3 = enumerate_blocks(language_spec::sandwich(p, 3));
  std::vector<std::string> got;
  for (auto b : b3) got.push_back(block_to_string(b, 3));
  CHECK(got == std::vector<std::string>{"001", "010", "011", "100", "101", "110"});

  // The empty modulus set generates the full shift.
  CHECK(enumerate_blocks(language_spec::hereditary(modulus_set{}, 4)).size() ==
        16);

  // The full-shift pair and the full-shift spec enumerate the same language.
  sandwich_pair full{periodic_word::zeros(), periodic_word::ones()};
  CHECK(enumerate_blocks(language_spec::sandwich(full, 5)) ==
        enumerate_blocks(language_spec::full(5)));
}

TEST_CASE("enumeration respects the candidate cap") {
  run_config tiny;
  tiny.enum_cap = 100;
  CHECK_THROWS_AS(enumerate_blocks(language_spec::full(20), tiny),
                  bfp::enumeration_cap);
  CHECK_THROWS_AS(
      enumerate_blocks(language_spec::hereditary(set_of({5, 7}), 30), tiny),
      bfp::enumeration_cap);
  CHECK_THROWS_AS(enumerate_blocks(language_spec::full(0)),
                  bfp::invalid_argument_error);
}

TEST_CASE("hereditary languages are closed under flipping 1 to 0") {
  for (auto s : {set_of({2}), set_of({2, 3})}) {
    for (int n = 1; n <= 14; ++n) {
      auto blocks = enumerate_blocks(language_spec::hereditary(s, n));
      std::unordered_set<std::uint64_t> index(blocks.begin(), blocks.end());
      for (auto b : blocks) {
        for (int j = 0; j < n; ++j) {
          std::uint64_t bit = 1ULL << (n - 1 - j);
          if (b & bit) CHECK(index.count(b & ~bit) == 1);
        }
      }
    }
  }
}

TEST_CASE("block counting growth matches the free density") {
  auto blocks = enumerate_blocks(language_spec::hereditary(set_of({2, 3}), 24));
  double h = std::log2(static_cast<double>(blocks.size())) / 24.0;
  CHECK(std::abs(h - 1.0 / 3.0) <= 0.15);
}

TEST_CASE("naive_pressure on the full shift is exact with a tight bound") {
  auto est = naive_pressure(language_spec::full(10),
                            local_potential::from(potential2{}), 10);
  CHECK(est.estimate == doctest::Approx(1.1));
  CHECK(est.bound == doctest::Approx(0.1));
  CHECK(std::abs(est.estimate - 1.0) <= est.bound + 1e-12);
  CHECK(est.block_count == 2048);
}

TEST_CASE("naive_pressure on the hereditary language honors its bound") {
  auto est = naive_pressure(language_spec::hereditary(set_of({2, 3}), 0),
                            local_potential::from(potential2{}), 12);
  CHECK(std::abs(est.estimate - 1.0 / 3.0) <= est.bound);
  CHECK(std::abs(est.estimate - 1.0 / 3.0) <= 0.25);
}

TEST_CASE("naive_pressure of the trivial sandwich equals the full shift") {
  sandwich_pair full{periodic_word::zeros(), periodic_word::ones()};
  std::mt19937_64 rng(107);
  for (int i = 0; i < 5; ++i) {
    auto phi = local_potential::from(random_phi2(rng, -1.5, 1.5));
    auto a = naive_pressure(language_spec::sandwich(full, 0), phi, 8);
    auto b = naive_pressure(language_spec::full(0), phi, 8);
    CHECK(a.estimate == doctest::Approx(b.estimate));
  }
}

TEST_CASE("single_period_pressure pinned values") {
  CHECK(single_period_pressure({periodic_word::zeros(),
                                eta_word(set_of({2, 3}))},
                               potential2{}) == doctest::Approx(1.0 / 3.0));
  CHECK(single_period_pressure({periodic_word::parse("010"),
                                periodic_word::parse("011")},
                               potential2{}) == doctest::Approx(1.0 / 3.0));
  CHECK(single_period_pressure({periodic_word::zeros(),
                                periodic_word::parse("01")},
                               potential2{}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(single_period_pressure({periodic_word::zeros(),
                                          periodic_word::ones()},
                                         potential2{}),
                  bfp::no_fixed_position);
  run_config tight;
  tight.free_position_cap = 3;
  sandwich_pair wide{periodic_word::zeros(),
                     periodic_word::parse("0111110111")};
  CHECK_THROWS_AS(single_period_pressure(wide, potential2{}, tight),
                  bfp::enumeration_cap);
}

TEST_CASE("single_period_pressure is rotation invariant") {
  // Same pair described from a rotated origin gives the same pressure.
  std::mt19937_64 rng(109);
  for (int iter = 0; iter < 30; ++iter) {
    auto p = random_pair(rng, 12);
    auto phi = random_phi2(rng, -2.0, 2.0);
    std::size_t s = p.period();
    std::size_t r = rng() % s;
    std::vector<std::uint8_t> lo(s), hi(s);
    for (std::size_t i = 0; i < s; ++i) {
      lo[i] = static_cast<std::uint8_t>(
          p.lower().at(static_cast<std::int64_t>(i + r)));
      hi[i] = static_cast<std::uint8_t>(
          p.upper().at(static_cast<std::int64_t>(i + r)));
    }
    sandwich_pair rotated{periodic_word(lo), periodic_word(hi)};
    CHECK(single_period_pressure(p, phi) ==
          doctest::Approx(single_period_pressure(rotated, phi)).epsilon(1e-12));
  }
}

TEST_CASE("three-way agreement: formula, single period, DP") {
  std::mt19937_64 rng(113);
  for (int iter = 0; iter < 40; ++iter) {
    auto pair = random_pair(rng, 12);
    for (int j = 0; j < 4; ++j) {
      auto phi = random_phi2(rng, -2.0, 2.0);
      double formula = pressure_periodic_sandwich(pair, phi).value;
      double direct = single_period_pressure(pair, phi);
      CHECK(std::abs(formula - direct) <= 1e-9);
      int n_periods = 50;
      double dp = dp_shift_pressure(pair, phi, n_periods);
      CHECK(std::abs(dp - formula) <= dp_bound(phi, n_periods));
    }
  }
}

TEST_CASE("dp_shift_pressure pinned convergence") {
  CHECK(std::abs(dp_shift_pressure({periodic_word::zeros(),
                                    eta_word(set_of({2, 3}))},
                                   potential2{}, 100) -
                 1.0 / 3.0) <= 1e-2);
  potential2 edge;
  edge.phi[0][1] = 1.0;
  CHECK(std::abs(dp_shift_pressure({periodic_word::parse("010"),
                                    periodic_word::parse("011")},
                                   edge, 200) -
                 2.0 / 3.0) <= 1e-2);
  CHECK(std::abs(dp_shift_pressure({periodic_word::zeros(),
                                    periodic_word::ones()},
                                   potential2{}, 50) -
                 1.0) <= 1e-2);
  run_config tight;
  tight.dp_length_cap = 100;
  CHECK_THROWS_AS(dp_shift_pressure({periodic_word::zeros(),
                                     eta_word(set_of({2, 3}))},
                                    potential2{}, 200, tight),
                  bfp::enumeration_cap);
}

TEST_CASE("parallel DP reduction is bit-identical to serial") {
  run_config par;
  par.serial = false;
  std::mt19937_64 rng(127);
  for (int iter = 0; iter < 10; ++iter) {
    auto pair = random_pair(rng, 10);
    auto phi = random_phi2(rng, -2.0, 2.0);
    double serial = dp_shift_pressure(pair, phi, 30);
    double parallel = dp_shift_pressure(pair, phi, 30, par);
    CHECK(serial == parallel);
  }
}

TEST_CASE("oracle_compare") {
  modulus_set s23 = set_of({2, 3});
  double target = pressure_bfree_hereditary(s23, potential2{}).value;
  auto rec = oracle_compare(target, language_spec::hereditary(s23, 0),
                            local_potential::from(potential2{}), {6, 12, 24},
                            oracle_estimator::naive);
  CHECK(rec.pass);
  REQUIRE(rec.rows.size() == 3);
  for (auto& row : rec.rows) CHECK(row.diff <= row.bound + 1e-12);

  sandwich_pair pair{periodic_word::parse("010"), periodic_word::parse("011")};
  std::mt19937_64 rng(131);
  for (int i = 0; i < 5; ++i) {
    auto phi = random_phi2(rng, -1.0, 1.0);
    double t2 = pressure_periodic_sandwich(pair, phi).value;
    auto rec2 = oracle_compare(t2, language_spec::sandwich(pair, 0),
                               local_potential::from(phi), {3, 10, 30},
                               oracle_estimator::dp);
    CHECK(rec2.pass);
  }

  // Full shift at phi = 0 passes at every n.
  auto rec3 = oracle_compare(1.0, language_spec::full(0),
                             local_potential::from(potential2{}),
                             {2, 5, 9, 17}, oracle_estimator::naive);
  CHECK(rec3.pass);

  CHECK_THROWS_AS(oracle_compare(0.0, language_spec::full(0),
                                 local_potential::from(potential2{}), {4},
                                 oracle_estimator::dp),
                  bfp::invalid_argument_error);
}

TEST_CASE("naive_pressure validates the 4-local reduction") {
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  modulus_set s23 = set_of({2, 3});
  for (int iter = 0; iter < 10; ++iter) {
    potential4 phi{};
    for (auto& v : phi.phi) v = dist(rng);
    double target = pressure_4local_2inB(s23, phi).value;
    auto est = naive_pressure(language_spec::hereditary(s23, 0),
                              local_potential::from(phi), 20);
    CHECK(std::abs(est.estimate - target) <= est.bound);
  }
}
