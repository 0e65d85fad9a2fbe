#pragma once

// The acceptance checks behind the CLI `verify` subcommands, one suite per
// criterion. Each suite reruns the relevant closed forms against their
// independent oracles and reports a single pass flag plus detail lines.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "bfp/mirsky.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/oracle.hpp"
#include "bfp/pressure.hpp"
#include "bfp/transfer.hpp"
#include "bfp/words.hpp"

namespace bfp::verify {

struct suite_result {
  explicit suite_result(std::string suite_name = {})
      : name(std::move(suite_name)) {}

  std::string name;
  bool pass = true;
  std::vector<std::string> details;
  double seconds = 0.0;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!ok) details.push_back("FAIL: " + what);
  }
  void note(const std::string& what) { details.push_back(what); }
};

namespace detail {

inline modulus_set set_of(std::initializer_list<long long> xs) {
  std::vector<bigint> ms;
  for (long long x : xs) ms.emplace_back(x);
  return modulus_set(std::move(ms));
}

inline rational rat(long long n, long long d) {
  return rational(bigint(n), bigint(d));
}

inline potential2 random_phi2(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  potential2 p;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) p.phi[a][b] = dist(rng);
  return p;
}

inline sandwich_pair random_pair(std::mt19937_64& rng, std::size_t max_period) {
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

class stopwatch {
public:
  double elapsed() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

inline void finish(suite_result& r, const stopwatch& sw, double limit) {
  r.seconds = sw.elapsed();
  if (limit > 0.0) {
    r.check(r.seconds < limit, "runtime " + std::to_string(r.seconds) +
                                   "s exceeds " + std::to_string(limit) + "s");
  }
}

}  // namespace detail

// 1. Exact truncated densities and the density sweep.
inline suite_result density_exactness(const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"density_exactness"};
  r.check(bfree_density(set_of({2, 3}), cfg) == rat(1, 3), "d({2,3}) = 1/3");
  r.check(bfree_density(set_of({2, 3, 5}), cfg) == rat(4, 15),
          "d({2,3,5}) = 4/15");
  r.check(bfree_density(set_of({4, 6, 9}), cfg) == rat(11, 18),
          "d({4,6,9}) = 11/18");
  // Strict truncation (b < K): {2} first appears at K = 3, {2,3} at K = 4.
  auto sweep = density_sweep(set_of({2, 3, 25}),
                             {bigint(3), bigint(4), bigint(10), bigint(30)}, cfg);
  r.check(sweep[0].value == rat(1, 2), "sweep K=3 -> 1/2");
  r.check(sweep[1].value == rat(1, 3), "sweep K=4 -> 1/3 (strict truncation)");
  r.check(sweep[2].value == rat(1, 3), "sweep K=10 -> 1/3");
  r.check(sweep[3].value == rat(8, 25), "sweep K=30 -> 8/25");
  finish(r, sw, 1.0);
  return r;
}

// 2. Product / inclusion-exclusion Mirsky values equal period counting.
inline suite_result mirsky_consistency(const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"mirsky_consistency"};
  const std::vector<modulus_set> sets = {
      set_of({2, 3}),
      set_of({2, 3, 5}),
      set_of({3, 4, 5}),
      set_of({2, 3, 25}),
      set_of({5, 7, 9, 11}),
      set_of({2, 3, 5, 7, 11, 13}),
      set_of({7, 11, 13, 17, 19}),
      set_of({2, 3, 5, 7, 11, 13, 17}),
  };
  const std::vector<const char*> patterns = {
      "0:1", "0:0", "0:0,1:0", "0:0,1:1,2:0", "0:1,4:1,6:0",
      "0:0,3:0,7:1,11:0", "0:1,11:1"};
  int checked = 0;
  for (const auto& s : sets) {
    if (lcm_of(s, cfg) > bigint(1000000)) continue;
    for (const char* p : patterns) {
      auto pat = cylinder_pattern::parse(p);
      r.check(mirsky_pattern_coprime(s, pat, cfg) ==
                  mirsky_cylinder_exact(s, pat, cfg),
              std::string("set {") + s.to_string() + "} pattern " + p);
      ++checked;
    }
  }
  r.note("checked " + std::to_string(checked) + " set/pattern combinations");
  finish(r, sw, 30.0);
  return r;
}

// 3. Partition functions by eigen formula, matrix power and enumeration.
inline suite_result transfer_identity(std::uint64_t seed,
                                      const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"transfer_identity"};
  std::mt19937_64 rng(seed);
  for (int iter = 0; iter < 200; ++iter) {
    potential2 phi = random_phi2(rng, -2.0, 2.0);
    for (std::int64_t n = 1; n <= 50; ++n) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double zp = partition_z(phi, a, b, n, z_method::power, cfg);
          double ze = partition_z(phi, a, b, n, z_method::eigen, cfg);
          bool ok = zp == 0.0 ? std::abs(ze) <= 1e-12
                              : std::abs(ze - zp) / zp <= 1e-9;
          if (!ok)
            r.check(false, "eigen vs power at n=" + std::to_string(n));
          if (n <= 16) {
            double zn = partition_z(phi, a, b, n, z_method::enumerate, cfg);
            bool okn = zp == 0.0 ? std::abs(zn) <= 1e-12
                                 : std::abs(zn - zp) / zp <= 1e-12;
            if (!okn)
              r.check(false, "enumerate vs power at n=" + std::to_string(n));
          }
        }
    }
  }
  r.note("200 random potentials in [-2,2], n <= 50 (enumerate n <= 16)");
  finish(r, sw, 10.0);
  return r;
}

// 4. Entropy reproduction at phi = 0 by formula and by DP.
inline suite_result entropy_reproduction(const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"entropy_reproduction"};
  const potential2 flat{};
  struct entry {
    const char* name;
    sandwich_pair pair;
    double formula;
    rational exact;
  };
  std::vector<entry> cases;
  cases.push_back({"hereditary {2,3}",
                   {periodic_word::zeros(), eta_word(set_of({2, 3}), cfg)},
                   pressure_bfree_hereditary(set_of({2, 3}), flat, cfg).value,
                   rat(1, 3)});
  cases.push_back({"hereditary {2,3,5}",
                   {periodic_word::zeros(), eta_word(set_of({2, 3, 5}), cfg)},
                   pressure_bfree_hereditary(set_of({2, 3, 5}), flat, cfg).value,
                   rat(4, 15)});
  cases.push_back({"[010,011]",
                   {periodic_word::parse("010"), periodic_word::parse("011")},
                   pressure_periodic_sandwich({periodic_word::parse("010"),
                                               periodic_word::parse("011")},
                                              flat)
                       .value,
                   rat(1, 3)});
  cases.push_back({"[0,(01)]",
                   {periodic_word::zeros(), periodic_word::parse("01")},
                   pressure_periodic_sandwich({periodic_word::zeros(),
                                               periodic_word::parse("01")},
                                              flat)
                       .value,
                   rat(1, 2)});
  cases.push_back({"full shift",
                   {periodic_word::zeros(), periodic_word::ones()},
                   pressure_full_shift(flat).value, rational(1)});
  for (auto& c : cases) {
    r.check(std::abs(c.formula - c.exact.to_double()) <= 1e-12,
            std::string(c.name) + " formula");
    double dp = dp_shift_pressure(c.pair, flat, 200, cfg);
    r.check(std::abs(dp - c.formula) <= dp_bound(flat, 200),
            std::string(c.name) + " dp within bound");
  }
  // The exact rational entropies behind the first four cases.
  r.check(entropy_hereditary(set_of({2, 3}), cfg) == rat(1, 3),
          "entropy {2,3} exact");
  r.check(entropy_hereditary(set_of({2, 3, 5}), cfg) == rat(4, 15),
          "entropy {2,3,5} exact");
  r.check(entropy_sandwich({periodic_word::parse("010"),
                            periodic_word::parse("011")}) == rat(1, 3),
          "entropy [010,011] exact");
  r.check(entropy_sandwich({periodic_word::zeros(),
                            periodic_word::parse("01")}) == rat(1, 2),
          "entropy [0,(01)] exact");
  finish(r, sw, 0.0);
  return r;
}

// 5. Closed form vs single-period sum vs DP on random periodic pairs.
inline suite_result periodic_sandwich_agreement(std::uint64_t seed,
                                                int pair_count, int phi_count,
                                                const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"periodic_sandwich_agreement"};
  std::mt19937_64 rng(seed);
  const int n_periods = 50;
  for (int i = 0; i < pair_count; ++i) {
    sandwich_pair pair = random_pair(rng, 20);
    for (int j = 0; j < phi_count; ++j) {
      potential2 phi = random_phi2(rng, -2.0, 2.0);
      double formula = pressure_periodic_sandwich(pair, phi).value;
      double direct = single_period_pressure(pair, phi, cfg);
      if (std::abs(formula - direct) > 1e-9)
        r.check(false, "single-period mismatch at pair " + std::to_string(i));
      double dp = dp_shift_pressure(pair, phi, n_periods, cfg);
      if (std::abs(dp - formula) > dp_bound(phi, n_periods))
        r.check(false, "dp outside bound at pair " + std::to_string(i));
    }
  }
  r.note(std::to_string(pair_count) + " pairs x " + std::to_string(phi_count) +
         " potentials, dp at " + std::to_string(n_periods) + " periods");
  finish(r, sw, 60.0);
  return r;
}

// 6. Closed 2-in-B form against the general hereditary formula.
inline suite_result lin_chen_cross_check(std::uint64_t seed,
                                         const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"lin_chen_cross_check"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (auto s : {set_of({2, 3}), set_of({2, 3, 5}), set_of({2, 5, 9})}) {
    for (int i = 0; i < 100; ++i) {
      double a00 = dist(rng), a01 = dist(rng), a1 = dist(rng);
      potential2 phi;
      phi.phi[0][0] = a00;
      phi.phi[0][1] = a01;
      phi.phi[1][0] = a1;
      phi.phi[1][1] = a1;
      double lhs = lin_chen_2inB(s, a00, a01, a1, cfg).value;
      double rhs = pressure_bfree_hereditary(s, phi, cfg).value;
      if (std::abs(lhs - rhs) > 1e-10)
        r.check(false, "mismatch on {" + s.to_string() + "}");
    }
  }
  r.note("3 sets x 100 random coefficient triples");
  finish(r, sw, 0.0);
  return r;
}

// 7. Singular-matrix potentials collapse to the single-coordinate theorem.
inline suite_result det_zero_reduction(std::uint64_t seed,
                                       const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"det_zero_reduction"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto s : {set_of({2, 3}), set_of({2, 3, 5}), set_of({4, 6, 9}),
                 set_of({3, 4, 5}), set_of({2, 3, 25}), set_of({5, 6, 7}),
                 set_of({2, 3, 5, 7})}) {
    rational d = bfree_density(s, cfg);
    for (int i = 0; i < 40; ++i) {
      potential2 phi;
      phi.phi[0][0] = dist(rng);
      phi.phi[0][1] = dist(rng);
      phi.phi[1][0] = dist(rng);
      phi.phi[1][1] = phi.phi[0][1] + phi.phi[1][0] - phi.phi[0][0];
      auto psi = det_zero_reduce(phi, 1e-9);
      if (!psi) {
        r.check(false, "reduction did not trigger");
        continue;
      }
      double two = pressure_bfree_hereditary(s, phi, cfg).value;
      double one = pressure_one_hereditary(d, *psi).value;
      if (std::abs(two - one) > 1e-10)
        r.check(false, "mismatch on {" + s.to_string() + "}");
    }
  }
  r.note("7 sets with lcm <= 10^4 x 40 singular potentials");
  finish(r, sw, 0.0);
  return r;
}

// 8. Variational identity at the equilibrium state.
inline suite_result equilibrium_identity(std::uint64_t seed,
                                         const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"equilibrium_identity"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (auto s : {set_of({2}), set_of({2, 3}), set_of({2, 3, 5}),
                 set_of({4, 6, 9}), set_of({3, 4, 5}), set_of({2, 3, 25}),
                 set_of({5, 6, 7}), set_of({2, 3, 5, 7})}) {
    for (int i = 0; i < 50; ++i) {
      double resid = equilibrium_identity_residual(
          s, potential1{dist(rng), dist(rng)}, cfg);
      if (resid > 1e-12)
        r.check(false, "residual " + std::to_string(resid) + " on {" +
                           s.to_string() + "}");
    }
  }
  r.note("8 sets with lcm <= 10^4 x 50 random 1-local potentials");
  finish(r, sw, 0.0);
  return r;
}

// 9. 4-local reduction against the enumeration oracle and the
// single-coordinate theorem.
inline suite_result fourlocal_reduction(std::uint64_t seed,
                                        const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"fourlocal_reduction"};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  modulus_set s23 = set_of({2, 3});
  for (int i = 0; i < 10; ++i) {
    potential4 phi{};
    for (auto& v : phi.phi) v = dist(rng);
    double target = pressure_4local_2inB(s23, phi, cfg).value;
    auto est = naive_pressure(language_spec::hereditary(s23, 0),
                              local_potential::from(phi), 20, cfg);
    if (std::abs(est.estimate - target) > est.bound)
      r.check(false, "naive estimate outside bound at i=" + std::to_string(i));
  }
  std::uniform_real_distribution<double> wide(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    double g0 = wide(rng), g1 = wide(rng);
    potential4 phi{};
    for (int idx = 0; idx < 16; ++idx)
      phi.phi[static_cast<std::size_t>(idx)] = (idx & 0b1000) ? g1 : g0;
    double lhs = pressure_4local_2inB(s23, phi, cfg).value;
    double rhs = pressure_one_hereditary(rat(1, 3), potential1{g0, g1}).value;
    if (std::abs(lhs - rhs) > 1e-10)
      r.check(false, "x0-only potential mismatch at i=" + std::to_string(i));
  }
  r.note("10 random 4-local potentials at n = 20; 10 x0-only potentials");
  finish(r, sw, 0.0);
  return r;
}

// 10. Correction-term asymptotics along growing coprime prime pairs, with
// the reciprocal-sum bracket on every instance.
inline suite_result tempo_family(const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"tempo_family"};
  potential2 generic;
  generic.phi[0][0] = 0.35;
  generic.phi[0][1] = -0.2;
  generic.phi[1][0] = 0.15;
  generic.phi[1][1] = 0.4;
  const std::vector<modulus_set> family = {
      set_of({101, 103}), set_of({307, 311}), set_of({1009, 1013}),
      set_of({3163, 3167}), set_of({9967, 9973})};
  const double upper_c = 1.3863;
  double running_max = 0.0;
  double max_ratio = 0.0;
  std::size_t idx = 0;
  for (const auto& s : family) {
    tempo_record rec = tempo_correction(s, generic, 1.0, cfg);
    max_ratio = std::max(max_ratio, rec.ratio);
    if (idx >= 1 && running_max > 0.0)
      r.check(rec.ratio <= 1.1 * running_max,
              "ratio grew past 10% at instance " + std::to_string(idx));
    running_max = std::max(running_max, rec.ratio);
    rational gap = rational(1) - rec.density;
    r.check(rec.density >= rat(1, 2), "density >= 1/2");
    r.check(gap <= rec.reciprocal, "1 - d <= S exactly");
    double gap_f = gap.to_double();
    r.check(rec.reciprocal.to_double() <=
                upper_c * gap_f + 1e-12 * std::max(1.0, gap_f),
            "S <= 1.3863 (1-d)");
    ++idx;
  }
  r.note("max ratio |T|/(1-d) = " + std::to_string(max_ratio));
  finish(r, sw, 0.0);
  return r;
}

// 11. Hereditary enumeration is closed under flipping a 1 to 0.
inline suite_result heredity_property(const run_config& cfg = {}) {
  using namespace detail;
  stopwatch sw;
  suite_result r{"heredity_property"};
  for (auto s : {set_of({2}), set_of({2, 3})}) {
    for (int n = 1; n <= 14; ++n) {
      auto blocks = enumerate_blocks(language_spec::hereditary(s, n), cfg);
      std::unordered_set<std::uint64_t> index(blocks.begin(), blocks.end());
      for (auto b : blocks) {
        for (int j = 0; j < n; ++j) {
          std::uint64_t bit = 1ULL << (n - 1 - j);
          if ((b & bit) && !index.count(b & ~bit))
            r.check(false, "flip escaped the language at n=" + std::to_string(n));
        }
      }
    }
  }
  r.note("all blocks, n <= 14, sets {2} and {2,3}");
  finish(r, sw, 0.0);
  return r;
}

// 12. Gap-statistics normalization on random non-full-shift pairs.
inline suite_result gap_stats_normalization(std::uint64_t seed,
                                            const run_config& cfg = {}) {
  using namespace detail;
  (void)cfg;
  stopwatch sw;
  suite_result r{"gap_stats_normalization"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 200; ++i) {
    sandwich_pair pair = random_pair(rng, 200);
    gap_stats g = gap_stats_of(pair);
    rational total;
    for (auto& [key, m] : g.entries())
      total += rational(bigint(key.length - 1), bigint(1)) * m;
    if (total != rational(1))
      r.check(false, "normalization failed at pair " + std::to_string(i));
  }
  r.note("200 random periodic pairs, period <= 200");
  finish(r, sw, 0.0);
  return r;
}

inline std::vector<suite_result> run_all(std::uint64_t seed,
                                         const run_config& cfg = {}) {
  return {
      density_exactness(cfg),
      mirsky_consistency(cfg),
      transfer_identity(seed, cfg),
      entropy_reproduction(cfg),
      periodic_sandwich_agreement(seed, 50, 20, cfg),
      lin_chen_cross_check(seed, cfg),
      det_zero_reduction(seed, cfg),
      equilibrium_identity(seed, cfg),
      fourlocal_reduction(seed, cfg),
      tempo_family(cfg),
      heredity_property(cfg),
      gap_stats_normalization(seed, cfg),
  };
}

}  // namespace bfp::verify
