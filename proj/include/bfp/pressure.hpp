#pragma once

// Closed-form topological pressure, entropy and equilibrium-state data for
// hereditary B-free subshifts, periodic sandwich subshifts and the full
// shift, plus the correction-term asymptotics for coprime families.
//
// Everything is reported in bits per symbol (base-2 logs against the 2^phi
// block weights; the full shift at phi = 0 has pressure exactly 1).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/mirsky.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/rational.hpp"
#include "bfp/transfer.hpp"
#include "bfp/words.hpp"

namespace bfp {

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Leading eigenvalue term, the C-coefficient term, and the decaying
// correction; they sum to the pressure value.
struct decomposition {
  double leading = 0.0;
  double c_term = 0.0;
  double correction = 0.0;
};

enum class subshift_kind { hereditary, sandwich };

inline const char* to_string(subshift_kind k) {
  return k == subshift_kind::hereditary ? "hereditary" : "sandwich";
}

struct equilibrium_descriptor {
  double p = 0.5;  // probability of symbol 0 under the Bernoulli factor
  subshift_kind kind = subshift_kind::hereditary;
  std::string base;  // human-readable reference to the base data
};

struct pressure_report {
  double value = 0.0;
  std::string method;
  std::optional<decomposition> decomp;
  std::optional<equilibrium_descriptor> equilibrium;
  std::string inputs_digest;
};

namespace detail {

inline double bernoulli_zero_mass(double phi0, double phi1) {
  double q = std::exp2(phi0) + std::exp2(phi1);
  return std::exp2(phi0) / q;
}

inline std::string phi2_digest(const potential2& phi) {
  std::string out = "phi=";
  const char* keys[4] = {"00", "01", "10", "11"};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out += keys[a * 2 + b];
      out += ":" + std::to_string(phi.at(a, b));
      if (a * 2 + b < 3) out += ",";
    }
  return out;
}

}  // namespace detail

// Full shift: pressure is the log of the dominant eigenvalue.
inline pressure_report pressure_full_shift(const potential2& phi) {
  auto t = build_transfer(phi);
  pressure_report r;
  r.value = std::log2(t.lambda_plus);
  r.method = "full_shift";
  r.decomp = decomposition{r.value, 0.0, 0.0};
  r.inputs_digest = detail::phi2_digest(phi);
  return r;
}

// Hereditary subshift over a zero-entropy base with 1-cylinder mass nu1 and
// a single-coordinate potential.
inline pressure_report pressure_one_hereditary(const rational& nu1,
                                               const potential1& phi) {
  if (nu1 < rational(0) || nu1 > rational(1))
    throw invalid_argument_error("nu(1) must lie in [0,1]");
  double d = nu1.to_double();
  double q = std::exp2(phi.phi0) + std::exp2(phi.phi1);
  pressure_report r;
  r.value = (1.0 - d) * phi.phi0 + d * std::log2(q);
  r.method = "one_local_hereditary";
  r.equilibrium = equilibrium_descriptor{
      detail::bernoulli_zero_mass(phi.phi0, phi.phi1),
      subshift_kind::hereditary, "nu1=" + nu1.to_string()};
  r.inputs_digest = "nu1=" + nu1.to_string() + ";phi=0:" +
                    std::to_string(phi.phi0) + ",1:" + std::to_string(phi.phi1);
  return r;
}

// Sandwich subshift over a zero-entropy pair base with diagonal masses
// rho(0,0), rho(1,1) and off-diagonal mass rho(0,1); the joining lives
// above the diagonal so rho(1,0) = 0.
inline pressure_report pressure_one_sandwich(const rational& rho00,
                                             const rational& rho11,
                                             const rational& rho01,
                                             const potential1& phi) {
  for (const rational* r : {&rho00, &rho11, &rho01})
    if (r->is_negative())
      throw simplex_violation("pair-cylinder masses must be nonnegative");
  if (rho00 + rho11 + rho01 != rational(1))
    throw simplex_violation("pair-cylinder masses must sum to 1");
  double q = std::exp2(phi.phi0) + std::exp2(phi.phi1);
  pressure_report r;
  r.value = rho00.to_double() * phi.phi0 + rho11.to_double() * phi.phi1 +
            rho01.to_double() * std::log2(q);
  r.method = "one_local_sandwich";
  r.equilibrium = equilibrium_descriptor{
      detail::bernoulli_zero_mass(phi.phi0, phi.phi1), subshift_kind::sandwich,
      "rho=" + rho00.to_string() + "," + rho11.to_string() + "," +
          rho01.to_string()};
  r.inputs_digest = r.equilibrium->base;
  return r;
}

// Topological entropy: the 1-cylinder mass of the base (hereditary) or the
// off-diagonal mass of the pair base (sandwich), exact.
inline rational entropy_value(subshift_kind kind, const rational& mass) {
  if (mass < rational(0) || mass > rational(1))
    throw invalid_argument_error(std::string("entropy mass for ") +
                                 to_string(kind) + " must lie in [0,1]");
  return mass;
}

inline rational entropy_hereditary(const modulus_set& set,
                                   const run_config& cfg = {}) {
  return entropy_value(subshift_kind::hereditary, bfree_density(set, cfg));
}

inline rational entropy_sandwich(const sandwich_pair& pair) {
  // rho(0,1) = frequency of free positions.
  std::size_t s = pair.period();
  std::uint64_t free_count = s - pair.fixed_positions().size();
  return entropy_value(
      subshift_kind::sandwich,
      rational(bigint(static_cast<unsigned long long>(free_count)),
               bigint(static_cast<unsigned long long>(s))));
}

// Pressure from gap statistics: sum of m * log2 Z over the gap spectrum,
// decomposed into log2 lambda+ plus the C-term plus the decaying
// correction. Each correction entry is evaluated as
// log2 Z - (len-1) log2 lambda+ - log2 C+, which stays finite for any sign
// of the subdominant eigenvalue.
inline pressure_report pressure_from_gap_stats(const gap_stats& stats,
                                               const potential2& phi) {
  auto t = build_transfer(phi);
  double log_lambda = std::log2(t.lambda_plus);
  pressure_report r;
  r.method = "gap_stats";
  r.inputs_digest = detail::phi2_digest(phi);
  if (stats.is_full_shift()) {
    r.value = log_lambda;
    r.decomp = decomposition{log_lambda, 0.0, 0.0};
    return r;
  }
  double value = 0.0, c_term = 0.0, correction = 0.0;
  for (const auto& [key, m] : stats.entries()) {
    double mf = m.to_double();
    double log_z = t.log2_z(key.from_symbol, key.to_symbol, key.length);
    double log_c = std::log2(t.c_plus[key.from_symbol][key.to_symbol]);
    value += mf * log_z;
    c_term += mf * log_c;
    correction +=
        mf * (log_z - static_cast<double>(key.length - 1) * log_lambda - log_c);
  }
  r.value = value;
  r.decomp = decomposition{log_lambda, c_term, correction};
  return r;
}

// Pressure of the subshift sandwiched between two periodic words.
inline pressure_report pressure_periodic_sandwich(const sandwich_pair& pair,
                                                  const potential2& phi) {
  pressure_report r = pressure_from_gap_stats(gap_stats_of(pair), phi);
  r.method = "periodic_sandwich";
  r.inputs_digest = "w=" + pair.lower().to_string() +
                    ";x=" + pair.upper().to_string() + ";" + r.inputs_digest;
  return r;
}

namespace detail {

// Gap statistics of the hereditary pair (0, eta): the zero-run frequencies
// nu(0 1...1 0) for run lengths 2 .. min(B)+1, computed without
// materializing the period when the set is pairwise coprime.
inline gap_stats hereditary_gap_stats(const modulus_set& set,
                                      const run_config& cfg) {
  std::map<gap_key, rational> m;
  for (auto& [len, v] : zero_run_spectrum(set, cfg))
    m.emplace(gap_key{0, 0, len}, v);
  return gap_stats(std::move(m));
}

}  // namespace detail

// Hereditary B-free pressure for a finite modulus set and a two-coordinate
// potential. The empty set is the full shift.
inline pressure_report pressure_bfree_hereditary(const modulus_set& set,
                                                 const potential2& phi,
                                                 const run_config& cfg = {}) {
  pressure_report r;
  if (set.empty()) {
    r = pressure_full_shift(phi);
  } else {
    r = pressure_from_gap_stats(detail::hereditary_gap_stats(set, cfg), phi);
  }
  r.method = "bfree_hereditary";
  r.inputs_digest = "set=" + set.to_string() + ";" + detail::phi2_digest(phi);
  return r;
}

// Closed form for sets containing 2 and potentials of the form
// a00 1_{00} + a01 1_{01} + a1 1_{x0=1}.
inline pressure_report lin_chen_2inB(const modulus_set& set, double a00,
                                     double a01, double a1,
                                     const run_config& cfg = {}) {
  if (!set.contains(bigint(2)))
    throw requires_two("the closed form needs 2 in the modulus set");
  rational d = bfree_density(set, cfg);
  double df = d.to_double();
  pressure_report r;
  r.value = a00 * (1.0 - 2.0 * df) +
            df * std::log2(std::exp2(a1 + a01) + std::exp2(2.0 * a00));
  r.method = "lin_chen";
  r.inputs_digest = "set=" + set.to_string() + ";a00=" + std::to_string(a00) +
                    ";a01=" + std::to_string(a01) + ";a1=" + std::to_string(a1);
  return r;
}

// 4-local potential over a set containing 2: halve the pressure of the
// odd-coordinate system over the set without 2, with the reduced 2-local
// potential.
inline pressure_report pressure_4local_2inB(const modulus_set& set,
                                            const potential4& phi,
                                            const run_config& cfg = {}) {
  if (!set.contains(bigint(2)))
    throw requires_two("the reduction needs 2 in the modulus set");
  potential2 psi = reduce_4local(phi);
  modulus_set inner = set.without(bigint(2));
  pressure_report base = inner.empty()
                             ? pressure_full_shift(psi)
                             : pressure_bfree_hereditary(inner, psi, cfg);
  pressure_report r;
  r.value = base.value / 2.0;
  r.method = "fourlocal_2inB";
  if (base.decomp)
    r.decomp = decomposition{base.decomp->leading / 2.0,
                             base.decomp->c_term / 2.0,
                             base.decomp->correction / 2.0};
  r.inputs_digest = "set=" + set.to_string() + ";4local";
  return r;
}

// Cylinder mass of the equilibrium state: the base word's window must carry
// a 1 wherever the pattern demands one, and every surviving 1 of the window
// is thinned by the Bernoulli factor (kept with probability 1-p).
inline double equilibrium_cylinder(const periodic_word& word, double p,
                                   const cylinder_pattern& pattern,
                                   const run_config& cfg = {}) {
  if (!(p > 0.0 && p < 1.0))
    throw invalid_argument_error("Bernoulli parameter must lie in (0,1)");
  if (pattern.width() > cfg.pattern_width_cap)
    throw pattern_too_wide("pattern width exceeds cap");
  std::size_t s = word.period();
  double total = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    double factor = 1.0;
    for (auto& [off, sym] : pattern.entries()) {
      int w = word.at(static_cast<std::int64_t>(i) + off);
      if (w == 0) {
        if (sym == 1) {
          factor = 0.0;
          break;
        }
      } else {
        factor *= sym == 1 ? 1.0 - p : p;
      }
    }
    total += factor;
  }
  return total / static_cast<double>(s);
}

// Residual of the variational identity d H2(p) + int phi dmu - P at the
// equilibrium state; zero up to rounding.
inline double equilibrium_identity_residual(const modulus_set& set,
                                            const potential1& phi,
                                            const run_config& cfg = {}) {
  rational d = bfree_density(set, cfg);
  pressure_report rep = pressure_one_hereditary(d, phi);
  double p = rep.equilibrium->p;
  periodic_word eta = eta_word(set, cfg);
  double mu1 = equilibrium_cylinder(eta, p, cylinder_pattern::single(0, 1), cfg);
  double mu0 = equilibrium_cylinder(eta, p, cylinder_pattern::single(0, 0), cfg);
  double integral = mu0 * phi.phi0 + mu1 * phi.phi1;
  return std::abs(d.to_double() * binary_entropy(p) + integral - rep.value);
}

struct tempo_record {
  rational reciprocal;  // S
  rational density;     // d, the free density
  double correction;    // T, the decaying term of the pressure formula
  double ratio;         // |T| / (1-d)^epsilon
};

// Correction-term analysis across coprime sets: T collects the decaying
// part of the hereditary pressure formula; the ratio against (1-d)^epsilon
// quantifies how fast the subshift approaches the full shift.
inline tempo_record tempo_correction(const modulus_set& set,
                                     const potential2& phi, double epsilon,
                                     const run_config& cfg = {}) {
  if (!is_pairwise_coprime(set))
    throw coprimality_required("correction asymptotics need coprime sets");
  if (!(epsilon > 0.0 && epsilon < 2.0))
    throw invalid_argument_error("epsilon must lie in (0,2)");
  tempo_record rec;
  rec.reciprocal = reciprocal_sum(set);
  rec.density = bfree_density(set, cfg);
  if (set.empty()) {
    rec.correction = 0.0;
    rec.ratio = 0.0;
    return rec;
  }
  auto t = build_transfer(phi);
  double log_lambda = std::log2(t.lambda_plus);
  double log_c = std::log2(t.c_plus[0][0]);
  double total = 0.0;
  for (auto& [len, mass] : zero_run_spectrum(set, cfg)) {
    double entry = t.log2_z(0, 0, len) -
                   static_cast<double>(len - 1) * log_lambda - log_c;
    total += mass.to_double() * entry;
  }
  rec.correction = total;
  double gap = 1.0 - rec.density.to_double();
  rec.ratio = gap <= 0.0 ? 0.0 : std::abs(total) / std::pow(gap, epsilon);
  return rec;
}

}  // namespace bfp
