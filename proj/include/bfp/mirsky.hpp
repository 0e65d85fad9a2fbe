#pragma once

// Mirsky-measure cylinder probabilities: exact period counting for finite
// sets, product / inclusion-exclusion evaluation for pairwise-coprime sets
// (no period materialization), and truncation sweeps.

#include <cstdint>
#include <set>
#include <vector>

#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/rational.hpp"
#include "bfp/words.hpp"

namespace bfp {

// nu_eta(pattern) by counting matches along one period of eta.
inline rational mirsky_cylinder_exact(const modulus_set& set,
                                      const cylinder_pattern& pattern,
                                      const run_config& cfg = {}) {
  return cylinder_frequency(eta_word(set, cfg), pattern);
}

namespace detail {

// Distinct residues of the offsets modulo b. Offsets inside a window
// narrower than b are automatically distinct mod b.
inline std::uint64_t residue_count(const std::vector<std::int64_t>& offsets,
                                   const bigint& b) {
  if (offsets.empty()) return 0;
  auto bu = b.to_u64();
  std::int64_t span = offsets.back() - offsets.front();
  if (!bu || *bu > static_cast<std::uint64_t>(INT64_MAX) ||
      static_cast<std::int64_t>(*bu) > span)
    return offsets.size();
  std::int64_t bv = static_cast<std::int64_t>(*bu);
  std::set<std::int64_t> residues;
  for (std::int64_t t : offsets) {
    std::int64_t r = t % bv;
    if (r < 0) r += bv;
    residues.insert(r);
  }
  return residues.size();
}

}  // namespace detail

// nu_eta(all offsets in T carry symbol 1) for pairwise-coprime sets:
// prod over b of (b - |T mod b|) / b. Exact, period-free.
inline rational mirsky_ones_coprime(const modulus_set& set,
                                    const std::vector<std::int64_t>& offsets) {
  if (!is_pairwise_coprime(set))
    throw coprimality_required("the product formula needs pairwise-coprime moduli");
  std::vector<std::int64_t> sorted = offsets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  rational out(1);
  for (const bigint& b : set.moduli()) {
    std::uint64_t hit = detail::residue_count(sorted, b);
    out *= rational(b - bigint(static_cast<unsigned long long>(hit)), b);
    if (out.is_zero()) break;
  }
  return out;
}

// General pattern for pairwise-coprime sets: inclusion-exclusion over the
// zero-constrained offsets on top of the ones-only product formula.
inline rational mirsky_pattern_coprime(const modulus_set& set,
                                       const cylinder_pattern& pattern,
                                       const run_config& cfg = {}) {
  if (!is_pairwise_coprime(set))
    throw coprimality_required("the product formula needs pairwise-coprime moduli");
  std::vector<std::int64_t> ones, zeros;
  for (auto& [off, sym] : pattern.entries())
    (sym == 1 ? ones : zeros).push_back(off);
  if (static_cast<int>(zeros.size()) > cfg.subset_cap)
    throw subset_blowup("too many zero-constrained offsets for inclusion-exclusion");
  rational acc;
  std::uint64_t subsets = 1ULL << zeros.size();
  std::vector<std::int64_t> t;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    t = ones;
    for (std::size_t j = 0; j < zeros.size(); ++j)
      if (mask & (1ULL << j)) t.push_back(zeros[j]);
    rational term = mirsky_ones_coprime(set, t);
    if (__builtin_popcountll(mask) % 2)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

// nu_eta(0 1...1 0) with len - 2 ones: the run frequencies feeding the
// hereditary pressure formula and the correction-term analysis. Uses exact
// counting when the period fits, the coprime route otherwise; internal
// callers may pass runs wider than the user-facing pattern cap.
inline rational mirsky_zero_run(const modulus_set& set, std::int64_t len,
                                const run_config& cfg = {}) {
  if (len < 2) throw invalid_argument_error("zero runs have length >= 2");
  bool exact_fits = true;
  if (!set.empty()) {
    bigint l = 1;
    const bigint cap(static_cast<long long>(cfg.lcm_cap));
    for (const bigint& b : set.moduli()) {
      l = bigint::lcm(l, b);
      if (l > cap) {
        exact_fits = false;
        break;
      }
    }
  }
  if (exact_fits)
    return mirsky_cylinder_exact(set, cylinder_pattern::zero_run(len), cfg);
  if (!is_pairwise_coprime(set))
    throw period_overflow(
        "period exceeds cap and the set is not pairwise coprime");
  // Inclusion-exclusion over the two zero ends; every one-set involved is a
  // contiguous interval, whose residue count mod b is min(interval, b).
  auto interval_term = [&](std::int64_t interval) {
    rational out(1);
    for (const bigint& b : set.moduli()) {
      bigint hit = b < bigint(interval) ? b : bigint(interval);
      out *= rational(b - hit, b);
      if (out.is_zero()) break;
    }
    return out;
  };
  return interval_term(len - 2) - interval_term(len - 1) * rational(2) +
         interval_term(len);
}

// All zero-run masses nu(0 1...1 0) for run lengths 2 .. min(B)+1 in one
// pass: a single walk over the zeros of eta when the period fits, the
// per-length coprime formula otherwise.
inline std::map<std::int64_t, rational> zero_run_spectrum(
    const modulus_set& set, const run_config& cfg = {}) {
  std::map<std::int64_t, rational> out;
  if (set.empty()) return out;
  bool exact_fits = true;
  {
    bigint l = 1;
    const bigint cap(static_cast<long long>(cfg.lcm_cap));
    for (const bigint& b : set.moduli()) {
      l = bigint::lcm(l, b);
      if (l > cap) {
        exact_fits = false;
        break;
      }
    }
  }
  if (exact_fits) {
    periodic_word eta = eta_word(set, cfg);
    std::size_t s = eta.period();
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < s; ++i)
      if (eta.at(static_cast<std::int64_t>(i)) == 0) zeros.push_back(i);
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      std::size_t next = j + 1 < zeros.size() ? zeros[j + 1] : zeros[0] + s;
      ++counts[static_cast<std::int64_t>(next - zeros[j] + 1)];
    }
    for (auto& [len, c] : counts)
      out.emplace(len, rational(bigint(static_cast<unsigned long long>(c)),
                                bigint(static_cast<unsigned long long>(s))));
    return out;
  }
  if (!is_pairwise_coprime(set))
    throw period_overflow(
        "period exceeds cap and the set is not pairwise coprime");
  std::uint64_t minb = *set.min().to_u64();
  for (std::int64_t len = 2; len <= static_cast<std::int64_t>(minb) + 1; ++len) {
    rational v = mirsky_zero_run(set, len, cfg);
    if (!v.is_zero()) out.emplace(len, v);
  }
  return out;
}

struct mirsky_sweep_result {
  std::vector<sweep_point> points;
  rational range;  // max - min over the sweep, a convergence diagnostic
};

// nu_{eta_K}(pattern) for each truncation point, exact.
inline mirsky_sweep_result mirsky_sweep(const modulus_set& set,
                                        const cylinder_pattern& pattern,
                                        const std::vector<bigint>& cutoffs,
                                        const run_config& cfg = {}) {
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (!(cutoffs[i - 1] < cutoffs[i]))
      throw invalid_argument_error("sweep cutoffs must be increasing");
  mirsky_sweep_result out;
  bool first = true;
  rational lo, hi;
  for (const bigint& k : cutoffs) {
    modulus_set trunc = truncate(set, k);
    rational v = is_pairwise_coprime(trunc)
                     ? mirsky_pattern_coprime(trunc, pattern, cfg)
                     : mirsky_cylinder_exact(trunc, pattern, cfg);
    if (first || v < lo) lo = v;
    if (first || v > hi) hi = v;
    first = false;
    out.points.push_back({k, v});
  }
  out.range = out.points.empty() ? rational(0) : hi - lo;
  return out;
}

}  // namespace bfp
