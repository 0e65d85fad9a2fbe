#pragma once

// Exact arithmetic over sets of multiples: primitivization, truncation,
// densities by inclusion-exclusion (with a residue-counting fallback),
// reciprocal sums and the pairwise-coprimality predicate.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfp/bigint.hpp"
#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/rational.hpp"

namespace bfp {

// A finite set of moduli, strictly increasing, every element >= 2. Sets
// containing 1 are rejected outright: the corresponding free set is empty
// and degenerates every downstream quantity. The empty set is allowed and
// means "no forbidden residues" (free set = Z, density 1).
class modulus_set {
public:
  modulus_set() = default;

  explicit modulus_set(std::vector<bigint> moduli) : moduli_(std::move(moduli)) {
    std::sort(moduli_.begin(), moduli_.end());
    moduli_.erase(std::unique(moduli_.begin(), moduli_.end()), moduli_.end());
    for (const bigint& b : moduli_) {
      if (b == bigint(1))
        throw degenerate_set("modulus 1 makes the free set empty");
      if (b < bigint(2))
        throw invalid_argument_error("moduli must be integers >= 2, got " +
                                     b.to_string());
    }
  }

  static modulus_set parse(std::string_view csv) {
    std::vector<bigint> ms;
    std::size_t pos = 0;
    while (pos <= csv.size() && !csv.empty()) {
      std::size_t comma = csv.find(',', pos);
      std::string_view tok = comma == std::string_view::npos
                                 ? csv.substr(pos)
                                 : csv.substr(pos, comma - pos);
      if (tok.empty())
        throw invalid_argument_error("empty entry in modulus list");
      ms.push_back(bigint::from_string(tok));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return modulus_set(std::move(ms));
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
      if (i) out += ",";
      out += moduli_[i].to_string();
    }
    return out;
  }

  const std::vector<bigint>& moduli() const noexcept { return moduli_; }
  bool empty() const noexcept { return moduli_.empty(); }
  std::size_t size() const noexcept { return moduli_.size(); }

  const bigint& min() const {
    if (empty()) throw invalid_argument_error("min of empty modulus set");
    return moduli_.front();
  }

  bool contains(const bigint& b) const {
    return std::binary_search(moduli_.begin(), moduli_.end(), b);
  }

  modulus_set without(const bigint& b) const {
    std::vector<bigint> ms;
    for (const bigint& m : moduli_)
      if (m != b) ms.push_back(m);
    return modulus_set(std::move(ms));
  }

private:
  std::vector<bigint> moduli_;
};

// Removes every member divisible by a smaller one; the set of multiples is
// unchanged.
inline modulus_set primitive_reduce(const modulus_set& set) {
  std::vector<bigint> kept;
  for (const bigint& b : set.moduli()) {
    bool divisible = false;
    for (const bigint& k : kept) {
      if ((b % k).is_zero()) {
        divisible = true;
        break;
      }
    }
    if (!divisible) kept.push_back(b);
  }
  return modulus_set(std::move(kept));
}

inline modulus_set truncate(const modulus_set& set, const bigint& cutoff) {
  if (cutoff < bigint(2))
    throw invalid_argument_error("truncation point must be >= 2");
  std::vector<bigint> ms;
  for (const bigint& b : set.moduli())
    if (b < cutoff) ms.push_back(b);
  return modulus_set(std::move(ms));
}

inline bigint lcm_of(const modulus_set& set, const run_config& cfg = {}) {
  if (set.empty())
    throw invalid_argument_error("lcm of empty modulus set");
  bigint acc = 1;
  const bigint cap(static_cast<long long>(cfg.lcm_cap));
  for (const bigint& b : set.moduli()) {
    acc = bigint::lcm(acc, b);
    if (acc > cap)
      throw period_overflow("lcm exceeds cap " + cap.to_string());
  }
  return acc;
}

inline bool is_pairwise_coprime(const modulus_set& set) {
  const auto& ms = set.moduli();
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      if (bigint::gcd(ms[i], ms[j]) != bigint(1)) return false;
  return true;
}

inline rational reciprocal_sum(const modulus_set& set) {
  rational s;
  for (const bigint& b : set.moduli()) s += rational(bigint(1), b);
  return s;
}

namespace detail {

// Inclusion-exclusion over nonempty subsets: sum (-1)^{|S|+1} / lcm(S).
// Depth-first with a running lcm so no subset table is materialized.
inline rational density_by_subsets(const modulus_set& set) {
  rational acc;
  const auto& ms = set.moduli();
  // Iterative DFS over (next index, running lcm, sign).
  struct frame {
    std::size_t next;
    bigint l;
    int sign;
  };
  std::vector<frame> stack;
  for (std::size_t i = 0; i < ms.size(); ++i)
    stack.push_back({i, bigint(1), +1});
  while (!stack.empty()) {
    frame f = std::move(stack.back());
    stack.pop_back();
    bigint l = bigint::lcm(f.l, ms[f.next]);
    rational term(bigint(f.sign), l);
    acc += term;
    for (std::size_t j = f.next + 1; j < ms.size(); ++j)
      stack.push_back({j, l, -f.sign});
  }
  return acc;
}

// Counts residues r mod lcm hit by some modulus; exact and O(lcm log).
inline rational density_by_residues(const modulus_set& set,
                                    const run_config& cfg) {
  bigint l = lcm_of(set, cfg);
  auto lu = l.to_u64();
  std::uint64_t s = *lu;  // lcm_of enforced the cap already
  std::vector<std::uint8_t> hit(s, 0);
  for (const bigint& b : set.moduli()) {
    std::uint64_t bv = *b.to_u64();
    for (std::uint64_t m = 0; m < s; m += bv) hit[m] = 1;
  }
  std::uint64_t count = 0;
  for (std::uint8_t h : hit) count += h;
  return rational(bigint(static_cast<unsigned long long>(count)),
                  bigint(static_cast<unsigned long long>(s)));
}

}  // namespace detail

// Natural density of the set of multiples, exact. Inclusion-exclusion when
// the set is small enough, residue counting otherwise.
inline rational multiples_density(const modulus_set& set,
                                  const run_config& cfg = {}) {
  if (set.empty()) return rational(0);
  if (static_cast<int>(set.size()) <= cfg.subset_cap)
    return detail::density_by_subsets(set);
  bigint l = 1;
  const bigint cap(static_cast<long long>(cfg.lcm_cap));
  for (const bigint& b : set.moduli()) {
    l = bigint::lcm(l, b);
    if (l > cap)
      throw subset_blowup(
          "set too large for inclusion-exclusion and lcm exceeds cap");
  }
  return detail::density_by_residues(set, cfg);
}

// Density of the free integers. For pairwise-coprime sets the product form
// prod (1 - 1/b) is evaluated as well and must agree exactly.
inline rational bfree_density(const modulus_set& set,
                              const run_config& cfg = {}) {
  rational d = rational(1) - multiples_density(set, cfg);
  if (is_pairwise_coprime(set)) {
    rational prod(1);
    for (const bigint& b : set.moduli())
      prod *= rational(b - bigint(1), b);
    if (prod != d)
      throw error("InternalCheck",
                  "coprime product density disagrees with inclusion-exclusion");
  }
  return d;
}

struct sweep_point {
  bigint cutoff;
  rational value;
};

// Free density of each truncation; nonincreasing in the cutoff.
inline std::vector<sweep_point> density_sweep(const modulus_set& set,
                                              const std::vector<bigint>& cutoffs,
                                              const run_config& cfg = {}) {
  for (std::size_t i = 1; i < cutoffs.size(); ++i)
    if (!(cutoffs[i - 1] < cutoffs[i]))
      throw invalid_argument_error("sweep cutoffs must be increasing");
  std::vector<sweep_point> out;
  out.reserve(cutoffs.size());
  for (const bigint& k : cutoffs)
    out.push_back({k, bfree_density(truncate(set, k), cfg)});
  return out;
}

}  // namespace bfp
