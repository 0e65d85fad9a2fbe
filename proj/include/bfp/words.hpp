#pragma once

// Periodic 0-1 words, the characteristic word of the free integers for a
// finite modulus set, sandwich pairs with their fixed-position structure,
// gap statistics and exact cylinder frequencies.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfp/config.hpp"
#include "bfp/errors.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/rational.hpp"

namespace bfp {

// A bi-infinite 0-1 sequence given by one period. The stored period need
// not be minimal; lcm lifts are cheaper without re-canonicalization and
// minimal_period is a separate query.
class periodic_word {
public:
  explicit periodic_word(std::vector<std::uint8_t> bits)
      : bits_(std::move(bits)) {
    if (bits_.empty())
      throw invalid_argument_error("periodic word needs period >= 1");
    for (auto b : bits_)
      if (b > 1) throw invalid_argument_error("word symbols must be 0 or 1");
  }

  static periodic_word parse(std::string_view s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1')
        throw invalid_argument_error(std::string("bad symbol '") + c +
                                     "' in word");
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return periodic_word(std::move(bits));
  }

  static periodic_word zeros() { return periodic_word({0}); }
  static periodic_word ones() { return periodic_word({1}); }

  std::size_t period() const noexcept { return bits_.size(); }

  int at(std::int64_t i) const noexcept {
    std::int64_t s = static_cast<std::int64_t>(bits_.size());
    std::int64_t r = i % s;
    if (r < 0) r += s;
    return bits_[static_cast<std::size_t>(r)];
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s += static_cast<char>('0' + b);
    return s;
  }

  friend bool operator==(const periodic_word& a, const periodic_word& b) {
    return a.bits_ == b.bits_;
  }

private:
  std::vector<std::uint8_t> bits_;
};

// Characteristic word of the free integers: bit i is 1 iff no modulus
// divides i. Period lcm of the set.
inline periodic_word eta_word(const modulus_set& set, const run_config& cfg = {}) {
  if (set.empty()) return periodic_word::ones();
  bigint l = lcm_of(set, cfg);
  std::uint64_t s = *l.to_u64();
  std::vector<std::uint8_t> bits(s, 1);
  for (const bigint& b : set.moduli()) {
    std::uint64_t bv = *b.to_u64();
    for (std::uint64_t m = 0; m < s; m += bv) bits[m] = 0;
  }
  return periodic_word(std::move(bits));
}

// Segment [lo, hi) of the characteristic word by per-modulus sieving; the
// period is never materialized, so this works past the lcm cap.
inline std::vector<std::uint8_t> eta_stream(const modulus_set& set,
                                            std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw invalid_argument_error("eta_stream needs lo <= hi");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(hi - lo), 1);
  if (out.empty()) return out;
  for (const bigint& b : set.moduli()) {
    auto bu = b.to_u64();
    if (bu && *bu <= static_cast<std::uint64_t>(INT64_MAX)) {
      std::int64_t bv = static_cast<std::int64_t>(*bu);
      std::int64_t first = lo % bv == 0 ? lo : (lo >= 0 ? (lo / bv + 1) * bv
                                                        : -((-lo) / bv) * bv);
      for (std::int64_t m = first; m < hi; m += bv)
        out[static_cast<std::size_t>(m - lo)] = 0;
    } else {
      // Modulus beyond the window magnitude can hit at most 0 inside it.
      for (std::int64_t i = lo; i < hi; ++i)
        if (i == 0) out[static_cast<std::size_t>(i - lo)] = 0;
    }
  }
  return out;
}

// Smallest divisor t of the stored period with bits[i] = bits[i mod t].
inline std::size_t minimal_period(const periodic_word& w) {
  std::size_t s = w.period();
  for (std::size_t t = 1; t <= s; ++t) {
    if (s % t) continue;
    bool ok = true;
    for (std::size_t i = t; i < s && ok; ++i)
      ok = w.at(static_cast<std::int64_t>(i)) ==
           w.at(static_cast<std::int64_t>(i % t));
    if (ok) return t;
  }
  return s;
}

struct fixed_position {
  std::size_t index;
  int symbol;

  friend bool operator==(const fixed_position&, const fixed_position&) = default;
};

// A pair of periodic words w <= x lifted to a common period, with the
// positions where they agree (and hence pin the symbol) precomputed.
class sandwich_pair {
public:
  sandwich_pair(const periodic_word& w, const periodic_word& x)
      : lower_(lift(w, common_period(w, x))),
        upper_(lift(x, common_period(w, x))) {
    std::size_t s = lower_.period();
    for (std::size_t i = 0; i < s; ++i) {
      int wi = lower_.at(static_cast<std::int64_t>(i));
      int xi = upper_.at(static_cast<std::int64_t>(i));
      if (wi > xi) throw order_violation(i);
      if (wi == xi) fixed_.push_back({i, wi});
    }
  }

  const periodic_word& lower() const noexcept { return lower_; }
  const periodic_word& upper() const noexcept { return upper_; }
  std::size_t period() const noexcept { return lower_.period(); }
  const std::vector<fixed_position>& fixed_positions() const noexcept {
    return fixed_;
  }
  bool is_full_shift() const noexcept { return fixed_.empty(); }

  bool position_is_fixed(std::int64_t i) const noexcept {
    return lower_.at(i) == upper_.at(i);
  }

private:
  periodic_word lower_;
  periodic_word upper_;
  std::vector<fixed_position> fixed_;

  static std::size_t common_period(const periodic_word& a,
                                   const periodic_word& b) {
    bigint l = bigint::lcm(bigint(static_cast<long long>(a.period())),
                           bigint(static_cast<long long>(b.period())));
    return static_cast<std::size_t>(*l.to_u64());
  }

  static periodic_word lift(const periodic_word& w, std::size_t s) {
    std::vector<std::uint8_t> bits(s);
    for (std::size_t i = 0; i < s; ++i)
      bits[i] = static_cast<std::uint8_t>(w.at(static_cast<std::int64_t>(i)));
    return periodic_word(std::move(bits));
  }
};

// Finite set of (offset -> required symbol) constraints.
class cylinder_pattern {
public:
  explicit cylinder_pattern(std::map<std::int64_t, int> entries,
                            int width_cap = run_config{}.pattern_width_cap)
      : entries_(std::move(entries)) {
    if (entries_.empty())
      throw invalid_argument_error("cylinder pattern must be nonempty");
    for (auto& [off, sym] : entries_)
      if (sym != 0 && sym != 1)
        throw invalid_argument_error("pattern symbols must be 0 or 1");
    if (width() > width_cap)
      throw pattern_too_wide("pattern width " + std::to_string(width()) +
                             " exceeds cap " + std::to_string(width_cap));
  }

  // Parses "offset:symbol" comma lists, e.g. "0:1,4:0".
  static cylinder_pattern parse(std::string_view s,
                                int width_cap = run_config{}.pattern_width_cap) {
    std::map<std::int64_t, int> entries;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string_view tok = comma == std::string_view::npos
                                 ? s.substr(pos)
                                 : s.substr(pos, comma - pos);
      std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw invalid_argument_error("pattern entries look like offset:symbol");
      bigint off = bigint::from_string(tok.substr(0, colon));
      bigint sym = bigint::from_string(tok.substr(colon + 1));
      auto off64 = off.is_negative()
                       ? std::optional<std::uint64_t>{}
                       : off.to_u64();
      std::int64_t o;
      if (off.is_negative()) {
        o = -static_cast<std::int64_t>(*(-off).to_u64());
      } else if (off64 && *off64 <= static_cast<std::uint64_t>(INT64_MAX)) {
        o = static_cast<std::int64_t>(*off64);
      } else {
        throw invalid_argument_error("pattern offset out of range");
      }
      if (entries.count(o))
        throw invalid_argument_error("duplicate pattern offset " +
                                     std::to_string(o));
      if (sym != bigint(0) && sym != bigint(1))
        throw invalid_argument_error("pattern symbols must be 0 or 1");
      entries[o] = sym == bigint(1) ? 1 : 0;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return cylinder_pattern(std::move(entries), width_cap);
  }

  static cylinder_pattern single(std::int64_t offset, int symbol) {
    return cylinder_pattern(std::map<std::int64_t, int>{{offset, symbol}});
  }

  // The block 0 1...1 0 of total length len (len - 2 ones), at offset 0.
  static cylinder_pattern zero_run(std::int64_t len) {
    if (len < 2) throw invalid_argument_error("zero_run needs length >= 2");
    std::map<std::int64_t, int> entries;
    entries[0] = 0;
    for (std::int64_t j = 1; j < len - 1; ++j) entries[j] = 1;
    entries[len - 1] = 0;
    return cylinder_pattern(std::move(entries),
                            std::max<int>(run_config{}.pattern_width_cap,
                                          static_cast<int>(len)));
  }

  const std::map<std::int64_t, int>& entries() const noexcept {
    return entries_;
  }
  std::int64_t min_offset() const { return entries_.begin()->first; }
  std::int64_t max_offset() const { return entries_.rbegin()->first; }
  int width() const {
    return static_cast<int>(max_offset() - min_offset() + 1);
  }

  std::string to_string() const {
    std::string out;
    for (auto& [off, sym] : entries_) {
      if (!out.empty()) out += ",";
      out += std::to_string(off) + ":" + std::to_string(sym);
    }
    return out;
  }

private:
  std::map<std::int64_t, int> entries_;
};

// Frequency of the pattern along one period of the word, exact.
inline rational cylinder_frequency(const periodic_word& word,
                                   const cylinder_pattern& pattern) {
  std::size_t s = word.period();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < s; ++i) {
    bool match = true;
    for (auto& [off, sym] : pattern.entries()) {
      if (word.at(static_cast<std::int64_t>(i) + off) != sym) {
        match = false;
        break;
      }
    }
    count += match;
  }
  return rational(bigint(static_cast<unsigned long long>(count)),
                  bigint(static_cast<unsigned long long>(s)));
}

struct gap_key {
  int from_symbol;
  int to_symbol;
  std::int64_t length;  // block length of the gap, fixed ends included

  friend auto operator<=>(const gap_key&, const gap_key&) = default;
};

// Per-period frequencies of consecutive fixed positions at block distance
// `length` carrying the given symbols. Unless the pair is the full shift,
// sum (length - 1) * m over all entries is exactly 1.
class gap_stats {
public:
  static gap_stats full_shift() {
    gap_stats g;
    g.full_shift_ = true;
    return g;
  }

  explicit gap_stats(std::map<gap_key, rational> entries)
      : entries_(std::move(entries)) {
    rational total;
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (it->second.is_zero()) {
        it = entries_.erase(it);
        continue;
      }
      if (it->second.is_negative())
        throw invalid_argument_error("gap frequencies must be nonnegative");
      if (it->first.length < 2)
        throw invalid_argument_error("gap lengths start at 2");
      total += rational(bigint(it->first.length - 1), bigint(1)) * it->second;
      ++it;
    }
    if (total != rational(1))
      throw invalid_argument_error(
          "gap frequencies must satisfy sum (len-1) m = 1, got " +
          total.to_string());
  }

  bool is_full_shift() const noexcept { return full_shift_; }
  const std::map<gap_key, rational>& entries() const noexcept {
    return entries_;
  }

private:
  gap_stats() = default;
  std::map<gap_key, rational> entries_;
  bool full_shift_ = false;
};

// Gap statistics of a sandwich pair: walk consecutive fixed positions
// within one period, closing the wrap-around gap back to the first fixed
// position one period later.
inline gap_stats gap_stats_of(const sandwich_pair& pair) {
  const auto& fixed = pair.fixed_positions();
  if (fixed.empty()) return gap_stats::full_shift();
  std::size_t s = pair.period();
  std::size_t k = fixed.size();
  std::map<gap_key, std::uint64_t> counts;
  for (std::size_t j = 0; j < k; ++j) {
    std::int64_t cur = static_cast<std::int64_t>(fixed[j].index);
    std::int64_t next = j + 1 < k
                            ? static_cast<std::int64_t>(fixed[j + 1].index)
                            : static_cast<std::int64_t>(fixed[0].index + s);
    int to = j + 1 < k ? fixed[j + 1].symbol : fixed[0].symbol;
    gap_key key{fixed[j].symbol, to, next - cur + 1};
    ++counts[key];
  }
  std::map<gap_key, rational> m;
  for (auto& [key, c] : counts)
    m.emplace(key, rational(bigint(static_cast<unsigned long long>(c)),
                            bigint(static_cast<unsigned long long>(s))));
  return gap_stats(std::move(m));
}

}  // namespace bfp
