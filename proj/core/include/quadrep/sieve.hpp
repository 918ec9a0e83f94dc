#pragma once

// Segmented odd-only sieve of Eratosthenes plus the derived twin-prime index.
//
// A PrimeTable answers primality exactly for every m <= limit() and refuses
// anything above it. A TwinIndex follows the "either neighbour" definition:
// p is a twin prime when p is prime and p - 2 or p + 2 is prime, so both
// members of every pair are listed. Its coverage is limit - 2 because
// deciding p needs p + 2.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "quadrep/arithmetic.hpp"

namespace quadrep {

struct SieveOptions {
  u64 segment_size = u64{1} << 18;  // numbers per segment, rounded up to 128
  unsigned workers = 1;
  std::size_t memory_budget_bytes = std::size_t{6} << 30;
};

class PrimeTable {
 public:
  PrimeTable() = default;

  u64 limit() const noexcept { return limit_; }
  u64 segment_size() const noexcept { return segment_size_; }

  // Throws CoverageError when m > limit().
  bool is_prime(u64 m) const;
  // Caller guarantees m <= limit().
  bool test(u64 m) const noexcept {
    if ((m & 1) == 0) return m == 2;
    return (words_[m >> 7] >> ((m >> 1) & 63)) & 1;
  }

  // pi(x); throws CoverageError when x > limit().
  u64 count(u64 x) const;

  // Primes in [lo, hi], ascending; hi must be <= limit().
  std::vector<u64> primes(u64 lo, u64 hi) const;

  template <class F>
  void for_each_prime(u64 lo, u64 hi, F&& f) const;

  // Raw odd-only words: bit j of word w stands for 128 w + 2 j + 1.
  std::span<const u64> words() const noexcept { return words_; }

  friend bool operator==(const PrimeTable& a, const PrimeTable& b) noexcept {
    return a.limit_ == b.limit_ && a.words_ == b.words_;
  }

 private:
  friend PrimeTable build_prime_table(u64 limit, const SieveOptions& options);
  friend PrimeTable load_prime_table(const std::filesystem::path& path);

  void finish();  // trims bits above limit and builds the rank directory

  u64 limit_ = 0;
  u64 segment_size_ = 0;
  std::vector<u64> words_;
  std::vector<u64> block_rank_;  // odd primes in words [0, 8 b)
};

PrimeTable build_prime_table(u64 limit, const SieveOptions& options = {});

u64 prime_count(const PrimeTable& table, u64 x);

// Binary cache: "QRPTABLE" magic, u32 version, u32 reserved, u64 limit,
// u64 segment_size, u64 word count, packed words, then an FNV-1a 64
// checksum of everything before it. All integers little-endian.
void save_prime_table(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_prime_table(const std::filesystem::path& path);

class TwinIndex {
 public:
  TwinIndex() = default;

  u64 coverage() const noexcept { return coverage_; }
  std::span<const u64> values() const noexcept { return twins_; }
  std::size_t size() const noexcept { return twins_.size(); }

  // Throws CoverageError when p > coverage().
  bool contains(u64 p) const;
  // Caller guarantees p <= coverage().
  bool test(u64 p) const noexcept {
    if ((p & 1) == 0) return false;
    return (bits_[p >> 7] >> ((p >> 1) & 63)) & 1;
  }
  // Smallest twin prime >= m, or nullopt when none is known within coverage.
  std::optional<u64> successor(u64 m) const;
  // pi_2(x); throws CoverageError when x > coverage().
  u64 count(u64 x) const;

 private:
  friend TwinIndex build_twin_index(const PrimeTable& table);

  u64 coverage_ = 0;
  std::vector<u64> twins_;
  std::vector<u64> bits_;
};

TwinIndex build_twin_index(const PrimeTable& table);

u64 twin_count(const TwinIndex& index, u64 x);

struct KappaCensus {
  u64 count = 0;  // primes p <= y with 4p - 1 squarefree
  u64 total = 0;  // pi(y)
};

KappaCensus squarefree_kappa_census(const PrimeTable& table, u64 y);

// 4p - 1 squarefree, trial dividing by squares of odd primes from `table`.
// Requires integer_sqrt(4p - 1) <= table.limit().
bool kappa_is_squarefree(const PrimeTable& table, u64 p);

template <class F>
void PrimeTable::for_each_prime(u64 lo, u64 hi, F&& f) const {
  if (hi > limit_) hi = limit_;
  if (lo <= 2 && hi >= 2) f(u64{2});
  u64 start = lo < 3 ? 3 : lo | 1;
  if (start > hi) return;
  const u64 idx = start >> 1;
  const u64 last_idx = (hi - 1) >> 1;
  for (u64 w = idx >> 6; w <= (last_idx >> 6); ++w) {
    u64 bits = words_[w];
    if (w == (idx >> 6)) bits &= ~u64{0} << (idx & 63);
    if (w == (last_idx >> 6) && (last_idx & 63) != 63) bits &= (u64{2} << (last_idx & 63)) - 1;
    while (bits) {
      const int b = std::countr_zero(bits);
      f(((w << 6) + static_cast<u64>(b)) * 2 + 1);
      bits &= bits - 1;
    }
  }
}

}  // namespace quadrep
