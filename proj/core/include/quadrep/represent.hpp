#pragma once

// Representations q = p + n^2 + n with p prime and n >= 1.
//
// For a prime q >= 5, p_q is the smallest twin prime admitting such an n,
// and n_q is the n that goes with it. p = q - n(n + 1) grows as n shrinks,
// so scanning n downward from n_max(q) and stopping at the first hit yields
// the minimal p directly.

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadrep/arithmetic.hpp"
#include "quadrep/sieve.hpp"

namespace quadrep {

enum class Mode {
  TwinMin,   // primes q, p restricted to twin primes
  AnyPrime,  // primes q, any prime p
  SunOdd,    // odd integers q > 3, any prime p
};

std::string_view mode_name(Mode mode) noexcept;  // "twin", "prime", "sun"
std::optional<Mode> parse_mode(std::string_view name) noexcept;

struct Representation {
  u64 q = 0;
  u64 p = 0;
  u64 n = 0;
  Mode mode = Mode::TwinMin;

  friend bool operator==(const Representation&, const Representation&) = default;
};

// Largest n with n(n + 1) <= q - 3, i.e. the largest n leaving room for the
// smallest admissible prime 3. Throws InvalidArgument for q < 5.
u64 n_max(u64 q);

// nullopt when q < 5 or when no twin prime works. Throws CoverageError when
// the index cannot decide every candidate (coverage < q - 2).
std::optional<Representation> find_min_twin_representation(u64 q, const TwinIndex& twins);

// Same scan with plain primality. `mode` is AnyPrime or SunOdd and only
// tags the result. Throws CoverageError when q > table.limit().
std::optional<Representation> find_any_prime_representation(u64 q, const PrimeTable& table,
                                                            Mode mode = Mode::AnyPrime);

struct LemmaCounts {
  u64 shared_n = 0;   // equal n_q with q' < q but p_q' >= p_q
  u64 sqrt_bound = 0; // n_q > floor(sqrt(q))
  u64 dichotomy = 0;  // neither 2 p_q >= q nor (2 n_q^2 >= q and n_q <= floor(sqrt(q)))

  friend bool operator==(const LemmaCounts&, const LemmaCounts&) = default;
};

bool within_sqrt_bound(const Representation& rep) noexcept;
bool satisfies_dichotomy(const Representation& rep) noexcept;

// Streaming form of the three checks. The shared-n check keeps the running
// maximum of p per n, so representations must arrive in increasing q.
class LemmaTracker {
 public:
  void observe(const Representation& rep);
  const LemmaCounts& counts() const noexcept { return counts_; }

  // (n, running max p) for every n seen so far, ascending n.
  std::vector<std::pair<u64, u64>> state() const;
  void restore(const LemmaCounts& counts, std::span<const std::pair<u64, u64>> state, u64 last_q);

 private:
  std::vector<u64> max_p_by_n_;  // 0 = no representation with that n yet
  LemmaCounts counts_;
  u64 last_q_ = 0;
};

// Throws InvalidArgument unless reps is strictly increasing in q.
LemmaCounts stats_lemma_checks(std::span<const Representation> reps);

struct GrowthRow {
  u64 q_bucket = 0;  // first q of the bucket
  u64 count = 0;
  u64 max_n = 0;
  u64 min_p = 0;
  double min_p_over_cbrt_q = 0.0;
  double max_n_over_ln_q = 0.0;
};

// Buckets of width `bucket` over q. Throws InvalidArgument for bucket = 0 or
// an empty input.
std::vector<GrowthRow> growth_series(std::span<const Representation> reps, u64 bucket);

struct VerificationStats {
  double min_p_over_cbrt_q = 0.0;  // valid when represented > 0
  u64 q_at_min_p_ratio = 0;
  double max_n_over_ln_q = 0.0;
  u64 q_at_max_n_ratio = 0;
  u64 max_n = 0;
  LemmaCounts lemmas;

  friend bool operator==(const VerificationStats&, const VerificationStats&) = default;
};

struct VerificationReport {
  u64 lo = 0;
  u64 hi = 0;
  Mode mode = Mode::TwinMin;
  bool include_small = false;
  u64 checked = 0;
  u64 represented = 0;
  std::vector<u64> failures;
  VerificationStats stats;
  bool complete = false;
  u64 shards_total = 0;
  u64 shards_resumed = 0;  // taken from a checkpoint rather than computed

  bool holds() const noexcept { return complete && failures.empty(); }
};

// Canonical one-line rendering of everything that defines the result; the
// checkpoint's DONE hash is taken over it.
std::string summary_fingerprint(const VerificationReport& report);

struct VerifyOptions {
  bool include_small = false;  // count q in {2, 3} as failures instead of skipping them
  unsigned workers = 1;
  u64 shard_size = u64{1} << 22;
  std::optional<std::filesystem::path> checkpoint;
  // Called on the coordinating thread in ascending q.
  std::function<void(const Representation&)> on_record;
  std::function<void(u64 done, u64 total)> on_shard;
  // Polled between shards; returning true ends the run with complete = false.
  std::function<bool()> should_stop;
};

// Checks every admissible q in [lo, hi]: primes for TwinMin and AnyPrime, odd
// integers for SunOdd. twins may be null unless mode is TwinMin. The result
// does not depend on workers or shard_size.
VerificationReport verify_range(u64 lo, u64 hi, Mode mode, const TwinIndex* twins,
                                 const PrimeTable& table, const VerifyOptions& options = {});

}  // namespace quadrep
