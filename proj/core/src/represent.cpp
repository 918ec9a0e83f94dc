#include "quadrep/represent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "quadrep/checkpoint.hpp"
#include "quadrep/checksum.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/parallel.hpp"

namespace quadrep {

std::string_view mode_name(Mode mode) noexcept {
  switch (mode) {
    case Mode::TwinMin:
      return "twin";
    case Mode::AnyPrime:
      return "prime";
    case Mode::SunOdd:
      return "sun";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  if (name == "twin") return Mode::TwinMin;
  if (name == "prime") return Mode::AnyPrime;
  if (name == "sun") return Mode::SunOdd;
  return std::nullopt;
}

u64 n_max(u64 q) {
  if (q < 5) throw InvalidArgument("n_max: q must be >= 5, got " + std::to_string(q));
  const u64 room = q - 3;
  u64 n = integer_sqrt(room);
  while (static_cast<u128>(n) * (n + 1) > room) --n;
  return n;
}

std::optional<Representation> find_min_twin_representation(u64 q, const TwinIndex& twins) {
  if (q < 5) return std::nullopt;
  if (q - 2 > twins.coverage()) {
    throw CoverageError("find_min_twin_representation: q = " + std::to_string(q) +
                        " needs twin coverage " + std::to_string(q - 2) + ", have " +
                        std::to_string(twins.coverage()));
  }
  for (u64 n = n_max(q); n >= 1; --n) {
    const u64 p = q - n * (n + 1);
    if (twins.test(p)) return Representation{q, p, n, Mode::TwinMin};
  }
  return std::nullopt;
}

std::optional<Representation> find_any_prime_representation(u64 q, const PrimeTable& table, Mode mode) {
  if (q < 5) return std::nullopt;
  if (q > table.limit()) {
    throw CoverageError("find_any_prime_representation: q = " + std::to_string(q) +
                        " exceeds table limit " + std::to_string(table.limit()));
  }
  for (u64 n = n_max(q); n >= 1; --n) {
    const u64 p = q - n * (n + 1);
    if (table.test(p)) return Representation{q, p, n, mode};
  }
  return std::nullopt;
}

bool within_sqrt_bound(const Representation& rep) noexcept {
  return rep.n <= integer_sqrt(rep.q);
}

bool satisfies_dichotomy(const Representation& rep) noexcept {
  if (static_cast<u128>(rep.p) * 2 >= rep.q) return true;
  return static_cast<u128>(rep.n) * rep.n * 2 >= rep.q && within_sqrt_bound(rep);
}

void LemmaTracker::observe(const Representation& rep) {
  if (rep.q <= last_q_) {
    throw InvalidArgument("LemmaTracker: representations must be strictly increasing in q");
  }
  last_q_ = rep.q;
  if (rep.n >= max_p_by_n_.size()) max_p_by_n_.resize(rep.n + 1, 0);
  u64& running = max_p_by_n_[rep.n];
  if (running != 0 && running >= rep.p) ++counts_.shared_n;
  running = std::max(running, rep.p);
  if (!within_sqrt_bound(rep)) ++counts_.sqrt_bound;
  if (!satisfies_dichotomy(rep)) ++counts_.dichotomy;
}

std::vector<std::pair<u64, u64>> LemmaTracker::state() const {
  std::vector<std::pair<u64, u64>> out;
  for (u64 n = 0; n < max_p_by_n_.size(); ++n) {
    if (max_p_by_n_[n] != 0) out.emplace_back(n, max_p_by_n_[n]);
  }
  return out;
}

void LemmaTracker::restore(const LemmaCounts& counts, std::span<const std::pair<u64, u64>> state,
                           u64 last_q) {
  counts_ = counts;
  last_q_ = last_q;
  max_p_by_n_.clear();
  for (const auto& [n, p] : state) {
    if (n >= max_p_by_n_.size()) max_p_by_n_.resize(n + 1, 0);
    max_p_by_n_[n] = p;
  }
}

LemmaCounts stats_lemma_checks(std::span<const Representation> reps) {
  LemmaTracker tracker;
  for (const auto& r : reps) tracker.observe(r);
  return tracker.counts();
}

std::vector<GrowthRow> growth_series(std::span<const Representation> reps, u64 bucket) {
  if (bucket == 0) throw InvalidArgument("growth_series: bucket must be >= 1");
  if (reps.empty()) throw InvalidArgument("growth_series: no representations");
  std::map<u64, GrowthRow> rows;
  for (const auto& r : reps) {
    const u64 key = r.q / bucket * bucket;
    const double p_ratio = static_cast<double>(r.p) / std::cbrt(static_cast<double>(r.q));
    const double n_ratio = static_cast<double>(r.n) / std::log(static_cast<double>(r.q));
    auto [it, fresh] = rows.try_emplace(key);
    GrowthRow& g = it->second;
    if (fresh) {
      g = {key, 0, r.n, r.p, p_ratio, n_ratio};
    }
    ++g.count;
    g.max_n = std::max(g.max_n, r.n);
    g.min_p = std::min(g.min_p, r.p);
    g.min_p_over_cbrt_q = std::min(g.min_p_over_cbrt_q, p_ratio);
    g.max_n_over_ln_q = std::max(g.max_n_over_ln_q, n_ratio);
  }
  std::vector<GrowthRow> out;
  out.reserve(rows.size());
  for (auto& [_, g] : rows) out.push_back(g);
  return out;
}

std::string summary_fingerprint(const VerificationReport& r) {
  std::ostringstream s;
  char buf[64];
  s << "mode=" << mode_name(r.mode) << " lo=" << r.lo << " hi=" << r.hi
    << " include_small=" << r.include_small << " checked=" << r.checked
    << " represented=" << r.represented << " failures=";
  for (std::size_t i = 0; i < r.failures.size(); ++i) s << (i ? "," : "") << r.failures[i];
  std::snprintf(buf, sizeof buf, "%a", r.stats.min_p_over_cbrt_q);
  s << " min_p_ratio=" << buf << '@' << r.stats.q_at_min_p_ratio;
  std::snprintf(buf, sizeof buf, "%a", r.stats.max_n_over_ln_q);
  s << " max_n_ratio=" << buf << '@' << r.stats.q_at_max_n_ratio << " max_n=" << r.stats.max_n
    << " shared_n=" << r.stats.lemmas.shared_n << " sqrt_bound=" << r.stats.lemmas.sqrt_bound
    << " dichotomy=" << r.stats.lemmas.dichotomy;
  return s.str();
}

namespace {

struct ShardResult {
  u64 checked = 0;
  std::vector<Representation> reps;
  std::vector<u64> failures;
};

ShardResult run_shard(u64 lo, u64 hi, Mode mode, bool include_small, const TwinIndex* twins,
                      const PrimeTable& table) {
  ShardResult out;
  auto check = [&](u64 q) {
    if (q < 5) {
      if (include_small) {
        ++out.checked;
        out.failures.push_back(q);
      }
      return;
    }
    ++out.checked;
    const auto rep = mode == Mode::TwinMin ? find_min_twin_representation(q, *twins)
                                           : find_any_prime_representation(q, table, mode);
    if (rep) {
      out.reps.push_back(*rep);
    } else {
      out.failures.push_back(q);
    }
  };
  if (mode == Mode::SunOdd) {
    for (u64 q = std::max<u64>(lo, 3) | 1; q <= hi; q += 2) check(q);
  } else {
    table.for_each_prime(lo, hi, check);
  }
  return out;
}

// Running aggregates, merged strictly in ascending q.
struct Aggregate {
  u64 checked = 0;
  u64 represented = 0;
  std::vector<u64> failures;
  VerificationStats stats;
  LemmaTracker tracker;
  u64 last_q = 0;

  void absorb(const ShardResult& shard, u64 shard_hi) {
    checked += shard.checked;
    failures.insert(failures.end(), shard.failures.begin(), shard.failures.end());
    for (const auto& r : shard.reps) {
      const double p_ratio = static_cast<double>(r.p) / std::cbrt(static_cast<double>(r.q));
      const double n_ratio = static_cast<double>(r.n) / std::log(static_cast<double>(r.q));
      if (represented == 0 || p_ratio < stats.min_p_over_cbrt_q) {
        stats.min_p_over_cbrt_q = p_ratio;
        stats.q_at_min_p_ratio = r.q;
      }
      if (represented == 0 || n_ratio > stats.max_n_over_ln_q) {
        stats.max_n_over_ln_q = n_ratio;
        stats.q_at_max_n_ratio = r.q;
      }
      stats.max_n = std::max(stats.max_n, r.n);
      tracker.observe(r);
      ++represented;
    }
    stats.lemmas = tracker.counts();
    last_q = std::max(last_q, shard_hi);
  }
};

}  // namespace

VerificationReport verify_range(u64 lo, u64 hi, Mode mode, const TwinIndex* twins,
                                 const PrimeTable& table, const VerifyOptions& options) {
  if (lo > hi) {
    throw InvalidArgument("verify_range: empty range " + std::to_string(lo) + ":" + std::to_string(hi));
  }
  if (options.shard_size == 0) throw InvalidArgument("verify_range: shard_size must be >= 1");
  if (!options.include_small && std::max<u64>(lo, 5) > hi) {
    throw InvalidArgument("verify_range: no admissible q >= 5 in " + std::to_string(lo) + ":" +
                          std::to_string(hi) + " (small q are skipped unless include_small is set)");
  }
  if (hi > table.limit()) {
    throw CoverageError("verify_range: hi = " + std::to_string(hi) + " exceeds table limit " +
                        std::to_string(table.limit()));
  }
  if (mode == Mode::TwinMin) {
    if (twins == nullptr) throw InvalidArgument("verify_range: twin mode needs a TwinIndex");
    if (hi >= 5 && hi - 2 > twins->coverage()) {
      throw CoverageError("verify_range: hi = " + std::to_string(hi) + " needs twin coverage " +
                          std::to_string(hi - 2) + ", have " + std::to_string(twins->coverage()));
    }
  }

  const u64 span = hi - lo;  // inclusive width minus one
  const u64 shards_total = span / options.shard_size + 1;
  auto shard_bounds = [&](u64 i) {
    const u64 s_lo = lo + i * options.shard_size;
    const u64 s_hi = span - i * options.shard_size < options.shard_size
                         ? hi
                         : s_lo + options.shard_size - 1;
    return std::pair{s_lo, s_hi};
  };

  VerificationReport report;
  report.lo = lo;
  report.hi = hi;
  report.mode = mode;
  report.include_small = options.include_small;
  report.shards_total = shards_total;

  const CheckpointConfig config{mode, lo, hi, options.shard_size, options.include_small};
  Checkpoint cp;
  cp.config = config;
  Aggregate agg;
  u64 first_shard = 0;

  auto fill_report = [&] {
    report.checked = agg.checked;
    report.represented = agg.represented;
    report.failures = agg.failures;
    report.stats = agg.stats;
  };

  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    cp = read_checkpoint(*options.checkpoint);
    if (!(cp.config == config)) {
      throw InvalidArgument("checkpoint " + options.checkpoint->string() +
                            " was written for a different run configuration");
    }
    if (cp.shards.size() > shards_total) {
      throw InvalidArgument("checkpoint " + options.checkpoint->string() + " has too many shards");
    }
    for (u64 i = 0; i < cp.shards.size(); ++i) {
      const auto [s_lo, s_hi] = shard_bounds(i);
      if (cp.shards[i].lo != s_lo || cp.shards[i].hi != s_hi) {
        throw InvalidArgument("checkpoint " + options.checkpoint->string() +
                              ": shard boundaries do not match the configuration");
      }
      agg.failures.insert(agg.failures.end(), cp.shards[i].failed.begin(), cp.shards[i].failed.end());
    }
    if (!cp.shards.empty()) {
      const auto& last = cp.shards.back();
      if (last.failures_so_far != agg.failures.size()) {
        throw InvalidArgument("checkpoint " + options.checkpoint->string() +
                              ": failure count does not match the listed failures");
      }
      agg.checked = last.checked;
      agg.represented = last.represented;
      agg.stats = last.stats;
      agg.last_q = last.hi;
      agg.tracker.restore(last.stats.lemmas, cp.state, last.hi);
    }
    first_shard = cp.shards.size();
    report.shards_resumed = first_shard;
    if (cp.done_hash) {
      fill_report();
      report.complete = first_shard == shards_total;
      if (!report.complete || fnv1a64(summary_fingerprint(report)) != *cp.done_hash) {
        throw InvalidArgument("checkpoint " + options.checkpoint->string() +
                              ": DONE hash does not match its contents");
      }
      return report;
    }
  }

  u64 consumed = first_shard;
  const bool stopped_early = options.should_stop && options.should_stop();
  if (!stopped_early) {
    ordered_parallel_for(
        shards_total - first_shard, options.workers,
        [&](std::size_t i) {
          const auto [s_lo, s_hi] = shard_bounds(first_shard + i);
          return run_shard(s_lo, s_hi, mode, options.include_small, twins, table);
        },
        [&](std::size_t i, ShardResult&& shard) {
          const auto [s_lo, s_hi] = shard_bounds(first_shard + i);
          agg.absorb(shard, s_hi);
          if (options.on_record) {
            for (const auto& r : shard.reps) options.on_record(r);
          }
          ++consumed;
          if (options.checkpoint) {
            CheckpointShard line;
            line.lo = s_lo;
            line.hi = s_hi;
            line.failed = shard.failures;
            line.checked = agg.checked;
            line.represented = agg.represented;
            line.failures_so_far = agg.failures.size();
            line.stats = agg.stats;
            cp.shards.push_back(std::move(line));
            cp.state = agg.tracker.state();
            write_checkpoint(*options.checkpoint, cp);
          }
          if (options.on_shard) options.on_shard(consumed, shards_total);
          return !(options.should_stop && options.should_stop());
        });
  }

  fill_report();
  report.complete = consumed == shards_total;
  if (report.complete && options.checkpoint) {
    cp.state = agg.tracker.state();
    cp.done_hash = fnv1a64(summary_fingerprint(report));
    write_checkpoint(*options.checkpoint, cp);
  }
  return report;
}

}  // namespace quadrep
