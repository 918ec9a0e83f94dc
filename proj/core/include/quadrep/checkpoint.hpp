#pragma once

// Plain-text checkpoint for long verify runs. One line per completed shard
// carrying that shard's failures and the running aggregates after it, then
// the shared-n tracker state, then "DONE <hash>" once the run finished:
//
//   quadrep-checkpoint 1
//   config mode=twin lo=5 hi=15485863 shard_size=4194304 include_small=0
//   shard 5 4194308 checked=.. represented=.. failures_so_far=.. ... failed=-
//   state 1:4194301 2:4194297 ...
//   DONE 8c0f3e5b7a19d2c4
//
// Reals are stored as hex floats so a resumed run reproduces them exactly.
// The file is replaced atomically (write to a temporary, then rename).

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "quadrep/represent.hpp"

namespace quadrep {

struct CheckpointConfig {
  Mode mode = Mode::TwinMin;
  u64 lo = 0;
  u64 hi = 0;
  u64 shard_size = 0;
  bool include_small = false;

  friend bool operator==(const CheckpointConfig&, const CheckpointConfig&) = default;
};

struct CheckpointShard {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> failed;  // this shard only
  // running totals after this shard
  u64 checked = 0;
  u64 represented = 0;
  u64 failures_so_far = 0;
  VerificationStats stats;
};

struct Checkpoint {
  CheckpointConfig config;
  std::vector<CheckpointShard> shards;
  std::vector<std::pair<u64, u64>> state;
  std::optional<u64> done_hash;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
// Throws InvalidArgument on malformed content.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace quadrep
