#include "quadrep/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <new>
#include <string>

#include "quadrep/checksum.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/parallel.hpp"

namespace quadrep {

namespace {

constexpr u64 kNumbersPerWord = 128;
constexpr u64 kWordsPerBlock = 8;
constexpr std::array<char, 8> kMagic = {'Q', 'R', 'P', 'T', 'A', 'B', 'L', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

std::vector<u64> small_odd_primes(u64 bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<u64> out;
  for (u64 i = 3; i <= bound; i += 2) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= bound; j += 2 * i) composite[j] = true;
  }
  return out;
}

void sieve_segment(std::span<u64> words, u64 first_word, const std::vector<u64>& base) {
  std::fill(words.begin(), words.end(), ~u64{0});
  const u64 lo = first_word * kNumbersPerWord;  // first number covered
  const u64 hi = lo + words.size() * kNumbersPerWord;  // exclusive
  for (const u64 p : base) {
    const u64 sq = p * p;
    if (sq >= hi) break;
    u64 m = sq >= lo ? sq : (lo + p - 1) / p * p;
    if ((m & 1) == 0) m += p;
    for (; m < hi; m += 2 * p) {
      const u64 i = (m - lo) >> 1;
      words[i >> 6] &= ~(u64{1} << (i & 63));
    }
  }
  if (first_word == 0) words[0] &= ~u64{1};  // 1 is not prime
}

void put_u32(std::ostream& out, Fnv1a64& h, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
  h.update(std::span<const unsigned char>(b, 4));
}

void put_u64(std::ostream& out, Fnv1a64& h, u64 v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
  h.update(std::span<const unsigned char>(b, 8));
}

u64 read_le(const unsigned char* b, int n) {
  u64 v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<u64>(b[i]) << (8 * i);
  return v;
}

[[noreturn]] void coverage_error(const char* what, u64 value, u64 bound) {
  throw CoverageError(std::string(what) + ": " + std::to_string(value) +
                      " exceeds covered limit " + std::to_string(bound));
}

}  // namespace

void PrimeTable::finish() {
  // clear bits for odd numbers above limit
  const u64 bits = (limit_ + 1) / 2;  // odd numbers 1, 3, ..., <= limit
  const u64 full = bits >> 6;
  if (full < words_.size()) {
    const u64 rem = bits & 63;
    words_[full] &= rem == 0 ? 0 : ((u64{1} << rem) - 1);
    for (u64 w = full + 1; w < words_.size(); ++w) words_[w] = 0;
  }
  block_rank_.assign(words_.size() / kWordsPerBlock + 2, 0);
  u64 acc = 0;
  for (u64 w = 0; w < words_.size(); ++w) {
    if (w % kWordsPerBlock == 0) block_rank_[w / kWordsPerBlock] = acc;
    acc += static_cast<u64>(std::popcount(words_[w]));
  }
  block_rank_[(words_.size() + kWordsPerBlock - 1) / kWordsPerBlock] = acc;
}

bool PrimeTable::is_prime(u64 m) const {
  if (m > limit_) coverage_error("is_prime", m, limit_);
  return test(m);
}

u64 PrimeTable::count(u64 x) const {
  if (x > limit_) coverage_error("prime_count", x, limit_);
  if (x < 2) return 0;
  if (x == 2) return 1;
  const u64 last = (x - 1) >> 1;  // odd index of the largest odd <= x
  const u64 w = last >> 6;
  u64 c = block_rank_[w / kWordsPerBlock];
  for (u64 i = w - w % kWordsPerBlock; i < w; ++i) c += static_cast<u64>(std::popcount(words_[i]));
  const u64 mask = (last & 63) == 63 ? ~u64{0} : (u64{2} << (last & 63)) - 1;
  c += static_cast<u64>(std::popcount(words_[w] & mask));
  return c + 1;  // the prime 2
}

std::vector<u64> PrimeTable::primes(u64 lo, u64 hi) const {
  if (hi > limit_) coverage_error("primes", hi, limit_);
  std::vector<u64> out;
  for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

PrimeTable build_prime_table(u64 limit, const SieveOptions& options) {
  if (limit < 2) {
    throw InvalidArgument("build_prime_table: limit must be >= 2, got " + std::to_string(limit));
  }
  const u64 word_count = limit / kNumbersPerWord + 1;
  if (word_count > options.memory_budget_bytes / sizeof(u64)) {
    throw ResourceError("build_prime_table: limit " + std::to_string(limit) +
                        " needs " + std::to_string(word_count * sizeof(u64)) +
                        " bytes, over the memory budget of " +
                        std::to_string(options.memory_budget_bytes));
  }
  const u64 seg = std::max<u64>(kNumbersPerWord, (options.segment_size + kNumbersPerWord - 1) /
                                                     kNumbersPerWord * kNumbersPerWord);

  PrimeTable table;
  table.limit_ = limit;
  table.segment_size_ = seg;
  try {
    table.words_.assign(word_count, 0);
    const auto base = small_odd_primes(integer_sqrt(limit));
    const u64 words_per_segment = seg / kNumbersPerWord;
    const u64 segments = (word_count + words_per_segment - 1) / words_per_segment;
    parallel_for(segments, options.workers, [&](std::size_t s) {
      const u64 first = s * words_per_segment;
      const u64 n = std::min(words_per_segment, word_count - first);
      sieve_segment(std::span(table.words_).subspan(first, n), first, base);
    });
    table.finish();
  } catch (const std::bad_alloc&) {
    throw ResourceError("build_prime_table: allocation failed for limit " + std::to_string(limit));
  }
  return table;
}

u64 prime_count(const PrimeTable& table, u64 x) { return table.count(x); }

void save_prime_table(const PrimeTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  Fnv1a64 h;
  out.write(kMagic.data(), kMagic.size());
  h.update(std::span(reinterpret_cast<const unsigned char*>(kMagic.data()), kMagic.size()));
  put_u32(out, h, kCacheVersion);
  put_u32(out, h, 0);
  put_u64(out, h, table.limit());
  put_u64(out, h, table.segment_size());
  put_u64(out, h, table.words().size());
  for (const u64 w : table.words()) put_u64(out, h, w);
  Fnv1a64 unused;
  put_u64(out, unused, h.digest());
  if (!out) throw ResourceError("write failed for " + path.string());
}

PrimeTable load_prime_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open sieve cache " + path.string());
  constexpr std::size_t kHeader = 8 + 4 + 4 + 8 + 8 + 8;
  unsigned char header[kHeader];
  if (!in.read(reinterpret_cast<char*>(header), kHeader)) {
    throw InvalidArgument("sieve cache " + path.string() + ": truncated header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), reinterpret_cast<const char*>(header))) {
    throw InvalidArgument("sieve cache " + path.string() + ": bad magic");
  }
  const auto version = static_cast<std::uint32_t>(read_le(header + 8, 4));
  if (version != kCacheVersion) {
    throw InvalidArgument("sieve cache " + path.string() + ": unsupported version " +
                          std::to_string(version));
  }
  const u64 limit = read_le(header + 16, 8);
  const u64 segment = read_le(header + 24, 8);
  const u64 words = read_le(header + 32, 8);
  if (limit < 2 || words != limit / kNumbersPerWord + 1) {
    throw InvalidArgument("sieve cache " + path.string() + ": inconsistent header");
  }
  Fnv1a64 h;
  h.update(std::span<const unsigned char>(header, kHeader));

  PrimeTable table;
  table.limit_ = limit;
  table.segment_size_ = segment;
  try {
    table.words_.resize(words);
  } catch (const std::bad_alloc&) {
    throw ResourceError("sieve cache " + path.string() + ": allocation failed");
  }
  std::vector<unsigned char> buf(8 * std::min<u64>(words, 1 << 16));
  for (u64 done = 0; done < words;) {
    const u64 n = std::min<u64>(words - done, buf.size() / 8);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(8 * n))) {
      throw InvalidArgument("sieve cache " + path.string() + ": truncated payload");
    }
    h.update(std::span<const unsigned char>(buf.data(), 8 * n));
    for (u64 i = 0; i < n; ++i) table.words_[done + i] = read_le(buf.data() + 8 * i, 8);
    done += n;
  }
  unsigned char tail[8];
  if (!in.read(reinterpret_cast<char*>(tail), 8)) {
    throw InvalidArgument("sieve cache " + path.string() + ": missing checksum");
  }
  if (read_le(tail, 8) != h.digest()) {
    throw InvalidArgument("sieve cache " + path.string() + ": checksum mismatch");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InvalidArgument("sieve cache " + path.string() + ": trailing bytes");
  }
  table.finish();
  return table;
}

bool TwinIndex::contains(u64 p) const {
  if (p > coverage_) coverage_error("twin membership", p, coverage_);
  return test(p);
}

std::optional<u64> TwinIndex::successor(u64 m) const {
  const auto it = std::lower_bound(twins_.begin(), twins_.end(), m);
  if (it == twins_.end()) return std::nullopt;
  return *it;
}

u64 TwinIndex::count(u64 x) const {
  if (x > coverage_) coverage_error("twin_count", x, coverage_);
  return static_cast<u64>(std::upper_bound(twins_.begin(), twins_.end(), x) - twins_.begin());
}

TwinIndex build_twin_index(const PrimeTable& table) {
  if (table.limit() < 5) {
    throw InvalidArgument("build_twin_index: table limit must be >= 5");
  }
  TwinIndex index;
  index.coverage_ = table.limit() - 2;
  index.bits_.assign(table.words().size(), 0);
  table.for_each_prime(3, index.coverage_, [&](u64 p) {
    if (table.test(p + 2) || (p >= 5 && table.test(p - 2))) {
      index.twins_.push_back(p);
      index.bits_[p >> 7] |= u64{1} << ((p >> 1) & 63);
    }
  });
  return index;
}

u64 twin_count(const TwinIndex& index, u64 x) { return index.count(x); }

bool kappa_is_squarefree(const PrimeTable& table, u64 p) {
  const u64 kappa = 4 * p - 1;
  const u64 root = integer_sqrt(kappa);
  if (root > table.limit()) coverage_error("squarefree test", root, table.limit());
  bool squarefree = true;
  // kappa is odd, so only odd prime squares can divide it
  for (u64 r = 3; r <= root && r * r <= kappa; r += 2) {
    if (!table.test(r)) continue;
    if (kappa % (r * r) == 0) {
      squarefree = false;
      break;
    }
  }
  return squarefree;
}

KappaCensus squarefree_kappa_census(const PrimeTable& table, u64 y) {
  if (y > table.limit()) coverage_error("squarefree_kappa_census", y, table.limit());
  KappaCensus census;
  if (y < 2) return census;
  const auto base = table.primes(3, integer_sqrt(4 * y - 1));
  table.for_each_prime(2, y, [&](u64 p) {
    ++census.total;
    const u64 kappa = 4 * p - 1;
    for (const u64 r : base) {
      if (r * r > kappa) break;
      if (kappa % (r * r) == 0) return;
    }
    ++census.count;
  });
  return census;
}

}  // namespace quadrep
