#include "quadrep/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "quadrep/errors.hpp"

namespace quadrep {

namespace {

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& why) {
  throw InvalidArgument("checkpoint " + path.string() + ": " + why);
}

u64 parse_u64(const std::filesystem::path& path, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    malformed(path, "expected an unsigned integer, got '" + s + "'");
  }
  return std::stoull(s);
}

double parse_hexfloat(const std::filesystem::path& path, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') malformed(path, "bad real '" + s + "'");
  return v;
}

// key=value tokens after the positional fields
std::map<std::string, std::string> keyed(const std::filesystem::path& path, std::istringstream& in) {
  std::map<std::string, std::string> out;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) malformed(path, "expected key=value, got '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

const std::string& field(const std::filesystem::path& path, const std::map<std::string, std::string>& kv,
                         const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) malformed(path, "missing field '" + key + "'");
  return it->second;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::ostringstream out;
  out << "quadrep-checkpoint 1\n";
  out << "config mode=" << mode_name(cp.config.mode) << " lo=" << cp.config.lo
      << " hi=" << cp.config.hi << " shard_size=" << cp.config.shard_size
      << " include_small=" << (cp.config.include_small ? 1 : 0) << '\n';
  for (const auto& s : cp.shards) {
    out << "shard " << s.lo << ' ' << s.hi << " checked=" << s.checked
        << " represented=" << s.represented << " failures_so_far=" << s.failures_so_far
        << " min_p_ratio=" << hexfloat(s.stats.min_p_over_cbrt_q)
        << " min_p_q=" << s.stats.q_at_min_p_ratio
        << " max_n_ratio=" << hexfloat(s.stats.max_n_over_ln_q)
        << " max_n_q=" << s.stats.q_at_max_n_ratio << " max_n=" << s.stats.max_n
        << " shared_n=" << s.stats.lemmas.shared_n << " sqrt_bound=" << s.stats.lemmas.sqrt_bound
        << " dichotomy=" << s.stats.lemmas.dichotomy << " failed=";
    if (s.failed.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < s.failed.size(); ++i) out << (i ? "," : "") << s.failed[i];
    }
    out << '\n';
  }
  out << "state";
  for (const auto& [n, p] : cp.state) out << ' ' << n << ':' << p;
  out << '\n';
  if (cp.done_hash) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(*cp.done_hash));
    out << "DONE " << buf << '\n';
  }

  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw InvalidArgument("cannot write checkpoint " + tmp.string());
    f << out.str();
    f.flush();
    if (!f) throw ResourceError("write failed for checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open checkpoint " + path.string());
  Checkpoint cp;
  std::string line;
  if (!std::getline(in, line) || line != "quadrep-checkpoint 1") malformed(path, "bad header");

  bool have_config = false;
  bool have_state = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (cp.done_hash) malformed(path, "content after DONE");
    if (kind == "config") {
      const auto kv = keyed(path, ls);
      const auto mode = parse_mode(field(path, kv, "mode"));
      if (!mode) malformed(path, "unknown mode");
      cp.config.mode = *mode;
      cp.config.lo = parse_u64(path, field(path, kv, "lo"));
      cp.config.hi = parse_u64(path, field(path, kv, "hi"));
      cp.config.shard_size = parse_u64(path, field(path, kv, "shard_size"));
      cp.config.include_small = parse_u64(path, field(path, kv, "include_small")) != 0;
      have_config = true;
    } else if (kind == "shard") {
      if (!have_config || have_state) malformed(path, "shard line out of order");
      std::string lo, hi;
      ls >> lo >> hi;
      CheckpointShard s;
      s.lo = parse_u64(path, lo);
      s.hi = parse_u64(path, hi);
      const auto kv = keyed(path, ls);
      s.checked = parse_u64(path, field(path, kv, "checked"));
      s.represented = parse_u64(path, field(path, kv, "represented"));
      s.failures_so_far = parse_u64(path, field(path, kv, "failures_so_far"));
      s.stats.min_p_over_cbrt_q = parse_hexfloat(path, field(path, kv, "min_p_ratio"));
      s.stats.q_at_min_p_ratio = parse_u64(path, field(path, kv, "min_p_q"));
      s.stats.max_n_over_ln_q = parse_hexfloat(path, field(path, kv, "max_n_ratio"));
      s.stats.q_at_max_n_ratio = parse_u64(path, field(path, kv, "max_n_q"));
      s.stats.max_n = parse_u64(path, field(path, kv, "max_n"));
      s.stats.lemmas.shared_n = parse_u64(path, field(path, kv, "shared_n"));
      s.stats.lemmas.sqrt_bound = parse_u64(path, field(path, kv, "sqrt_bound"));
      s.stats.lemmas.dichotomy = parse_u64(path, field(path, kv, "dichotomy"));
      const auto& failed = field(path, kv, "failed");
      if (failed != "-") {
        std::istringstream fs(failed);
        std::string q;
        while (std::getline(fs, q, ',')) s.failed.push_back(parse_u64(path, q));
      }
      cp.shards.push_back(std::move(s));
    } else if (kind == "state") {
      if (!have_config || have_state) malformed(path, "state line out of order");
      std::string tok;
      while (ls >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) malformed(path, "bad state entry '" + tok + "'");
        cp.state.emplace_back(parse_u64(path, tok.substr(0, colon)),
                              parse_u64(path, tok.substr(colon + 1)));
      }
      have_state = true;
    } else if (kind == "DONE") {
      if (!have_state) malformed(path, "DONE before state");
      std::string hex;
      ls >> hex;
      if (hex.size() != 16 || hex.find_first_not_of("0123456789abcdef") != std::string::npos) {
        malformed(path, "bad DONE hash");
      }
      cp.done_hash = std::stoull(hex, nullptr, 16);
    } else {
      malformed(path, "unknown line kind '" + kind + "'");
    }
  }
  if (!have_config) malformed(path, "missing config line");
  if (!have_state) malformed(path, "missing state line (interrupted while writing?)");
  return cp;
}

}  // namespace quadrep
