// Acceptance run: one PASS/FAIL line per criterion clause, exit status 1 if
// any clause fails. Thresholds are the contract values, not tuned to results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.hpp"
#include "quadrep/arithmetic.hpp"
#include "quadrep/asymptotic.hpp"
#include "quadrep/checkpoint.hpp"
#include "quadrep/expsum.hpp"
#include "quadrep/parallel.hpp"
#include "quadrep/represent.hpp"
#include "quadrep/sieve.hpp"
#include "support/oracles.hpp"

using namespace quadrep;

namespace {

int g_failed = 0;
int g_total = 0;

void verdict(const char* id, bool ok, const std::string& what, const std::string& detail) {
  ++g_total;
  if (!ok) ++g_failed;
  std::printf("[%s] %-4s %s -- %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& text) {
  std::printf("[INFO]      %s\n", text.c_str());
  std::fflush(stdout);
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string join(const std::vector<u64>& v, std::size_t max = 20) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size() && i < max; ++i) out += (i ? "," : "") + std::to_string(v[i]);
  if (v.size() > max) out += ",...";
  return out + "}";
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "quadrep");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

constexpr u64 kMillionthPrime = 15'485'863;

// ---------------------------------------------------------------------------

void criteria_1_to_3() {
  Stopwatch clock;
  const auto table = build_prime_table(kMillionthPrime + 2);
  const auto twins = build_twin_index(table);
  const u64 pi = prime_count(table, kMillionthPrime);
  std::vector<Representation> reps;
  VerifyOptions opts;
  opts.workers = default_workers();
  opts.on_record = [&](const Representation& r) { reps.push_back(r); };
  const auto report = verify_range(2, kMillionthPrime, Mode::TwinMin, &twins, table, opts);
  const double elapsed = clock.seconds();

  verdict("1", pi == 1'000'000 && report.complete && report.failures.empty() && report.checked == pi - 2 &&
                   elapsed < 300.0,
          "every prime q >= 5 among the first 10^6 primes has a twin-prime representation",
          fmt("pi(%llu)=%llu, checked=%llu, failures=%zu, %.2fs (limit 300s)", (unsigned long long)kMillionthPrime,
              (unsigned long long)pi, (unsigned long long)report.checked, report.failures.size(), elapsed));

  const auto& s = report.stats;
  verdict("2a", s.min_p_over_cbrt_q > 1.0, "min p_q/q^(1/3) > 1 over the same range",
          fmt("min=%.6f at q=%llu (p_q=%llu)", s.min_p_over_cbrt_q, (unsigned long long)s.q_at_min_p_ratio,
              (unsigned long long)(find_min_twin_representation(s.q_at_min_p_ratio, twins)->p)));
  verdict("2b", std::isfinite(s.max_n_over_ln_q), "max n_q/ln q is finite and reported",
          fmt("max=%.6f at q=%llu, max n_q=%llu", s.max_n_over_ln_q, (unsigned long long)s.q_at_max_n_ratio,
              (unsigned long long)s.max_n));
  verdict("2c", s.lemmas.sqrt_bound == 0, "n_q <= sqrt(q) with zero exceptions",
          fmt("violations=%llu", (unsigned long long)s.lemmas.sqrt_bound));
  std::vector<u64> dichotomy;
  for (const auto& r : reps) {
    if (!satisfies_dichotomy(r)) dichotomy.push_back(r.q);
  }
  verdict("2d", s.lemmas.dichotomy == 0, "p_q >= q/2 or n_q in [sqrt(2q)/2, sqrt(q)] with zero exceptions",
          fmt("violations=%llu at q=", (unsigned long long)s.lemmas.dichotomy) + join(dichotomy));

  // independent pairwise scan over n-buckets for the shared-n property
  std::vector<u64> max_p_by_n(s.max_n + 1, 0);
  u64 pairwise = 0;
  for (const auto& r : reps) {
    if (max_p_by_n[r.n] >= r.p) ++pairwise;
    max_p_by_n[r.n] = std::max(max_p_by_n[r.n], r.p);
  }
  verdict("3", s.lemmas.shared_n == 0 && pairwise == 0,
          "equal n_q with q' < q implies p_q' < p_q, all computed representations",
          fmt("violations=%llu (tracker), %llu (recount) over %zu representations",
              (unsigned long long)s.lemmas.shared_n, (unsigned long long)pairwise, reps.size()));
}

void criterion_4() {
  Stopwatch clock;
  std::vector<u64> ps;
  for (u64 p = 2; p <= 100; ++p) {
    if (oracle::is_prime(p)) ps.push_back(p);
  }

  u64 compared = 0, mismatched = 0, divides = 0;
  for (u64 q = 1; q <= 500; q += 2) {
    if (!oracle::squarefree(q)) continue;
    for (const u64 p : ps) {
      ++compared;
      if (sigma_bruteforce(q, p) != sigma_closed(q, p)) ++mismatched;
      if ((4 * p - 1) % q == 0 && q > 1) ++divides;
    }
  }
  const double t_a = clock.seconds();
  verdict("4a", mismatched == 0, "brute force = closed form, odd squarefree q <= 500, primes p <= 100",
          fmt("%llu pairs (%llu with q | kappa), %llu mismatches", (unsigned long long)compared,
              (unsigned long long)divides, (unsigned long long)mismatched));

  u64 pairs = 0, nonzero = 0;
  std::string examples;
  for (u64 q = 2; q <= 100; ++q) {
    if (!oracle::is_prime(q)) continue;
    for (const u64 p : ps) {
      ++pairs;
      const i64 v = sigma_bruteforce(2 * q, p);
      if (v != 0) {
        if (nonzero < 3) examples += fmt(" S(%llu;p=%llu)=%lld", (unsigned long long)(2 * q), (unsigned long long)p, (long long)v);
        ++nonzero;
      }
    }
  }
  verdict("4b", nonzero == 0, "Sigma(2q) = 0 for primes q <= 100 (all primes p <= 100)",
          fmt("%llu of %llu pairs nonzero;", (unsigned long long)nonzero, (unsigned long long)pairs) + examples);
  info(fmt("Sigma(2) = %lld for p = 3 and %lld for p = 2; 2 Sigma(2m) = Sigma(2) Sigma(m) holds throughout",
           (long long)sigma_bruteforce(2, 3), (long long)sigma_bruteforce(2, 2)));

  std::mt19937_64 rng(20260115);
  std::uniform_int_distribution<u64> odd(0, 2500);
  int tested = 0, failed = 0;
  while (tested < 200) {
    const u64 q1 = 2 * odd(rng) + 1, q2 = 2 * odd(rng) + 1;
    if (q1 * q2 > 10000 || oracle::gcd(q1, q2) != 1 || !oracle::squarefree(q1) || !oracle::squarefree(q2)) continue;
    const u64 p = ps[rng() % ps.size()];
    if (!check_multiplicativity(q1, q2, p)) ++failed;
    ++tested;
  }
  verdict("4c", failed == 0, "2 Sigma(q1 q2) = Sigma(q1) Sigma(q2), 200 random coprime odd squarefree pairs",
          fmt("%d pairs, %d failures", tested, failed));

  double worst = 0.0;
  u64 worst_q = 0, worst_p = 0;
  for (u64 q = 1; q <= 500; ++q) {
    for (const u64 p : ps) {
      if (p > 50) break;
      const auto z = sigma_complex_check(q, p);
      const double dev =
          std::max(std::abs(z.real - static_cast<double>(sigma_bruteforce(q, p))), std::abs(z.imag)) /
          static_cast<double>(q);
      if (dev > worst) {
        worst = dev;
        worst_q = q;
        worst_p = p;
      }
    }
  }
  const double elapsed = clock.seconds();
  verdict("4d", worst < 1e-6, "complex double sum within 1e-6 * q of the integer value, q <= 500, p <= 50",
          fmt("worst |dev|/q = %.3e at q=%llu p=%llu", worst, (unsigned long long)worst_q, (unsigned long long)worst_p));
  verdict("4e", elapsed < 60.0, "identity suite runtime < 1 minute", fmt("%.2fs (4a alone %.2fs)", elapsed, t_a));
}

void criterion_5() {
  Stopwatch clock;
  const std::vector<u64> xs = {250, 500, 1000, 2000};
  const u64 cutoff = 100000;
  const auto table = build_prime_table(std::max<u64>(cutoff, 2000 * 2000 + 2000 + (2000 * 2000 + 1) / 4));
  VarianceOptions opts;
  opts.workers = default_workers();
  std::vector<double> ratios;
  std::string detail;
  for (const u64 x : xs) {
    const auto r = variance_sum(x, x * x, cutoff, table, opts);
    ratios.push_back(r.ratio);
    detail += fmt("x=%llu: terms=%llu ratio=%.9f; ", (unsigned long long)x, (unsigned long long)r.term_count, r.ratio);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
  const double elapsed = clock.seconds();
  verdict("5", decreasing && elapsed < 600.0,
          "variance ratio lhs/(y x^2) at y = x^2, cutoff 1e5, strictly decreasing over x in {250,500,1000,2000}",
          detail + fmt("%.1fs (limit 600s)", elapsed));
}

void criterion_6() {
  const u64 x = 1'000'000;
  const auto table = build_prime_table(x + 2);
  const auto twins = build_twin_index(table);
  const auto d = density_report(x, table, twins, default_workers());
  const u64 pi = prime_count(table, x);
  const double expect = 1.0 - 2.0 / static_cast<double>(pi);
  verdict("6", d.exceptions_any == std::vector<u64>{2, 3} && d.density_any() == expect,
          "any-prime exceptions among q <= 1e6 are exactly {2,3}",
          "exceptions=" + join(d.exceptions_any) +
              fmt(", density=%.9f vs 1-2/pi(1e6)=%.9f; twin-mode exceptions=", d.density_any(), expect) +
              join(d.exceptions_twin));
}

void criterion_7() {
  const auto table = build_prime_table(1'000'000);
  const auto census = squarefree_kappa_census(table, 1'000'000);
  const double ratio = static_cast<double>(census.count) / static_cast<double>(census.total);
  verdict("7a", census.count > 0 && ratio > 0.5 && ratio < 1.0, "s(1e6) > 0 and s(1e6)/pi(1e6) in (0.5, 1)",
          fmt("s=%llu pi=%llu ratio=%.6f", (unsigned long long)census.count, (unsigned long long)census.total, ratio));

  // every y <= 1000, then every multiple of 100 up to 1e5
  std::vector<u64> ys;
  for (u64 y = 1; y <= 1000; ++y) ys.push_back(y);
  for (u64 y = 1100; y <= 100000; y += 100) ys.push_back(y);
  u64 bound_violations = 0, nonzero = 0, first_nonzero = 0;
  std::vector<u64> first_set;
  for (const u64 y : ys) {
    const u64 x = 2 * static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(y))));
    const auto ex = exception_primes(y, x, table);
    if (ex.size() > squarefree_kappa_census(table, y / 4 >= 2 ? y / 4 : 2).count && y >= 8) ++bound_violations;
    if (!ex.empty()) {
      if (nonzero++ == 0) {
        first_nonzero = y;
        first_set = ex;
      }
    }
  }
  verdict("7b", bound_violations == 0, "N(y) <= s(y/4), x = 2 ceil(sqrt(y)), y <= 1e5",
          fmt("%zu values of y, %llu violations", ys.size(), (unsigned long long)bound_violations));
  verdict("7c", nonzero == 0, "N(y) = 0 for y <= 1e5, x = 2 ceil(sqrt(y))",
          fmt("N(y) > 0 for %llu of %zu values of y; first y=%llu with exceptions ", (unsigned long long)nonzero,
              ys.size(), (unsigned long long)first_nonzero) +
              join(first_set));

  // measured regression values
  bool pinned = true;
  std::string detail;
  for (const u64 y : {8ULL, 10ULL, 100ULL, 1000ULL, 10000ULL, 100000ULL}) {
    const u64 x = 2 * static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(y))));
    const auto ex = exception_primes(y, x, table);
    pinned = pinned && ex == std::vector<u64>{2};
    detail += fmt("N(%llu)=%zu ", (unsigned long long)y, ex.size());
  }
  pinned = pinned && exception_count(7, 6, table) == 0;
  verdict("7d", pinned, "N(y) regression values (measured: exception set {2} for 8 <= y <= 1e5, 0 below 8)", detail);
}

void criterion_8() {
  const auto small = build_prime_table(100000);
  u64 bad = 0;
  for (u64 m = 2; m <= 100000; ++m) bad += small.is_prime(m) != oracle::is_prime(m);
  verdict("8a", bad == 0, "sieve = trial division on [2, 1e5]", fmt("%llu disagreements", (unsigned long long)bad));

  const auto twins = build_twin_index(small);
  const auto ref = oracle::sieve(100002);
  u64 compared = 0, diff = 0;
  for (u64 q = 5; q <= 100000; ++q) {
    if (!ref[q]) continue;
    ++compared;
    const auto a = find_min_twin_representation(q, twins);
    const auto b = oracle::min_twin_exhaustive(q, ref);
    if (a.has_value() != b.has_value() || (a && (a->p != b->first || a->n != b->second))) ++diff;
  }
  verdict("8b", diff == 0, "descending-n minimal representation = exhaustive scan, primes <= 1e5",
          fmt("%llu primes, %llu differences", (unsigned long long)compared, (unsigned long long)diff));

  double worst = 0.0;
  for (u64 q = 1; q <= 200; ++q) {
    for (i64 m = -200; m <= 200; ++m) {
      const auto z = oracle::ramanujan_direct(q, m);
      worst = std::max({worst, std::abs(z.real() - static_cast<double>(ramanujan_sum(q, m))), std::abs(z.imag())});
    }
  }
  verdict("8c", worst < 1e-6, "Ramanujan sum closed form = direct complex sum, q <= 200, |m| <= 200",
          fmt("max deviation %.3e", worst));

  const auto big = build_prime_table(1'000'000);
  const auto ref_big = oracle::sieve(1'000'000);
  u64 pi3 = 0, pi6 = 0;
  for (u64 m = 0; m <= 1'000'000; ++m) {
    if (!ref_big[m]) continue;
    ++pi6;
    if (m <= 1000) ++pi3;
  }
  const u64 lib3 = prime_count(big, 1000), lib6 = prime_count(big, 1'000'000);
  verdict("8d", lib3 == 168 && lib6 == 78498 && pi3 == 168 && pi6 == 78498, "pi(1e3) = 168 and pi(1e6) = 78498",
          fmt("library %llu / %llu, independent sieve %llu / %llu", (unsigned long long)lib3, (unsigned long long)lib6,
              (unsigned long long)pi3, (unsigned long long)pi6));
}

void criterion_9() {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--range", "1:5000000", "--shard-size", "300000", "--emit-records"},
      {"verify", "--mode", "prime", "--range", "1:1000000", "--include-small"},
      {"verify", "--mode", "sun", "--range", "1:1000000", "--shard-size", "99999"},
      {"sigma", "--qmax", "120", "--pmax", "60", "--complex"},
      {"singular", "--pmax", "500", "--cutoff", "100000"},
      {"variance", "--x", "200", "--per-kappa"},
      {"variance", "--sweep", "50,100,150", "--cutoff", "20000", "--main-term", "baier-zhao"},
      {"density", "--x", "1000000"},
      {"stats", "--range", "5:1000000", "--bucket", "100000"},
      {"mirsky", "--y", "1000000"},
  };
  const unsigned many = std::max(4u, default_workers());
  u64 differing = 0;
  std::string which;
  for (const auto& base : commands) {
    auto a = base, b = base;
    a.insert(a.end(), {"--workers", "1"});
    b.insert(b.end(), {"--workers", std::to_string(many)});
    const auto ra = cli_run(a), rb = cli_run(b);
    if (ra.out != rb.out || ra.code != rb.code || ra.out.empty()) {
      ++differing;
      which += " " + base[0];
    }
  }
  const auto cache = std::filesystem::temp_directory_path() / ("quadrep_accept_" + std::to_string(::getpid()) + ".bin");
  const auto c1 = cli_run({"sieve-cache", "--limit", "3000000", "--out", cache.string(), "--workers", "1"});
  std::ifstream f1(cache, std::ios::binary);
  const std::string bytes1((std::istreambuf_iterator<char>(f1)), {});
  const auto c2 = cli_run({"sieve-cache", "--limit", "3000000", "--out", cache.string(), "--workers", "3"});
  std::ifstream f2(cache, std::ios::binary);
  const std::string bytes2((std::istreambuf_iterator<char>(f2)), {});
  std::filesystem::remove(cache);
  if (c1.out != c2.out || bytes1 != bytes2 || c1.code != 0) {
    ++differing;
    which += " sieve-cache";
  }
  verdict("9a", differing == 0, "every subcommand byte-identical across worker counts (1 vs " + std::to_string(many) + ")",
          fmt("%zu invocations, %llu differing", commands.size() + 1, (unsigned long long)differing) + which);

  // interrupted-and-resumed runs against an uninterrupted one
  const auto ckpt = std::filesystem::temp_directory_path() / ("quadrep_accept_" + std::to_string(::getpid()) + ".ckpt");
  const std::vector<std::string> args = {"verify", "--range", "5:15485863", "--shard-size", "1000000"};
  const auto fresh = cli_run(args);
  const auto table = build_prime_table(kMillionthPrime + 2);
  const auto twins = build_twin_index(table);
  int mismatched = 0, runs = 0;
  for (const int stop_after : {1, 5, 11, 15}) {
    std::filesystem::remove(ckpt);
    VerifyOptions opts;
    opts.shard_size = 1'000'000;
    opts.checkpoint = ckpt;
    int shards = 0;
    opts.on_shard = [&](u64, u64) { ++shards; };
    opts.should_stop = [&] { return shards >= stop_after; };
    verify_range(5, kMillionthPrime, Mode::TwinMin, &twins, table, opts);
    auto resumed_args = args;
    resumed_args.insert(resumed_args.end(), {"--checkpoint", ckpt.string()});
    const auto resumed = cli_run(resumed_args);
    const auto cp = read_checkpoint(ckpt);
    ++runs;
    if (resumed.out != fresh.out || resumed.code != fresh.code || !cp.done_hash) ++mismatched;
  }
  std::filesystem::remove(ckpt);
  verdict("9b", mismatched == 0 && fresh.code == 0, "checkpoint-interrupted verify output = uninterrupted output",
          fmt("%d resumed runs (after 1/5/11/15 of 16 shards), %d differing", runs, mismatched));
}

}  // namespace

int main() {
  std::printf("acceptance: %u worker(s)\n", default_workers());
  Stopwatch total;
  criteria_1_to_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("acceptance: %d of %d clauses passed, %d failed (%.1fs)\n", g_total - g_failed, g_total, g_failed,
              total.seconds());
  return g_failed == 0 ? 0 : 1;
}
