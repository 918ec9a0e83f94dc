#include "cli/commands.hpp"

#include <csignal>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "quadrep/asymptotic.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/expsum.hpp"
#include "quadrep/parallel.hpp"
#include "quadrep/report.hpp"
#include "quadrep/represent.hpp"
#include "quadrep/sieve.hpp"
#include "quadrep/singular.hpp"

namespace quadrep::cli {

namespace {

volatile std::sig_atomic_t g_interrupted = 0;

extern "C" void on_signal(int) { g_interrupted = 1; }

struct Common {
  std::string format = "csv";
  std::string out_path;
  unsigned workers = default_workers();
  std::string sieve_cache;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output encoding")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Write the report to PATH instead of stdout");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--sieve-cache", c.sieve_cache, "Load the prime table from a cache written by sieve-cache");
}

Format format_of(const Common& c) { return c.format == "jsonl" ? Format::Jsonl : Format::Csv; }

// Report sink: --out file or the caller's stream.
class Sink {
 public:
  Sink(const Common& c, std::ostream& fallback) : stream_(&fallback) {
    if (!c.out_path.empty()) {
      file_ = std::make_unique<std::ofstream>(c.out_path, std::ios::trunc);
      if (!*file_) throw InvalidArgument("cannot open --out " + c.out_path);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

PrimeTable obtain_table(const Common& c, u64 needed) {
  needed = std::max<u64>(needed, 5);
  if (!c.sieve_cache.empty()) {
    auto table = load_prime_table(c.sieve_cache);
    if (table.limit() < needed) {
      throw CoverageError("sieve cache " + c.sieve_cache + " covers " + std::to_string(table.limit()) +
                          ", this run needs " + std::to_string(needed));
    }
    return table;
  }
  SieveOptions opts;
  opts.workers = c.workers;
  return build_prime_table(needed, opts);
}

std::pair<u64, u64> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  auto number = [&](const std::string& s) -> u64 {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("bad --range '" + text + "', expected LO:HI");
    }
    return std::stoull(s);
  };
  if (colon == std::string::npos) throw InvalidArgument("bad --range '" + text + "', expected LO:HI");
  const u64 lo = number(text.substr(0, colon));
  const u64 hi = number(text.substr(colon + 1));
  if (lo > hi) throw InvalidArgument("bad --range '" + text + "': LO > HI");
  return {lo, hi};
}

// The n-th prime (1-based), by sieving past the Rosser-Schoenfeld bound.
u64 nth_prime(u64 n, unsigned workers) {
  if (n == 0) throw InvalidArgument("--primes must be >= 1");
  const double ln = std::log(static_cast<double>(n));
  const u64 bound = n < 6 ? 13 : static_cast<u64>(static_cast<double>(n) * (ln + std::log(ln))) + 1;
  SieveOptions opts;
  opts.workers = workers;
  const auto table = build_prime_table(bound, opts);
  u64 seen = 0, found = 0;
  table.for_each_prime(2, bound, [&](u64 p) {
    if (++seen == n) found = p;
  });
  return found;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string mode = "twin";
  std::string range;
  u64 primes = 0;
  bool include_small = false;
  bool emit_records = false;
  std::string checkpoint;
  u64 shard_size = u64{1} << 22;
};

std::vector<std::string> summary_columns() {
  return {"mode",
          "lo",
          "hi",
          "checked",
          "represented",
          "failures",
          "failed_q",
          "min_p_over_cbrt_q",
          "q_at_min_p_ratio",
          "max_n_over_ln_q",
          "q_at_max_n_ratio",
          "max_n",
          "shared_n_violations",
          "sqrt_bound_violations",
          "dichotomy_violations",
          "complete"};
}

std::vector<Cell> summary_row(const VerificationReport& r) {
  const bool any = r.represented > 0;
  return {std::string(mode_name(r.mode)),
          r.lo,
          r.hi,
          r.checked,
          r.represented,
          static_cast<u64>(r.failures.size()),
          r.failures,
          any ? Cell{Real{r.stats.min_p_over_cbrt_q}} : Cell{},
          any ? Cell{r.stats.q_at_min_p_ratio} : Cell{},
          any ? Cell{Real{r.stats.max_n_over_ln_q}} : Cell{},
          any ? Cell{r.stats.q_at_max_n_ratio} : Cell{},
          r.stats.max_n,
          r.stats.lemmas.shared_n,
          r.stats.lemmas.sqrt_bound,
          r.stats.lemmas.dichotomy,
          r.complete};
}

std::vector<Cell> record_row(const Representation& r) {
  return {r.q, r.p, r.n, Real{static_cast<double>(r.p) / std::cbrt(static_cast<double>(r.q))},
          Real{static_cast<double>(r.n) / std::log(static_cast<double>(r.q))}};
}

const std::vector<std::string> kRecordColumns = {"q", "p_q", "n_q", "p_over_cbrt_q", "n_over_ln_q"};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto mode = parse_mode(a.mode);
  if (!mode) throw InvalidArgument("unknown --mode " + a.mode);
  u64 lo = 0, hi = 0;
  if (a.primes != 0) {
    if (!a.range.empty()) throw InvalidArgument("give either --range or --primes, not both");
    lo = 2;
    hi = nth_prime(a.primes, c.workers);
  } else {
    if (a.range.empty()) throw InvalidArgument("verify needs --range LO:HI or --primes N");
    std::tie(lo, hi) = parse_range(a.range);
  }
  if (!a.include_small && std::max<u64>(lo, 5) > hi) {
    throw InvalidArgument("no admissible q >= 5 in " + std::to_string(lo) + ":" + std::to_string(hi) +
                          " (use --include-small to count q = 2, 3)");
  }

  const auto table = obtain_table(c, hi + 2);
  std::optional<TwinIndex> twins;
  if (*mode == Mode::TwinMin) twins = build_twin_index(table);

  Sink sink(c, out);
  std::optional<TableWriter> records;
  VerifyOptions opts;
  opts.include_small = a.include_small;
  opts.workers = c.workers;
  opts.shard_size = a.shard_size;
  if (!a.checkpoint.empty()) opts.checkpoint = a.checkpoint;
  if (a.emit_records) {
    records.emplace(sink.stream(), format_of(c), kRecordColumns);
    opts.on_record = [&](const Representation& r) { records->row(record_row(r)); };
  }
  opts.should_stop = [] { return g_interrupted != 0; };

  const auto report = verify_range(lo, hi, *mode, twins ? &*twins : nullptr, table, opts);

  if (records) {
    records->finish();
    if (format_of(c) == Format::Csv) sink.stream() << '\n';
  }
  TableWriter summary(sink.stream(), format_of(c), summary_columns());
  summary.row(summary_row(report));
  sink.stream().flush();

  if (!report.complete) {
    err << "verify: interrupted before all " << report.shards_total << " shards finished";
    if (!a.checkpoint.empty()) err << "; rerun with --checkpoint " << a.checkpoint << " to resume";
    err << '\n';
    return kExitInterrupted;
  }
  if (!report.failures.empty()) {
    err << "verify: " << report.failures.size() << " q without a representation:";
    for (const u64 q : report.failures) err << ' ' << q;
    err << '\n';
    return kExitMathFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sigma

struct SigmaArgs {
  u64 qmin = 1;
  u64 qmax = 0;
  u64 pmax = 0;
  bool complex_check = false;
};

int cmd_sigma(const SigmaArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (a.qmin < 1 || a.qmin > a.qmax) throw InvalidArgument("sigma: need 1 <= --qmin <= --qmax");
  if (a.pmax < 2) throw InvalidArgument("sigma: --pmax must be >= 2");
  std::vector<u64> primes;
  for (u64 p = 2; p <= a.pmax; ++p) {
    if (is_prime_64(p)) primes.push_back(p);
  }
  std::vector<std::string> cols = {"q", "p", "kappa", "brute", "closed", "match"};
  if (a.complex_check) {
    cols.push_back("complex_real");
    cols.push_back("complex_imag");
  }
  Sink sink(c, out);
  TableWriter w(sink.stream(), format_of(c), cols);
  u64 mismatches = 0;

  struct Row {
    SigmaEvaluation e;
    ComplexValue z;
  };
  ordered_parallel_for(
      a.qmax - a.qmin + 1, c.workers,
      [&](std::size_t i) {
        const u64 q = a.qmin + i;
        std::vector<Row> rows;
        for (const u64 p : primes) {
          Row r{evaluate_sigma(q, p), {}};
          if (a.complex_check) r.z = sigma_complex_check(q, p);
          rows.push_back(r);
        }
        return rows;
      },
      [&](std::size_t, std::vector<Row>&& rows) {
        for (const auto& [e, z] : rows) {
          std::vector<Cell> cells = {e.q, e.p, e.kappa, static_cast<std::int64_t>(e.brute_value)};
          if (e.closed_value) {
            cells.emplace_back(static_cast<std::int64_t>(*e.closed_value));
            cells.emplace_back(e.matches());
            if (!e.matches()) ++mismatches;
          } else {
            cells.emplace_back();
            cells.emplace_back();
          }
          if (a.complex_check) {
            cells.emplace_back(Real{z.real});
            cells.emplace_back(Real{z.imag});
          }
          w.row(cells);
        }
        return true;
      });
  w.finish();
  if (mismatches != 0) {
    err << "sigma: " << mismatches << " squarefree rows where brute force and closed form differ\n";
    return kExitMathFailure;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// singular

struct SingularArgs {
  u64 pmin = 2;
  u64 pmax = 0;
  u64 cutoff = kDefaultSingularCutoff;
  u64 compare_cutoff = 0;
};

int cmd_singular(const SingularArgs& a, const Common& c, std::ostream& out, std::ostream&) {
  if (a.pmax < 2 || a.pmin > a.pmax) throw InvalidArgument("singular: need 2 <= --pmin <= --pmax");
  if (a.cutoff < 4) throw InvalidArgument("singular: --cutoff must be >= 4");
  if (a.compare_cutoff != 0 && a.compare_cutoff <= a.cutoff) {
    throw InvalidArgument("singular: --compare-cutoff must exceed --cutoff");
  }
  const auto table = obtain_table(c, std::max({a.cutoff, a.compare_cutoff, a.pmax}));
  const SingularSeries series(a.cutoff, table);
  std::optional<SingularSeries> wider;
  if (a.compare_cutoff != 0) wider.emplace(a.compare_cutoff, table);
  const u64 q1 = std::max<u64>(3, a.cutoff / 10);

  std::vector<std::string> cols = {"kappa", "p", "cutoff", "value", "last_factor_deviation", "tail_partial"};
  if (wider) {
    cols.insert(cols.end(), {"compare_cutoff", "compare_value", "delta"});
  }
  Sink sink(c, out);
  TableWriter w(sink.stream(), format_of(c), cols);
  const auto primes = table.primes(a.pmin, a.pmax);
  ordered_parallel_for(
      primes.size(), c.workers,
      [&](std::size_t i) {
        const u64 p = primes[i];
        const u64 kappa = 4 * p - 1;
        const auto v = series.evaluate(kappa);
        std::vector<Cell> cells = {kappa, p, a.cutoff, Real{v.value}, Real{v.last_factor_deviation},
                                   Real{tail_partial(kappa, q1, a.cutoff, table)}};
        if (wider) {
          const auto v2 = wider->evaluate(kappa);
          cells.insert(cells.end(), {Cell{a.compare_cutoff}, Cell{Real{v2.value}}, Cell{Real{v2.value - v.value}}});
        }
        return cells;
      },
      [&](std::size_t, std::vector<Cell>&& cells) {
        w.row(cells);
        return true;
      });
  w.finish();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// variance

struct VarianceArgs {
  u64 x = 0;
  u64 y = 0;
  std::vector<u64> sweep;
  u64 cutoff = kDefaultSingularCutoff;
  std::string main_term = "half";
  bool per_kappa = false;
};

int cmd_variance(const VarianceArgs& a, const Common& c, std::ostream& out, std::ostream&) {
  std::vector<u64> xs = a.sweep;
  if (a.x != 0) xs.insert(xs.begin(), a.x);
  if (xs.empty()) throw InvalidArgument("variance needs --x or --sweep");
  if (a.per_kappa && xs.size() != 1) throw InvalidArgument("--per-kappa takes a single --x");
  VarianceOptions opts;
  opts.workers = c.workers;
  opts.main_term = a.main_term == "baier-zhao" ? MainTerm::BaierZhao : MainTerm::HalfX;
  opts.keep_rows = a.per_kappa;

  struct Job {
    u64 x, y;
  };
  std::vector<Job> jobs;
  u64 needed = a.cutoff;
  for (const u64 x : xs) {
    if (x == 0 || x > 3'000'000'000ULL) throw InvalidArgument("variance: x out of range");
    const u64 y = a.y != 0 ? a.y : x * x;
    if (static_cast<u128>(y) > static_cast<u128>(x) * x) {
      throw InvalidArgument("variance: region violation, need y <= x^2 (x = " + std::to_string(x) +
                            ", y = " + std::to_string(y) + ")");
    }
    jobs.push_back({x, y});
    needed = std::max(needed, x * x + x + (y + 1) / 4);
  }
  const auto table = obtain_table(c, needed);

  Sink sink(c, out);
  std::vector<VarianceReport> reports;
  for (const auto& j : jobs) reports.push_back(variance_sum(j.x, j.y, a.cutoff, table, opts));

  if (a.per_kappa) {
    TableWriter rows(sink.stream(), format_of(c),
                     {"p", "kappa", "psi", "S_trunc", "main_term", "residual", "residual_sq"});
    for (const auto& r : reports.front().rows) {
      rows.row({r.p, r.kappa, Real{r.psi}, Real{r.singular}, Real{r.main_term}, Real{r.residual},
                Real{r.residual_sq}});
    }
    rows.finish();
    if (format_of(c) == Format::Csv) sink.stream() << '\n';
  }
  TableWriter summary(sink.stream(), format_of(c),
                      {"x", "y", "cutoff", "term_count", "lhs", "ratio", "main_term"});
  for (const auto& r : reports) {
    summary.row({r.x, r.y, r.cutoff, r.term_count, Real{r.lhs}, Real{r.ratio},
                 std::string(r.main_term == MainTerm::HalfX ? "half" : "baier-zhao")});
  }
  summary.finish();
  return kExitOk;
}

// ---------------------------------------------------------------------------
// density, stats, mirsky, sieve-cache

int cmd_density(u64 x, const Common& c, std::ostream& out, std::ostream&) {
  if (x < 2) throw InvalidArgument("density: --x must be >= 2");
  const auto table = obtain_table(c, x + 2);
  const auto twins = build_twin_index(table);
  const auto d = density_report(x, table, twins, c.workers);
  Sink sink(c, out);
  TableWriter w(sink.stream(), format_of(c),
                {"x", "total_primes", "representable_any_prime", "representable_twin", "density_any",
                 "density_twin", "exceptions_any", "exceptions_twin"});
  w.row({d.x, d.total_primes, d.representable_any_prime, d.representable_twin, Real{d.density_any()},
         Real{d.density_twin()}, d.exceptions_any, d.exceptions_twin});
  return kExitOk;
}

int cmd_stats(const std::string& range, u64 bucket, const Common& c, std::ostream& out, std::ostream& err) {
  if (bucket == 0) throw InvalidArgument("stats: --bucket must be >= 1");
  const auto [lo, hi] = parse_range(range);
  const auto table = obtain_table(c, hi + 2);
  const auto twins = build_twin_index(table);
  std::vector<Representation> reps;
  VerifyOptions opts;
  opts.workers = c.workers;
  opts.on_record = [&](const Representation& r) { reps.push_back(r); };
  const auto report = verify_range(lo, hi, Mode::TwinMin, &twins, table, opts);
  if (reps.empty()) throw InvalidArgument("stats: no representations in range");
  const auto lemmas = stats_lemma_checks(reps);

  Sink sink(c, out);
  TableWriter w(sink.stream(), format_of(c),
                {"q_bucket", "count", "max_n_q", "min_p_q", "min_p_over_cbrt_q", "max_n_over_ln_q"});
  for (const auto& g : growth_series(reps, bucket)) {
    w.row({g.q_bucket, g.count, g.max_n, g.min_p, Real{g.min_p_over_cbrt_q}, Real{g.max_n_over_ln_q}});
  }
  if (format_of(c) == Format::Csv) sink.stream() << '\n';
  TableWriter s(sink.stream(), format_of(c),
                {"lo", "hi", "represented", "failures", "shared_n_violations", "sqrt_bound_violations",
                 "dichotomy_violations"});
  s.row({lo, hi, report.represented, static_cast<u64>(report.failures.size()), lemmas.shared_n,
         lemmas.sqrt_bound, lemmas.dichotomy});
  if (!report.failures.empty()) {
    err << "stats: " << report.failures.size() << " q without a twin representation\n";
    return kExitMathFailure;
  }
  return kExitOk;
}

int cmd_mirsky(u64 y, u64 x, const Common& c, std::ostream& out, std::ostream&) {
  if (y < 2) throw InvalidArgument("mirsky: --y must be >= 2");
  if (x == 0) x = 2 * static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(y))));
  const auto table = obtain_table(c, y);
  const auto census = squarefree_kappa_census(table, y);
  const auto exceptions = exception_primes(y, x, table);
  Sink sink(c, out);
  TableWriter w(sink.stream(), format_of(c), {"y", "s_y", "pi_y", "s_ratio", "x", "N_y", "exceptions"});
  w.row({y, census.count, census.total,
         Real{static_cast<double>(census.count) / static_cast<double>(census.total)}, x,
         static_cast<u64>(exceptions.size()), exceptions});
  return kExitOk;
}

int cmd_sieve_cache(u64 limit, const std::string& check, u64 segment, const Common& c, std::ostream& out,
                    std::ostream&) {
  PrimeTable table;
  std::string path;
  if (!check.empty()) {
    table = load_prime_table(check);
    path = check;
  } else {
    if (c.out_path.empty()) throw InvalidArgument("sieve-cache needs --out PATH (or --check PATH)");
    if (limit < 2) throw InvalidArgument("sieve-cache: --limit must be >= 2");
    SieveOptions opts;
    opts.workers = c.workers;
    opts.segment_size = segment;
    table = build_prime_table(limit, opts);
    save_prime_table(table, c.out_path);
    path = c.out_path;
  }
  TableWriter w(out, format_of(c), {"path", "limit", "segment_size", "prime_count"});
  w.row({path, table.limit(), table.segment_size(), prime_count(table, table.limit())});
  return kExitOk;
}

}  // namespace

void install_signal_handlers() {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representations q = p + n^2 + n: verification and numerical probes", "quadrep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "quadrep 0.1.0");

  Common common;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Find p_q for every q in a range");
  add_common(verify, common);
  verify->add_option("--mode", va.mode, "twin | prime | sun")->check(CLI::IsMember({"twin", "prime", "sun"}))->capture_default_str();
  verify->add_option("--range", va.range, "LO:HI, inclusive");
  verify->add_option("--primes", va.primes, "Check the first N primes instead of --range");
  verify->add_flag("--include-small", va.include_small, "Count q = 2, 3 as failures instead of skipping them");
  verify->add_flag("--emit-records", va.emit_records, "Emit one record per represented q before the summary");
  verify->add_option("--checkpoint", va.checkpoint, "Checkpoint file; resumes when it exists");
  verify->add_option("--shard-size", va.shard_size, "Numbers per shard")->check(CLI::PositiveNumber)->capture_default_str();

  SigmaArgs sa;
  auto* sigma = app.add_subcommand("sigma", "Exponential sum Sigma(q): brute force vs closed form");
  add_common(sigma, common);
  sigma->add_option("--qmin", sa.qmin)->capture_default_str();
  sigma->add_option("--qmax", sa.qmax)->required();
  sigma->add_option("--pmax", sa.pmax, "Largest prime p in the grid")->required();
  sigma->add_flag("--complex", sa.complex_check, "Add the floating double-sum cross-check");

  SingularArgs ga;
  auto* singular = app.add_subcommand("singular", "Truncated singular series S(4p - 1)");
  add_common(singular, common);
  singular->add_option("--pmin", ga.pmin)->capture_default_str();
  singular->add_option("--pmax", ga.pmax)->required();
  singular->add_option("--cutoff", ga.cutoff, "Largest prime in the product")->capture_default_str();
  singular->add_option("--compare-cutoff", ga.compare_cutoff, "Also evaluate at this larger cutoff");

  VarianceArgs vr;
  auto* variance = app.add_subcommand("variance", "Variance sum over squarefree kappa = 4p - 1 <= y");
  add_common(variance, common);
  variance->add_option("--x", vr.x);
  variance->add_option("--y", vr.y, "Defaults to x^2");
  variance->add_option("--sweep", vr.sweep, "Comma-separated x values")->delimiter(',');
  variance->add_option("--cutoff", vr.cutoff)->capture_default_str();
  variance->add_option("--main-term", vr.main_term, "half: S x / 2; baier-zhao: S x")
      ->check(CLI::IsMember({"half", "baier-zhao"}))
      ->capture_default_str();
  variance->add_flag("--per-kappa", vr.per_kappa, "Emit one row per kappa before the summary");

  u64 density_x = 0;
  auto* density = app.add_subcommand("density", "Representable primes up to x");
  add_common(density, common);
  density->add_option("--x", density_x)->required();

  std::string stats_range;
  u64 bucket = 0;
  auto* stats = app.add_subcommand("stats", "Growth of (p_q, n_q) and lemma checks");
  add_common(stats, common);
  stats->add_option("--range", stats_range, "LO:HI")->required();
  stats->add_option("--bucket", bucket, "Bucket width in q")->required();

  u64 mirsky_y = 0, mirsky_x = 0;
  auto* mirsky = app.add_subcommand("mirsky", "s(y) census and the exception count N(y)");
  add_common(mirsky, common);
  mirsky->add_option("--y", mirsky_y)->required();
  mirsky->add_option("--x", mirsky_x, "n-range for N(y); defaults to 2 ceil(sqrt(y))");

  u64 cache_limit = 0, cache_segment = SieveOptions{}.segment_size;
  std::string cache_check;
  auto* cache = app.add_subcommand("sieve-cache", "Write or validate a binary prime-table cache");
  add_common(cache, common);
  cache->add_option("--limit", cache_limit);
  cache->add_option("--segment-size", cache_segment)->capture_default_str();
  cache->add_option("--check", cache_check, "Validate an existing cache file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*verify) return cmd_verify(va, common, out, err);
    if (*sigma) return cmd_sigma(sa, common, out, err);
    if (*singular) return cmd_singular(ga, common, out, err);
    if (*variance) return cmd_variance(vr, common, out, err);
    if (*density) return cmd_density(density_x, common, out, err);
    if (*stats) return cmd_stats(stats_range, bucket, common, out, err);
    if (*mirsky) return cmd_mirsky(mirsky_y, mirsky_x, common, out, err);
    if (*cache) return cmd_sieve_cache(cache_limit, cache_check, cache_segment, common, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const CoverageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  }
  return kExitBadInput;
}

}  // namespace quadrep::cli
