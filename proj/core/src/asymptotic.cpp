#include "quadrep/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadrep/errors.hpp"
#include "quadrep/kahan.hpp"
#include "quadrep/parallel.hpp"
#include "quadrep/represent.hpp"
#include "quadrep/singular.hpp"

namespace quadrep {

namespace {

constexpr std::size_t kPrimesPerTask = 256;

u64 checked_top(u64 p, u64 x) {
  const u128 top = static_cast<u128>(x) * x + x + p;
  if (top > ~u64{0}) {
    throw InvalidArgument("psi: x^2 + x + p overflows 64 bits for x = " + std::to_string(x));
  }
  return static_cast<u64>(top);
}

}  // namespace

MangoldtLookup::MangoldtLookup(const PrimeTable& table, u64 bound)
    : table_(&table), bound_(std::min(bound, table.limit())) {
  prime_power_bits_.assign(bound_ / 64 + 1, 0);
  const u64 root = integer_sqrt(bound_);
  table.for_each_prime(2, root, [&](u64 r) {
    for (u128 pw = static_cast<u128>(r) * r; pw <= bound_; pw *= r) {
      const auto m = static_cast<u64>(pw);
      prime_power_bits_[m >> 6] |= u64{1} << (m & 63);
    }
  });
}

double MangoldtLookup::operator()(u64 m) const noexcept {
  if (m > bound_) return von_mangoldt(m);
  if (table_->test(m)) return std::log(static_cast<double>(m));
  if (((prime_power_bits_[m >> 6] >> (m & 63)) & 1) == 0) return 0.0;
  for (unsigned k = 2; k < 64; ++k) {
    const u64 r = integer_root(m, k);
    if (r < 2) break;
    u128 pw = 1;
    for (unsigned i = 0; i < k; ++i) pw *= r;
    if (pw == m && table_->test(r)) return std::log(static_cast<double>(r));
  }
  return 0.0;
}

double psi(u64 p, u64 x) {
  checked_top(p, x);
  CompensatedSum sum;
  u64 m = p;
  for (u64 n = 1; n <= x; ++n) {
    m += 2 * n;  // n^2 + n + p
    sum.add(von_mangoldt(m));
  }
  return sum.value();
}

double psi(u64 p, u64 x, const MangoldtLookup& lambda) {
  checked_top(p, x);
  CompensatedSum sum;
  u64 m = p;
  for (u64 n = 1; n <= x; ++n) {
    m += 2 * n;
    sum.add(lambda(m));
  }
  return sum.value();
}

VarianceReport variance_sum(u64 x, u64 y, u64 cutoff, const PrimeTable& table,
                            const VarianceOptions& options) {
  if (x == 0 || y == 0) throw InvalidArgument("variance_sum: x and y must be >= 1");
  if (static_cast<u128>(y) > static_cast<u128>(x) * x) {
    throw InvalidArgument("variance_sum: region violation, need y <= x^2 (x = " + std::to_string(x) +
                          ", y = " + std::to_string(y) + ")");
  }
  const u64 p_max = (y + 1) / 4;  // 4p - 1 <= y
  if (p_max > table.limit()) {
    throw CoverageError("variance_sum: primes up to " + std::to_string(p_max) +
                        " exceed table limit " + std::to_string(table.limit()));
  }
  const SingularSeries series(cutoff, table);

  std::vector<u64> primes;
  if (p_max >= 2) {
    table.for_each_prime(2, p_max, [&](u64 p) {
      if (kappa_is_squarefree(table, p)) primes.push_back(p);
    });
  }

  const u64 lookup_bound = checked_top(p_max, x);
  const MangoldtLookup lambda(table, lookup_bound);
  const double scale = options.main_term == MainTerm::HalfX ? static_cast<double>(x) / 2.0
                                                             : static_cast<double>(x);

  VarianceReport report;
  report.x = x;
  report.y = y;
  report.cutoff = cutoff;
  report.main_term = options.main_term;
  report.term_count = primes.size();

  CompensatedSum lhs;
  const std::size_t tasks = (primes.size() + kPrimesPerTask - 1) / kPrimesPerTask;
  ordered_parallel_for(
      tasks, options.workers,
      [&](std::size_t t) {
        std::vector<VarianceRow> rows;
        const std::size_t end = std::min(primes.size(), (t + 1) * kPrimesPerTask);
        for (std::size_t i = t * kPrimesPerTask; i < end; ++i) {
          VarianceRow row;
          row.p = primes[i];
          row.kappa = 4 * row.p - 1;
          row.psi = psi(row.p, x, lambda);
          row.singular = series.evaluate(row.kappa).value;
          row.main_term = row.singular * scale;
          row.residual = row.psi - row.main_term;
          row.residual_sq = row.residual * row.residual;
          rows.push_back(row);
        }
        return rows;
      },
      [&](std::size_t, std::vector<VarianceRow>&& rows) {
        for (const auto& r : rows) lhs.add(r.residual_sq);
        if (options.keep_rows) report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        return true;
      });

  report.lhs = lhs.value();
  report.ratio = report.lhs / (static_cast<double>(y) * static_cast<double>(x) * static_cast<double>(x));
  return report;
}

std::vector<u64> exception_primes(u64 y, u64 x, const PrimeTable& table) {
  const u64 p_max = y / 4;
  if (p_max > table.limit()) {
    throw CoverageError("exception_count: primes up to " + std::to_string(p_max) +
                        " exceed table limit " + std::to_string(table.limit()));
  }
  const u64 n_top = x >= 3 ? (x - 1) / 2 : 0;  // 2n + 1 <= x
  std::vector<u64> out;
  if (p_max < 2) return out;
  table.for_each_prime(2, p_max, [&](u64 p) {
    if (!kappa_is_squarefree(table, p)) return;
    checked_top(p, n_top);
    u64 m = p;
    for (u64 n = 1; n <= n_top; ++n) {
      m += 2 * n;
      const bool prime = m <= table.limit() ? table.test(m) : is_prime_64(m);
      if (prime) return;
    }
    out.push_back(p);
  });
  return out;
}

u64 exception_count(u64 y, u64 x, const PrimeTable& table) {
  return exception_primes(y, x, table).size();
}

DensityReport density_report(u64 x, const PrimeTable& table, const TwinIndex& twins, unsigned workers) {
  if (x < 2) throw InvalidArgument("density_report: x must be >= 2");
  VerifyOptions opts;
  opts.include_small = true;
  opts.workers = workers;
  const auto any = verify_range(2, x, Mode::AnyPrime, nullptr, table, opts);
  const auto twin = verify_range(2, x, Mode::TwinMin, &twins, table, opts);

  DensityReport out;
  out.x = x;
  out.total_primes = any.checked;
  out.representable_any_prime = any.represented;
  out.representable_twin = twin.represented;
  out.exceptions_any = any.failures;
  out.exceptions_twin = twin.failures;
  return out;
}

}  // namespace quadrep
