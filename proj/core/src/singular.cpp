#include "quadrep/singular.hpp"

#include <cmath>
#include <string>

#include "quadrep/errors.hpp"
#include "quadrep/kahan.hpp"

namespace quadrep {

namespace {

// mu and phi on [0, n] from a smallest-prime-factor sieve.
struct MultiplicativeSieve {
  std::vector<int> mu;
  std::vector<u64> phi;

  explicit MultiplicativeSieve(u64 n) : mu(n + 1, 1), phi(n + 1) {
    std::vector<u64> spf(n + 1, 0);
    for (u64 i = 0; i <= n; ++i) phi[i] = i;
    for (u64 i = 2; i <= n; ++i) {
      if (spf[i] != 0) continue;
      for (u64 j = i; j <= n; j += i) {
        if (spf[j] == 0) spf[j] = i;
        phi[j] = phi[j] / i * (i - 1);
        mu[j] = -mu[j];
      }
      if (i <= n / i) {
        for (u64 j = i * i; j <= n; j += i * i) mu[j] = 0;
      }
    }
  }
};

double dirichlet_range(u64 kappa, u64 lo_exclusive, u64 hi) {
  const i64 minus_kappa = -static_cast<i64>(kappa);
  const MultiplicativeSieve mf(hi);
  CompensatedSum sum;
  for (u64 q = (lo_exclusive + 1) | 1; q <= hi; q += 2) {
    if (mf.mu[q] == 0) continue;
    const int chi = jacobi(minus_kappa, q);
    if (chi == 0) continue;
    sum.add(static_cast<double>(mf.mu[q] * chi) / static_cast<double>(mf.phi[q]));
  }
  return sum.value();
}

}  // namespace

u64 prime_of_kappa(u64 kappa) {
  if (kappa < 7 || kappa % 4 != 3 || !is_prime_64((kappa + 1) / 4)) {
    throw InvalidArgument("kappa = " + std::to_string(kappa) + " is not of the form 4p - 1, p prime");
  }
  return (kappa + 1) / 4;
}

SingularSeries::SingularSeries(u64 cutoff, const PrimeTable& table) : cutoff_(cutoff) {
  if (cutoff < 3) {
    throw InvalidArgument("singular_series: cutoff must be >= 3, got " + std::to_string(cutoff));
  }
  if (cutoff > table.limit()) {
    throw CoverageError("singular_series: cutoff " + std::to_string(cutoff) +
                        " exceeds table limit " + std::to_string(table.limit()));
  }
  odd_primes_ = table.primes(3, cutoff);
}

SingularValue SingularSeries::evaluate(u64 kappa) const {
  prime_of_kappa(kappa);
  SingularValue out;
  out.kappa = kappa;
  out.cutoff = odd_primes_.empty() ? 0 : odd_primes_.back();
  double value = 1.0;
  double last = 1.0;
  for (const u64 q : odd_primes_) {
    // -kappa mod q
    const u64 r = (q - kappa % q) % q;
    const int chi = jacobi_reduced(r, q);
    last = 1.0 - static_cast<double>(chi) / static_cast<double>(q - 1);
    value *= last;
  }
  out.value = value;
  out.last_factor_deviation = std::fabs(last - 1.0);
  return out;
}

SingularValue singular_series(u64 kappa, u64 cutoff, const PrimeTable& table) {
  return SingularSeries(cutoff, table).evaluate(kappa);
}

double tail_partial(u64 kappa, u64 q1, u64 q2, const PrimeTable& table) {
  prime_of_kappa(kappa);
  if (q1 >= q2) {
    throw InvalidArgument("tail_partial: need Q1 < Q2, got " + std::to_string(q1) + " >= " +
                          std::to_string(q2));
  }
  if (q1 < 3) throw InvalidArgument("tail_partial: Q1 must be >= 3");
  if (q2 > table.limit()) {
    throw CoverageError("tail_partial: Q2 " + std::to_string(q2) + " exceeds table limit " +
                        std::to_string(table.limit()));
  }
  return dirichlet_range(kappa, q1, q2);
}

double singular_series_dirichlet(u64 kappa, u64 cutoff) {
  prime_of_kappa(kappa);
  if (cutoff < 1) throw InvalidArgument("singular_series_dirichlet: cutoff must be >= 1");
  return dirichlet_range(kappa, 0, cutoff);
}

}  // namespace quadrep
