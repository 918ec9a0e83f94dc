#include <gtest/gtest.h>

#include <cmath>

#include "quadrep/asymptotic.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/singular.hpp"
#include "support/oracles.hpp"

using namespace quadrep;

namespace {

const PrimeTable& table() {
  static const PrimeTable t = build_prime_table(2'000'000);
  return t;
}

// log m when m is a prime power, by trial factorization.
double mangoldt_oracle(u64 m) {
  const auto f = oracle::factor(m);
  return f.size() == 1 ? std::log(static_cast<double>(f[0].first)) : 0.0;
}

std::vector<u64> exceptions_oracle(u64 y, u64 x) {
  std::vector<u64> out;
  for (u64 p = 2; p <= y / 4; ++p) {
    if (!oracle::is_prime(p) || !oracle::squarefree(4 * p - 1)) continue;
    bool hit = false;
    for (u64 n = 1; 2 * n + 1 <= x && !hit; ++n) hit = oracle::is_prime(n * n + n + p);
    if (!hit) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Psi, HandValues) {
  EXPECT_DOUBLE_EQ(psi(3, 1), std::log(5.0));
  EXPECT_NEAR(psi(3, 2), std::log(5.0) + std::log(3.0), 1e-15);  // 9 = 3^2
  EXPECT_EQ(psi(5, 0), 0.0);
  EXPECT_THROW(psi(3, 5'000'000'000ULL), InvalidArgument);
}

TEST(Psi, PrimeAndPrimePowerSplit) {
  const u64 x = 1000;
  double primes_part = 0.0, powers_part = 0.0;
  for (u64 n = 1; n <= x; ++n) {
    const u64 m = n * n + n + 3;
    if (oracle::is_prime(m)) {
      primes_part += std::log(static_cast<double>(m));
    } else {
      powers_part += mangoldt_oracle(m);
    }
  }
  EXPECT_GT(powers_part, 0.0);
  EXPECT_NEAR(psi(3, x), primes_part + powers_part, 1e-9);
  const MangoldtLookup lookup(table(), x * x + x + 3);
  EXPECT_NEAR(psi(3, x, lookup), primes_part + powers_part, 1e-9);
}

TEST(Psi, LookupMatchesDirect) {
  const MangoldtLookup lookup(table(), 1'500'000);
  for (u64 m = 1; m <= 200000; ++m) ASSERT_EQ(lookup(m), von_mangoldt(m)) << m;
  for (const u64 p : {2ULL, 3ULL, 41ULL, 1009ULL}) {
    EXPECT_EQ(psi(p, 1500, lookup), psi(p, 1500));
  }
}

TEST(VarianceSum, EmptyBelowSeven) {
  const auto r = variance_sum(10, 6, 1000, table());
  EXPECT_EQ(r.term_count, 0u);
  EXPECT_EQ(r.lhs, 0.0);
}

TEST(VarianceSum, RegionAndCoverage) {
  EXPECT_THROW(variance_sum(10, 101, 1000, table()), InvalidArgument);
  EXPECT_THROW(variance_sum(0, 1, 1000, table()), InvalidArgument);
  EXPECT_THROW(variance_sum(5000, 25'000'000, 1000, table()), CoverageError);
}

TEST(VarianceSum, TermsAreSquarefreeKappaOnly) {
  VarianceOptions opts;
  opts.keep_rows = true;
  const auto r = variance_sum(120, 14400, 10000, table(), opts);
  u64 expect = 0;
  for (u64 p = 2; 4 * p - 1 <= 14400; ++p) expect += oracle::is_prime(p) && oracle::squarefree(4 * p - 1);
  EXPECT_EQ(r.term_count, expect);
  ASSERT_EQ(r.rows.size(), expect);
  for (const auto& row : r.rows) {
    ASSERT_NE(row.p, 7u);
    ASSERT_EQ(row.kappa, 4 * row.p - 1);
  }
  EXPECT_GE(r.lhs, 0.0);
  EXPECT_TRUE(std::isfinite(r.ratio));
  EXPECT_DOUBLE_EQ(r.ratio, r.lhs / (14400.0 * 120.0 * 120.0));
}

TEST(VarianceSum, RowsFollowTheDefinition) {
  VarianceOptions opts;
  opts.keep_rows = true;
  const auto r = variance_sum(100, 10000, 5000, table(), opts);
  for (const auto& row : r.rows) {
    ASSERT_EQ(row.psi, psi(row.p, 100));
    ASSERT_EQ(row.singular, singular_series(row.kappa, 5000, table()).value);
    ASSERT_DOUBLE_EQ(row.main_term, row.singular * 50.0);
    ASSERT_DOUBLE_EQ(row.residual, row.psi - row.main_term);
    ASSERT_DOUBLE_EQ(row.residual_sq, row.residual * row.residual);
  }
  opts.main_term = MainTerm::BaierZhao;
  const auto bz = variance_sum(100, 10000, 5000, table(), opts);
  for (const auto& row : bz.rows) ASSERT_DOUBLE_EQ(row.main_term, row.singular * 100.0);
}

TEST(VarianceSum, DescendingRecomputationAgrees) {
  VarianceOptions opts;
  opts.keep_rows = true;
  const auto r = variance_sum(300, 90000, 20000, table(), opts);
  double down = 0.0;
  for (auto it = r.rows.rbegin(); it != r.rows.rend(); ++it) {
    const double d = psi(it->p, 300) - singular_series(it->kappa, 20000, table()).value * 150.0;
    down += d * d;
  }
  EXPECT_NEAR(down, r.lhs, 1e-6 * r.lhs);
}

TEST(VarianceSum, WorkerCountIsInvisible) {
  VarianceOptions one;
  VarianceOptions many;
  many.workers = 4;
  const auto a = variance_sum(200, 40000, 10000, table(), one);
  const auto b = variance_sum(200, 40000, 10000, table(), many);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.term_count, b.term_count);
}

TEST(Exceptions, MatchBruteForce) {
  for (const u64 y : {8ULL, 10ULL, 100ULL, 1000ULL, 5000ULL}) {
    for (const u64 x : {1ULL, 3ULL, 6ULL, 20ULL, 64ULL}) {
      EXPECT_EQ(exception_primes(y, x, table()), exceptions_oracle(y, x)) << y << " " << x;
    }
  }
}

TEST(Exceptions, SmallY) {
  EXPECT_EQ(exception_count(7, 100, table()), 0u);  // no p <= 7/4
  // p = 2: n^2 + n + 2 is always even, so it is never prime
  EXPECT_EQ(exception_primes(8, 1000, table()), (std::vector<u64>{2}));
}

TEST(Exceptions, EmptyNRangeCountsEveryCandidate) {
  const auto t = build_prime_table(1000);
  EXPECT_EQ(exception_count(4000, 2, table()), squarefree_kappa_census(t, 1000).count);
}

TEST(Exceptions, AntitoneInXAndBoundedByCensus) {
  for (const u64 y : {100ULL, 2000ULL, 40000ULL}) {
    u64 prev = ~0ULL;
    const u64 census = squarefree_kappa_census(table(), y / 4).count;
    for (u64 x = 1; x <= 200; x += 3) {
      const u64 n = exception_count(y, x, table());
      ASSERT_LE(n, prev);
      ASSERT_LE(n, census);
      prev = n;
    }
  }
}

TEST(Density, SmallX) {
  const auto twins = build_twin_index(table());
  const auto d = density_report(10, table(), twins);
  EXPECT_EQ(d.total_primes, 4u);
  EXPECT_EQ(d.exceptions_any, (std::vector<u64>{2, 3}));
  EXPECT_EQ(d.representable_any_prime, 2u);
  EXPECT_LE(d.representable_twin, d.representable_any_prime);
  EXPECT_DOUBLE_EQ(d.density_any(), 0.5);
  EXPECT_THROW(density_report(1, table(), twins), InvalidArgument);
}

TEST(Density, CountsAreConsistent) {
  const auto twins = build_twin_index(table());
  const auto d = density_report(200000, table(), twins, 3);
  EXPECT_EQ(d.total_primes, prime_count(table(), 200000));
  EXPECT_EQ(d.total_primes, d.representable_any_prime + d.exceptions_any.size());
  EXPECT_EQ(d.total_primes, d.representable_twin + d.exceptions_twin.size());
  EXPECT_LE(d.representable_twin, d.representable_any_prime);
}
