#pragma once

// Desk-scale evaluation of the quantities behind the variance bound and the
// density statement:
//
//   psi_p(x) = sum_{1 <= n <= x} Lambda(n^2 + n + p)
//   V(x, y)  = sum over primes p with kappa = 4p - 1 <= y, kappa squarefree,
//              of (psi_p(x) - S(kappa) x / 2)^2
//
// and the exception count N(y) together with the empirical density of
// representable primes.

#include <vector>

#include "quadrep/arithmetic.hpp"
#include "quadrep/sieve.hpp"

namespace quadrep {

// Table-backed von Mangoldt function: O(1) on [0, bound], falling back to
// von_mangoldt() above it.
class MangoldtLookup {
 public:
  // bound is clamped to table.limit().
  MangoldtLookup(const PrimeTable& table, u64 bound);

  u64 bound() const noexcept { return bound_; }
  double operator()(u64 m) const noexcept;

 private:
  const PrimeTable* table_;
  u64 bound_;
  std::vector<u64> prime_power_bits_;  // m = r^k, r prime, k >= 2
};

// Throws InvalidArgument when x^2 + x + p overflows 64 bits.
double psi(u64 p, u64 x);
double psi(u64 p, u64 x, const MangoldtLookup& lambda);

enum class MainTerm {
  HalfX,      // S(kappa) x / 2, the normalization of the variance bound
  BaierZhao,  // S(kappa) x, for comparison with the n^2 + k setting
};

struct VarianceRow {
  u64 p = 0;
  u64 kappa = 0;
  double psi = 0.0;
  double singular = 0.0;
  double main_term = 0.0;
  double residual = 0.0;  // psi - main_term
  double residual_sq = 0.0;
};

struct VarianceReport {
  u64 x = 0;
  u64 y = 0;
  u64 cutoff = 0;
  MainTerm main_term = MainTerm::HalfX;
  u64 term_count = 0;
  double lhs = 0.0;
  double ratio = 0.0;  // lhs / (y x^2)
  std::vector<VarianceRow> rows;  // filled when VarianceOptions::keep_rows
};

struct VarianceOptions {
  unsigned workers = 1;
  MainTerm main_term = MainTerm::HalfX;
  bool keep_rows = false;
};

// Requires y <= x^2 and table coverage of (y + 1) / 4 and cutoff. Terms are
// summed in ascending p regardless of workers.
VarianceReport variance_sum(u64 x, u64 y, u64 cutoff, const PrimeTable& table,
                            const VarianceOptions& options = {});

// Primes p <= y / 4 with 4p - 1 squarefree such that n^2 + n + p is composite
// for every n >= 1 with 2n + 1 <= x.
std::vector<u64> exception_primes(u64 y, u64 x, const PrimeTable& table);
u64 exception_count(u64 y, u64 x, const PrimeTable& table);

struct DensityReport {
  u64 x = 0;
  u64 total_primes = 0;
  u64 representable_any_prime = 0;
  u64 representable_twin = 0;
  std::vector<u64> exceptions_any;
  std::vector<u64> exceptions_twin;

  double density_any() const noexcept {
    return total_primes == 0 ? 0.0 : static_cast<double>(representable_any_prime) / static_cast<double>(total_primes);
  }
  double density_twin() const noexcept {
    return total_primes == 0 ? 0.0 : static_cast<double>(representable_twin) / static_cast<double>(total_primes);
  }
};

// Every prime q <= x, including 2 and 3, is classified in both modes.
DensityReport density_report(u64 x, const PrimeTable& table, const TwinIndex& twins,
                             unsigned workers = 1);

}  // namespace quadrep
