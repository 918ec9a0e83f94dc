#pragma once

// Truncated singular series attached to kappa = 4p - 1:
//
//   S(kappa) = prod over odd primes q of (1 - (-kappa / q) / (q - 1))
//            = sum over odd squarefree q of mu(q) / phi(q) * (1 - 4p / q).
//
// The product converges only conditionally, so the cutoff is part of every
// value and is always reported next to it.

#include <vector>

#include "quadrep/arithmetic.hpp"
#include "quadrep/sieve.hpp"

namespace quadrep {

inline constexpr u64 kDefaultSingularCutoff = 100000;

struct SingularValue {
  u64 kappa = 0;
  u64 cutoff = 0;  // largest prime admitted to the product
  double value = 0.0;
  double last_factor_deviation = 0.0;  // |last factor - 1|
};

// Evaluates many kappa against one cutoff without re-scanning the table.
class SingularSeries {
 public:
  SingularSeries(u64 cutoff, const PrimeTable& table);

  u64 cutoff() const noexcept { return cutoff_; }
  // Product over odd primes q <= cutoff, ascending q.
  SingularValue evaluate(u64 kappa) const;

 private:
  u64 cutoff_;
  std::vector<u64> odd_primes_;
};

SingularValue singular_series(u64 kappa, u64 cutoff, const PrimeTable& table);

// Sum over odd squarefree q in (q1, q2] of mu(q) / phi(q) * (1 - 4p / q),
// ascending q, compensated.
double tail_partial(u64 kappa, u64 q1, u64 q2, const PrimeTable& table);

// The same series from q = 1 through `cutoff`; the partial Dirichlet-series
// form of S(kappa).
double singular_series_dirichlet(u64 kappa, u64 cutoff);

// kappa = 4p - 1 with p prime; throws InvalidArgument otherwise.
u64 prime_of_kappa(u64 kappa);

}  // namespace quadrep
