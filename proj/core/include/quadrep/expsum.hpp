#pragma once

// The complete exponential sum attached to kappa = 4p - 1:
//
//   Sigma(q) = sum over odd r in [1, 4q], 1 <= a <= q, gcd(a, q) = 1
//              of e(-a (kappa + r^2) / (4q)),
//
// which with r = 2n + 1 collapses to 2 * sum_{n < q} c_q(p + n^2 + n), c_q the
// Ramanujan sum. The integer form is the canonical evaluation; the complex
// double sum is kept only as an independent cross-check.

#include <optional>

#include "quadrep/arithmetic.hpp"

namespace quadrep {

struct SigmaEvaluation {
  u64 q = 0;
  u64 p = 0;
  u64 kappa = 0;
  i64 brute_value = 0;
  std::optional<i64> closed_value;  // empty when q is not squarefree

  bool matches() const noexcept { return closed_value && *closed_value == brute_value; }
};

struct ComplexValue {
  double real = 0.0;
  double imag = 0.0;
};

// Exact, integer arithmetic only.
i64 sigma_bruteforce(u64 q, u64 p);

// Floating double sum over odd r <= 4q and units a mod q.
ComplexValue sigma_complex_check(u64 q, u64 p);

// Closed form for squarefree q: 2q (1 - 4p / q) for odd q. For even q the
// sum does not vanish: Sigma(2) = -4 when p is odd and +4 when p = 2, and
// 2 Sigma(2m) = Sigma(2) Sigma(m) gives -/+ 2q (1 - 4p / (q/2)).
// Throws InvalidArgument for non-squarefree q.
i64 sigma_closed(u64 q, u64 p);

// 2 Sigma(q1 q2) == Sigma(q1) Sigma(q2) on the brute-force path. Requires
// q1, q2 odd, coprime and squarefree.
bool check_multiplicativity(u64 q1, u64 q2, u64 p);

SigmaEvaluation evaluate_sigma(u64 q, u64 p);

}  // namespace quadrep
