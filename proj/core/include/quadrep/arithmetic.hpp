#pragma once

// Scalar number theory on 64-bit integers.
//
// Everything here is a pure function. Multiplicative functions use trial
// division and are meant for moduli in the 10^6 range, not for factoring
// arbitrary 64-bit input.

#include <cstdint>
#include <vector>

namespace quadrep {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

struct PrimePower {
  u64 prime;
  unsigned exponent;
};

// Trial-division factorization, ascending primes. n = 1 yields an empty list.
std::vector<PrimePower> factorize_small(u64 n);

u64 gcd(u64 a, u64 b) noexcept;
u64 mul_mod(u64 a, u64 b, u64 m) noexcept;
u64 pow_mod(u64 base, u64 exp, u64 m) noexcept;

// Jacobi symbol (a/n) for odd n >= 1. a is reduced into [0, n) first, so
// negative arguments such as 1 - 4p are accepted. Throws InvalidArgument
// for even or zero n.
int jacobi(i64 a, u64 n);
// Same as jacobi() with the residue already in [0, n).
int jacobi_reduced(u64 a, u64 n) noexcept;

int mobius(u64 n);
u64 euler_phi(u64 n);
bool is_squarefree(u64 n);

// Deterministic Miller-Rabin. The witnesses 2..37 are sufficient for all
// n < 3.3e24, which covers the whole 64-bit range.
bool is_prime_64(u64 m) noexcept;

// log r when m = r^k for a prime r and k >= 1, otherwise 0.
double von_mangoldt(u64 m) noexcept;

// c_q(m) = sum over 1 <= a <= q, gcd(a, q) = 1 of e(-a m / q), via
// mu(q/g) phi(q) / phi(q/g) with g = gcd(q, m).
i64 ramanujan_sum(u64 q, i64 m);

// floor(sqrt(n)).
u64 integer_sqrt(u64 n) noexcept;
// floor(n^(1/k)) for k >= 1.
u64 integer_root(u64 n, unsigned k) noexcept;

}  // namespace quadrep
