#include "quadrep/arithmetic.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "quadrep/errors.hpp"

namespace quadrep {

namespace {

void require_positive(u64 n, const char* what) {
  if (n == 0) {
    throw InvalidArgument(std::string(what) + ": argument must be >= 1");
  }
}

// Saturating r^k; returns true when the exact power fits and equals target.
bool power_equals(u64 r, unsigned k, u64 target) noexcept {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= r;
    if (acc > target) return false;
  }
  return acc == target;
}

bool power_at_most(u64 r, unsigned k, u64 target) noexcept {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= r;
    if (acc > target) return false;
  }
  return true;
}

bool miller_rabin_round(u64 n, u64 d, int s, u64 a) noexcept {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

std::vector<PrimePower> factorize_small(u64 n) {
  require_positive(n, "factorize_small");
  std::vector<PrimePower> out;
  if ((n & 1) == 0) {
    const auto tz = static_cast<unsigned>(std::countr_zero(n));
    out.push_back({2, tz});
    n >>= tz;
  }
  for (u64 d = 3; d <= n / d; d += 2) {
    if (n % d != 0) continue;
    unsigned e = 0;
    do {
      n /= d;
      ++e;
    } while (n % d == 0);
    out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

int jacobi_reduced(u64 a, u64 n) noexcept {
  int t = 1;
  while (a != 0) {
    const int z = std::countr_zero(a);
    a >>= z;
    const u64 n8 = n & 7;
    if ((z & 1) && (n8 == 3 || n8 == 5)) t = -t;
    // quadratic reciprocity on the odd pair (a, n)
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    const u64 r = n % a;
    n = a;
    a = r;
  }
  return n == 1 ? t : 0;
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || (n & 1) == 0) {
    throw InvalidArgument("jacobi: modulus must be odd and positive, got " +
                          std::to_string(n));
  }
  u64 r;
  if (a >= 0) {
    r = static_cast<u64>(a) % n;
  } else {
    // |a| without overflow for INT64_MIN
    const u64 mag = static_cast<u64>(-(a + 1)) + 1;
    r = (n - mag % n) % n;
  }
  return jacobi_reduced(r, n);
}

int mobius(u64 n) {
  require_positive(n, "mobius");
  int sign = 1;
  for (const auto& f : factorize_small(n)) {
    if (f.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u64 euler_phi(u64 n) {
  require_positive(n, "euler_phi");
  u64 phi = n;
  for (const auto& f : factorize_small(n)) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

bool is_squarefree(u64 n) {
  require_positive(n, "is_squarefree");
  for (const auto& f : factorize_small(n)) {
    if (f.exponent > 1) return false;
  }
  return true;
}

bool is_prime_64(u64 m) noexcept {
  static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (m < 2) return false;
  for (const u64 p : kWitnesses) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  if (m < 41 * 41) return true;
  u64 d = m - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (const u64 a : kWitnesses) {
    if (!miller_rabin_round(m, d, s, a)) return false;
  }
  return true;
}

double von_mangoldt(u64 m) noexcept {
  if (m < 2) return 0.0;
  if (is_prime_64(m)) return std::log(static_cast<double>(m));
  if ((m & (m - 1)) == 0) return std::log(2.0);
  for (unsigned k = 2; k < 64; ++k) {
    const u64 r = integer_root(m, k);
    if (r < 3) break;
    if (power_equals(r, k, m) && is_prime_64(r)) {
      return std::log(static_cast<double>(r));
    }
  }
  return 0.0;
}

i64 ramanujan_sum(u64 q, i64 m) {
  require_positive(q, "ramanujan_sum");
  const u64 mag = m >= 0 ? static_cast<u64>(m) : static_cast<u64>(-(m + 1)) + 1;
  const u64 g = gcd(q, mag % q);  // gcd(q, 0) = q
  const u64 d = q / g;
  const int mu = mobius(d);
  if (mu == 0) return 0;
  return mu * static_cast<i64>(euler_phi(q) / euler_phi(d));
}

u64 integer_sqrt(u64 n) noexcept {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 integer_root(u64 n, unsigned k) noexcept {
  if (k == 0) return 0;
  if (k == 1 || n < 2) return n;
  if (k == 2) return integer_sqrt(n);
  if (k >= 64) return 1;
  u64 r = static_cast<u64>(
      std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(k)));
  while (r > 1 && !power_at_most(r, k, n)) --r;
  while (power_at_most(r + 1, k, n)) ++r;
  return r;
}

}  // namespace quadrep
