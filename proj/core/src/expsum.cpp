#include "quadrep/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quadrep/errors.hpp"

namespace quadrep {

namespace {

void require_prime(u64 p, const char* what) {
  if (!is_prime_64(p)) {
    throw InvalidArgument(std::string(what) + ": p = " + std::to_string(p) + " is not prime");
  }
}

void require_q(u64 q, const char* what) {
  if (q == 0) throw InvalidArgument(std::string(what) + ": q must be >= 1");
}

}  // namespace

i64 sigma_bruteforce(u64 q, u64 p) {
  require_q(q, "sigma_bruteforce");
  require_prime(p, "sigma_bruteforce");

  // c_q(m) only depends on g = gcd(q, m); memoize over the divisors of q.
  const u64 phi_q = euler_phi(q);
  std::vector<std::pair<u64, i64>> memo;
  auto term = [&](u64 residue) -> i64 {
    const u64 g = gcd(q, residue);
    for (const auto& [d, v] : memo) {
      if (d == g) return v;
    }
    const u64 d = q / g;
    const int mu = mobius(d);
    const i64 v = mu == 0 ? 0 : mu * static_cast<i64>(phi_q / euler_phi(d));
    memo.emplace_back(g, v);
    return v;
  };

  // m_n = p + n^2 + n mod q, advanced by m_{n+1} - m_n = 2n + 2.
  i64 total = 0;
  u64 m = p % q;
  for (u64 n = 0; n < q; ++n) {
    total += term(m);
    m = static_cast<u64>((static_cast<u128>(m) + 2 * static_cast<u128>(n) + 2) % q);
  }
  return 2 * total;
}

ComplexValue sigma_complex_check(u64 q, u64 p) {
  require_q(q, "sigma_complex_check");
  require_prime(p, "sigma_complex_check");
  const u64 modulus = 4 * q;
  const u64 kappa = 4 * p - 1;

  std::vector<double> cos_table(modulus), sin_table(modulus);
  for (u64 k = 0; k < modulus; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(modulus);
    cos_table[k] = std::cos(angle);
    sin_table[k] = std::sin(angle);
  }
  std::vector<u64> units;
  for (u64 a = 1; a <= q; ++a) {
    if (gcd(a, q) == 1) units.push_back(a);
  }

  double re = 0.0, im = 0.0;
  for (u64 r = 1; r <= modulus; r += 2) {
    const u64 base = static_cast<u64>((kappa % modulus + static_cast<u128>(r) * r) % modulus);
    double row_re = 0.0, row_im = 0.0;
    for (const u64 a : units) {
      const u64 k = static_cast<u64>(static_cast<u128>(a) * base % modulus);
      row_re += cos_table[k];
      row_im += sin_table[k];
    }
    re += row_re;
    im += row_im;
  }
  return {re, im};
}

i64 sigma_closed(u64 q, u64 p) {
  require_q(q, "sigma_closed");
  require_prime(p, "sigma_closed");
  if (!is_squarefree(q)) {
    throw InvalidArgument("sigma_closed: closed form needs squarefree q, got " + std::to_string(q));
  }
  const i64 minus_kappa = 1 - 4 * static_cast<i64>(p);
  if (q % 2 == 0) {
    // Sigma(2) = -4 for odd p (kappa = 3 mod 8, no odd r has 8 | kappa + r^2)
    // and +4 for p = 2 (every odd r does); 2 Sigma(2m) = Sigma(2) Sigma(m).
    const i64 sign = p == 2 ? 1 : -1;
    return sign * 2 * static_cast<i64>(q) * jacobi(minus_kappa, q / 2);
  }
  return 2 * static_cast<i64>(q) * jacobi(minus_kappa, q);
}

bool check_multiplicativity(u64 q1, u64 q2, u64 p) {
  if (q1 == 0 || q2 == 0 || q1 % 2 == 0 || q2 % 2 == 0) {
    throw InvalidArgument("check_multiplicativity: q1 and q2 must be odd and positive");
  }
  if (gcd(q1, q2) != 1) {
    throw InvalidArgument("check_multiplicativity: q1 and q2 must be coprime");
  }
  if (!is_squarefree(q1) || !is_squarefree(q2)) {
    throw InvalidArgument("check_multiplicativity: q1 and q2 must be squarefree");
  }
  const i64 joint = sigma_bruteforce(q1 * q2, p);
  return 2 * joint == sigma_bruteforce(q1, p) * sigma_bruteforce(q2, p);
}

SigmaEvaluation evaluate_sigma(u64 q, u64 p) {
  SigmaEvaluation e;
  e.q = q;
  e.p = p;
  e.kappa = 4 * p - 1;
  e.brute_value = sigma_bruteforce(q, p);
  if (is_squarefree(q)) e.closed_value = sigma_closed(q, p);
  return e;
}

}  // namespace quadrep
