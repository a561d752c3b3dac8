#include "hecke/arith.hpp"

#include <algorithm>
#include <stdexcept>

#include <gmp.h>

namespace hecke {

namespace {

constexpr unsigned long kTrialLimit = 1000000;

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return Integer(2);
  // Brent's variant with a deterministic sequence of constants.
  for (unsigned long increment = 1;; ++increment) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return Integer((v * v + increment) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(abs_value(Integer(x - y)), n);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

}  // namespace

Discriminant::Discriminant(Integer d) : d_(std::move(d)) {
  if (!is_in_omega(d_)) {
    throw std::invalid_argument("not a discriminant (need d > 0, d = 0,1 mod 4, non-square): " +
                                d_.str());
  }
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.backend().data(), 30) != 0;
}

Factorization factor(const Integer& n_in) {
  if (n_in < 1) throw std::invalid_argument("factor: n must be >= 1");
  Factorization out;
  Integer n = n_in;
  auto take = [&](const Integer& p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  take(Integer(2));
  for (unsigned long p = 3; p <= kTrialLimit; p += 2) {
    if (Integer(p) * p > n) break;
    if (n % p == 0) take(Integer(p));
  }
  if (n == 1) return out;
  if (n <= Integer(kTrialLimit) * kTrialLimit) {
    out.push_back({n, 1});
    return out;
  }
  std::vector<Integer> primes;
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (const auto& p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> result{Integer(1)};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t existing = result.size();
    Integer power = 1;
    for (unsigned i = 1; i <= e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < existing; ++j) result.push_back(result[j] * power);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& pe : factor(n)) out.push_back(pe.prime);
  return out;
}

int moebius(const Integer& n) {
  int sign = 1;
  for (const auto& pe : factor(n)) {
    if (pe.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

Integer euler_phi(const Integer& n) {
  Integer result = n;
  for (const auto& pe : factor(n)) result = result / pe.prime * (pe.prime - 1);
  return result;
}

Integer divisor_sum(const Integer& n) {
  Integer result = 1;
  for (const auto& [p, e] : factor(n)) {
    Integer term = 1, power = 1;
    for (unsigned i = 1; i <= e; ++i) {
      power *= p;
      term += power;
    }
    result *= term;
  }
  return result;
}

bool is_squarefree(const Integer& n) {
  if (n < 1) return false;
  for (const auto& pe : factor(n)) {
    if (pe.exponent > 1) return false;
  }
  return true;
}

int kronecker(const Integer& d, const Integer& m) {
  if (m < 1) throw std::invalid_argument("kronecker: m must be >= 1");
  return mpz_kronecker(d.backend().data(), m.backend().data());
}

bool is_in_omega(const Integer& d) {
  if (d <= 0) return false;
  const Integer r = mod_floor(d, Integer(4));
  if (r != 0 && r != 1) return false;
  return !integer_sqrt_exact(d).has_value();
}

Integer isqrt(const Integer& q) {
  if (q < 0) throw std::invalid_argument("isqrt: negative argument");
  return boost::multiprecision::sqrt(q);
}

std::optional<Integer> integer_sqrt_exact(const Integer& q) {
  if (q < 0) return std::nullopt;
  Integer r = isqrt(q);
  if (r * r == q) return r;
  return std::nullopt;
}

}  // namespace hecke
