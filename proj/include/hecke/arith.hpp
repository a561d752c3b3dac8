#ifndef HECKE_ARITH_HPP
#define HECKE_ARITH_HPP

// Exact integer arithmetic: factorization, divisor functions, the Kronecker
// symbol and the discriminant set (positive d = 0,1 mod 4, not a square).

#include <optional>
#include <vector>

#include "hecke/numbers.hpp"

namespace hecke {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Primes strictly increasing; the product of prime^exponent is the input.
using Factorization = std::vector<PrimePower>;

/// A positive integer d with d = 0 or 1 (mod 4) that is not a perfect square.
class Discriminant {
 public:
  /// Throws std::invalid_argument unless is_in_omega(d).
  explicit Discriminant(Integer d);

  const Integer& value() const { return d_; }
  friend bool operator==(const Discriminant&, const Discriminant&) = default;
  friend auto operator<=>(const Discriminant& x, const Discriminant& y) {
    return x.d_ < y.d_ ? std::strong_ordering::less
                       : (y.d_ < x.d_ ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Integer d_;
};

/// Trial division up to 10^6, then Pollard rho with a fixed seed.
Factorization factor(const Integer& n);

/// All positive divisors in ascending order.
std::vector<Integer> divisors(const Integer& n);

/// Distinct prime divisors in ascending order.
std::vector<Integer> prime_divisors(const Integer& n);

int moebius(const Integer& n);
Integer euler_phi(const Integer& n);

/// sigma(n), the sum of the positive divisors.
Integer divisor_sum(const Integer& n);

bool is_squarefree(const Integer& n);

/// Kronecker symbol (d/m) for m >= 1, completely multiplicative in m, with
/// (d/2) = 0 for even d, +1 for d = +-1 mod 8 and -1 for d = +-3 mod 8.
int kronecker(const Integer& d, const Integer& m);

bool is_in_omega(const Integer& d);

/// floor(sqrt(q)) for q >= 0.
Integer isqrt(const Integer& q);

/// r with r*r == q when q is a perfect square.
std::optional<Integer> integer_sqrt_exact(const Integer& q);

/// Deterministic for the sizes used here (Baillie-PSW plus Miller-Rabin rounds).
bool is_probable_prime(const Integer& n);

}  // namespace hecke

#endif  // HECKE_ARITH_HPP
