#include <numeric>

#include "doctest.h"
#include "hecke/arith.hpp"

using namespace hecke;

TEST_CASE("factor examples") {
  CHECK(factor(1).empty());
  CHECK(factor(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(factor(9991) == Factorization{{97, 1}, {103, 1}});
}

TEST_CASE("factor reconstructs with increasing primes") {
  for (long n = 1; n <= 3000; ++n) {
    Integer prod = 1;
    Integer last = 1;
    for (const auto& pp : factor(n)) {
      CHECK(pp.prime > last);
      CHECK(is_probable_prime(pp.prime));
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
  // Beyond trial division: a product of two primes above 10^6.
  const Integer p("1000003"), q("1000033");
  CHECK(factor(p * q) == Factorization{{p, 1}, {q, 1}});
}

TEST_CASE("divisors examples") {
  CHECK(divisors(1) == std::vector<Integer>{1});
  CHECK(divisors(6) == std::vector<Integer>{1, 2, 3, 6});
  CHECK(divisors(30) == std::vector<Integer>{1, 2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("moebius, totient and divisor sum examples") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(6) == 2);
  CHECK(euler_phi(30) == 8);
  CHECK(divisor_sum(1) == 1);
  CHECK(divisor_sum(6) == 12);
  CHECK(divisor_sum(12) == 28);
}

TEST_CASE("moebius sums over divisors vanish past 1") {
  for (long n = 1; n <= 10000; ++n) {
    int total = 0;
    for (const auto& m : divisors(n)) total += moebius(m);
    CHECK(total == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("totient matches a direct count") {
  for (long n = 1; n <= 1000; ++n) {
    long count = 0;
    for (long a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("kronecker examples") {
  CHECK(kronecker(5, 1) == 1);
  CHECK(kronecker(5, 11) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(8, 2) == 0);
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(13, 3) == 1);
  CHECK(kronecker(8, 3) == -1);
}

TEST_CASE("kronecker against Euler's criterion at odd primes") {
  for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
    for (long d = 0; d < 3 * p; ++d) {
      long expected = 0;
      if (d % p != 0) {
        expected = -1;
        for (long x = 1; x < p; ++x) {
          if ((x * x - d) % p == 0) expected = 1;
        }
      }
      CHECK(kronecker(d, p) == expected);
    }
  }
}

TEST_CASE("kronecker is completely multiplicative in m") {
  // Every pair m1, m2 <= 1000 for a sample of d, using a lookup table so the
  // exhaustive grid stays fast; the full d range uses a coarser m grid.
  for (long d : {-7L, 5L, 8L, 12L, 13L, 21L, 40L, 60L, 97L, 1000L}) {
    std::vector<int> table(1001);
    for (long m = 1; m <= 1000; ++m) table[m] = kronecker(d, m);
    for (long m1 = 1; m1 <= 1000; ++m1) {
      for (long m2 = 1; m1 * m2 <= 1000; ++m2) {
        REQUIRE(table[m1 * m2] == table[m1] * table[m2]);
      }
    }
  }
  for (long d = 1; d <= 1000; ++d) {
    for (long m1 = 1; m1 <= 40; ++m1) {
      for (long m2 = 1; m2 <= 25; ++m2) {
        REQUIRE(kronecker(d, m1 * m2) == kronecker(d, m1) * kronecker(d, m2));
      }
    }
  }
}

TEST_CASE("omega membership") {
  CHECK(is_in_omega(5));
  CHECK_FALSE(is_in_omega(9));
  CHECK_FALSE(is_in_omega(7));
  CHECK_FALSE(is_in_omega(0));
  CHECK_FALSE(is_in_omega(-3));
  CHECK(is_in_omega(8));
  CHECK_THROWS_AS(Discriminant(16), std::invalid_argument);
  CHECK(Discriminant(12).value() == 12);
}

TEST_CASE("exact square roots") {
  CHECK(integer_sqrt_exact(0) == Integer(0));
  CHECK(integer_sqrt_exact(324) == Integer(18));
  CHECK_FALSE(integer_sqrt_exact(24).has_value());
  CHECK_FALSE(integer_sqrt_exact(-4).has_value());
  for (long r = 0; r <= 1000000; ++r) {
    const Integer q = Integer(r) * r;
    REQUIRE(integer_sqrt_exact(q) == Integer(r));
    if (r > 0) REQUIRE_FALSE(integer_sqrt_exact(q + 1).has_value());
  }
  const Integer big("123456789012345678901234567890");
  CHECK(integer_sqrt_exact(big * big) == big);
  CHECK(isqrt(big * big + 5) == big);
}

TEST_CASE("square-free detection") {
  CHECK(is_squarefree(1));
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
  CHECK(prime_divisors(60) == std::vector<Integer>{2, 3, 5});
}
