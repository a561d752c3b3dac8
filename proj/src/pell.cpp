#include "hecke/pell.hpp"

#include <stdexcept>

namespace hecke {

namespace {

// floor((p + sqrt d) / q) for a non-square d and q != 0.
Integer surd_floor(const Integer& p, const Integer& q, const Integer& sqrt_floor) {
  if (q > 0) return floor_div(p + sqrt_floor, q);
  return floor_div(p + sqrt_floor + 1, q);
}

}  // namespace

Real log_unit(const Integer& d, const Integer& v, const Integer& u, unsigned digits10) {
  PrecisionGuard guard(digits10 + 10);
  Real eps = (Real(v) + Real(u) * boost::multiprecision::sqrt(Real(d))) / 2;
  Real out = boost::multiprecision::log(eps);
  return out;
}

PellSolution pell_multiply(const Integer& d, const PellSolution& x, const PellSolution& y) {
  return PellSolution{Integer((x.v * y.v + d * x.u * y.u) / 2),
                      Integer((x.v * y.u + x.u * y.v) / 2)};
}

PellFundamental pell_fundamental(const Discriminant& disc, unsigned digits10) {
  const Integer& d = disc.value();
  const Integer s = isqrt(d);
  const Integer p0 = mod_floor(d, Integer(2));

  Integer big_p = p0, big_q = 2;
  Integer h_prev = 1, h_prev2 = 0;  // numerators
  Integer k_prev = 0, k_prev2 = 1;  // denominators

  // A period of the expansion has length O(sqrt(d) log d); the unit shows up
  // within the first period.
  const Integer cap = 64 * (s + 16);
  for (Integer step = 0; step < cap; ++step) {
    const Integer a = surd_floor(big_p, big_q, s);
    const Integer h = a * h_prev + h_prev2;
    const Integer k = a * k_prev + k_prev2;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;

    const Integer v = 2 * h - k * p0;
    const Integer u = k;
    const Integer norm4 = v * v - d * u * u;
    if (v > 0 && (norm4 == 4 || norm4 == -4)) {
      PellSolution unit{v, u};
      if (norm4 == -4) unit = pell_multiply(d, unit, unit);
      return PellFundamental{disc, unit.v, unit.u, log_unit(d, unit.v, unit.u, digits10)};
    }

    big_p = a * big_q - big_p;
    big_q = (d - big_p * big_p) / big_q;
  }
  throw std::logic_error("pell_fundamental: continued fraction did not close for d = " + d.str());
}

std::vector<PellSolution> pell_general(const Integer& d, const Integer& rhs, const Integer& u_max) {
  if (u_max < 1) throw std::invalid_argument("pell_general: u_max must be >= 1");
  if (d <= 0 || integer_sqrt_exact(d)) {
    throw std::invalid_argument("pell_general: d must be a positive non-square");
  }
  std::vector<PellSolution> out;
  for (Integer u = 1; u <= u_max; ++u) {
    const Integer q = rhs + d * u * u;
    if (q <= 0) continue;
    if (auto v = integer_sqrt_exact(q); v && *v > 0) out.push_back({*v, u});
  }
  return out;
}

PellSolution power_of_fundamental(const PellFundamental& pf, unsigned long k) {
  if (k < 1) throw std::invalid_argument("power_of_fundamental: k must be >= 1");
  const Integer& d = pf.d.value();
  PellSolution base{pf.v0, pf.u0};
  PellSolution result{Integer(2), Integer(0)};  // the unit 1
  while (k > 0) {
    if (k & 1UL) result = pell_multiply(d, result, base);
    base = pell_multiply(d, base, base);
    k >>= 1UL;
  }
  return result;
}

PellFundamental scaled_fundamental(const Discriminant& d, const Integer& scale, unsigned digits10) {
  if (scale < 1) throw std::invalid_argument("scaled_fundamental: scale must be >= 1");
  return pell_fundamental(Discriminant(d.value() * scale * scale), digits10);
}

}  // namespace hecke
