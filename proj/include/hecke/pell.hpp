#ifndef HECKE_PELL_HPP
#define HECKE_PELL_HPP

// Solutions of v^2 - d u^2 = 4 and the units eps_d = (v0 + u0 sqrt d) / 2.

#include <vector>

#include "hecke/arith.hpp"
#include "hecke/numbers.hpp"

namespace hecke {

struct PellSolution {
  Integer v;
  Integer u;
  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

/// Minimal positive solution of v^2 - d u^2 = 4 together with ln(eps_d).
struct PellFundamental {
  Discriminant d;
  Integer v0;
  Integer u0;
  Real log_eps;  // carries its own precision

  double log_eps_value() const { return to_double(log_eps); }
};

/// Continued-fraction expansion of (d mod 2 + sqrt d) / 2; the first
/// convergent of norm +-1 is the fundamental unit of the order of
/// discriminant d, squared when its norm is -1.
PellFundamental pell_fundamental(const Discriminant& d,
                                 unsigned digits10 = kDefaultPrecisionDigits);

/// All (v, u) with 1 <= u <= u_max, v > 0 and v^2 - d u^2 = rhs, ascending in u.
/// Throws std::invalid_argument when u_max < 1 or d is not a positive non-square.
std::vector<PellSolution> pell_general(const Integer& d, const Integer& rhs, const Integer& u_max);

/// (v1 + u1 sqrt d)/2 * (v2 + u2 sqrt d)/2 in the same coordinates.
PellSolution pell_multiply(const Integer& d, const PellSolution& x, const PellSolution& y);

/// (v_k + u_k sqrt d)/2 = eps_d^k, k >= 1.
PellSolution power_of_fundamental(const PellFundamental& pf, unsigned long k);

/// Fundamental solution for the scaled discriminant d * scale^2.
PellFundamental scaled_fundamental(const Discriminant& d, const Integer& scale,
                                   unsigned digits10 = kDefaultPrecisionDigits);

/// ln((v + u sqrt d) / 2) at the requested precision.
Real log_unit(const Integer& d, const Integer& v, const Integer& u,
              unsigned digits10 = kDefaultPrecisionDigits);

}  // namespace hecke

#endif  // HECKE_PELL_HPP
