#ifndef HECKE_SPECIAL_HPP
#define HECKE_SPECIAL_HPP

// Complex special functions in double precision: log-gamma, digamma and the
// Riemann zeta function with its derivative.

#include "hecke/numbers.hpp"

namespace hecke {

/// log Gamma(z) (Lanczos, g = 7, nine terms); reflection for Re z < 1/2.
/// The branch is continuous on the right half-plane; only exp(log_gamma)
/// and differences of log_gamma along continuous paths are meaningful.
Complex log_gamma(Complex z);

Complex gamma_function(Complex z);

/// psi(z) = Gamma'(z) / Gamma(z): upward recurrence to Re z >= 12, then the
/// asymptotic series; reflection for Re z < 1/2.
Complex digamma(Complex z);

/// zeta(s) by Euler-Maclaurin summation; throws std::domain_error at s = 1.
Complex zeta(Complex s);

/// zeta'(s), from the termwise derivative of the same Euler-Maclaurin sum.
Complex zeta_derivative(Complex s);

}  // namespace hecke

#endif  // HECKE_SPECIAL_HPP
