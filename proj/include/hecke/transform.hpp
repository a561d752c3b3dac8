#ifndef HECKE_TRANSFORM_HPP
#define HECKE_TRANSFORM_HPP

// The point-pair kernel k(t) = (1 + t/4)^{-s}, its transforms g and h, and
// the per-class weights built from them.

#include <vector>

#include "hecke/numbers.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

/// c = 2 sqrt(pi) Gamma(s - 1/2) / Gamma(s). Requires Re s > 1/2.
Complex selberg_constant(Complex s);

/// (1 + t/4)^{-s}, t >= 0.
Complex kernel_k(double t, Complex s);

/// Closed form g(u) = c (1 + w/4)^{1/2 - s} with w = e^u + e^{-u} - 2,
/// i.e. c cosh(u/2)^{1 - 2s}. Even in u.
Complex transform_g(double u, Complex s);

/// g(u) = integral_w^inf k(t) / sqrt(t - w) dt, after t = w + tau^2.
QuadratureResult g_by_quadrature(double u, Complex s, const QuadratureConfig& cfg = {});

/// h(r) = c 4^{s-1/2} Gamma(s-1/2+ir) Gamma(s-1/2-ir) / Gamma(2s-1).
/// Requires |Im r| < Re s - 1/2; throws std::domain_error within 1e-8 of a
/// pole of either Gamma factor.
Complex transform_h(Complex r, Complex s);

/// The same closed form without the strip check (analytic continuation).
Complex transform_h_continued(Complex r, Complex s);

/// h(r) = integral of g(u) e^{iru} du over the real line, by quadrature.
QuadratureResult h_by_quadrature(Complex r, Complex s, const QuadratureConfig& cfg = {});

/// Limit of (s - 1/2 - i kappa) h(r) as s -> 1/2 + i kappa.
struct ResidueEstimate {
  Complex extrapolated;
  Complex closed_form;  // 4^{1/2 + i kappa} sqrt(pi) Gamma(i kappa) / Gamma(1/2 + i kappa) for r = +-kappa, else 0
  double spread = 0;    // difference between the last two extrapolation levels
};

/// Approaches along s = 1/2 + i kappa + delta for the given real steps delta
/// (descending, positive) and extrapolates to delta = 0 by Richardson/Neville.
/// Throws std::runtime_error when the extrapolation table does not settle.
ResidueEstimate residue_factor(double kappa, double r, const std::vector<double>& steps = {1e-2, 1e-3, 1e-4, 1e-5});

/// (pi / (2 m sin theta)) integral_0^inf k(t) / sqrt(t + 4 sin^2 theta) dt.
QuadratureResult elliptic_weight(double theta, unsigned m, Complex s, const QuadratureConfig& cfg = {});

/// ln(NP1) / (NP^{1/2} - NP^{-1/2}) * g(ln NP).
Complex hyperbolic_weight(double norm_p, double norm_p1, Complex s);

/// The same weight from its defining double integral over 1 <= y <= NP1,
/// x real, of k(|z - NP z|^2 / (y NP y)) dx dy / y^2.
QuadratureResult hyperbolic_weight_by_quadrature(double norm_p, double norm_p1, Complex s,
                                                 const QuadratureConfig& cfg = {});

}  // namespace hecke

#endif  // HECKE_TRANSFORM_HPP
