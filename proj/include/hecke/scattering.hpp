#ifndef HECKE_SCATTERING_HPP
#define HECKE_SCATTERING_HPP

// Scattering matrix of the Eisenstein series of Gamma0(N), N square-free.
// The cusps are 1/w for w | N; with v = N/w the entries factor as
// phi_ij(s) = phi(s) p_ij(s).

#include <vector>

#include <Eigen/Dense>

#include "hecke/gamma0.hpp"
#include "hecke/numbers.hpp"

namespace hecke {

struct ScatteringMatrix {
  Integer level;
  Complex s;
  std::vector<Cusp> cusps;  // row/column order, as from enumerate_cusps
  Eigen::MatrixXcd entries;
};

/// sqrt(pi) Gamma(s - 1/2) / Gamma(s) * zeta(2s - 1) / zeta(2s).
/// Returns the limit -1 within 1e-9 of s = 1/2. Throws std::domain_error
/// where zeta(2s) vanishes or at a pole.
Complex phi_scalar(Complex s);

/// totient((v_i, v_j)(w_i, w_j)) prod_{p|N} (p^{2s} - 1)^{-1}
///   prod_{p | (w_i, v_j)(w_j, v_i)} (p^s - p^{1-s}).
/// Throws std::invalid_argument unless N is square-free and w_i, w_j | N.
Complex p_entry(const Integer& level, const Integer& w_i, const Integer& w_j, Complex s);

/// d/ds of p_entry, by the product rule over the finite product.
Complex p_entry_derivative(const Integer& level, const Integer& w_i, const Integer& w_j, Complex s);

/// Throws std::invalid_argument unless N is square-free.
ScatteringMatrix scattering_matrix(const Integer& level, Complex s);

/// phi'(s)/phi(s) on Re s = 1/2:
///   2 ln pi - psi(s) - psi(1-s) - 2 zeta'(2s)/zeta(2s) - 2 zeta'(2-2s)/zeta(2-2s).
/// Throws std::domain_error off the line or within 1e-8 of s = 1/2.
Complex phi_log_derivative(Complex s);

/// phi_ij'(s) phi_ij(1 - s) on Re s = 1/2, written as
/// (phi'/phi)(s) |p_ij(s)|^2 + p_ij'(s) p_ij(conj s). Indices follow
/// enumerate_cusps. Errors as phi_log_derivative, plus std::out_of_range.
Complex entry_log_combination(const Integer& level, std::size_t i, std::size_t j, Complex s);

}  // namespace hecke

#endif  // HECKE_SCATTERING_HPP
