#include "hecke/scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hecke/arith.hpp"
#include "hecke/special.hpp"

namespace hecke {

namespace {

constexpr double kLineTolerance = 1e-12;
constexpr double kCentreExclusion = 1e-8;

void require_squarefree(const Integer& level) {
  if (level < 1 || !is_squarefree(level)) {
    throw std::invalid_argument("scattering: level must be a positive square-free integer");
  }
}

void require_critical_line(Complex s) {
  if (std::abs(s.real() - 0.5) > kLineTolerance) {
    throw std::domain_error("scattering: s must lie on Re s = 1/2");
  }
  if (std::abs(s - Complex(0.5, 0.0)) < kCentreExclusion) {
    throw std::domain_error("scattering: s too close to 1/2");
  }
}

Complex power(double base, Complex e) { return std::exp(e * std::log(base)); }

// The factors of p_ij(s) that depend on s, each with its derivative.
struct Factor {
  Complex value;
  Complex derivative;
};

std::vector<Factor> s_factors(const Integer& level, const Integer& w_i, const Integer& w_j,
                              Complex s) {
  std::vector<Factor> out;
  for (const auto& p : prime_divisors(level)) {
    const double pd = to_double(p);
    const double lp = std::log(pd);
    const Complex p2s = power(pd, 2.0 * s);
    const Complex denom = p2s - 1.0;
    out.push_back({1.0 / denom, -2.0 * lp * p2s / (denom * denom)});
  }
  const Integer v_i = level / w_i;
  const Integer v_j = level / w_j;
  const Integer coupling = gcd(w_i, v_j) * gcd(w_j, v_i);
  for (const auto& p : prime_divisors(coupling)) {
    const double pd = to_double(p);
    const double lp = std::log(pd);
    const Complex a = power(pd, s);
    const Complex b = power(pd, 1.0 - s);
    out.push_back({a - b, lp * (a + b)});
  }
  return out;
}

double totient_weight(const Integer& level, const Integer& w_i, const Integer& w_j) {
  if (level < 1 || !is_squarefree(level)) {
    throw std::invalid_argument("p_entry: level must be a positive square-free integer");
  }
  if (w_i < 1 || w_j < 1 || level % w_i != 0 || level % w_j != 0) {
    throw std::invalid_argument("p_entry: w_i and w_j must divide the level");
  }
  const Integer v_i = level / w_i;
  const Integer v_j = level / w_j;
  return to_double(euler_phi(gcd(v_i, v_j) * gcd(w_i, w_j)));
}

}  // namespace

Complex phi_scalar(Complex s) {
  if (std::abs(s - Complex(0.5, 0.0)) < 1e-9) return Complex(-1.0, 0.0);
  const Complex z2s = zeta(2.0 * s);
  if (std::abs(z2s) == 0.0) throw std::domain_error("phi_scalar: zeta(2s) vanishes");
  const Complex ratio = std::exp(log_gamma(s - 0.5) - log_gamma(s));
  return std::sqrt(std::numbers::pi) * ratio * zeta(2.0 * s - 1.0) / z2s;
}

Complex p_entry(const Integer& level, const Integer& w_i, const Integer& w_j, Complex s) {
  Complex value = totient_weight(level, w_i, w_j);
  for (const auto& f : s_factors(level, w_i, w_j, s)) value *= f.value;
  return value;
}

Complex p_entry_derivative(const Integer& level, const Integer& w_i, const Integer& w_j,
                           Complex s) {
  const double weight = totient_weight(level, w_i, w_j);
  const auto factors = s_factors(level, w_i, w_j, s);
  Complex total = 0.0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Complex term = factors[k].derivative;
    for (std::size_t l = 0; l < factors.size(); ++l) {
      if (l != k) term *= factors[l].value;
    }
    total += term;
  }
  return weight * total;
}

ScatteringMatrix scattering_matrix(const Integer& level, Complex s) {
  require_squarefree(level);
  ScatteringMatrix m{level, s, enumerate_cusps(level), {}};
  const auto n = static_cast<Eigen::Index>(m.cusps.size());
  const Complex phi = phi_scalar(s);
  m.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m.entries(i, j) = phi * p_entry(level, m.cusps[i].w, m.cusps[j].w, s);
    }
  }
  return m;
}

Complex phi_log_derivative(Complex s) {
  require_critical_line(s);
  const Complex one(1.0, 0.0);
  const Complex a = 2.0 * s;
  const Complex b = 2.0 - 2.0 * s;
  return 2.0 * std::log(std::numbers::pi) - digamma(s) - digamma(one - s) -
         2.0 * zeta_derivative(a) / zeta(a) - 2.0 * zeta_derivative(b) / zeta(b);
}

Complex entry_log_combination(const Integer& level, std::size_t i, std::size_t j, Complex s) {
  require_critical_line(s);
  require_squarefree(level);
  const auto cusps = enumerate_cusps(level);
  if (i >= cusps.size() || j >= cusps.size()) {
    throw std::out_of_range("entry_log_combination: cusp index out of range");
  }
  const Integer& wi = cusps[i].w;
  const Integer& wj = cusps[j].w;
  const Complex p = p_entry(level, wi, wj, s);
  const Complex p_bar = p_entry(level, wi, wj, std::conj(s));
  return phi_log_derivative(s) * std::norm(p) + p_entry_derivative(level, wi, wj, s) * p_bar;
}

}  // namespace hecke
