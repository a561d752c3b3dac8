#include "hecke/transform.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "hecke/special.hpp"

namespace hecke {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
const Complex kI{0.0, 1.0};

// ln cosh(x) without overflow.
double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2 * ax)) - std::log(2.0);
}

double distance_to_pole(Complex z) {  // distance to the nearest non-positive integer
  if (z.real() > 0) return std::abs(z);
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - Complex(nearest, 0.0));
}

}  // namespace

Complex selberg_constant(Complex s) {
  if (s.real() <= 0.5) throw std::domain_error("selberg_constant: requires Re s > 1/2");
  return 2.0 * std::sqrt(kPi) * std::exp(log_gamma(s - 0.5) - log_gamma(s));
}

Complex kernel_k(double t, Complex s) {
  if (t < 0) throw std::domain_error("kernel_k: t must be >= 0");
  return std::exp(-s * std::log1p(t / 4));
}

Complex transform_g(double u, Complex s) {
  return selberg_constant(s) * std::exp((1.0 - 2.0 * s) * log_cosh(u / 2));
}

QuadratureResult g_by_quadrature(double u, Complex s, const QuadratureConfig& cfg) {
  const double w = 4 * std::pow(std::sinh(u / 2), 2);  // e^u + e^{-u} - 2
  auto f = [&](double tau) { return 2.0 * kernel_k(w + tau * tau, s); };
  return integrate(f, 0.0, std::numeric_limits<double>::infinity(), cfg);
}

Complex transform_h_continued(Complex r, Complex s) {
  const Complex a = s - 0.5;
  for (const Complex z : {a + kI * r, a - kI * r, 2.0 * s - 1.0}) {
    if (distance_to_pole(z) < 1e-8) throw std::domain_error("transform_h: too close to a Gamma pole");
  }
  const Complex c_log = std::log(2.0 * std::sqrt(kPi)) + log_gamma(a) - log_gamma(s);
  return std::exp(c_log + a * std::log(4.0) + log_gamma(a + kI * r) + log_gamma(a - kI * r) -
                  log_gamma(2.0 * s - 1.0));
}

Complex transform_h(Complex r, Complex s) {
  if (!(std::abs(r.imag()) < s.real() - 0.5)) {
    throw std::domain_error("transform_h: requires |Im r| < Re s - 1/2");
  }
  return transform_h_continued(r, s);
}

QuadratureResult h_by_quadrature(Complex r, Complex s, const QuadratureConfig& cfg) {
  // g is even, so h(r) = 2 integral_0^inf g(u) cos(ru) du.
  const Complex c = selberg_constant(s);
  // cos(ru) is split into exponentials and merged with the decay of g so
  // that complex r cannot overflow far out on the tail.
  auto f = [&](double u) {
    const Complex base = (1.0 - 2.0 * s) * log_cosh(u / 2);
    return c * (std::exp(base + kI * r * u) + std::exp(base - kI * r * u));
  };
  return integrate(f, 0.0, std::numeric_limits<double>::infinity(), cfg);
}

ResidueEstimate residue_factor(double kappa, double r, const std::vector<double>& steps) {
  if (!(kappa > 0)) throw std::domain_error("residue_factor: kappa must be > 0");
  if (steps.size() < 2) throw std::invalid_argument("residue_factor: need at least two steps");
  const Complex target_s{0.5, kappa};
  std::vector<Complex> values;
  for (double delta : steps) {
    if (!(delta > 0)) throw std::invalid_argument("residue_factor: steps must be positive");
    const Complex s = target_s + delta;
    values.push_back(delta * transform_h_continued(r, s));
  }
  // Neville extrapolation to delta = 0 of the polynomial through (delta_i, values_i).
  std::vector<Complex> table = values;
  const std::size_t n = steps.size();
  Complex previous = table[n - 1];
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double x0 = steps[i];
      const double x1 = steps[i + level];
      table[i] = (x0 * table[i + 1] - x1 * table[i]) / (x0 - x1);
    }
    if (level + 1 < n) previous = table[0];
  }
  ResidueEstimate out;
  out.extrapolated = table[0];
  out.spread = std::abs(table[0] - previous);
  if (std::abs(std::abs(r) - kappa) < 1e-12) {
    out.closed_form = std::exp(Complex(0.5, kappa) * std::log(4.0) + 0.5 * std::log(kPi) +
                               log_gamma(kI * kappa) - log_gamma(Complex(0.5, kappa)));
  } else {
    out.closed_form = 0.0;
  }
  if (!std::isfinite(out.extrapolated.real()) || !std::isfinite(out.extrapolated.imag())) {
    throw std::runtime_error("residue_factor: extrapolation diverged");
  }
  return out;
}

QuadratureResult elliptic_weight(double theta, unsigned m, Complex s, const QuadratureConfig& cfg) {
  if (!(theta > 0 && theta < kPi)) throw std::domain_error("elliptic_weight: theta must lie in (0, pi)");
  if (m < 1) throw std::domain_error("elliptic_weight: m must be >= 1");
  const double sin_t = std::sin(theta);
  const double shift = 4 * sin_t * sin_t;
  auto f = [&](double t) { return kernel_k(t, s) / std::sqrt(t + shift); };
  QuadratureResult q = integrate(f, 0.0, std::numeric_limits<double>::infinity(), cfg);
  const double factor = kPi / (2.0 * m * sin_t);
  return QuadratureResult{factor * q.value, factor * q.error_estimate};
}

Complex hyperbolic_weight(double norm_p, double norm_p1, Complex s) {
  if (!(norm_p > 1 && norm_p1 > 1)) throw std::domain_error("hyperbolic_weight: norms must exceed 1");
  const double gap = std::sqrt(norm_p) - 1 / std::sqrt(norm_p);
  return std::log(norm_p1) / gap * transform_g(std::log(norm_p), s);
}

QuadratureResult hyperbolic_weight_by_quadrature(double norm_p, double norm_p1, Complex s,
                                                 const QuadratureConfig& cfg) {
  if (!(norm_p > 1 && norm_p1 > 1)) throw std::domain_error("hyperbolic_weight: norms must exceed 1");
  const double alpha = (norm_p - 1) * (norm_p - 1) / norm_p;
  // Inner integral over x in R, outer over y in [1, NP1] with measure dy / y^2.
  double worst_error = 0;
  auto outer = [&](double y) {
    auto inner = [&](double x) { return kernel_k(alpha * (x * x + y * y) / (y * y), s); };
    QuadratureResult q = integrate(inner, 0.0, std::numeric_limits<double>::infinity(), cfg);
    worst_error = std::max(worst_error, q.error_estimate);
    return 2.0 * q.value / (y * y);
  };
  QuadratureResult q = integrate(outer, 1.0, norm_p1, cfg);
  q.error_estimate += worst_error * (1 - 1 / norm_p1);
  return q;
}

}  // namespace hecke
