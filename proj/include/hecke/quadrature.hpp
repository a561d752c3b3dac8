#ifndef HECKE_QUADRATURE_HPP
#define HECKE_QUADRATURE_HPP

// Adaptive Gauss-Kronrod integration of complex-valued integrands on finite
// or semi-infinite intervals.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hecke/errors.hpp"
#include "hecke/numbers.hpp"

namespace hecke {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  unsigned max_depth = 15;
  bool high_order = false;  // 31-point instead of 15-point Kronrod rule

  /// Ten times tighter, deeper, and on the higher-order rule; used by the
  /// self-refinement checks.
  QuadratureConfig refined() const {
    QuadratureConfig out = *this;
    out.abs_tol /= 10;
    out.rel_tol /= 10;
    out.max_depth += 3;
    out.high_order = true;
    return out;
  }
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0;
};

namespace detail {

template <class F>
QuadratureResult integrate_finite(F&& f, double a, double b, const QuadratureConfig& cfg, double& l1) {
  double error = 0;
  Complex value;
  if (cfg.high_order) {
    value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, cfg.max_depth,
                                                                         cfg.rel_tol, &error, &l1);
  } else {
    value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, cfg.max_depth,
                                                                         cfg.rel_tol, &error, &l1);
  }
  return QuadratureResult{value, error};
}

}  // namespace detail

/// Integrates f over [a, b]; b may be +infinity. Throws QuadratureError when
/// the estimated error exceeds max(abs_tol, rel_tol * L1 norm).
///
/// A semi-infinite range is split at a + 1 and the tail is mapped by
/// x = a + e^v, which turns algebraic decay (possibly with oscillation in
/// ln x) into exponential decay before the library's own infinite mapping.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  QuadratureResult out;
  double l1 = 0;
  if (std::isinf(b)) {
    double l1_head = 0, l1_tail = 0;
    const QuadratureResult head = detail::integrate_finite(f, a, a + 1, cfg, l1_head);
    auto mapped = [&](double v) -> Complex {
      // Integrands here decay at least like x^{-2}, so nothing beyond
      // x = 1e150 can register in double precision.
      if (v > 345.0) return Complex(0.0);
      const double ev = std::exp(v);
      return f(a + ev) * ev;
    };
    const QuadratureResult tail = detail::integrate_finite(mapped, 0.0, std::numeric_limits<double>::infinity(), cfg, l1_tail);
    out = QuadratureResult{head.value + tail.value, head.error_estimate + tail.error_estimate};
    l1 = l1_head + l1_tail;
  } else {
    out = detail::integrate_finite(f, a, b, cfg, l1);
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())) {
    throw QuadratureError("integrate: non-finite result", std::numeric_limits<double>::infinity());
  }
  if (out.error_estimate > std::max(cfg.abs_tol, cfg.rel_tol * l1)) {
    throw QuadratureError("integrate: tolerance not reached", out.error_estimate);
  }
  return out;
}

}  // namespace hecke

#endif  // HECKE_QUADRATURE_HPP
