#include "hecke/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace hecke {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

constexpr int kBernoulliTerms = 20;

struct EulerMaclaurinPlan {
  int cutoff;
};

EulerMaclaurinPlan plan_for(Complex s) {
  return EulerMaclaurinPlan{10 + static_cast<int>(std::ceil(std::abs(s)))};
}

// B_{2k} / (2k)! for k = 1..kBernoulliTerms.
const std::array<double, kBernoulliTerms + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kBernoulliTerms + 1> t{};
    for (int k = 1; k <= kBernoulliTerms; ++k) {
      t[k] = boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(2 * k);
    }
    return t;
  }();
  return table;
}

}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma_function(Complex z) { return std::exp(log_gamma(z)); }

Complex digamma(Complex z) {
  if (z.real() < 0.5) {
    // psi(1 - z) - psi(z) = pi cot(pi z)
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  Complex shift = 0.0;
  while (z.real() < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  // B_{2k}/(2k) for k = 1..7
  constexpr std::array<double, 7> coeffs = {1.0 / 12,  -1.0 / 120,  1.0 / 252,   -1.0 / 240,
                                            1.0 / 132, -691.0 / 32760, 1.0 / 12};
  Complex series = 0.0;
  Complex power = inv2;
  for (double c : coeffs) {
    series += c * power;
    power *= inv2;
  }
  return shift + std::log(z) - 0.5 * inv - series;
}

Complex zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  const auto plan = plan_for(s);
  const double m = plan.cutoff;
  Complex sum = 0.0;
  for (int n = 1; n < plan.cutoff; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const Complex m_pow = std::exp(-s * std::log(m));  // M^{-s}
  sum += m * m_pow / (s - 1.0) + 0.5 * m_pow;
  const auto& coef = bernoulli_over_factorial();
  // rising product s (s+1) ... (s+2k-2) times M^{-s-2k+1}
  Complex rising = s;
  Complex m_term = m_pow / m;
  for (int k = 1; k <= kBernoulliTerms; ++k) {
    sum += coef[k] * rising * m_term;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    m_term /= m * m;
  }
  return sum;
}

Complex zeta_derivative(Complex s) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta_derivative: pole at s = 1");
  const auto plan = plan_for(s);
  const double m = plan.cutoff;
  const double log_m = std::log(m);
  Complex sum = 0.0;
  for (int n = 2; n < plan.cutoff; ++n) {
    const double ln = std::log(static_cast<double>(n));
    sum -= ln * std::exp(-s * ln);
  }
  const Complex m_pow = std::exp(-s * log_m);
  const Complex sm1 = s - 1.0;
  // d/ds [M^{1-s}/(s-1)] and d/ds [M^{-s}/2]
  sum += m * m_pow * (-log_m / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * log_m * m_pow;
  const auto& coef = bernoulli_over_factorial();
  Complex rising = s;
  Complex rising_d = 1.0;
  Complex m_term = m_pow / m;
  for (int k = 1; k <= kBernoulliTerms; ++k) {
    sum += coef[k] * (rising_d - log_m * rising) * m_term;
    for (int j : {2 * k - 1, 2 * k}) {
      const Complex factor = s + static_cast<double>(j);
      rising_d = rising_d * factor + rising;
      rising *= factor;
    }
    m_term /= m * m;
  }
  return sum;
}

}  // namespace hecke
