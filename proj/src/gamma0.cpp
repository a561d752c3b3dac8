#include "hecke/gamma0.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "hecke/transform.hpp"

namespace hecke {

namespace {

void require_squarefree_coprime(const Integer& n, const Integer& level, const char* where) {
  if (level < 1 || !is_squarefree(level)) {
    throw std::invalid_argument(std::string(where) + ": level must be square-free");
  }
  if (n < 1 || gcd(n, level) != 1) throw std::invalid_argument(std::string(where) + ": need gcd(n, N) = 1");
}

Integer inverse_mod(const Integer& x, const Integer& m) {
  if (m == 1) return Integer(0);
  Integer r0 = mod_floor(x, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1) throw std::invalid_argument("inverse_mod: not invertible");
  return mod_floor(s0, m);
}

}  // namespace

Integer cusp_count(const Integer& level) {
  if (level < 1) throw std::invalid_argument("cusp_count: level must be >= 1");
  Integer total = 0;
  for (const auto& w : divisors(level)) total += euler_phi(gcd(w, Integer(level / w)));
  return total;
}

std::vector<Cusp> enumerate_cusps(const Integer& level) {
  if (level < 1) throw std::invalid_argument("enumerate_cusps: level must be >= 1");
  std::vector<Cusp> out;
  for (const auto& w : divisors(level)) {
    const Integer g = gcd(w, Integer(level / w));
    for (Integer r = 1; r <= g; ++r) {
      if (gcd(r, g) != 1) continue;
      Integer u = r;
      while (gcd(u, w) != 1) u += g;
      out.push_back(Cusp{u, w});
    }
  }
  return out;
}

bool cusps_equivalent(const Cusp& c1, const Cusp& c2, const Integer& level) {
  if (c1.w != c2.w) return false;
  const Integer g = gcd(c1.w, Integer(level / c1.w));
  return mod_floor(Integer(c1.u - c2.u), g) == 0;
}

IntMatrix2 stabilizer_generator(const Cusp& cusp, const Integer& level) {
  const Integer w2 = cusp.w * cusp.w;
  const Integer m = lcm(w2, level) / w2;
  const Integer uw = cusp.u * cusp.w;
  return IntMatrix2{Integer(1 + m * uw), Integer(-m * cusp.u * cusp.u), Integer(m * w2), Integer(1 - m * uw)};
}

bool split_test(const Integer& trace, const Integer& n) {
  const Integer q = trace * trace - 4 * n;
  if (q <= 0) throw std::invalid_argument("split_test: requires t^2 > 4n (hyperbolic trace)");
  return integer_sqrt_exact(q).has_value();
}

std::vector<SplitHyperbolicDatum> enumerate_split_data(const Integer& n, const Integer& level,
                                                       const Integer& a, const Integer& d,
                                                       const Integer& w, const Integer& b_offset) {
  require_squarefree_coprime(n, level, "enumerate_split_data");
  if (a < 1 || d < 1 || a * d != n || a == d) {
    throw std::invalid_argument("enumerate_split_data: need a d = n with a != d");
  }
  if (w < 1 || level % w != 0) throw std::invalid_argument("enumerate_split_data: w must divide N");
  const Integer diff = a - d;
  const Integer span = abs_value(diff);
  const Integer cofactor = level / w;  // N | w X  <=>  N/w | X for square-free N
  // b = j w / N; N | C  <=>  j w = a - d (mod N/w).
  const Integer j0 = mod_floor(Integer(diff * inverse_mod(w, cofactor)), cofactor);
  const Integer j_lo = b_offset * cofactor;
  const Integer j_hi = (b_offset + span) * cofactor;
  Integer j = j_lo + mod_floor(Integer(j0 - j_lo), cofactor);
  std::vector<SplitHyperbolicDatum> out;
  for (; j < j_hi; j += cofactor) {
    SplitHyperbolicDatum datum;
    datum.a = a;
    datum.d = d;
    datum.j = j;
    datum.b = Rational(j * w, level);
    datum.cusp = Cusp{Integer(1), w};
    datum.big_c = diff * w - j * w * w;
    datum.ell = gcd(datum.big_c, Integer(j * w));
    out.push_back(datum);
  }
  return out;
}

IntMatrix2 element_from_split(const SplitHyperbolicDatum& datum, const Integer& level) {
  const Integer& w = datum.cusp.w;
  const Integer bn = datum.j * w;  // b N
  (void)level;
  return IntMatrix2{Integer(datum.a - bn), datum.j, datum.big_c, Integer(datum.d + bn)};
}

bool paired_cusp_test(const SplitHyperbolicDatum& datum, const Integer& level) {
  if (datum.big_c == 0) return level == datum.cusp.w;
  const Integer q = datum.big_c / datum.ell;
  return gcd(q, level) == datum.cusp.w;
}

Rational split_log_argument(const SplitHyperbolicDatum& datum, const Integer& level) {
  const Integer& w = datum.cusp.w;
  if (datum.big_c == 0) return Rational(w * level);
  const Integer diff = datum.a - datum.d;
  const Integer q = datum.big_c / datum.ell;
  const Integer q2 = q * q;
  return Rational(diff * diff * w * level * lcm(q2, level), datum.big_c * datum.big_c);
}

QuadratureResult split_log_integral(double x, Complex s, const QuadratureConfig& cfg) {
  auto f = [&](double tau) {
    const double t = 1 + tau * tau;
    return 2.0 * kernel_k(x * t, s) * std::log1p(tau * tau);
  };
  return integrate(f, 0.0, std::numeric_limits<double>::infinity(), cfg);
}

Complex split_finite_sum(const Integer& n, const Integer& level, Complex s, const QuadratureConfig& cfg,
                         const Integer& b_offset) {
  require_squarefree_coprime(n, level, "split_finite_sum");
  if (s.real() <= 0.5) throw std::domain_error("split_finite_sum: requires Re s > 1/2");
  const double sqrt_n = std::sqrt(to_double(n));
  const double nu = to_double(cusp_count(level));
  Complex cusp_part = 0.0;
  Complex integral_part = 0.0;
  // Fixed order: ascending w, then a, then b.
  for (const auto& w : divisors(level)) {
    for (const auto& a : divisors(n)) {
      const Integer d = n / a;
      if (a == d) continue;
      const double span = to_double(abs_value(Integer(a - d)));
      const Complex g = transform_g(std::log(to_double(a) / to_double(d)), s);
      for (const auto& datum : enumerate_split_data(n, level, a, d, w, b_offset)) {
        const double log_arg = std::log(to_double(split_log_argument(datum, level)));
        cusp_part += log_arg / span * g;
      }
    }
  }
  for (const auto& a : divisors(n)) {
    const Integer d = n / a;
    if (a == d) continue;
    const double diff = to_double(Integer(a - d));
    const QuadratureResult q = split_log_integral(diff * diff / to_double(n), s, cfg);
    integral_part += 0.5 * nu * std::abs(diff) * q.value;
  }
  return 0.5 * sqrt_n * cusp_part + integral_part;
}

double identity_term(const Integer& level, const Integer& n) {
  if (level < 1 || n < 1) throw std::invalid_argument("identity_term: N and n must be >= 1");
  if (!integer_sqrt_exact(n)) return 0.0;
  double index = to_double(level);
  for (const auto& p : prime_divisors(level)) index *= 1.0 + 1.0 / to_double(p);
  return boost::math::constants::pi<double>() / 3.0 * index;
}

}  // namespace hecke
