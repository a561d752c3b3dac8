#include "hecke/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include "hecke/arith.hpp"
#include "hecke/gamma0.hpp"
#include "hecke/parallel.hpp"
#include "hecke/pell.hpp"
#include "hecke/scattering.hpp"
#include "hecke/special.hpp"
#include "hecke/transform.hpp"

namespace hecke {

namespace {

void require_series_input(const Integer& level, const Integer& n, Complex s, const char* who) {
  if (n < 1 || level < 1) throw std::invalid_argument(std::string(who) + ": n and N must be positive");
  if (!is_squarefree(level)) throw std::invalid_argument(std::string(who) + ": N must be square-free");
  if (gcd(n, level) != 1) throw std::invalid_argument(std::string(who) + ": gcd(n, N) must be 1");
  if (s.real() <= 1) throw std::invalid_argument(std::string(who) + ": requires Re s > 1");
}

struct Block {
  Integer k, t, d, u;
};

// (k, t, d, u) with t^2 - 4n = d k^2 u^2 and d in Omega, ascending.
std::vector<Block> trace_blocks(const Integer& level, const Integer& n, const Integer& t_max) {
  std::vector<Block> out;
  for (const auto& k : divisors(level)) {
    for (Integer t = isqrt(4 * n) + 1; t <= t_max; ++t) {
      const Integer q = t * t - 4 * n;
      if (q % (k * k) != 0) continue;
      const Integer r = q / (k * k);
      for (Integer u = isqrt(r); u >= 1; --u) {
        if (r % (u * u) != 0) continue;
        const Integer d = r / (u * u);
        if (is_in_omega(d)) out.push_back({k, t, d, u});
      }
    }
  }
  return out;
}

// h_d ln eps_d for every d that occurs, keyed by d.
std::map<Integer, double> class_log_products(const std::vector<Block>& blocks, ClassDataCache* cache,
                                             unsigned threads) {
  ClassDataCache local;
  ClassDataCache& store = cache ? *cache : local;
  std::vector<Integer> ds;
  for (const auto& b : blocks) ds.push_back(b.d);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  const auto values = parallel_map(ds.size(), threads, [&](std::size_t i) {
    const auto rec = store.get(Discriminant(ds[i]));
    return to_double(rec.h) * to_double(log_unit(ds[i], rec.v0, rec.u0));
  });
  std::map<Integer, double> out;
  for (std::size_t i = 0; i < ds.size(); ++i) out[ds[i]] = values[i];
  return out;
}

// mu((m,k)) / (m,k) (d/m), the Kronecker-weighted Moebius factor.
double collapse_weight(const Integer& m, const Integer& k, const Integer& d) {
  const Integer g = gcd(m, k);
  return moebius(g) * kronecker(d, m) / to_double(g);
}

template <class TermFn>
LnEvaluation assemble(const Integer& level, const Integer& n, Complex s, const Integer& t_max,
                      ClassDataCache* cache, unsigned threads, TermFn term) {
  const std::vector<Block> blocks = trace_blocks(level, n, t_max);
  const auto hl = class_log_products(blocks, cache, threads);
  LnEvaluation eval{level, n, s, t_max, {}, {}};
  for (const auto& m : divisors(level)) {
    for (const auto& b : blocks) {
      const double w = collapse_weight(m, b.k, b.d);
      eval.terms.push_back({m, b.k, b.t, b.d, b.u, w * term(b, hl.at(b.d))});
    }
  }
  for (const auto& t : eval.terms) eval.value += t.contribution;
  return eval;
}

Complex real_power(double base, Complex e) { return std::exp(e * std::log(base)); }

// JSON number when the value fits in 64 bits, decimal string otherwise.
nlohmann::json integer_json(const Integer& x) {
  static const Integer lo = Integer(std::numeric_limits<long long>::min());
  static const Integer hi = Integer(std::numeric_limits<long long>::max());
  if (x >= lo && x <= hi) return x.convert_to<long long>();
  return x.str();
}

}  // namespace

LnEvaluation ln_series(const Integer& level, const Integer& n, Complex s, const Integer& t_max,
                       ClassDataCache* cache, unsigned threads) {
  require_series_input(level, n, s, "ln_series");
  return assemble(level, n, s, t_max, cache, threads, [&](const Block& b, double hl) {
    const double du2 = to_double(Integer(b.d * b.u * b.u));
    return real_power(to_double(b.k), 1.0 - 2.0 * s) * hl * real_power(du2, -s);
  });
}

LnEvaluation collapsed_class_sum(const Integer& level, const Integer& n, Complex s,
                                 const Integer& t_max, ClassDataCache* cache, unsigned threads) {
  require_series_input(level, n, s, "collapsed_class_sum");
  const double nd = to_double(n);
  const Complex prefactor =
      4.0 * std::sqrt(std::numbers::pi * nd) * std::exp(log_gamma(s - 0.5) - log_gamma(s));
  return assemble(level, n, s, t_max, cache, threads, [&](const Block& b, double hl) {
    const double d = to_double(b.d);
    const double x = 1.0 + to_double(Integer(b.d * b.k * b.k * b.u * b.u)) / (4.0 * nd);
    return prefactor * hl / (to_double(b.u) * std::sqrt(d)) * real_power(x, 0.5 - s);
  });
}

CollapseCheck moebius_collapse_check(const Integer& d, const Integer& level, const Integer& k) {
  if (level < 1 || !is_squarefree(level)) {
    throw std::invalid_argument("moebius_collapse_check: N must be square-free");
  }
  if (k < 1 || level % k != 0) throw std::invalid_argument("moebius_collapse_check: k must divide N");
  CollapseCheck out{Rational(1), Rational(0)};
  for (const auto& p : prime_divisors(level / k)) out.lhs *= Rational(1 + kronecker(d, p));
  for (const auto& p : prime_divisors(k)) out.lhs *= Rational(1) - Rational(kronecker(d, p)) / Rational(p);
  for (const auto& m : divisors(level)) {
    const Integer g = gcd(m, k);
    out.rhs += Rational(kronecker(d, m) * moebius(g)) / Rational(g);
  }
  return out;
}

double ln_series_tail_bound(const Integer& level, const Integer& n, double sigma,
                            const Integer& t_max) {
  if (sigma <= 1) throw std::invalid_argument("ln_series_tail_bound: requires sigma > 1");
  const double tau = static_cast<double>(divisors(level).size());
  const double nd = to_double(n);
  const double big_n = to_double(level);
  // Per-trace majorant: (ln Q + 3) bounds L(1, chi_d) sqrt(d)/sqrt(d), the
  // u-sum of 1/u is at most 1 + ln sqrt(Q), and d u^2 >= Q / N^2. Here Q <= t^2.
  auto envelope = [&](double t) {
    const double q = t * t - 4.0 * nd;
    const double lt = std::log(t);
    return tau * tau * (2.0 * lt + 3.0) * (1.0 + lt) * std::pow(q / (big_n * big_n), 0.5 - sigma);
  };
  // The envelope decreases once 2/(2 ln t + 3) + 1/(1 + ln t) < 2 sigma - 1.
  const double first = std::max(to_double(t_max), std::floor(2.0 * std::sqrt(nd))) + 1.0;
  double t1 = first;
  while (2.0 / (2.0 * std::log(t1) + 3.0) + 1.0 / (1.0 + std::log(t1)) >= 2.0 * sigma - 1.0) t1 += 1.0;
  double total = 0;
  for (double t = first; t < t1; t += 1.0) total += envelope(t);
  // For a decreasing envelope, sum_{t >= t1} <= envelope(t1) + integral_{t1}^inf.
  total += envelope(t1);
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-10;
  const auto tail = integrate([&](double t) { return Complex(envelope(t), 0.0); }, t1,
                             std::numeric_limits<double>::infinity(), cfg);
  return total + tail.value.real() + tail.error_estimate;
}

GeometricSide geometric_side(const Integer& level, const Integer& n, Complex s,
                             const Integer& t_max, const QuadratureConfig& cfg, unsigned threads) {
  require_series_input(level, n, s, "geometric_side");
  GeometricSide out;
  const double sqrt_n = std::sqrt(to_double(n));
  const bool square = integer_sqrt_exact(n).has_value();
  const double delta = square ? 1.0 : 0.0;
  const double nu = to_double(cusp_count(level));
  const double sigma_n = to_double(divisor_sum(n));

  out.components.push_back({"identity", identity_term(level, n)});
  out.components.push_back({"hyperbolic", collapsed_class_sum(level, n, s, t_max, nullptr, threads).value});
  out.components.push_back({"elliptic", 0.0, false});

  out.components.push_back({"cusp_g0_log", sqrt_n * delta * nu * transform_g(0.0, s) *
                                               std::log(sqrt_n / 2.0)});
  const auto phi_half = scattering_matrix(level, Complex(0.5, 0.0));
  const Complex trace_half = phi_half.entries.diagonal().sum();
  out.components.push_back({"cusp_h0", sqrt_n / 4.0 * transform_h(0.0, s) *
                                           (delta * nu + sigma_n * trace_half)});
  out.components.push_back({"split_finite_sum", split_finite_sum(n, level, s, cfg)});

  // |h(r)| decays like exp(-pi |r|); find where it drops below 1e-12.
  double cutoff = 1.0;
  while (std::abs(transform_h(cutoff, s)) >= 1e-12) cutoff += 1.0;
  out.integration_cutoff = cutoff;

  auto symmetric = [&](auto&& f) {
    const auto left = integrate(f, -cutoff, 0.0, cfg);
    const auto right = integrate(f, 0.0, cutoff, cfg);
    return QuadratureResult{left.value + right.value, left.error_estimate + right.error_estimate};
  };

  if (square) {
    const auto psi = symmetric([&](double r) { return transform_h(r, s) * digamma(Complex(1.0, r)); });
    const double scale = nu * sqrt_n / (2.0 * std::numbers::pi);
    out.components.push_back({"cusp_digamma", -scale * psi.value, true, scale * psi.error_estimate});
  } else {
    out.components.push_back({"cusp_digamma", 0.0});
  }

  const auto cusps = enumerate_cusps(level);
  const std::vector<Integer> ds = divisors(n);
  const auto scatter = symmetric([&](double r) {
    const Complex z(0.5, r);
    Complex log_sum = 0.0;
    const Complex log_der = phi_log_derivative(z);
    for (const auto& ci : cusps) {
      for (const auto& cj : cusps) {
        const Complex p = p_entry(level, ci.w, cj.w, z);
        const Complex p_bar = p_entry(level, ci.w, cj.w, std::conj(z));
        log_sum += log_der * std::norm(p) + p_entry_derivative(level, ci.w, cj.w, z) * p_bar;
      }
    }
    Complex divisor_phase = 0.0;
    for (const auto& d : ds) {
      const double ratio = to_double(Integer(n / d)) / to_double(d);
      divisor_phase += std::exp(Complex(0.0, r * std::log(ratio)));
    }
    return transform_h(r, s) * divisor_phase * log_sum;
  });
  const double scale = sqrt_n / (4.0 * std::numbers::pi);
  out.components.push_back({"cusp_scattering", scale * scatter.value, true, scale * scatter.error_estimate});

  for (const auto& c : out.components) {
    if (c.included) out.total += c.value;
  }
  return out;
}

std::string ln_evaluation_json(const LnEvaluation& eval) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["N"] = integer_json(eval.level);
  j["n"] = integer_json(eval.n);
  j["s"] = {eval.s.real(), eval.s.imag()};
  j["t_max"] = integer_json(eval.t_max);
  j["value"] = {eval.value.real(), eval.value.imag()};
  auto terms = nlohmann::json::array();
  for (const auto& t : eval.terms) {
    terms.push_back({integer_json(t.m), integer_json(t.k), integer_json(t.d), integer_json(t.u),
                     t.contribution.real(), t.contribution.imag()});
  }
  j["terms"] = terms;
  return j.dump();
}

std::string ln_evaluation_csv(const LnEvaluation& eval) {
  std::ostringstream os;
  os.precision(17);
  os << "# " << kSchemaVersion << "\nm,k,t,d,u,re,im\n";
  for (const auto& t : eval.terms) {
    os << t.m << ',' << t.k << ',' << t.t << ',' << t.d << ',' << t.u << ','
       << t.contribution.real() << ',' << t.contribution.imag() << '\n';
  }
  return os.str();
}

}  // namespace hecke
