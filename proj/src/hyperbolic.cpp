#include "hecke/hyperbolic.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hecke/arith.hpp"
#include "hecke/parallel.hpp"
#include "hecke/pell.hpp"
#include "hecke/special.hpp"
#include "hecke/transform.hpp"

namespace hecke {

namespace {

void require_hecke_level(const Integer& n, const Integer& level, const char* who) {
  if (n < 1 || level < 1) throw std::invalid_argument(std::string(who) + ": n and N must be positive");
  if (!is_squarefree(level)) throw std::invalid_argument(std::string(who) + ": N must be square-free");
  if (gcd(n, level) != 1) throw std::invalid_argument(std::string(who) + ": gcd(n, N) must be 1");
}

// Smallest trace t with t^2 > 4n.
Integer first_trace(const Integer& n) { return isqrt(4 * n) + 1; }

// [[(t - b mu)/2, -c mu], [a mu, (t + b mu)/2]]
IntMatrix2 element_matrix(const QuadForm& f, const Integer& t, const Integer& mu) {
  const Integer twice_a = t - f.b * mu;
  const Integer twice_d = t + f.b * mu;
  if (twice_a % 2 != 0 || twice_d % 2 != 0) {
    throw std::invalid_argument("element_from_class: diagonal entries are not integral");
  }
  return IntMatrix2{twice_a / 2, Integer(-f.c * mu), Integer(f.a * mu), twice_d / 2};
}

}  // namespace

double HypClass::norm(const Integer& n) const {
  const double lambda = (to_double(v) + to_double(u) * std::sqrt(to_double(d1))) / 2.0;
  return lambda * lambda / to_double(n);
}

bool operator<(const ClassSignature& x, const ClassSignature& y) {
  if (x.trace != y.trace) return x.trace < y.trace;
  if (x.d1 != y.d1) return x.d1 < y.d1;
  if (x.u != y.u) return x.u < y.u;
  if (x.d != y.d) return x.d < y.d;
  return x.form < y.form;
}

std::ostream& operator<<(std::ostream& os, const ClassSignature& s) {
  return os << "(t=" << s.trace << ", u=" << s.u << ", d1=" << s.d1 << ", d=" << s.d << ", "
            << s.form << ")";
}

ClassSignature signature_of(const HypClass& h) { return {h.v, h.u, h.d1, h.d, h.form}; }

HeckeElement element_from_class(const HypClass& h, const Integer& n, const Integer& level) {
  HeckeElement e{element_matrix(h.form, h.v, h.k * h.u), n, level};
  if (e.matrix.det() != n || mod_floor(e.matrix.c, level) != 0) {
    throw std::invalid_argument("element_from_class: data do not define a Hecke element");
  }
  return e;
}

ClassGenerator class_generator(const HypClass& h) {
  const PellFundamental pf = pell_fundamental(Discriminant(h.d1));
  return {pf.v0, h.k * pf.u0, 2.0 * pf.log_eps_value()};
}

HypClass class_of_element(const HeckeElement& e) {
  IntMatrix2 m = e.matrix;
  if (m.det() != e.n) throw std::invalid_argument("class_of_element: determinant is not n");
  if (mod_floor(m.c, e.level) != 0) throw std::invalid_argument("class_of_element: N does not divide C");
  if (m.trace() < 0) m = -m;
  const Integer t = m.trace();
  const Integer q = t * t - 4 * e.n;
  if (q <= 0 || integer_sqrt_exact(q)) {
    throw std::invalid_argument("class_of_element: not a non-split hyperbolic element");
  }
  const Integer mu = gcd(gcd(m.c, Integer(m.d - m.a)), m.b);
  HypClass h;
  h.form = QuadForm{m.c / mu, Integer((m.d - m.a) / mu), Integer(-m.b / mu)};
  h.d = h.form.disc();
  h.k = e.level / gcd(h.form.a, e.level);
  if (mu % h.k != 0) throw std::logic_error("class_of_element: k does not divide mu");
  h.u = mu / h.k;
  h.v = t;
  h.d1 = h.d * h.k * h.k;
  h.trace_sq_minus = q;
  return h;
}

std::vector<HypClass> enumerate_classes(const Integer& n, const Integer& level, const Integer& t_max,
                                        unsigned threads) {
  require_hecke_level(n, level, "enumerate_classes");
  const std::vector<Integer> ks = divisors(level);

  // (t, u, k, d) candidates in ledger order; u descends so that d1 ascends.
  struct Candidate {
    Integer t, u, k, d;
  };
  std::vector<Candidate> candidates;
  std::map<Integer, std::size_t> needed;  // d -> slot in reps
  for (Integer t = first_trace(n); t <= t_max; ++t) {
    const Integer q = t * t - 4 * n;
    if (integer_sqrt_exact(q)) continue;
    for (Integer u = isqrt(q); u >= 1; --u) {
      if (q % (u * u) != 0) continue;
      const Integer d1 = q / (u * u);
      if (!is_in_omega(d1)) continue;
      for (const auto& k : ks) {
        if (d1 % (k * k) != 0) continue;
        const Integer d = d1 / (k * k);
        if (!is_in_omega(d)) continue;
        candidates.push_back({t, u, k, d});
        needed.emplace(d, needed.size());
      }
    }
  }

  std::vector<Integer> keys;
  for (const auto& [d, slot] : needed) keys.push_back(d);
  const auto reps_by_key = parallel_map(keys.size(), threads, [&](std::size_t i) {
    return gamma0_class_representatives(Discriminant(keys[i]), level);
  });
  std::map<Integer, const std::vector<QuadForm>*> reps;
  for (std::size_t i = 0; i < keys.size(); ++i) reps[keys[i]] = &reps_by_key[i];

  std::vector<HypClass> out;
  for (const auto& c : candidates) {
    const Integer gcd_target = level / c.k;
    for (const auto& f : *reps.at(c.d)) {
      if (gcd(f.a, level) != gcd_target) continue;
      const Integer d1 = c.d * c.k * c.k;
      out.push_back(HypClass{f, c.d, c.k, c.t, c.u, d1, Integer(c.t * c.t - 4 * n)});
    }
  }
  return out;
}

std::vector<ClassSignature> conjugacy_oracle(const Integer& n, const Integer& level,
                                             const Integer& entry_bound, const Integer& t_max,
                                             std::size_t work_bound) {
  require_hecke_level(n, level, "conjugacy_oracle");
  if (entry_bound < 1) throw std::invalid_argument("conjugacy_oracle: entry_bound must be >= 1");
  const Integer side = 2 * entry_bound + 1;
  if (side * side * side > Integer(work_bound)) {
    throw ResourceLimitError("conjugacy_oracle: search box exceeds work bound");
  }
  const long bound = entry_bound.convert_to<long>();

  std::map<Integer, std::vector<QuadForm>> canonical;
  std::vector<ClassSignature> found;
  for (long a = -bound; a <= bound; ++a) {
    for (long d = -bound; d <= bound; ++d) {
      const Integer t = Integer(a) + d;
      if (t <= 0 || t > t_max || t * t <= 4 * n) continue;
      const Integer q = t * t - 4 * n;
      if (integer_sqrt_exact(q)) continue;
      const Integer ad_minus_n = Integer(a) * d - n;
      for (long c = -bound; c <= bound; ++c) {
        if (c == 0 || mod_floor(Integer(c), level) != 0) continue;
        if (ad_minus_n % c != 0) continue;
        const Integer b = ad_minus_n / c;
        if (abs_value(b) > entry_bound) continue;

        const HeckeElement e{IntMatrix2{Integer(a), b, Integer(c), Integer(d)}, n, level};
        const HypClass h = class_of_element(e);
        auto it = canonical.find(h.d);
        if (it == canonical.end()) {
          it = canonical.emplace(h.d, gamma0_class_representatives(Discriminant(h.d), level)).first;
        }
        const QuadForm* match = nullptr;
        for (const auto& r : it->second) {
          const auto g = gamma0_equivalent(r, h.form, level);
          if (!g) continue;
          // Conjugating the element built on r must give back this element.
          const IntMatrix2 built = element_matrix(r, t, h.k * h.u);
          const IntMatrix2 conj = inverse_sl2(*g) * built * *g;
          if (!(conj == e.matrix || conj == -e.matrix)) {
            throw std::logic_error("conjugacy_oracle: transporter does not conjugate the elements");
          }
          match = &r;
          break;
        }
        if (!match) throw std::logic_error("conjugacy_oracle: form outside every Gamma0(N) class");
        found.push_back({t, h.u, h.d1, h.d, *match});
      }
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

ClassSum class_sum(const Integer& n, const Integer& level, Complex s, const Integer& t_max,
                   unsigned threads) {
  if (s.real() <= 1) throw std::invalid_argument("class_sum: requires Re s > 1");
  const std::vector<HypClass> classes = enumerate_classes(n, level, t_max, threads);

  std::map<Integer, Integer> h_of;
  std::map<Integer, double> log_eps_of;
  for (const auto& c : classes) {
    if (!h_of.count(c.d)) h_of[c.d] = Integer(class_number(Discriminant(c.d)).h);
    if (!log_eps_of.count(c.d1)) log_eps_of[c.d1] = pell_fundamental(Discriminant(c.d1)).log_eps_value();
  }

  const double nd = to_double(n);
  const double big_n = to_double(level);
  const Complex prefactor = 4.0 * std::sqrt(std::numbers::pi * nd) *
                            std::exp(log_gamma(s - 0.5) - log_gamma(s)) / big_n;

  ClassSum out;
  out.ledger = parallel_map(classes.size(), threads, [&](std::size_t i) {
    const HypClass& c = classes[i];
    ClassSumEntry entry{c, h_of.at(c.d), log_eps_of.at(c.d1), {}, {}};
    const double np1 = std::exp(2.0 * entry.log_eps);
    entry.weight = hyperbolic_weight(c.norm(n), np1, s);
    const double a_gcd = to_double(Integer(level / c.k));
    const double u = to_double(c.u);
    const double d = to_double(c.d);
    const double x = 1.0 + d * (big_n * u) * (big_n * u) / (4.0 * nd * a_gcd * a_gcd);
    entry.class_term = prefactor * a_gcd * entry.log_eps / (u * std::sqrt(d)) *
                       std::exp((0.5 - s) * std::log(x));
    return entry;
  });
  for (const auto& e : out.ledger) {
    out.value += e.weight;
    const double scale = std::abs(e.weight);
    if (scale > 0) out.max_term_deviation = std::max(out.max_term_deviation, std::abs(e.weight - e.class_term) / scale);
  }
  return out;
}

std::string class_ledger_csv(const ClassSum& sum) {
  std::ostringstream os;
  os.precision(17);
  os << "t,d,u,k,h_d,log_eps,weight_re,weight_im\n";
  for (const auto& e : sum.ledger) {
    os << e.hyp.v << ',' << e.hyp.d << ',' << e.hyp.u << ',' << e.hyp.k << ',' << e.h_d << ','
       << e.log_eps << ',' << e.weight.real() << ',' << e.weight.imag() << '\n';
  }
  return os.str();
}

}  // namespace hecke
