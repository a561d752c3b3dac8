#include "hecke/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

// Projective points of (Z/N)^2 as normalized pairs (x : y).
std::vector<std::pair<Integer, Integer>> projective_line(const Integer& level) {
  std::vector<std::pair<Integer, Integer>> out;
  if (level == 1) {
    out.emplace_back(Integer(1), Integer(0));
    return out;
  }
  // Canonical form: the lexicographically least scalar multiple by a unit.
  std::vector<Integer> units;
  for (Integer u = 1; u < level; ++u) {
    if (gcd(u, level) == 1) units.push_back(u);
  }
  std::set<std::pair<Integer, Integer>> seen;
  for (Integer x = 0; x < level; ++x) {
    for (Integer y = 0; y < level; ++y) {
      if (gcd(gcd(x, y), level) != 1) continue;
      std::pair<Integer, Integer> best{x, y};
      for (const auto& u : units) {
        std::pair<Integer, Integer> cand{mod_floor(Integer(u * x), level), mod_floor(Integer(u * y), level)};
        if (cand < best) best = cand;
      }
      if (seen.insert(best).second) out.push_back(best);
    }
  }
  return out;
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g >= 0.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = floor_div(r0, r1);
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// An SL2(Z) matrix whose first column is congruent to (x, y) mod N.
IntMatrix2 lift_column(const Integer& x, const Integer& y, const Integer& level) {
  // Shift x by multiples of N until gcd(x', y) = 1 (y fixed unless it is 0).
  Integer yy = y;
  if (yy == 0) yy = level;
  Integer xx = x;
  while (gcd(xx, yy) != 1) xx += level;
  Integer g, s, t;
  ext_gcd(xx, yy, g, s, t);  // s xx + t yy = 1
  // [[xx, -t], [yy, s]] has determinant xx s + t yy = 1.
  return IntMatrix2{xx, Integer(-t), yy, s};
}

std::size_t bit_length(const QuadForm& f) {
  Integer m = std::max({abs_value(f.a), abs_value(f.b), abs_value(f.c), Integer(1)});
  return boost::multiprecision::msb(m) + 1;
}

bool lt_sqrt(const Integer& x, const Integer& d) {  // x < sqrt(d)
  return x <= 0 || x * x < d;
}

bool gt_sqrt(const Integer& x, const Integer& d) {  // x > sqrt(d)
  return x > 0 && x * x > d;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
  return os << "[" << f.a << "," << f.b << "," << f.c << "]";
}

Discriminant discriminant(const QuadForm& f) { return Discriminant(f.disc()); }

QuadForm apply_unimodular(const QuadForm& f, const IntMatrix2& g) {
  if (g.det() != 1) throw std::invalid_argument("apply_unimodular: determinant is not 1");
  const Integer& al = g.a;
  const Integer& be = g.b;
  const Integer& ga = g.c;
  const Integer& de = g.d;
  return QuadForm{Integer(f.a * al * al + f.b * al * ga + f.c * ga * ga),
                  Integer(2 * f.a * al * be + f.b * (al * de + be * ga) + 2 * f.c * ga * de),
                  Integer(f.a * be * be + f.b * be * de + f.c * de * de)};
}

bool is_reduced(const QuadForm& f) {
  const Integer d = f.disc();
  if (f.b <= 0 || !lt_sqrt(f.b, d)) return false;
  const Integer two_a = 2 * abs_value(f.a);
  // sqrt(d) - b < 2|a|  <=>  sqrt(d) < 2|a| + b
  // 2|a| < sqrt(d) + b  <=>  2|a| - b < sqrt(d)
  return gt_sqrt(Integer(two_a + f.b), d) && lt_sqrt(Integer(two_a - f.b), d);
}

FormStep rho_step(const QuadForm& f) {
  if (f.c == 0) throw std::invalid_argument("rho_step: c = 0 (square discriminant)");
  const Integer d = f.disc();
  const Integer s = isqrt(d);
  const Integer abs_c = abs_value(f.c);
  const Integer modulus = 2 * abs_c;
  Integer b_new;
  if (abs_c * abs_c < d) {
    b_new = s - mod_floor(Integer(s + f.b), modulus);
  } else {
    b_new = mod_floor(Integer(-f.b), modulus);
    if (b_new > abs_c) b_new -= modulus;
  }
  const Integer t = (b_new + f.b) / (2 * f.c);
  IntMatrix2 g{Integer(0), Integer(-1), Integer(1), t};
  QuadForm next{f.c, b_new, Integer(f.a - f.b * t + f.c * t * t)};
  return FormStep{next, g};
}

FormStep reduce(const QuadForm& f) {
  FormStep state{f, IntMatrix2::identity()};
  // Each non-reduced step at least halves |c| roughly, so the bit length
  // bounds the pre-period; the extra margin covers the entry into the cycle.
  const std::size_t cap = 64 * (bit_length(f) + 8);
  for (std::size_t i = 0; i < cap; ++i) {
    if (is_reduced(state.form)) return state;
    FormStep step = rho_step(state.form);
    state.form = step.form;
    state.transform = state.transform * step.transform;
  }
  if (is_reduced(state.form)) return state;
  std::ostringstream msg;
  msg << "reduce: no reduced form reached from " << f;
  throw std::logic_error(msg.str());
}

std::vector<FormStep> reduced_cycle(const QuadForm& reduced) {
  if (!is_reduced(reduced)) throw std::invalid_argument("reduced_cycle: form is not reduced");
  std::vector<FormStep> cycle{{reduced, IntMatrix2::identity()}};
  FormStep state = cycle.front();
  for (;;) {
    FormStep step = rho_step(state.form);
    state.form = step.form;
    state.transform = state.transform * step.transform;
    if (state.form == reduced) return cycle;
    cycle.push_back(state);
  }
}

std::vector<QuadForm> reduced_forms(const Discriminant& disc) {
  const Integer& d = disc.value();
  const Integer s = isqrt(d);
  std::vector<QuadForm> out;
  for (Integer b = s; b >= 1; --b) {
    if (mod_floor(Integer(b * b - d), Integer(4)) != 0) continue;
    const Integer ac = (b * b - d) / 4;  // negative
    const Integer m = -ac;
    for (const auto& abs_a : divisors(m)) {
      const Integer two_a = 2 * abs_a;
      if (!(gt_sqrt(Integer(two_a + b), d) && lt_sqrt(Integer(two_a - b), d))) continue;
      for (int sign : {1, -1}) {
        QuadForm f{Integer(sign * abs_a), b, Integer(ac / (sign * abs_a))};
        if (f.is_primitive()) out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FormClassSet class_number(const Discriminant& d) {
  FormClassSet out{d, {}, 0};
  std::set<QuadForm> unvisited;
  for (const auto& f : reduced_forms(d)) unvisited.insert(f);
  while (!unvisited.empty()) {
    const QuadForm start = *unvisited.begin();
    QuadForm least = start;
    for (const auto& step : reduced_cycle(start)) {
      unvisited.erase(step.form);
      if (step.form < least) least = step.form;
    }
    out.reps.push_back(least);
  }
  std::sort(out.reps.begin(), out.reps.end());
  out.h = out.reps.size();
  return out;
}

std::optional<IntMatrix2> sl2_equivalent(const QuadForm& f1, const QuadForm& f2) {
  if (f1.disc() != f2.disc()) throw std::invalid_argument("sl2_equivalent: discriminant mismatch");
  if (f1 == f2) return IntMatrix2::identity();
  const FormStep r1 = reduce(f1);
  const FormStep r2 = reduce(f2);
  for (const auto& step : reduced_cycle(r1.form)) {
    if (step.form == r2.form) return r1.transform * step.transform * inverse_sl2(r2.transform);
  }
  return std::nullopt;
}

IntMatrix2 automorph(const QuadForm& f) {
  const PellFundamental pf = pell_fundamental(discriminant(f));
  return IntMatrix2{Integer((pf.v0 - f.b * pf.u0) / 2), Integer(-f.c * pf.u0), Integer(f.a * pf.u0),
                    Integer((pf.v0 + f.b * pf.u0) / 2)};
}

std::optional<IntMatrix2> gamma0_equivalent(const QuadForm& f1, const QuadForm& f2,
                                            const Integer& level) {
  if (level < 1) throw std::invalid_argument("gamma0_equivalent: level must be >= 1");
  const auto g = sl2_equivalent(f1, f2);
  if (!g) return std::nullopt;
  if (mod_floor(g->c, level) == 0) return g;
  // Every transporter is +-P^k g with P the automorph of f1; P has finite
  // order modulo N, so a finite scan of k decides the question.
  const IntMatrix2 p = automorph(f1);
  const IntMatrix2 p_mod = reduce_mod(p, level);
  const IntMatrix2 one = reduce_mod(IntMatrix2::identity(), level);
  IntMatrix2 power_exact = p;
  IntMatrix2 power_mod = p_mod;
  while (!(power_mod == one)) {
    const IntMatrix2 candidate = power_exact * *g;
    if (mod_floor(candidate.c, level) == 0) return candidate;
    power_exact = power_exact * p;
    power_mod = mul_mod(power_mod, p_mod, level);
  }
  return std::nullopt;
}

std::vector<IntMatrix2> gamma0_coset_representatives(const Integer& level) {
  if (level < 1) throw std::invalid_argument("gamma0_coset_representatives: level must be >= 1");
  std::vector<IntMatrix2> out;
  for (const auto& [x, y] : projective_line(level)) out.push_back(lift_column(x, y, level));
  return out;
}

Integer count_sqrt_classes(const Integer& d, const Integer& k) {
  if (k < 1) throw std::invalid_argument("count_sqrt_classes: k must be >= 1");
  const Integer modulus = 4 * k;
  Integer count = 0;
  for (Integer rho = 1; rho <= 2 * k; ++rho) {
    if (mod_floor(Integer(rho * rho - d), modulus) == 0) ++count;
  }
  return count;
}

Integer capital_h(const Discriminant& d, const Integer& level) {
  if (!is_squarefree(level)) throw std::invalid_argument("capital_h: level must be square-free");
  Integer total = 0;
  for (const auto& k : divisors(level)) {
    Integer local = 1;
    for (const auto& p : prime_divisors(k)) local *= 1 + kronecker(d.value(), p);
    if (local == 0) continue;
    const Integer scale = level / k;
    total += Integer(class_number(Discriminant(d.value() * scale * scale)).h) * local;
  }
  return total;
}

std::vector<QuadForm> gamma0_class_representatives(const Discriminant& d, const Integer& level,
                                                   std::size_t work_bound) {
  const FormClassSet classes = class_number(d);
  Integer index = level;
  for (const auto& p : prime_divisors(level)) index = index / p * (p + 1);
  if (index * classes.h > Integer(work_bound)) {
    throw ResourceLimitError("gamma0_class_representatives: index * h_d = " + (index * classes.h).str() +
                             " exceeds bound " + std::to_string(work_bound));
  }
  const std::vector<IntMatrix2> cosets = gamma0_coset_representatives(level);
  std::vector<QuadForm> reps;
  for (const auto& f : classes.reps) {
    std::vector<QuadForm> local;
    for (const auto& g : cosets) {
      const QuadForm candidate = apply_unimodular(f, g);
      bool known = false;
      for (const auto& r : local) {
        if (gamma0_equivalent(r, candidate, level)) {
          known = true;
          break;
        }
      }
      if (!known) local.push_back(candidate);
    }
    reps.insert(reps.end(), local.begin(), local.end());
  }
  return reps;
}

Integer capital_h_oracle(const Discriminant& d, const Integer& level, std::size_t work_bound) {
  return Integer(gamma0_class_representatives(d, level, work_bound).size());
}

LValueEstimate dirichlet_l1(const Integer& d_in, std::uint64_t cutoff) {
  if (d_in <= 0 || d_in > Integer(100000000)) {
    throw std::invalid_argument("dirichlet_l1: d must lie in [1, 1e8]");
  }
  const auto d = d_in.convert_to<std::uint64_t>();
  if (cutoff < 2 * d) {
    throw std::invalid_argument("dirichlet_l1: cutoff must cover at least two periods of the character");
  }
  std::vector<int> chi(d);
  for (std::uint64_t r = 0; r < d; ++r) chi[r] = r == 0 ? kronecker(d_in, d_in) : kronecker(d_in, Integer(r));

  // Partial sums S_n; the estimate averages S_n over the last full period,
  // which cancels the oscillating first-order tail.
  double partial = 0;
  double window = 0;
  double previous_window = 0;
  const std::uint64_t start = cutoff - d + 1;
  const std::uint64_t previous_start = start - d;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    partial += chi[n % d] / static_cast<double>(n);
    if (n >= start) {
      window += partial;
    } else if (n >= previous_start) {
      previous_window += partial;
    }
  }
  LValueEstimate out;
  out.value = window / static_cast<double>(d);
  // Window-to-window drift, floored by the d / x^2 size of the averaged tail.
  const double x = static_cast<double>(cutoff);
  out.error_estimate = std::max(std::abs(out.value - previous_window / static_cast<double>(d)),
                                static_cast<double>(d) / (x * x));
  return out;
}

ClassNumberFormulaCheck class_number_formula_check(const Discriminant& d, std::uint64_t cutoff) {
  if (Integer(cutoff) < 20 * d.value()) {
    throw std::invalid_argument("class_number_formula_check: cutoff must be at least 20 d");
  }
  const FormClassSet classes = class_number(d);
  const PellFundamental pf = pell_fundamental(d);
  const LValueEstimate l = dirichlet_l1(d.value(), cutoff);
  ClassNumberFormulaCheck out;
  out.lhs = static_cast<double>(classes.h) * pf.log_eps_value();
  out.rhs = std::sqrt(to_double(d.value())) * l.value;
  out.relative_error = std::abs(out.lhs - out.rhs) / out.lhs;
  out.error_estimate = std::sqrt(to_double(d.value())) * l.error_estimate / out.lhs;
  return out;
}

ClassDataCache::Record ClassDataCache::get(const Discriminant& d) {
  if (auto hit = find(d)) return *hit;
  const FormClassSet classes = class_number(d);
  const PellFundamental pf = pell_fundamental(d);
  Record fresh{Integer(classes.h), pf.v0, pf.u0};
  std::unique_lock lock(mutex_);
  return records_.try_emplace(d.value(), std::move(fresh)).first->second;
}

std::optional<ClassDataCache::Record> ClassDataCache::find(const Discriminant& d) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(d.value());
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::size_t ClassDataCache::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

namespace {
constexpr const char* kCacheHeader = "#hecke-trace-classcache v1";
}

void ClassDataCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("class cache: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) {
    throw std::runtime_error("class cache: missing header in " + path.string());
  }
  std::map<Integer, Record> parsed;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    try {
      if (fields.size() != 4) throw std::runtime_error("expected 4 fields");
      Integer d(fields[0]), h(fields[1]), v0(fields[2]), u0(fields[3]);
      if (!is_in_omega(d) || h < 1 || v0 * v0 - d * u0 * u0 != 4) {
        throw std::runtime_error("record fails validation");
      }
      parsed[d] = Record{h, v0, u0};
    } catch (const std::exception& e) {
      throw std::runtime_error("class cache: line " + std::to_string(line_no) + " of " +
                               path.string() + ": " + e.what());
    }
  }
  std::unique_lock lock(mutex_);
  for (auto& [d, rec] : parsed) records_.try_emplace(d, rec);
}

void ClassDataCache::save(const std::filesystem::path& path) const {
  std::shared_lock lock(mutex_);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("class cache: cannot write " + tmp.string());
    out << kCacheHeader << '\n';
    for (const auto& [d, rec] : records_) {
      out << d << ',' << rec.h << ',' << rec.v0 << ',' << rec.u0 << '\n';
    }
    if (!out) throw std::runtime_error("class cache: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("class cache: cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace hecke
