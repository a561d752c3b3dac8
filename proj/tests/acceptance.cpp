// Acceptance suite: one PASS/FAIL line per criterion, each under its time
// budget. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "hecke/cli.hpp"
#include "hecke/gamma0.hpp"
#include "hecke/hyperbolic.hpp"
#include "hecke/lseries.hpp"
#include "hecke/pell.hpp"
#include "hecke/qforms.hpp"
#include "hecke/special.hpp"
#include "hecke/scattering.hpp"
#include "hecke/transform.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Outcome pell_suite() {
  Outcome o;
  int checked = 0;
  for (long d = 2; d <= 500; ++d) {
    if (!is_in_omega(d)) continue;
    const auto pf = pell_fundamental(Discriminant(d));
    if (pf.v0 * pf.v0 - d * pf.u0 * pf.u0 != 4) o.fail("equation fails at d = " + str(d));
    const std::uint64_t cap = 200000;
    const bool small = pf.u0 <= cap;
    const auto scan = oracle::pell_scan(static_cast<std::uint64_t>(d), small ? pf.u0.convert_to<std::uint64_t>() : cap);
    const bool agrees = small ? (scan && Integer(scan->first) == pf.v0 && Integer(scan->second) == pf.u0)
                              : (!scan && oracle::is_primitive_unit(d, pf.v0, pf.u0));
    if (!agrees) o.fail("scan oracle disagrees at d = " + str(d));
    ++checked;
  }
  if (o.ok) o.detail = str(checked) + " discriminants";
  return o;
}

Outcome class_number_suite() {
  Outcome o;
  for (long d = 5; d <= 200; ++d) {
    if (!is_in_omega(d)) continue;
    if (class_number(Discriminant(d)).h != oracle::exhaustive_class_count(d)) o.fail("h_d differs at d = " + str(d));
  }
  double worst = 0;
  for (long d = 5; d <= 100; ++d) {
    if (!is_in_omega(d)) continue;
    const auto chk = class_number_formula_check(Discriminant(d), 1000000);
    worst = std::max(worst, chk.relative_error);
    if (chk.relative_error > 1e-3) o.fail("class number formula off at d = " + str(d));
  }
  if (o.ok) o.detail = "worst formula error " + str(worst);
  return o;
}

Outcome sqrt_class_suite() {
  Outcome o;
  bool coprime = false, square_divides = false, exact_divides = false;
  for (long k = 1; k <= 30; ++k) {
    if (!is_squarefree(k)) continue;
    for (long d = 5; d <= 300; ++d) {
      if (!is_in_omega(d)) continue;
      Integer expected = 1;
      for (const auto& p : prime_divisors(k)) {
        expected *= 1 + kronecker(d, p);
        if (d % (p * p).convert_to<long>() == 0) square_divides = true;
        else if (d % p.convert_to<long>() == 0) exact_divides = true;
      }
      if (k > 1 && std::gcd(d, k) == 1) coprime = true;
      if (count_sqrt_classes(d, k) != expected) o.fail("count differs at d = " + str(d) + ", k = " + str(k));
    }
  }
  if (!(coprime && square_divides && exact_divides)) o.fail("a case of the count was never exercised");
  return o;
}

Outcome corollary_suite() {
  Outcome o;
  int pairs = 0;
  for (long level : {1L, 2L, 3L, 5L, 6L, 7L, 10L}) {
    for (long d = 5; d <= 60; ++d) {
      if (!is_in_omega(d)) continue;
      if (capital_h(Discriminant(d), level) != capital_h_oracle(Discriminant(d), level)) {
        o.fail("H_d differs at d = " + str(d) + ", N = " + str(level));
      }
      ++pairs;
    }
  }
  if (o.ok) o.detail = str(pairs) + " pairs";
  return o;
}

Outcome headline_identity() {
  Outcome o;
  double worst = 0;
  for (auto [level, n, s, t_max] : {std::tuple{1L, 2L, 2.0, 6L}, {2L, 3L, 2.0, 8L}, {3L, 2L, 2.0, 8L}, {6L, 5L, 2.0, 10L}}) {
    const auto collapsed = collapsed_class_sum(level, n, s, t_max);
    const auto series = ln_series(level, n, s, t_max);
    const ClassSum classes = class_sum(n, level, s, t_max);
    double scale = 0;
    for (const auto& t : collapsed.terms) scale += std::abs(t.contribution);
    for (const auto& e : classes.ledger) scale += std::abs(e.weight);
    const double dev = scale > 0 ? std::abs(collapsed.value - classes.value) / scale : 0.0;
    worst = std::max(worst, dev);
    if (dev > 1e-9) o.fail("identity off by " + str(dev) + " at N = " + str(level));

    // Ledgers: series and collapsed terms pair off in (m, k, d, u); every
    // class lands in a collapsed (k, t, d, u) group carrying the same value.
    if (series.terms.size() != collapsed.terms.size()) o.fail("ledger sizes differ at N = " + str(level));
    for (std::size_t i = 0; i < std::min(series.terms.size(), collapsed.terms.size()); ++i) {
      const auto& a = series.terms[i];
      const auto& b = collapsed.terms[i];
      if (a.m != b.m || a.k != b.k || a.d != b.d || a.u != b.u) o.fail("ledgers not in bijection at N = " + str(level));
    }
    std::map<std::tuple<Integer, Integer, Integer, Integer>, Complex> lhs, rhs;
    for (const auto& t : collapsed.terms) lhs[{t.k, t.t, t.d, t.u}] += t.contribution;
    for (const auto& e : classes.ledger) rhs[{e.hyp.k, e.hyp.v, e.hyp.d, e.hyp.u}] += e.weight;
    for (const auto& [key, value] : lhs) {
      const Complex other = rhs.count(key) ? rhs.at(key) : Complex(0.0);
      if (std::abs(value - other) > 1e-9 * std::max(scale, 1e-300)) o.fail("group mismatch at N = " + str(level));
    }
    for (const auto& [key, value] : rhs) {
      if (!lhs.count(key)) o.fail("class outside the collapsed ledger at N = " + str(level));
    }
  }
  if (o.ok) o.detail = "max scaled deviation " + str(worst);
  return o;
}

Outcome matrix_oracle() {
  Outcome o;
  int cases = 0;
  for (long level : {1L, 2L, 3L, 5L, 6L}) {
    for (long n = 1; n <= 6; ++n) {
      if (std::gcd(n, level) != 1) continue;
      std::vector<ClassSignature> enumerated;
      for (const auto& c : enumerate_classes(n, level, 12)) enumerated.push_back(signature_of(c));
      std::sort(enumerated.begin(), enumerated.end());
      if (enumerated != conjugacy_oracle(n, level, 36, 12)) o.fail("signatures differ at N = " + str(level) + ", n = " + str(n));
      ++cases;
    }
  }
  if (o.ok) o.detail = str(cases) + " (N, n) pairs";
  return o;
}

Outcome transform_suite() {
  Outcome o;
  for (const Complex s : {Complex(2), Complex(3), Complex(1.5, 1)}) {
    for (double u : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      if (std::abs(g_by_quadrature(u, s).value - transform_g(u, s)) > 1e-9) o.fail("g off at u = " + str(u));
    }
  }
  for (const Complex s : {Complex(2), Complex(2.5)}) {
    for (double r : {0.0, 1.0, 2.0, 5.0}) {
      if (std::abs(h_by_quadrature(r, s).value - transform_h(r, s)) > 1e-8) o.fail("h off at r = " + str(r));
    }
  }
  const double pi = std::acos(-1.0);
  for (double kappa : {1.0, 2.5, 5.0}) {
    const auto res = residue_factor(kappa, kappa);
    const Complex target = std::pow(Complex(4), Complex(0.5, kappa)) * std::sqrt(pi) *
                           std::exp(log_gamma(Complex(0, kappa)) - log_gamma(Complex(0.5, kappa)));
    if (std::abs(res.extrapolated - target) > 1e-4 * std::abs(target)) o.fail("residue off at kappa = " + str(kappa));
  }
  return o;
}

Outcome scattering_suite() {
  Outcome o;
  for (int t = 1; t <= 10; ++t) {
    if (std::abs(std::abs(phi_scalar({0.5, double(t)})) - 1) > 1e-8) o.fail("|phi| != 1 at t = " + str(t));
  }
  for (long level = 1; level <= 30; ++level) {
    if (!is_squarefree(level)) continue;
    for (const auto& wi : divisors(level)) {
      for (const auto& wj : divisors(level)) {
        if (p_entry(level, wi, wj, {2, 0.3}) != p_entry(level, wj, wi, {2, 0.3})) o.fail("p not symmetric at N = " + str(level));
      }
    }
    const auto half = scattering_matrix(level, 0.5);
    Complex trace = 0;
    for (Eigen::Index i = 0; i < half.entries.rows(); ++i) {
      if (std::abs(half.entries(i, i) + 1.0) > 1e-12) o.fail("phi_ii(1/2) != -1 at N = " + str(level));
      trace += half.entries(i, i);
    }
    if (std::abs(trace + to_double(cusp_count(level))) > 1e-10) o.fail("diagonal sum off at N = " + str(level));
  }
  for (long level : {2L, 3L, 6L}) {
    for (double t : {1.0, 2.0}) {
      const auto m = scattering_matrix(level, {0.5, t});
      const Eigen::MatrixXcd prod = m.entries * m.entries.adjoint();
      if ((prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols())).norm() > 1e-6) o.fail("not unitary at N = " + str(level));
    }
  }
  return o;
}

Outcome cusp_split_suite() {
  Outcome o;
  for (long level = 1; level <= 210; ++level) {
    if (!is_squarefree(level)) continue;
    if (Integer(enumerate_cusps(level).size()) != cusp_count(level)) o.fail("cusp count off at N = " + str(level));
  }
  for (long level : {2L, 3L, 5L}) {
    for (long n = 1; n <= 6; ++n) {
      if (std::gcd(n, level) != 1) continue;
      for (const auto& a : divisors(n)) {
        const Integer d = n / a;
        if (a == d) continue;
        const Integer span = abs_value(Integer(a - d));
        const long window = 2 * level * span.convert_to<long>();
        for (const auto& w : divisors(level)) {
          const auto data = enumerate_split_data(n, level, a, d, w);
          const std::size_t classes = oracle::fixed_cusp_classes(a, d, w, level, window, 4 * window);
          if (Integer(data.size()) != span || Integer(classes) != span) {
            o.fail("|a - d| count off at n = " + str(n) + ", N = " + str(level));
          }
          for (std::size_t i = 0; i < data.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
              if (oracle::stabilizer_conjugate(element_from_split(data[j], level), element_from_split(data[i], level), w,
                                               level, 4 * window)) {
                o.fail("two split data in one class at n = " + str(n));
              }
            }
          }
        }
      }
    }
  }
  for (long n = 1; n <= 10; ++n) {
    for (long t = 1; t <= 30; ++t) {
      if (t * t <= 4 * n) continue;
      if (split_test(t, n) == oracle::commutant_element(t, n).has_value()) {
        o.fail("split test disagrees at t = " + str(t) + ", n = " + str(n));
      }
    }
  }
  return o;
}

Outcome collapse_suite() {
  Outcome o;
  long checks = 0;
  for (long d = 5; d <= 100; ++d) {
    if (!is_in_omega(d)) continue;
    for (long level = 1; level <= 30; ++level) {
      if (!is_squarefree(level)) continue;
      for (const auto& k : divisors(level)) {
        const auto chk = moebius_collapse_check(d, level, k);
        if (chk.lhs != chk.rhs) o.fail("collapse fails at d = " + str(d) + ", N = " + str(level) + ", k = " + str(k));
        ++checks;
      }
    }
  }
  if (o.ok) o.detail = str(checks) + " exact checks";
  return o;
}

Outcome refusal_regression() {
  Outcome o;
  const std::vector<std::vector<std::string>> requests{
      {"trace", "1", "2"}, {"residue"}, {"lseries", "1", "1", "--residue"}, {"lseries", "1", "1", "--trace"}};
  for (const auto& args : requests) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (code != kExitUsage || err.str().find(kRefusalMessage) == std::string::npos || !out.str().empty()) {
      o.fail("not refused: " + args.front());
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Pell fundamental solutions, d <= 500", 10, pell_suite},
      {2, "class numbers and the class number formula", 120, class_number_suite},
      {3, "square-root class counts", 30, sqrt_class_suite},
      {4, "Gamma0(N) class counts against the splitting oracle", 300, corollary_suite},
      {5, "collapsed sum equals the class sum", 60, headline_identity},
      {6, "class enumeration against the matrix oracle", 300, matrix_oracle},
      {7, "transform closed forms and residue constant", 30, transform_suite},
      {8, "scattering matrix properties", 60, scattering_suite},
      {9, "cusps, split counts and the split test", 300, cusp_split_suite},
      {10, "Moebius collapse identity", 10, collapse_suite},
      {11, "CLI refuses trace and residue extraction", 10, refusal_regression},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && seconds > c.budget_seconds) o.fail("over budget");
    failures += !o.ok;
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << std::fixed << std::setprecision(2) << seconds << " s of " << std::setprecision(0) << c.budget_seconds
              << " s" << (o.detail.empty() ? "" : "; " + o.detail) << ")\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
  }
  return failures;
}
