#ifndef HECKE_TESTS_ORACLES_HPP
#define HECKE_TESTS_ORACLES_HPP

// Brute-force and independently derived reference computations. None of
// these call the production algorithm they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/matrix2.hpp"
#include "hecke/numbers.hpp"
#include "hecke/qforms.hpp"

namespace oracle {

using hecke::Integer;
using hecke::IntMatrix2;
using hecke::QuadForm;
using hecke::Real;

inline std::uint64_t isqrt64(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

/// Smallest u in [1, cap] with d u^2 + 4 a square, as (v, u).
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> pell_scan(std::uint64_t d,
                                                                       std::uint64_t cap) {
  for (std::uint64_t u = 1; u <= cap; ++u) {
    const std::uint64_t q = d * u * u + 4;
    const std::uint64_t v = isqrt64(q);
    if (v * v == q) return std::make_pair(v, u);
  }
  return std::nullopt;
}

/// True when eps = (v + u sqrt d)/2 has no k-th root (k >= 2) of the same
/// shape, i.e. no smaller solution of v^2 - d u^2 = 4 generates it. A k-th
/// root lambda would have integer trace lambda + 1/lambda = 2 cosh(ln eps / k).
inline bool is_primitive_unit(const Integer& d, const Integer& v, const Integer& u) {
  const unsigned digits = static_cast<unsigned>(v.str().size()) + 30;
  hecke::PrecisionGuard guard(digits);
  const Real sd = boost::multiprecision::sqrt(Real(d));
  const Real log_eps = boost::multiprecision::log((Real(v) + Real(u) * sd) / 2);
  const Real log_min = boost::multiprecision::log((Real(1) + boost::multiprecision::sqrt(Real(5))) / 2);
  const auto k_max = static_cast<unsigned long>((log_eps / log_min).convert_to<double>()) + 1;
  for (unsigned long k = 2; k <= k_max; ++k) {
    const Real trace = 2 * boost::multiprecision::cosh(log_eps / k);
    const Integer t = boost::multiprecision::round(trace).convert_to<Integer>();
    if (boost::multiprecision::abs(trace - Real(t)) > Real(1e-10)) continue;
    const Integer q = t * t - 4;
    if (q > 0 && q % d == 0 && hecke::integer_sqrt_exact(q / d)) return false;
  }
  return true;
}

/// h_d by union-find over every primitive form with |a|, |b|, |c| <= d,
/// joined along f -> f S and f -> f T^{+-1}; counts components containing a
/// reduced form (0 < b < sqrt d, sqrt d - b < 2|a| < sqrt d + b).
inline std::size_t exhaustive_class_count(long d) {
  struct Key {
    long a, b;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const { return std::hash<long>()(k.a * 1000003L + k.b); }
  };
  const long box = d;
  std::unordered_map<Key, std::size_t, Hash> index;
  std::vector<std::array<long, 3>> forms;
  for (long a = -box; a <= box; ++a) {
    if (a == 0) continue;
    for (long b = -box; b <= box; ++b) {
      const long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c == 0 || std::labs(c) > box) continue;
      if (std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c)) != 1) continue;
      index[{a, b}] = forms.size();
      forms.push_back({a, b, c});
    }
  }
  std::vector<std::size_t> parent(forms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t i, long a, long b) {
    auto it = index.find({a, b});
    if (it != index.end()) parent[find(i)] = find(it->second);
  };
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto [a, b, c] = forms[i];
    join(i, c, -b);                // S = [[0,-1],[1,0]]
    join(i, a, b + 2 * a);         // T
    join(i, a, b - 2 * a);         // T^-1
  }
  auto reduced = [&](long a, long b) {
    if (b <= 0 || b * b >= d) return false;
    const long lo = 2 * std::labs(a) + b;  // 2|a| > sqrt d - b
    const long hi = 2 * std::labs(a) - b;  // 2|a| < sqrt d + b
    return lo * lo > d && (hi <= 0 || hi * hi < d);
  };
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (reduced(forms[i][0], forms[i][1])) roots.insert(find(i));
  }
  return roots.size();
}

/// A matrix of SL2(Z), not +-I, commuting with [[0, -n], [1, t]], found from
/// the periodic continued fraction of its fixed point (-t + sqrt Q)/2,
/// Q = t^2 - 4n. None exists (nullopt) when Q is a square: the expansion
/// then terminates.
inline std::optional<IntMatrix2> commutant_element(const Integer& t, const Integer& n) {
  const Integer q = t * t - 4 * n;
  if (q <= 0) return std::nullopt;
  const IntMatrix2 target{0, Integer(-n), 1, t};
  if (hecke::integer_sqrt_exact(q)) {
    // Rational fixed points: scan a bounded box as a sanity fallback.
    for (long beta = 1; beta <= 200; ++beta) {
      for (long alpha = -2000; alpha <= 2000; ++alpha) {
        const IntMatrix2 g{Integer(alpha), Integer(-n * beta), Integer(beta), Integer(alpha + t * beta)};
        if (g.det() == 1) return g;
      }
    }
    return std::nullopt;
  }
  const Integer s = hecke::isqrt(q);
  Integer p = -t, r = 2;  // x = (p + sqrt q) / r with r | q - p^2
  std::map<std::pair<Integer, Integer>, IntMatrix2> seen;
  IntMatrix2 prefix = IntMatrix2::identity();  // x = prefix . x_k
  for (int step = 0; step < 100000; ++step) {
    const auto key = std::make_pair(p, r);
    if (auto it = seen.find(key); it != seen.end()) {
      // x_j = x_k: prefix_j^{-1} prefix_k fixes x_j, so prefix_k prefix_j^{-1} fixes x.
      const IntMatrix2& pj = it->second;
      const IntMatrix2 pj_inv{pj.d, Integer(-pj.b), Integer(-pj.c), pj.a};  // adjugate, det +-1
      IntMatrix2 g = prefix * pj_inv;
      if (g.det() == -1) g = g * g;
      else if (pj.det() == -1) g = -g;  // adjugate of a det -1 matrix is -inverse
      if (g.det() != 1) return std::nullopt;
      if (!(g * target == target * g)) return std::nullopt;
      if (g == IntMatrix2::identity() || g == -IntMatrix2::identity()) return std::nullopt;
      return g;
    }
    seen.emplace(key, prefix);
    const Integer a = r > 0 ? hecke::floor_div(p + s, r) : hecke::floor_div(p + s + 1, r);
    prefix = prefix * IntMatrix2{a, 1, 1, 0};
    p = a * r - p;
    r = (q - p * p) / r;
  }
  return std::nullopt;
}

/// Number of classes, under conjugation by the stabilizer of 1/w, of the
/// matrices [[a - Bw, B], [w(a - d - Bw), d + Bw]] (the elements with
/// eigenvalue a at 1/w and determinant ad) having N | C and |B| <= window.
/// Two are merged when S^-m M S^m agrees for some |m| <= shift_bound.
inline std::size_t fixed_cusp_classes(const Integer& a, const Integer& d, const Integer& w,
                                      const Integer& level, long window, long shift_bound,
                                      std::vector<Integer>* class_b_values = nullptr) {
  const Integer w2 = w * w;
  const Integer m0 = hecke::lcm(w2, level) / w2;
  const IntMatrix2 s{Integer(1 + m0 * w), Integer(-m0), Integer(m0 * w2), Integer(1 - m0 * w)};
  const IntMatrix2 s_inv = hecke::inverse_sl2(s);
  std::vector<IntMatrix2> reps;
  for (long b = -window; b <= window; ++b) {
    const Integer bb(b);
    const IntMatrix2 m{Integer(a - bb * w), bb, Integer(w * (a - d - bb * w)), Integer(d + bb * w)};
    if (hecke::mod_floor(m.c, level) != 0) continue;
    bool known = false;
    for (const auto& r : reps) {
      IntMatrix2 conj_up = r, conj_down = r;
      for (long k = 0; k <= shift_bound && !known; ++k) {
        if (conj_up == m || conj_down == m) known = true;
        conj_up = s_inv * conj_up * s;
        conj_down = s * conj_down * s_inv;
      }
      if (known) break;
    }
    if (!known) {
      reps.push_back(m);
      if (class_b_values) class_b_values->push_back(bb);
    }
  }
  return reps.size();
}

/// True when S^-m M1 S^m == M2 for some |m| <= shift_bound, S the
/// stabilizer generator of 1/w in Gamma0(N) computed from scratch.
inline bool stabilizer_conjugate(const IntMatrix2& m1, const IntMatrix2& m2, const Integer& w,
                                 const Integer& level, long shift_bound) {
  const Integer w2 = w * w;
  const Integer m0 = hecke::lcm(w2, level) / w2;
  const IntMatrix2 s{Integer(1 + m0 * w), Integer(-m0), Integer(m0 * w2), Integer(1 - m0 * w)};
  const IntMatrix2 s_inv = hecke::inverse_sl2(s);
  IntMatrix2 up = m1, down = m1;
  for (long k = 0; k <= shift_bound; ++k) {
    if (up == m2 || down == m2) return true;
    up = s_inv * up * s;
    down = s * down * s_inv;
  }
  return false;
}

/// The second fixed point of a matrix fixing 1/w is -B w / C. Returns
/// gcd(denominator, N), which for square-free N names its cusp class
/// (infinity, C = 0, counts as denominator 0).
inline Integer second_fixed_point_class(const IntMatrix2& m, const Integer& w, const Integer& level) {
  if (m.c == 0) return level;
  const hecke::Rational x(Integer(-m.b * w), m.c);
  return hecke::gcd(boost::multiprecision::denominator(x), level);
}

/// Breadth-first search over words of length <= depth in T^{+-1} and
/// [[1,0],[N,1]]^{+-1}, looking for g with apply(f1, g) == f2.
inline std::optional<IntMatrix2> gamma0_word_search(const QuadForm& f1, const QuadForm& f2,
                                                    const Integer& level, int depth) {
  const std::vector<IntMatrix2> gens{IntMatrix2{1, 1, 0, 1}, IntMatrix2{1, -1, 0, 1},
                                     IntMatrix2{1, 0, level, 1}, IntMatrix2{1, 0, Integer(-level), 1}};
  std::vector<IntMatrix2> frontier{IntMatrix2::identity()};
  std::set<std::array<std::string, 4>> seen;
  for (int step = 0; step <= depth; ++step) {
    std::vector<IntMatrix2> next;
    for (const auto& g : frontier) {
      if (hecke::apply_unimodular(f1, g) == f2) return g;
      if (step == depth) continue;
      for (const auto& h : gens) {
        const IntMatrix2 x = g * h;
        if (seen.insert({x.a.str(), x.b.str(), x.c.str(), x.d.str()}).second) next.push_back(x);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// zeta(s) from the alternating eta series with Borwein's acceleration, in
/// 120-digit arithmetic: zeta(s) = eta(s) / (1 - 2^{1-s}).
inline std::complex<double> eta_zeta(std::complex<double> s_in) {
  hecke::PrecisionGuard guard(120);
  using boost::multiprecision::cos;
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::sin;
  const int terms = 160;
  const Real sr(s_in.real()), si(s_in.imag());
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<Real> dk(terms + 1);
  Real term = Real(1) / terms;  // i = 0 term divided by n
  Real acc = 0;
  for (int i = 0; i <= terms; ++i) {
    if (i == 0) {
      term = Real(1);
    } else {
      term *= Real(4) * (terms + i - 1) * (terms - i + 1) / (Real(2 * i) * (2 * i - 1));
    }
    acc += term;
    dk[i] = acc;
  }
  Real re = 0, im = 0;
  for (int k = 0; k < terms; ++k) {
    const Real lk = log(Real(k + 1));
    const Real mag = exp(-sr * lk);
    const Real coeff = (k % 2 == 0 ? 1 : -1) * (dk[k] - dk[terms]);
    re += coeff * mag * cos(si * lk);
    im -= coeff * mag * sin(si * lk);
  }
  re /= -dk[terms];
  im /= -dk[terms];
  // 1 - 2^{1-s}
  const Real l2 = log(Real(2));
  const Real mag = exp((1 - sr) * l2);
  const Real den_re = 1 - mag * cos(-si * l2);
  const Real den_im = -mag * sin(-si * l2);
  const Real norm = den_re * den_re + den_im * den_im;
  const Real out_re = (re * den_re + im * den_im) / norm;
  const Real out_im = (im * den_re - re * den_im) / norm;
  return {out_re.convert_to<double>(), out_im.convert_to<double>()};
}

}  // namespace oracle

#endif  // HECKE_TESTS_ORACLES_HPP
