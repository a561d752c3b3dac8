#ifndef HECKE_HYPERBOLIC_HPP
#define HECKE_HYPERBOLIC_HPP

// Hyperbolic conjugacy classes of the Hecke set whose centralizer in
// Gamma0(N) is infinite cyclic.
//
// Such a class is a Gamma0(N)-class of primitive forms [a, b, c] of
// discriminant d together with (v, u), v^2 - d1 u^2 = 4n, where
// k = N / gcd(a, N) and d1 = d k^2. Its element is
//   [[(v - b k u)/2, -c k u], [a k u, (v + b k u)/2]].
// P and -P are identified, so v > 0 throughout.

#include <iosfwd>
#include <string>
#include <vector>

#include "hecke/matrix2.hpp"
#include "hecke/numbers.hpp"
#include "hecke/qforms.hpp"

namespace hecke {

/// An integer matrix of determinant n with N | C; stands for M / sqrt(n).
struct HeckeElement {
  IntMatrix2 matrix;
  Integer n;
  Integer level;
};

struct HypClass {
  QuadForm form;  // Gamma0(N) class representative
  Integer d;      // disc(form)
  Integer k;      // N / gcd(a, N)
  Integer v;      // trace
  Integer u;
  Integer d1;               // d k^2
  Integer trace_sq_minus;   // v^2 - 4n = d1 u^2

  /// ((v + u sqrt d1) / 2)^2 / n.
  double norm(const Integer& n) const;
};

/// Trace, u, d1, d and the class representative: identifies a class.
struct ClassSignature {
  Integer trace;
  Integer u;
  Integer d1;
  Integer d;
  QuadForm form;
  friend bool operator==(const ClassSignature&, const ClassSignature&) = default;
  friend bool operator<(const ClassSignature& x, const ClassSignature& y);
  friend std::ostream& operator<<(std::ostream& os, const ClassSignature& s);
};

ClassSignature signature_of(const HypClass& h);

/// Throws std::invalid_argument when an entry is not integral.
HeckeElement element_from_class(const HypClass& h, const Integer& n, const Integer& level);

/// Generator of the centralizer: (v1, u1') with (v1, u1) the fundamental
/// solution of v^2 - d1 u^2 = 4 and u1' = k u1.
struct ClassGenerator {
  Integer v1;
  Integer u1_prime;
  double log_norm = 0;  // ln NP1 = 2 ln eps_{d1}
};
ClassGenerator class_generator(const HypClass& h);

/// All classes with 2 sqrt(n) < v <= t_max, ordered by (t, d1, k, form index).
/// Requires square-free N and gcd(n, N) = 1. `threads` spreads the traces
/// over workers without changing the result.
std::vector<HypClass> enumerate_classes(const Integer& n, const Integer& level,
                                        const Integer& t_max, unsigned threads = 1);

/// Independent enumeration: every integer matrix with entries bounded by
/// entry_bound in absolute value, N | C, determinant n and non-split
/// hyperbolic trace t <= t_max, sorted into Gamma0(N)-conjugacy classes.
/// Each merge is confirmed by an explicit conjugating matrix. Throws
/// ResourceLimitError when (2 bound + 1)^3 exceeds work_bound.
std::vector<ClassSignature> conjugacy_oracle(const Integer& n, const Integer& level,
                                             const Integer& entry_bound, const Integer& t_max,
                                             std::size_t work_bound = 50'000'000);

/// The class data read off a matrix: form (C, D - A, -B) / mu with mu > 0,
/// trace made positive. Throws std::invalid_argument when the matrix is not
/// a non-split hyperbolic Hecke element.
HypClass class_of_element(const HeckeElement& element);

struct ClassSumEntry {
  HypClass hyp;
  Integer h_d;          // SL2(Z) class number of d
  double log_eps = 0;   // ln eps_{d1}
  Complex weight;       // hyperbolic_weight(NP, NP1, s)
  Complex class_term;   // 4 sqrt(pi n) Gamma(s-1/2)/(N Gamma(s)) (a,N) ln eps_{d1} / (u sqrt d) (...)^{1/2-s}
};

struct ClassSum {
  Complex value;                      // sum of weights, in ledger order
  std::vector<ClassSumEntry> ledger;
  double max_term_deviation = 0;      // max |weight - class_term| / |weight|
};

/// Requires Re s > 1.
ClassSum class_sum(const Integer& n, const Integer& level, Complex s, const Integer& t_max,
                   unsigned threads = 1);

/// Header "t,d,u,k,h_d,log_eps,weight_re,weight_im" and one row per class.
std::string class_ledger_csv(const ClassSum& sum);

}  // namespace hecke

#endif  // HECKE_HYPERBOLIC_HPP
