#ifndef HECKE_GAMMA0_HPP
#define HECKE_GAMMA0_HPP

// Cusps of Gamma0(N) and hyperbolic elements of the Hecke set whose fixed
// points are cusps ("split" elements), with the finite part of their
// contribution to the trace.

#include <vector>

#include "hecke/arith.hpp"
#include "hecke/matrix2.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

/// The cusp u/w with gcd(u, w) = 1 and w | N.
struct Cusp {
  Integer u;
  Integer w;
  friend bool operator==(const Cusp&, const Cusp&) = default;
};

/// nu(N) = sum over w | N of phi(gcd(w, N/w)).
Integer cusp_count(const Integer& level);

/// One representative u/w per class, ascending in w then u. u is the least
/// positive integer prime to w in its residue class modulo gcd(w, N/w).
std::vector<Cusp> enumerate_cusps(const Integer& level);

/// Same w and u1 = u2 modulo gcd(w, N/w).
bool cusps_equivalent(const Cusp& c1, const Cusp& c2, const Integer& level);

/// Generator of the stabilizer of u/w in Gamma0(N):
/// I + m [[uw, -u^2], [w^2, -uw]] with m w^2 = lcm(w^2, N).
IntMatrix2 stabilizer_generator(const Cusp& cusp, const Integer& level);

/// True iff t^2 - 4n is a positive perfect square. Throws
/// std::invalid_argument unless t^2 > 4n.
bool split_test(const Integer& trace, const Integer& n);

/// A split element fixing the cusp 1/w, written as sigma [[a, b], [0, d]] sigma^{-1}
/// with sigma the scaling matrix of the cusp. For square-free N the shift b
/// is j w / N with j an integer.
struct SplitHyperbolicDatum {
  Integer a;
  Integer d;
  Rational b;
  Integer j;  // b = j w / N
  Cusp cusp;
  Integer big_c;  // lower-left entry (a - d) w - b w N
  Integer ell;    // gcd(C, b N)
};

/// All data at cusp 1/w for one factorization n = a d, a != d, with b in
/// [offset, offset + |a - d|). Requires square-free N, gcd(n, N) = 1, w | N.
std::vector<SplitHyperbolicDatum> enumerate_split_data(const Integer& n, const Integer& level,
                                                       const Integer& a, const Integer& d,
                                                       const Integer& w, const Integer& b_offset = 0);

/// [[a - bN, bN/w], [C, d + bN]], determinant n, C divisible by N.
IntMatrix2 element_from_split(const SplitHyperbolicDatum& datum, const Integer& level);

/// gcd(C / ell, N) == w, with gcd(0, N) = N: the two fixed points of the
/// element are Gamma0(N)-equivalent cusps.
bool paired_cusp_test(const SplitHyperbolicDatum& datum, const Integer& level);

/// The logarithm's argument in the finite part:
/// (a-d)^2 w N lcm(C^2/ell^2, N) / C^2, as an exact rational. When C = 0 the
/// second fixed point is infinity and the value is w N.
Rational split_log_argument(const SplitHyperbolicDatum& datum, const Integer& level);

/// Y-independent part of the split-hyperbolic sum:
///   sqrt(n)/2 sum_w sum_{ad=n, a!=d} sum_b ln(arg)/|a-d| g(ln a/d)
///   + sum_{ad=n, a!=d} nu(N)/2 |a-d| integral_1^inf k((a-d)^2 t / n) ln t / sqrt(t-1) dt.
/// b_offset shifts every b-window by an integer. Throws QuadratureError.
Complex split_finite_sum(const Integer& n, const Integer& level, Complex s,
                         const QuadratureConfig& cfg = {}, const Integer& b_offset = 0);

/// integral_1^inf k(x t) ln t / sqrt(t - 1) dt, after t = 1 + tau^2.
QuadratureResult split_log_integral(double x, Complex s, const QuadratureConfig& cfg = {});

/// delta_n (pi/3) N prod_{p|N} (1 + 1/p): the area term, present only for square n.
double identity_term(const Integer& level, const Integer& n);

}  // namespace hecke

#endif  // HECKE_GAMMA0_HPP
