#ifndef HECKE_LSERIES_HPP
#define HECKE_LSERIES_HPP

// The Dirichlet series L_n(s), its hyperbolic companion sum regrouped by
// discriminant, and the assembled geometric side of the trace formula.
//
// Every sum runs over traces t with t^2 - 4n = d k^2 u^2, d in Omega,
// k | N, u >= 1, truncated at t <= t_max.

#include <string>
#include <vector>

#include "hecke/numbers.hpp"
#include "hecke/qforms.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

/// One (m, k, t, d, u) term.
struct SeriesTerm {
  Integer m, k, t, d, u;
  Complex contribution;
};

struct LnEvaluation {
  Integer level;
  Integer n;
  Complex s;
  Integer t_max;
  Complex value;                   // sum of contributions in ledger order
  std::vector<SeriesTerm> terms;   // ascending in (m, k, t, d, u)
};

/// L_n(s) = sum_{m|N} sum_{k|N} k^{1-2s} mu((m,k))/(m,k)
///          sum_{d,u} (d/m) h_d ln eps_d / (d u^2)^s, truncated at t_max.
/// Requires square-free N, gcd(n, N) = 1 and Re s > 1. A cache, when given,
/// supplies and receives the (h_d, v0, u0) records.
LnEvaluation ln_series(const Integer& level, const Integer& n, Complex s, const Integer& t_max,
                       ClassDataCache* cache = nullptr, unsigned threads = 1);

/// 4 sqrt(pi n) Gamma(s-1/2)/Gamma(s) sum_{m|N} sum_{k|N} mu((m,k))/(m,k)
///   sum_{d,u} (d/m) h_d ln eps_d / (u sqrt d) (1 + d k^2 u^2 / 4n)^{1/2-s}:
/// the hyperbolic class sum with the Gamma0(N) classes counted through
/// SL2(Z) class numbers. Same ledger layout and preconditions as ln_series.
LnEvaluation collapsed_class_sum(const Integer& level, const Integer& n, Complex s,
                                 const Integer& t_max, ClassDataCache* cache = nullptr,
                                 unsigned threads = 1);

/// prod_{p | N/k} (1 + (d/p)) prod_{p | k} (1 - (d/p)/p) against
/// sum_{m | N} (d/m) mu((m,k)) / (m,k). Requires square-free N and k | N.
struct CollapseCheck {
  Rational lhs;
  Rational rhs;
};
CollapseCheck moebius_collapse_check(const Integer& d, const Integer& level, const Integer& k);

/// Upper bound for sum_{t > t_max} |terms of ln_series at trace t| with
/// sigma = Re s > 1, from h_d ln eps_d <= sqrt(d) (ln d + 3).
double ln_series_tail_bound(const Integer& level, const Integer& n, double sigma,
                            const Integer& t_max);

struct GeometricComponent {
  std::string label;
  Complex value;
  bool included = true;       // false for terms that are reported but not enumerated
  double error_estimate = 0;  // quadrature estimate, 0 for closed forms
};

struct GeometricSide {
  std::vector<GeometricComponent> components;
  Complex total;  // sum of included components
  double integration_cutoff = 0;  // R with |h(r)| < 1e-12 for |r| >= R
};

/// Identity, hyperbolic (truncated), elliptic (not enumerated) and the
/// parabolic/Eisenstein terms. Requires Re s > 1, square-free N and
/// gcd(n, N) = 1. Throws QuadratureError when an integral misses its tolerance.
GeometricSide geometric_side(const Integer& level, const Integer& n, Complex s,
                             const Integer& t_max, const QuadratureConfig& cfg = {},
                             unsigned threads = 1);

/// {"schema":..., "N":..., "n":..., "s":[re,im], "t_max":..., "value":[re,im],
///  "terms":[[m,k,d,u,re,im],...]}
std::string ln_evaluation_json(const LnEvaluation& eval);

/// "m,k,t,d,u,re,im" rows.
std::string ln_evaluation_csv(const LnEvaluation& eval);

inline constexpr const char* kSchemaVersion = "hecke-trace/1";

}  // namespace hecke

#endif  // HECKE_LSERIES_HPP
