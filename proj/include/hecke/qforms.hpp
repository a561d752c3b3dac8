#ifndef HECKE_QFORMS_HPP
#define HECKE_QFORMS_HPP

// Primitive indefinite binary quadratic forms [a, b, c] = a x^2 + b x y + c y^2.
//
// The group acts on the right: apply_unimodular(f, g) is the form with Gram
// matrix g^t F g, so apply(apply(f, g1), g2) == apply(f, g1 g2).
//
// A form is reduced when 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b.
// Reduced forms fall into finitely many closed cycles under the neighbour
// step rho; two forms are SL2(Z)-equivalent exactly when their reductions
// share a cycle.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/errors.hpp"
#include "hecke/matrix2.hpp"
#include "hecke/pell.hpp"

namespace hecke {

struct QuadForm {
  Integer a, b, c;

  Integer disc() const { return b * b - 4 * a * c; }
  bool is_primitive() const { return gcd(gcd(a, b), c) == 1; }

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend bool operator<(const QuadForm& x, const QuadForm& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadForm& f);
};

/// One representative per SL2(Z)-class of primitive forms of discriminant d.
struct FormClassSet {
  Discriminant d;
  std::vector<QuadForm> reps;  // each rep is reduced and is the least form of its cycle
  std::size_t h = 0;
};

/// b^2 - 4ac; throws std::invalid_argument when the value is not in Omega.
Discriminant discriminant(const QuadForm& f);

/// Throws std::invalid_argument unless det g == 1.
QuadForm apply_unimodular(const QuadForm& f, const IntMatrix2& g);

bool is_reduced(const QuadForm& f);

/// One neighbour step. Returns the new form and the matrix g with
/// apply_unimodular(f, g) == result.
struct FormStep {
  QuadForm form;
  IntMatrix2 transform;
};
FormStep rho_step(const QuadForm& f);

/// Reduced form equivalent to f, with transform g such that apply(f, g) == result.
FormStep reduce(const QuadForm& f);

/// The closed cycle of a reduced form, starting at the form itself. Entry i
/// carries the transform from the starting form to cycle[i].
std::vector<FormStep> reduced_cycle(const QuadForm& reduced);

/// All reduced primitive forms of discriminant d.
std::vector<QuadForm> reduced_forms(const Discriminant& d);

FormClassSet class_number(const Discriminant& d);

/// A determinant-one matrix g with apply_unimodular(f1, g) == f2, if any.
/// Throws std::invalid_argument on a discriminant mismatch.
std::optional<IntMatrix2> sl2_equivalent(const QuadForm& f1, const QuadForm& f2);

/// P0 = [[(v0 - b u0)/2, -c u0], [a u0, (v0 + b u0)/2]], which fixes f.
IntMatrix2 automorph(const QuadForm& f);

/// A transporter g in Gamma0(N) (taken up to sign) with apply(f1, g) == f2.
std::optional<IntMatrix2> gamma0_equivalent(const QuadForm& f1, const QuadForm& f2,
                                            const Integer& level);

/// Left coset representatives g_i of SL2(Z) / Gamma0(N), one per point of P^1(Z/N).
std::vector<IntMatrix2> gamma0_coset_representatives(const Integer& level);

/// #{rho : 1 <= rho <= 2k, rho^2 = d (mod 4k)}.
Integer count_sqrt_classes(const Integer& d, const Integer& k);

/// Gamma0(N)-class count H_d from the closed formula over k | N.
Integer capital_h(const Discriminant& d, const Integer& level);

/// One representative per Gamma0(N)-class of primitive forms of discriminant
/// d, found by splitting every SL2(Z)-class along SL2(Z)/Gamma0(N).
/// Throws ResourceLimitError when index * h_d exceeds work_bound.
std::vector<QuadForm> gamma0_class_representatives(const Discriminant& d, const Integer& level,
                                                   std::size_t work_bound = 200000);

/// Independent count of H_d via gamma0_class_representatives.
Integer capital_h_oracle(const Discriminant& d, const Integer& level,
                         std::size_t work_bound = 200000);

/// h_d ln eps_d against sqrt(d) L(1, chi_d).
struct ClassNumberFormulaCheck {
  double lhs = 0;
  double rhs = 0;
  double relative_error = 0;
  double error_estimate = 0;  // smoothing-window spread of the L(1) estimate
};

/// L(1, chi_d) = sum chi_d(n)/n by a partial sum to `cutoff`, averaged over a
/// trailing window of one full period of chi_d.
struct LValueEstimate {
  double value = 0;
  double error_estimate = 0;
};
LValueEstimate dirichlet_l1(const Integer& d, std::uint64_t cutoff);

/// Throws std::invalid_argument when cutoff < 20 d (estimate not meaningful).
ClassNumberFormulaCheck class_number_formula_check(const Discriminant& d, std::uint64_t cutoff);

/// Memo of (h_d, v0, u0) keyed by discriminant. Lookups from many threads are
/// safe; content depends only on the keys requested, never on timing.
///
/// File format: header "#hecke-trace-classcache v1", then one "d,h_d,v0,u0"
/// record per line in ascending d.
class ClassDataCache {
 public:
  struct Record {
    Integer h;
    Integer v0;
    Integer u0;
  };

  /// Computes and stores the record when it is missing.
  Record get(const Discriminant& d);
  std::optional<Record> find(const Discriminant& d) const;
  std::size_t size() const;

  /// Merges records from a file. Throws std::runtime_error on a malformed file.
  void load(const std::filesystem::path& path);
  /// Throws std::runtime_error when the file cannot be written.
  void save(const std::filesystem::path& path) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Integer, Record> records_;
};

}  // namespace hecke

#endif  // HECKE_QFORMS_HPP
