#ifndef HECKE_MATRIX2_HPP
#define HECKE_MATRIX2_HPP

#include <ostream>
#include <stdexcept>

#include "hecke/numbers.hpp"

namespace hecke {

/// Dense 2x2 matrix [[a, b], [c, d]] over an arbitrary scalar.
template <class Scalar>
struct Matrix2 {
  Scalar a{1}, b{0}, c{0}, d{1};

  static Matrix2 identity() { return Matrix2{Scalar(1), Scalar(0), Scalar(0), Scalar(1)}; }

  Scalar det() const { return a * d - b * c; }
  Scalar trace() const { return a + d; }

  /// Adjugate; equals the inverse when det() == 1.
  Matrix2 adjugate() const { return Matrix2{d, Scalar(-b), Scalar(-c), a}; }

  Matrix2 operator-() const { return Matrix2{Scalar(-a), Scalar(-b), Scalar(-c), Scalar(-d)}; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return Matrix2{Scalar(x.a * y.a + x.b * y.c), Scalar(x.a * y.b + x.b * y.d),
                   Scalar(x.c * y.a + x.d * y.c), Scalar(x.c * y.b + x.d * y.d)};
  }

  friend bool operator==(const Matrix2& x, const Matrix2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
  }
};

using IntMatrix2 = Matrix2<Integer>;

/// Inverse of a determinant-one integer matrix.
inline IntMatrix2 inverse_sl2(const IntMatrix2& m) {
  if (m.det() != 1) throw std::invalid_argument("inverse_sl2: determinant is not 1");
  return m.adjugate();
}

/// Reduces every entry modulo a positive modulus into [0, modulus).
inline IntMatrix2 reduce_mod(const IntMatrix2& m, const Integer& modulus) {
  return IntMatrix2{mod_floor(m.a, modulus), mod_floor(m.b, modulus), mod_floor(m.c, modulus),
                    mod_floor(m.d, modulus)};
}

inline IntMatrix2 mul_mod(const IntMatrix2& x, const IntMatrix2& y, const Integer& modulus) {
  return reduce_mod(x * y, modulus);
}

/// Integer power by repeated squaring; k >= 0.
template <class Scalar>
Matrix2<Scalar> power(Matrix2<Scalar> base, unsigned long k) {
  Matrix2<Scalar> result = Matrix2<Scalar>::identity();
  while (k > 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

}  // namespace hecke

#endif  // HECKE_MATRIX2_HPP
