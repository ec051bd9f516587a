#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "prymker/error.hpp"

namespace prymker {

/// The coefficient field Q(zeta_N).  N = 1 (and N = 2) give plain rationals.
/// Supported orders: 1, 2, 3, 4, 6 and the primes 5, 7, 11, 13.
class FieldSpec {
 public:
  explicit FieldSpec(int cyclotomic_order = 1);

  int order() const noexcept { return order_; }
  /// Degree of the field over Q, i.e. the number of power-basis coefficients.
  int degree() const noexcept;
  /// Coefficients of the N-th cyclotomic polynomial, constant term first.
  const std::vector<mpz_class>& modulus() const;

  /// Whether a primitive root of unity of order n lies in this field.
  bool has_root_of_unity(int n) const noexcept;

  static bool supported(int cyclotomic_order) noexcept;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  int order_;
};

/// An element of Q(zeta_N) in the power basis 1, z, ..., z^(deg-1), reduced
/// modulo the cyclotomic polynomial.
///
/// A scalar whose value is rational combines freely with scalars of any
/// field; two genuinely irrational scalars from different fields raise
/// FieldMismatch.
class Scalar {
 public:
  Scalar();
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& value);  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& value, const FieldSpec& field);

  /// Builds a + b z + c z^2 + ... and reduces it.
  static Scalar from_coefficients(const FieldSpec& field, std::vector<mpq_class> coeffs);
  /// The distinguished primitive root z = zeta_N of the field.
  static Scalar zeta(const FieldSpec& field);
  /// A primitive n-th root of unity inside `field` (n must divide N, or n <= 2).
  static Scalar root_of_unity(const FieldSpec& field, int n);

  FieldSpec field() const { return FieldSpec(order_); }
  int order() const noexcept { return order_; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// The value as a rational; requires is_rational().
  const mpq_class& rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Multiplicative inverse; throws DivisionByZero on 0.
  Scalar inverse() const;
  Scalar pow(long exponent) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "a0 + a1*z + a2*z^2" with reduced rationals; "0" for zero.
  std::string to_string() const;
  static Scalar parse(std::string_view text, const FieldSpec& field);

 private:
  void promote_to(int order);
  void reduce();

  int order_ = 1;
  std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Designated N-th root of a rational value: the real root when it is
/// rational.  Throws NotAnNthPower otherwise.
mpq_class rational_nth_root(const mpq_class& value, int n);

/// Rational square root if it exists.
bool rational_sqrt(const mpq_class& value, mpq_class& root);

}  // namespace prymker
