#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt d).
//
// Elements are stored as a + b*sqrt(d) with arbitrary-precision rational a, b
// (GMP). The ring of integers uses the basis {1, omega} where omega = sqrt(d),
// or omega = (1 + sqrt(d)) / 2 when d = 1 mod 4.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace weyl {

using Rational = mpq_class;

bool is_square_free(std::int64_t n);

class QuadField {
 public:
  /// Throws DomainError unless d >= 2 is square-free.
  explicit QuadField(std::int64_t d);

  std::int64_t d() const noexcept { return d_; }
  /// True when the integral basis is {1, (1 + sqrt d) / 2}.
  bool half_integral_basis() const noexcept { return d_ % 4 == 1; }
  double sqrt_d() const;
  /// omega evaluated in the first (sqrt d > 0) or second (sqrt d < 0) embedding.
  double omega(int embedding = 1) const;

  friend bool operator==(const QuadField&, const QuadField&) = default;

 private:
  std::int64_t d_;
};

class QuadElem {
 public:
  explicit QuadElem(QuadField field, Rational a = 0, Rational b = 0);

  /// u + v * omega in the integral basis.
  static QuadElem from_basis(QuadField field, std::int64_t u, std::int64_t v);
  static QuadElem sqrt_d(QuadField field);

  const QuadField& field() const noexcept { return field_; }
  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }

  /// Galois conjugate a - b sqrt(d).
  QuadElem conjugate() const;
  Rational norm() const;
  Rational trace() const;

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integer() const;
  /// Exact sign of the value in the first real embedding.
  int sign() const;
  double to_double(int embedding = 1) const;
  /// Integral-basis coordinates (u, v); nullopt when not an algebraic integer.
  std::optional<std::pair<std::int64_t, std::int64_t>> basis_coords() const;

  /// Human form such as "1+√2" or "(1+√5)/2".
  std::string to_string() const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);
  /// Throws DomainError on division by zero.
  QuadElem& operator/=(const QuadElem& o);

  friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
  friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
  friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
  friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  void require_same_field(const QuadElem& o) const;

  QuadField field_;
  Rational a_;
  Rational b_;
};

enum class ArithOp { Add, Sub, Mul, Div };
QuadElem arith(const QuadElem& x, const QuadElem& y, ArithOp op);

/// (x * conj(x), x + conj(x)).
std::pair<Rational, Rational> norm_trace(const QuadElem& x);

/// Smallest unit > 1 of the ring of integers, found by a Pell scan over
/// y = 1 .. coefficient_cap. Throws SearchExhausted if the cap is reached.
QuadElem fundamental_unit(const QuadField& field, std::int64_t coefficient_cap = 1'000'000);

/// Square root inside the field, if one exists.
std::optional<QuadElem> sqrt_in_field(const QuadElem& x);

/// Exact square root of a non-negative rational, if it is a rational square.
std::optional<Rational> rational_sqrt(const Rational& q);

/// 2x2 matrix over the field with determinant exactly one.
class QuadMatrix {
 public:
  /// Entries in row-major order (a, b, c, d). Throws DomainError unless
  /// ad - bc == 1.
  explicit QuadMatrix(std::array<QuadElem, 4> entries);

  static QuadMatrix identity(QuadField field);
  /// Entries given as integral-basis coefficient pairs (u, v).
  static QuadMatrix from_basis(QuadField field,
                               const std::array<std::pair<std::int64_t, std::int64_t>, 4>& coeffs);

  const QuadField& field() const noexcept { return entries_[0].field(); }
  const std::array<QuadElem, 4>& entries() const noexcept { return entries_; }
  const QuadElem& a() const noexcept { return entries_[0]; }
  const QuadElem& b() const noexcept { return entries_[1]; }
  const QuadElem& c() const noexcept { return entries_[2]; }
  const QuadElem& d() const noexcept { return entries_[3]; }

  QuadElem trace() const { return entries_[0] + entries_[3]; }
  QuadMatrix inverse() const;
  /// Entrywise Galois conjugate.
  QuadMatrix conjugate() const;
  QuadMatrix operator-() const;
  bool is_integral() const;
  bool is_plus_minus_identity() const;
  /// Equality in PSL: M == N or M == -N.
  bool equals_up_to_sign(const QuadMatrix& o) const;

  friend QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y);
  friend bool operator==(const QuadMatrix& x, const QuadMatrix& y) { return x.entries_ == y.entries_; }

 private:
  struct Unchecked {};
  QuadMatrix(std::array<QuadElem, 4> entries, Unchecked) : entries_(std::move(entries)) {}

  std::array<QuadElem, 4> entries_;
};

}  // namespace weyl
