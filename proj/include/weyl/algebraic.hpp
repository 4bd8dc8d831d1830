#pragma once

// Numbers of the form x + y sqrt(delta) with x, y, delta in a real quadratic
// field K, evaluated in the first real embedding of K (sqrt d > 0) with the
// positive branch of sqrt(delta). Fixed points of hyperbolic and parabolic
// elements of PSL(2, O) are of this form, which makes "does gamma fix xi"
// decidable exactly.

#include <optional>

#include "weyl/quadfield.hpp"

namespace weyl {

class QuadExt {
 public:
  /// An element of K itself.
  explicit QuadExt(QuadElem x);
  /// Normalizes: if delta is a square in K the value is folded into x.
  /// Throws DomainError if y != 0 and delta is negative in the first embedding.
  QuadExt(QuadElem x, QuadElem y, QuadElem delta);

  const QuadElem& x() const noexcept { return x_; }
  const QuadElem& y() const noexcept { return y_; }
  const QuadElem& delta() const noexcept { return delta_; }
  const QuadField& field() const noexcept { return x_.field(); }

  bool in_base_field() const { return y_.is_zero(); }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
  double value() const { return value_; }
  /// Exact sign of the value.
  int sign() const;

  QuadExt operator-() const;
  friend QuadExt operator+(const QuadExt& p, const QuadExt& q);
  friend QuadExt operator-(const QuadExt& p, const QuadExt& q);
  friend QuadExt operator*(const QuadExt& p, const QuadExt& q);
  /// Throws DomainError on division by zero.
  friend QuadExt operator/(const QuadExt& p, const QuadExt& q);

  /// Exact equality: equal minimal polynomials over K plus agreement of the
  /// float values (which separates the two conjugate roots).
  friend bool operator==(const QuadExt& p, const QuadExt& q);

 private:
  struct Raw {};
  QuadExt(QuadElem x, QuadElem y, QuadElem delta, Raw);
  const QuadElem& common_delta(const QuadExt& o) const;
  void refresh_value();

  QuadElem x_;
  QuadElem y_;
  QuadElem delta_;
  double value_ = 0.0;
};

}  // namespace weyl
