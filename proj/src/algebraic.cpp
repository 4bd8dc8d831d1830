#include "weyl/algebraic.hpp"

#include <algorithm>
#include <cmath>

#include "weyl/errors.hpp"

namespace weyl {

QuadExt::QuadExt(QuadElem x) : x_(x), y_(QuadElem(x.field())), delta_(QuadElem(x.field())) {
  refresh_value();
}

QuadExt::QuadExt(QuadElem x, QuadElem y, QuadElem delta)
    : x_(std::move(x)), y_(std::move(y)), delta_(std::move(delta)) {
  if (y_.is_zero() || delta_.is_zero()) {
    y_ = QuadElem(x_.field());
    delta_ = QuadElem(x_.field());
  } else if (auto r = sqrt_in_field(delta_)) {
    // sqrt(delta) is taken positive in the first embedding.
    const QuadElem root = r->sign() < 0 ? -*r : *r;
    x_ += y_ * root;
    y_ = QuadElem(x_.field());
    delta_ = QuadElem(x_.field());
  } else if (delta_.sign() < 0) {
    throw DomainError("QuadExt: negative radicand is not a real number");
  }
  refresh_value();
}

QuadExt::QuadExt(QuadElem x, QuadElem y, QuadElem delta, Raw)
    : x_(std::move(x)), y_(std::move(y)), delta_(std::move(delta)) {
  if (y_.is_zero()) delta_ = QuadElem(x_.field());
  refresh_value();
}

void QuadExt::refresh_value() {
  value_ = x_.to_double();
  if (!y_.is_zero()) value_ += y_.to_double() * std::sqrt(std::max(0.0, delta_.to_double()));
}

int QuadExt::sign() const {
  const int sx = x_.sign();
  const int sy = y_.sign();
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // Opposite signs: compare x^2 with y^2 delta; equality is impossible for a
  // non-square delta.
  const QuadElem diff = x_ * x_ - y_ * y_ * delta_;
  return diff.sign() > 0 ? sx : sy;
}

const QuadElem& QuadExt::common_delta(const QuadExt& o) const {
  if (y_.is_zero()) return o.delta_;
  if (o.y_.is_zero() || delta_ == o.delta_) return delta_;
  throw DomainError("QuadExt arithmetic across different radicands");
}

QuadExt QuadExt::operator-() const { return QuadExt(-x_, -y_, delta_, Raw{}); }

QuadExt operator+(const QuadExt& p, const QuadExt& q) {
  const QuadElem& delta = p.common_delta(q);
  return QuadExt(p.x_ + q.x_, p.y_ + q.y_, delta, QuadExt::Raw{});
}

QuadExt operator-(const QuadExt& p, const QuadExt& q) { return p + (-q); }

QuadExt operator*(const QuadExt& p, const QuadExt& q) {
  const QuadElem& delta = p.common_delta(q);
  return QuadExt(p.x_ * q.x_ + p.y_ * q.y_ * delta, p.x_ * q.y_ + p.y_ * q.x_, delta,
                 QuadExt::Raw{});
}

QuadExt operator/(const QuadExt& p, const QuadExt& q) {
  if (q.is_zero()) throw DomainError("QuadExt division by zero");
  const QuadElem& delta = p.common_delta(q);
  // (x + y r)/(u + v r) = (x + y r)(u - v r) / (u^2 - v^2 delta)
  const QuadElem den = q.x_ * q.x_ - q.y_ * q.y_ * delta;
  const QuadExt num = p * QuadExt(q.x_, -q.y_, delta, QuadExt::Raw{});
  return QuadExt(num.x_ / den, num.y_ / den, delta, QuadExt::Raw{});
}

bool operator==(const QuadExt& p, const QuadExt& q) {
  if (!(p.field() == q.field())) return false;
  const bool p_rational = p.y_.is_zero();
  const bool q_rational = q.y_.is_zero();
  if (p_rational && q_rational) return p.x_ == q.x_;
  if (p_rational != q_rational) return false;
  // Same minimal polynomial X^2 - 2x X + (x^2 - y^2 delta) ...
  if (!(p.x_ == q.x_)) return false;
  if (!(p.y_ * p.y_ * p.delta_ == q.y_ * q.y_ * q.delta_)) return false;
  // ... and the same root of it.
  const double scale = std::max(1.0, std::abs(p.value_));
  return std::abs(p.value_ - q.value_) <= 1e-9 * scale;
}

}  // namespace weyl
