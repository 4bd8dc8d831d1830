#include "weyl/quadfield.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

bool is_square_free(std::int64_t n) {
  if (n < 1) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

QuadField::QuadField(std::int64_t d) : d_(d) {
  if (d < 2 || !is_square_free(d)) {
    throw DomainError("d = " + std::to_string(d) + " is not a square-free integer >= 2");
  }
}

double QuadField::sqrt_d() const { return std::sqrt(static_cast<double>(d_)); }

double QuadField::omega(int embedding) const {
  const double root = embedding == 1 ? sqrt_d() : -sqrt_d();
  return half_integral_basis() ? (1.0 + root) / 2.0 : root;
}

// ---------------------------------------------------------------------------

QuadElem::QuadElem(QuadField field, Rational a, Rational b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

QuadElem QuadElem::from_basis(QuadField field, std::int64_t u, std::int64_t v) {
  if (field.half_integral_basis()) {
    // u + v (1 + sqrt d) / 2
    return QuadElem(field, Rational(u) + Rational(v, 2), Rational(v, 2));
  }
  return QuadElem(field, Rational(u), Rational(v));
}

QuadElem QuadElem::sqrt_d(QuadField field) { return QuadElem(field, 0, 1); }

QuadElem QuadElem::conjugate() const { return QuadElem(field_, a_, -b_); }

Rational QuadElem::norm() const { return a_ * a_ - Rational(field_.d()) * b_ * b_; }

Rational QuadElem::trace() const { return 2 * a_; }

bool QuadElem::is_integer() const {
  const Rational n = norm();
  const Rational t = trace();
  return n.get_den() == 1 && t.get_den() == 1;
}

int QuadElem::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b sqrt(d) have opposite signs; the larger magnitude wins.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(field_.d());
  return lhs > rhs ? sa : sb;
}

double QuadElem::to_double(int embedding) const {
  const double root = embedding == 1 ? field_.sqrt_d() : -field_.sqrt_d();
  return a_.get_d() + b_.get_d() * root;
}

std::optional<std::pair<std::int64_t, std::int64_t>> QuadElem::basis_coords() const {
  Rational u;
  Rational v;
  if (field_.half_integral_basis()) {
    // a + b sqrt d = u + v (1 + sqrt d)/2  =>  v = 2b, u = a - b
    v = 2 * b_;
    u = a_ - b_;
  } else {
    u = a_;
    v = b_;
  }
  if (u.get_den() != 1 || v.get_den() != 1) return std::nullopt;
  if (!u.get_num().fits_slong_p() || !v.get_num().fits_slong_p()) {
    throw DomainError("integral-basis coefficient exceeds 64 bits");
  }
  return std::pair<std::int64_t, std::int64_t>{u.get_num().get_si(), v.get_num().get_si()};
}

std::string QuadElem::to_string() const {
  const mpz_class den = lcm(a_.get_den(), b_.get_den());
  const mpz_class na = a_.get_num() * (den / a_.get_den());
  const mpz_class nb = b_.get_num() * (den / b_.get_den());
  const std::string root = "√" + std::to_string(field_.d());

  std::ostringstream num;
  bool wrote = false;
  if (na != 0 || nb == 0) {
    num << na.get_str();
    wrote = true;
  }
  if (nb != 0) {
    if (nb < 0) {
      num << "-";
    } else if (wrote) {
      num << "+";
    }
    const mpz_class mag = abs(nb);
    if (mag != 1) num << mag.get_str();
    num << root;
  }
  if (den == 1) return num.str();
  if (na != 0 && nb != 0) return "(" + num.str() + ")/" + den.get_str();
  return num.str() + "/" + den.get_str();
}

void QuadElem::require_same_field(const QuadElem& o) const {
  if (!(field_ == o.field_)) throw DomainError("arithmetic between different quadratic fields");
}

QuadElem QuadElem::operator-() const { return QuadElem(field_, -a_, -b_); }

QuadElem& QuadElem::operator+=(const QuadElem& o) {
  require_same_field(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
  require_same_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
  require_same_field(o);
  Rational na = a_ * o.a_ + Rational(field_.d()) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
  require_same_field(o);
  if (o.is_zero()) throw DomainError("division by zero in quadratic field");
  const Rational n = o.norm();
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QuadElem arith(const QuadElem& x, const QuadElem& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw DomainError("unknown arithmetic operation");
}

std::pair<Rational, Rational> norm_trace(const QuadElem& x) { return {x.norm(), x.trace()}; }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Rational r(sqrt(num), sqrt(den));
  r.canonicalize();
  return r;
}

std::optional<QuadElem> sqrt_in_field(const QuadElem& x) {
  const QuadField& f = x.field();
  if (x.is_zero()) return x;
  const Rational d(f.d());
  if (sgn(x.b()) == 0) {
    if (auto p = rational_sqrt(x.a())) return QuadElem(f, *p, 0);
    if (auto q = rational_sqrt(x.a() / d)) return QuadElem(f, 0, *q);
    return std::nullopt;
  }
  // (p + q sqrt d)^2 = x  =>  p^2 + d q^2 = a, 2pq = b, so q^2 = (a +- sqrt(N(x))) / (2d).
  const auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rational& cand : {Rational((x.a() + *n) / (2 * d)), Rational((x.a() - *n) / (2 * d))}) {
    if (auto q = rational_sqrt(cand); q && sgn(*q) != 0) {
      QuadElem root(f, x.b() / (2 * *q), *q);
      if (root * root == x) return root;
    }
  }
  return std::nullopt;
}

QuadElem fundamental_unit(const QuadField& field, std::int64_t coefficient_cap) {
  // Units are (x + y sqrt d)/k with x^2 - d y^2 = +-k^2, k = 2 when d = 1 mod 4.
  const long k = field.half_integral_basis() ? 2 : 1;
  const mpz_class d(static_cast<long>(field.d()));
  const mpz_class k2(k * k);
  for (std::int64_t y = 1; y <= coefficient_cap; ++y) {
    const mpz_class dy2 = d * mpz_class(static_cast<long>(y)) * mpz_class(static_cast<long>(y));
    // Norm -1 first: it yields the smaller x for the same y.
    for (const mpz_class& t : {mpz_class(dy2 - k2), mpz_class(dy2 + k2)}) {
      if (t <= 0 || mpz_perfect_square_p(t.get_mpz_t()) == 0) continue;
      const mpz_class x = sqrt(t);
      return QuadElem(field, Rational(x, k), Rational(mpz_class(static_cast<long>(y)), k));
    }
  }
  throw SearchExhausted("fundamental unit not found below coefficient cap " +
                        std::to_string(coefficient_cap));
}

// ---------------------------------------------------------------------------

QuadMatrix::QuadMatrix(std::array<QuadElem, 4> entries) : entries_(std::move(entries)) {
  const QuadField& f = entries_[0].field();
  for (const auto& e : entries_) {
    if (!(e.field() == f)) throw DomainError("matrix entries from different fields");
  }
  const QuadElem det = entries_[0] * entries_[3] - entries_[1] * entries_[2];
  if (!(det == QuadElem(f, 1))) {
    throw DomainError("matrix determinant is " + det.to_string() + ", expected 1");
  }
}

QuadMatrix QuadMatrix::identity(QuadField field) {
  return QuadMatrix({QuadElem(field, 1), QuadElem(field), QuadElem(field), QuadElem(field, 1)},
                    Unchecked{});
}

QuadMatrix QuadMatrix::from_basis(QuadField field,
                                  const std::array<std::pair<std::int64_t, std::int64_t>, 4>& c) {
  return QuadMatrix({QuadElem::from_basis(field, c[0].first, c[0].second),
                     QuadElem::from_basis(field, c[1].first, c[1].second),
                     QuadElem::from_basis(field, c[2].first, c[2].second),
                     QuadElem::from_basis(field, c[3].first, c[3].second)});
}

QuadMatrix QuadMatrix::inverse() const {
  return QuadMatrix({entries_[3], -entries_[1], -entries_[2], entries_[0]}, Unchecked{});
}

QuadMatrix QuadMatrix::conjugate() const {
  return QuadMatrix({entries_[0].conjugate(), entries_[1].conjugate(), entries_[2].conjugate(),
                     entries_[3].conjugate()},
                    Unchecked{});
}

QuadMatrix QuadMatrix::operator-() const {
  return QuadMatrix({-entries_[0], -entries_[1], -entries_[2], -entries_[3]}, Unchecked{});
}

bool QuadMatrix::is_integral() const {
  for (const auto& e : entries_) {
    if (!e.is_integer()) return false;
  }
  return true;
}

bool QuadMatrix::is_plus_minus_identity() const {
  return entries_[1].is_zero() && entries_[2].is_zero() && entries_[0] == entries_[3] &&
         entries_[0].is_rational() && abs(entries_[0].a()) == 1;
}

bool QuadMatrix::equals_up_to_sign(const QuadMatrix& o) const {
  return *this == o || *this == -o;
}

QuadMatrix operator*(const QuadMatrix& x, const QuadMatrix& y) {
  const auto& p = x.entries_;
  const auto& q = y.entries_;
  return QuadMatrix({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                     p[2] * q[1] + p[3] * q[3]},
                    QuadMatrix::Unchecked{});
}

}  // namespace weyl
