#include "weyl/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

QuadMatrix in_embedding(const QuadMatrix& m, int embedding) {
  return embedding == 2 ? m.conjugate() : m;
}

int sign_in_embedding(const QuadElem& x, int embedding) {
  return embedding == 2 ? x.conjugate().sign() : x.sign();
}

}  // namespace

bool same_point(const BPoint& p, const BPoint& q, double tol) {
  if (p.is_exact() && q.is_exact()) {
    if (p.is_infinity() || q.is_infinity()) return p.is_infinity() && q.is_infinity();
    const QuadExt& x = *p.exact_value();
    const QuadExt& y = *q.exact_value();
    if (x.field() == y.field()) return x == y;
  }
  return chordal_distance(p, q) <= tol;
}

const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Elliptic: return "elliptic";
    case IsometryKind::Parabolic: return "parabolic";
    case IsometryKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Mobius::Mobius(double a, double b, double c, double d) : m_{a, b, c, d} {
  const double det = a * d - b * c;
  if (!std::isfinite(det) || !(det > 0.0)) {
    throw DomainError("Mobius: determinant must be positive");
  }
  const double s = 1.0 / std::sqrt(det);
  for (double& e : m_) e *= s;
  canonicalize_sign();
}

Mobius::Mobius(std::array<double, 4> m, Raw) : m_(m) { canonicalize_sign(); }

void Mobius::canonicalize_sign() {
  const double tr = m_[0] + m_[3];
  bool flip = tr < 0.0;
  if (tr == 0.0) {
    for (double e : m_) {
      if (e != 0.0) {
        flip = e < 0.0;
        break;
      }
    }
  }
  if (flip) {
    for (double& e : m_) e = -e;
  }
}

Mobius Mobius::from_exact(const QuadMatrix& m, int embedding) {
  const auto& e = m.entries();
  return Mobius(e[0].to_double(embedding), e[1].to_double(embedding), e[2].to_double(embedding),
                e[3].to_double(embedding));
}

Mobius Mobius::inverse() const { return Mobius({m_[3], -m_[1], -m_[2], m_[0]}, Raw{}); }

Mobius Mobius::renormalized() const { return Mobius(m_[0], m_[1], m_[2], m_[3]); }

Mobius operator*(const Mobius& x, const Mobius& y) {
  const auto& p = x.m_;
  const auto& q = y.m_;
  return Mobius({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                 p[2] * q[1] + p[3] * q[3]},
                Mobius::Raw{});
}

double psl_distance(const Mobius& m, const Mobius& n) {
  double minus = 0.0;
  double plus = 0.0;
  for (int k = 0; k < 4; ++k) {
    minus += (m.entries()[k] - n.entries()[k]) * (m.entries()[k] - n.entries()[k]);
    plus += (m.entries()[k] + n.entries()[k]) * (m.entries()[k] + n.entries()[k]);
  }
  return std::sqrt(std::min(minus, plus));
}

bool approx_equal(const Mobius& m, const Mobius& n, double tol) { return psl_distance(m, n) <= tol; }

// ---------------------------------------------------------------------------

HPoint apply(const Mobius& m, const HPoint& z) {
  const std::complex<double> w(z.x, z.y);
  const std::complex<double> den = m.c() * w + m.d();
  const std::complex<double> r = (m.a() * w + m.b()) / den;
  // Im from the determinant form keeps it positive under rounding.
  return {r.real(), m.det() * z.y / std::norm(den)};
}

BPoint apply_boundary(const Mobius& m, const BPoint& xi) {
  if (xi.is_infinity()) {
    if (m.c() == 0.0) return BPoint::infinity();
    return BPoint::finite(m.a() / m.c());
  }
  const double den = m.c() * xi.value() + m.d();
  if (den == 0.0) return BPoint::infinity();
  return BPoint::finite((m.a() * xi.value() + m.b()) / den);
}

BPoint apply_boundary_exact(const QuadMatrix& m, int embedding, const BPoint& xi) {
  const QuadMatrix g = in_embedding(m, embedding);
  if (xi.is_infinity()) {
    if (g.c().is_zero()) return BPoint::infinity();
    return BPoint::exact(QuadExt(g.a() / g.c()));
  }
  if (xi.exact_value() && xi.exact_value()->field() == m.field()) {
    const QuadExt& x = *xi.exact_value();
    const QuadExt den = QuadExt(g.c()) * x + QuadExt(g.d());
    if (den.is_zero()) return BPoint::infinity();
    return BPoint::exact((QuadExt(g.a()) * x + QuadExt(g.b())) / den);
  }
  return apply_boundary(Mobius::from_exact(m, embedding), xi);
}

IsometryKind classify(const Mobius& m, double tol) {
  if (psl_distance(m, Mobius()) <= tol) return IsometryKind::Identity;
  const double t = std::abs(m.trace());
  if (t < 2.0 - tol) return IsometryKind::Elliptic;
  if (t > 2.0 + tol) return IsometryKind::Hyperbolic;
  return IsometryKind::Parabolic;
}

IsometryKind classify_exact(const QuadMatrix& m, int embedding) {
  if (m.is_plus_minus_identity()) return IsometryKind::Identity;
  const QuadElem t = m.trace();
  const int s = sign_in_embedding(t * t - QuadElem(m.field(), 4), embedding);
  if (s > 0) return IsometryKind::Hyperbolic;
  if (s < 0) return IsometryKind::Elliptic;
  return IsometryKind::Parabolic;
}

FixedPoints fixed_points(const Mobius& m, double tol) {
  FixedPoints fp;
  fp.kind = classify(m, tol);
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double tr = m.trace();
  switch (fp.kind) {
    case IsometryKind::Identity:
      throw DomainError("fixed_points: identity fixes every point");
    case IsometryKind::Elliptic: {
      const double s = std::sqrt(std::max(0.0, 4.0 - tr * tr));
      fp.center = {(a - d) / (2.0 * c), s / (2.0 * std::abs(c))};
      return fp;
    }
    case IsometryKind::Parabolic:
      fp.attracting = c == 0.0 ? BPoint::infinity() : BPoint::finite((a - d) / (2.0 * c));
      return fp;
    case IsometryKind::Hyperbolic:
      break;
  }
  if (c == 0.0) {
    const BPoint finite = BPoint::finite(b / (d - a));
    const bool inf_attracts = std::abs(a) > std::abs(d);
    fp.attracting = inf_attracts ? BPoint::infinity() : finite;
    fp.repelling = inf_attracts ? finite : BPoint::infinity();
    return fp;
  }
  // Roots of c x^2 + (d - a) x - b; the attracting one is (a - d + sgn(tr) r) / 2c.
  const double r = std::sqrt(tr * tr - 4.0);
  const double sg = tr > 0.0 ? 1.0 : -1.0;
  const double bb = d - a;
  // Stable pair of roots: q / c and -b / q.
  const double q = -0.5 * (bb + (bb >= 0.0 ? r : -r));
  double r1 = q / c;
  double r2 = q != 0.0 ? -b / q : r1;
  // r1 carries the sign choice -sgn(bb) on the radical; match it to sgn(tr).
  const double plus_root = (a - d + sg * r) / (2.0 * c);
  if (std::abs(r1 - plus_root) > std::abs(r2 - plus_root)) std::swap(r1, r2);
  fp.attracting = BPoint::finite(r1);
  fp.repelling = BPoint::finite(r2);
  return fp;
}

FixedPoints fixed_points_exact(const QuadMatrix& m, int embedding) {
  FixedPoints fp;
  fp.kind = classify_exact(m, embedding);
  const QuadMatrix g = in_embedding(m, embedding);
  const QuadField& f = m.field();
  const QuadElem two(f, 2);
  const QuadElem tr = g.trace();
  switch (fp.kind) {
    case IsometryKind::Identity:
      throw DomainError("fixed_points: identity fixes every point");
    case IsometryKind::Elliptic: {
      const Mobius fl = Mobius::from_exact(m, embedding);
      fp.center = fixed_points(fl).center;
      return fp;
    }
    case IsometryKind::Parabolic:
      fp.attracting = g.c().is_zero() ? BPoint::infinity()
                                      : BPoint::exact(QuadExt((g.a() - g.d()) / (two * g.c())));
      return fp;
    case IsometryKind::Hyperbolic:
      break;
  }
  if (g.c().is_zero()) {
    const BPoint finite = BPoint::exact(QuadExt(g.b() / (g.d() - g.a())));
    // |a| > |d| with ad = 1 is |a| > 1, i.e. a^2 > 1.
    const bool inf_attracts = (g.a() * g.a() - QuadElem(f, 1)).sign() > 0;
    fp.attracting = inf_attracts ? BPoint::infinity() : finite;
    fp.repelling = inf_attracts ? finite : BPoint::infinity();
    return fp;
  }
  const QuadElem x = (g.a() - g.d()) / (two * g.c());
  const QuadElem y = QuadElem(f, 1) / (two * g.c());
  const QuadElem delta = tr * tr - QuadElem(f, 4);
  const QuadElem sy = tr.sign() > 0 ? y : -y;
  fp.attracting = BPoint::exact(QuadExt(x, sy, delta));
  fp.repelling = BPoint::exact(QuadExt(x, -sy, delta));
  return fp;
}

double dominant_eigenvalue(const Mobius& m, double tol) {
  if (classify(m, tol) != IsometryKind::Hyperbolic) {
    throw DomainError("dominant_eigenvalue: element is not hyperbolic");
  }
  const double t = std::abs(m.trace());
  return 0.5 * (t + std::sqrt(t * t - 4.0));
}

Mobius geodesic_flow(double t) {
  const double h = std::exp(0.5 * t);
  return Mobius(h, 0.0, 0.0, 1.0 / h);
}

namespace {

double log_poisson(const BPoint& xi, const HPoint& z) {
  if (xi.is_infinity()) return std::log(z.y);
  const double dx = z.x - xi.value();
  return std::log(z.y) - std::log(dx * dx + z.y * z.y);
}

}  // namespace

double busemann(const BPoint& xi, const HPoint& x, const HPoint& y) {
  return log_poisson(xi, x) - log_poisson(xi, y);
}

double hyperbolic_distance(const HPoint& z, const HPoint& w) {
  const double dx = z.x - w.x;
  const double dy = z.y - w.y;
  return 2.0 * std::asinh(std::sqrt(dx * dx + dy * dy) / (2.0 * std::sqrt(z.y * w.y)));
}

std::complex<double> cayley(const HPoint& z) {
  const std::complex<double> w(z.x, z.y);
  const std::complex<double> i(0.0, 1.0);
  return (w - i) / (w + i);
}

std::complex<double> cayley(const BPoint& xi) {
  if (xi.is_infinity()) return {1.0, 0.0};
  const std::complex<double> i(0.0, 1.0);
  return (xi.value() - i) / (xi.value() + i);
}

double chordal_distance(const BPoint& p, const BPoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity()) return 2.0 / std::hypot(1.0, q.value());
  if (q.is_infinity()) return 2.0 / std::hypot(1.0, p.value());
  const double x = p.value();
  const double y = q.value();
  return 2.0 * std::abs(x - y) / (std::hypot(1.0, x) * std::hypot(1.0, y));
}

double disk_distance(const HPoint& z, const BPoint& xi) { return std::abs(cayley(z) - cayley(xi)); }

// ---------------------------------------------------------------------------

namespace {

ProjMap normalized(std::array<double, 4> m, double log_scale) {
  double big = 0.0;
  for (double e : m) big = std::max(big, std::abs(e));
  if (big > 0.0 && std::isfinite(big)) {
    for (double& e : m) e /= big;
    log_scale += std::log(big);
  }
  return {m, log_scale};
}

}  // namespace

ProjMap ProjMap::from(const Mobius& g) { return normalized(g.entries(), 0.0); }

ProjMap ProjMap::inverse() const {
  const double det = m[0] * m[3] - m[1] * m[2];
  // The adjugate is det * inverse; the scale of the inverse is -log_scale.
  return normalized({m[3], -m[1], -m[2], m[0]}, -log_scale - std::log(std::abs(det)));
}

HPoint ProjMap::apply(const HPoint& z) const {
  const std::complex<double> w(z.x, z.y);
  const std::complex<double> den = m[2] * w + m[3];
  const std::complex<double> r = (m[0] * w + m[1]) / den;
  const double det = m[0] * m[3] - m[1] * m[2];
  return {r.real(), det * z.y / std::norm(den)};
}

BPoint ProjMap::apply(const BPoint& xi) const {
  if (xi.is_infinity()) {
    if (m[2] == 0.0) return BPoint::infinity();
    return BPoint::finite(m[0] / m[2]);
  }
  const double den = m[2] * xi.value() + m[3];
  if (den == 0.0) return BPoint::infinity();
  return BPoint::finite((m[0] * xi.value() + m[1]) / den);
}

ProjMap operator*(const ProjMap& x, const ProjMap& y) {
  const auto& p = x.m;
  const auto& q = y.m;
  return normalized({p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
                     p[2] * q[1] + p[3] * q[3]},
                    x.log_scale + y.log_scale);
}

}  // namespace weyl
