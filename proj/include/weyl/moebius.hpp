#pragma once

// PSL(2, R) acting on the upper half-plane and on its boundary R u {inf}.

#include <array>
#include <complex>
#include <optional>

#include "weyl/algebraic.hpp"
#include "weyl/quadfield.hpp"

namespace weyl {

inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-9;

struct HPoint {
  double x = 0.0;
  double y = 1.0;
};

/// Point of R u {inf}. Infinity is a tag, never a large float. Finite points
/// may carry an exact algebraic value.
class BPoint {
 public:
  BPoint() = default;
  static BPoint infinity() {
    BPoint p;
    p.inf_ = true;
    return p;
  }
  static BPoint finite(double x) {
    BPoint p;
    p.x_ = x;
    return p;
  }
  static BPoint exact(QuadExt v) {
    BPoint p;
    p.x_ = v.value();
    p.exact_ = std::move(v);
    return p;
  }

  bool is_infinity() const noexcept { return inf_; }
  /// Value of a finite point; meaningless for infinity.
  double value() const noexcept { return x_; }
  const std::optional<QuadExt>& exact_value() const noexcept { return exact_; }
  /// Infinity and points with algebraic data are exact.
  bool is_exact() const noexcept { return inf_ || exact_.has_value(); }

 private:
  bool inf_ = false;
  double x_ = 0.0;
  std::optional<QuadExt> exact_;
};

/// Exact comparison when both points are exact, chordal tolerance otherwise.
bool same_point(const BPoint& p, const BPoint& q, double tol = kBoundaryTol);

enum class IsometryKind { Identity, Elliptic, Parabolic, Hyperbolic };

const char* to_string(IsometryKind k);

class Mobius {
 public:
  /// Identity.
  Mobius() = default;
  /// Rescales to determinant one and canonicalizes the sign. Throws
  /// DomainError if the determinant is not positive.
  Mobius(double a, double b, double c, double d);

  /// Entries taken as given (already normalized), e.g. when reading back
  /// serialized output.
  static Mobius unchecked(const std::array<double, 4>& m) { return Mobius(m, Raw{}); }

  /// From an exact matrix in the given real embedding.
  static Mobius from_exact(const QuadMatrix& m, int embedding = 1);

  double a() const noexcept { return m_[0]; }
  double b() const noexcept { return m_[1]; }
  double c() const noexcept { return m_[2]; }
  double d() const noexcept { return m_[3]; }
  const std::array<double, 4>& entries() const noexcept { return m_; }

  double trace() const noexcept { return m_[0] + m_[3]; }
  double det() const noexcept { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Mobius inverse() const;
  /// Rescale to determinant exactly one (up to rounding).
  Mobius renormalized() const;

  /// Product without renormalization; the sign is canonicalized.
  friend Mobius operator*(const Mobius& x, const Mobius& y);

 private:
  struct Raw {};
  Mobius(std::array<double, 4> m, Raw);
  void canonicalize_sign();

  std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

/// min(|m - n|, |m + n|) in the Frobenius norm.
double psl_distance(const Mobius& m, const Mobius& n);
bool approx_equal(const Mobius& m, const Mobius& n, double tol = 1e-9);

HPoint apply(const Mobius& m, const HPoint& z);
BPoint apply_boundary(const Mobius& m, const BPoint& xi);
/// Exact action of a matrix over K; the second embedding acts through the
/// conjugate matrix. Points without exact data fall back to the float action.
BPoint apply_boundary_exact(const QuadMatrix& m, int embedding, const BPoint& xi);

IsometryKind classify(const Mobius& m, double tol = kClassifyTol);
/// Exact classification of the given embedding of m.
IsometryKind classify_exact(const QuadMatrix& m, int embedding = 1);

struct FixedPoints {
  IsometryKind kind = IsometryKind::Identity;
  /// Hyperbolic: attracting point. Parabolic: the unique fixed point.
  BPoint attracting;
  /// Hyperbolic only.
  BPoint repelling;
  /// Elliptic only.
  HPoint center;
};

/// Throws DomainError for the identity.
FixedPoints fixed_points(const Mobius& m, double tol = kClassifyTol);
/// Fixed points carrying exact algebraic values.
FixedPoints fixed_points_exact(const QuadMatrix& m, int embedding = 1);

/// (|tr| + sqrt(tr^2 - 4)) / 2. Throws DomainError unless hyperbolic.
double dominant_eigenvalue(const Mobius& m, double tol = kClassifyTol);

/// diag(e^{t/2}, e^{-t/2}).
Mobius geodesic_flow(double t);

double busemann(const BPoint& xi, const HPoint& x, const HPoint& y);
double hyperbolic_distance(const HPoint& z, const HPoint& w);

/// Cayley map to the unit disc; infinity goes to 1.
std::complex<double> cayley(const HPoint& z);
std::complex<double> cayley(const BPoint& xi);
/// Euclidean distance in the disc model. On the boundary this is the chordal
/// metric 2|x - y| / sqrt((1 + x^2)(1 + y^2)).
double chordal_distance(const BPoint& p, const BPoint& q);
double disk_distance(const HPoint& z, const BPoint& xi);

/// Projective map with entries too large for double: the linear map is
/// exp(log_scale) * m. The scale does not affect the action.
struct ProjMap {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};
  double log_scale = 0.0;

  static ProjMap from(const Mobius& g);
  ProjMap inverse() const;
  HPoint apply(const HPoint& z) const;
  BPoint apply(const BPoint& xi) const;
  friend ProjMap operator*(const ProjMap& x, const ProjMap& y);
};

}  // namespace weyl
