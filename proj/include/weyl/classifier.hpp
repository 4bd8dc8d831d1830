#pragma once

// Orbit-type classification of x = Gamma g under A and A+ by searching the
// enumerated lattice for the certificates of the density / compactness /
// closedness criteria. Searches are height-bounded: Unknown means "no
// certificate at this height", never "no certificate exists".

#include <array>
#include <optional>
#include <string>

#include "weyl/boundary.hpp"
#include "weyl/glattice.hpp"

namespace weyl {

/// A point g of G together with the four boundary ends g1(inf), g1(0),
/// g2(inf), g2(0). Ends carry exact values whenever they are known exactly.
class Frame {
 public:
  /// Ends computed from g; exact when g has provenance.
  explicit Frame(GElem g);
  Frame(GElem g, std::array<BPoint, 4> ends);

  /// Both factors send (inf, 0) to the (attracting, repelling) fixed points
  /// of the corresponding component of embed(gamma). gamma must be hyperbolic
  /// in both factors.
  static Frame eigenframe(const QuadMatrix& gamma);
  /// Factor `factor` is (x+, -1; 1, 0) where x+ is the attracting fixed point
  /// of that component of embed(gamma); the other factor is `other`.
  static Frame attracting(const QuadMatrix& gamma, int factor, const Mobius& other = Mobius());

  const GElem& g() const noexcept { return g_; }
  /// g_factor(inf) or g_factor(0).
  const BPoint& end(int factor, bool infinity) const;
  const std::array<BPoint, 4>& ends() const noexcept { return ends_; }

  /// g * (w^w1, w^w2) with w = (0, -1; 1, 0).
  Frame weyl(bool w1, bool w2) const;
  /// gamma * g.
  Frame left(const GElem& gamma) const;

 private:
  GElem g_;
  std::array<BPoint, 4> ends_;
};

/// g(inf,inf), g(0,0), g(0,inf), g(inf,0).
std::array<FBoundaryPoint, 4> corner_points(const Frame& f);
std::array<FBoundaryPoint, 4> corner_points(const GElem& g);

enum class Verdict { Compact, ClosedNonCompact, DenseSemiOrbit, AsymptoticToCompact, Dense, Unknown };

const char* to_string(Verdict v);
std::optional<Verdict> verdict_from_string(const std::string& s);

namespace rule {
inline constexpr const char* kMixed = "T2.1-mixed";
inline constexpr const char* kHyperRegularOne = "T2.2-hyperregular-one";
inline constexpr const char* kBothCorners = "T3.3-hyperregular-both-corners";
inline constexpr const char* kConjugateParabolic = "T4.3-conjugate-parabolic";
inline constexpr const char* kAsymptotic = "R2-asymptotic";
}  // namespace rule

struct OrbitVerdict {
  Verdict verdict = Verdict::Unknown;
  /// Empty for Unknown.
  std::string rule;
  std::optional<GElem> witness;
  std::int64_t height_used = 0;
  std::array<FBoundaryPoint, 4> corner_points;
  /// For Dense: which translate g (w^a, w^b) carried the semi-orbit
  /// certificate ("id,id", "w,id", "id,w", "w,w").
  std::string weyl_translate;
};

OrbitVerdict classify_semiorbit(const Frame& f, const LatticeSpec& spec);
OrbitVerdict classify_semiorbit(const GElem& g, const LatticeSpec& spec);
OrbitVerdict classify_orbit(const Frame& f, const LatticeSpec& spec);
OrbitVerdict classify_orbit(const GElem& g, const LatticeSpec& spec);

/// Rank of g^-1 Gamma g n A found at the spec's height: 2 suggests Compact,
/// 1 ClosedNonCompact, 0 carries no information.
int check_rank_criterion(const GElem& g, const LatticeSpec& spec);

}  // namespace weyl
