#pragma once

// Explicit limit sequences: refined density (elliptic near-returns conjugated
// by a steering element), the ping-pong limit for a mixed element fixing
// g1(inf), and a numerical check of the horoball basepoint lemma.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/boundary.hpp"
#include "weyl/classifier.hpp"
#include "weyl/glattice.hpp"

namespace weyl {

/// One term gamma_n. The second component is projective because its entries
/// grow like lambda^n.
struct WitnessTerm {
  Mobius first;
  ProjMap second;
  /// Power used for this term, in decimal (it can exceed 64 bits).
  std::string exponent;
};

struct WitnessSequence {
  std::string kind;
  std::vector<WitnessTerm> elements;
  /// Flow time paired with each term (ping-pong only).
  std::vector<double> companion_times;
  /// Per-term error: the maximum over the tracks.
  std::vector<double> achieved_errors;
  std::vector<std::pair<std::string, std::vector<double>>> error_tracks;
  /// Exact lattice ingredients of the construction.
  std::vector<std::pair<std::string, QuadMatrix>> factors;
  std::optional<Mobius> target_first;
  std::optional<Mobius> target_second;
  std::optional<BPoint> eta_plus;
  std::optional<BPoint> eta_minus;

  const std::vector<double>& track(const std::string& name) const;
};

/// Denominators of the continued-fraction convergents of x in (0, 1), at
/// least `count` of them when x is irrational, with the signed residuals
/// q x - p. x is given as a decimal string to keep full precision.
struct Convergents {
  std::vector<std::string> denominators;
  std::vector<double> residuals;
  /// True if the expansion terminated (x rational).
  bool terminated = false;
};
Convergents convergent_denominators(const std::string& x, int count);

/// Rotation angle theta in (0, pi) with 2 cos(theta) = |t|, |t| < 2, divided by
/// 2 pi, as a decimal string with ~70 significant digits.
std::string rotation_fraction(const QuadElem& trace, int embedding);
std::string rotation_fraction(double trace);

/// Errors: "identity" = psl distance of p1(gamma_n) to g1, "attracting" = disc
/// distance of p2(gamma_n) i to eta+, "repelling" = disc distance of
/// p2(gamma_n)^-1 i to eta-. Throws DomainError if eta+ == eta-, and
/// SearchExhausted if the lattice at this height has no element with elliptic
/// first and hyperbolic second component.
WitnessSequence refined_density_sequence(const Mobius& g1, const BPoint& eta_plus,
                                         const BPoint& eta_minus, const LatticeSpec& spec, int count);

/// Terms gamma^{-m} g (a1^m, Id) with m running over convergent denominators of
/// the rotation number of the elliptic factor. Errors are psl distances to the
/// limit (g1 u, g2), tracks "first" and "second". Throws DomainError naming the
/// failed precondition.
WitnessSequence pingpong_limit(const GElem& gamma, const Frame& g, int count);

/// Direct products gamma^{-m} g (a1^m, Id) for small m, used to cross-check
/// the closed forms.
GElem pingpong_term_direct(const GElem& gamma, const GElem& g, int m);

struct HoroballReport {
  /// Nontrivial factor of a.
  int factor = 1;
  std::vector<double> levels;
  std::vector<bool> memberships;
  std::size_t memberships_observed = 0;
  /// Member for every n in [ceil(n_max/2), n_max] with a rising level.
  bool persist = false;
  /// Only evaluated when persist: base coordinate equals g(a+).
  std::optional<bool> coordinate_check;
};

/// Throws DomainError unless a = (diag, Id) or (Id, diag) with a hyperbolic
/// diagonal factor, or if n_max < 2.
HoroballReport verify_horoball_lemma(const GElem& g, const GElem& a, const Horoball& hb, int n_max);

}  // namespace weyl
