#pragma once

// The Furstenberg boundary dH x dH, summed Busemann cocycle and horoballs.

#include <optional>

#include "weyl/glattice.hpp"
#include "weyl/moebius.hpp"

namespace weyl {

struct FBoundaryPoint {
  BPoint xi1;
  BPoint xi2;

  const BPoint& factor(int i) const { return i == 1 ? xi1 : xi2; }
};

bool same_point(const FBoundaryPoint& p, const FBoundaryPoint& q, double tol = kBoundaryTol);

/// Componentwise action; exact when g carries provenance.
FBoundaryPoint apply(const GElem& g, const FBoundaryPoint& xi);

/// Both components of g fix the corresponding coordinate of xi.
bool fixes(const GElem& g, const FBoundaryPoint& xi);

double busemann_sum(const FBoundaryPoint& xi, const HPair& z, const HPair& zp);

struct Horoball {
  FBoundaryPoint base;
  double level = 0.0;
  HPair reference = kReferencePair;
};

/// busemann_sum(base, z, reference) > level.
bool in_horoball(const HPair& z, const Horoball& hb);

/// First parabolic lattice element (canonical order) fixing xi in both factors.
std::optional<GElem> is_parabolic_point(const FBoundaryPoint& xi, const LatticeSpec& spec);

/// First hyperbolic lattice element fixing both points, provided each is a
/// parabolic point at this height.
std::optional<GElem> are_conjugate_parabolic(const FBoundaryPoint& xi, const FBoundaryPoint& eta,
                                             const LatticeSpec& spec);

}  // namespace weyl
