#include "weyl/boundary.hpp"

namespace weyl {

bool same_point(const FBoundaryPoint& p, const FBoundaryPoint& q, double tol) {
  return same_point(p.xi1, q.xi1, tol) && same_point(p.xi2, q.xi2, tol);
}

FBoundaryPoint apply(const GElem& g, const FBoundaryPoint& xi) {
  if (g.provenance()) {
    return {apply_boundary_exact(*g.provenance(), 1, xi.xi1),
            apply_boundary_exact(*g.provenance(), 2, xi.xi2)};
  }
  return {apply_boundary(g.first(), xi.xi1), apply_boundary(g.second(), xi.xi2)};
}

bool fixes(const GElem& g, const FBoundaryPoint& xi) {
  return fixes(g, 1, xi.xi1) && fixes(g, 2, xi.xi2);
}

double busemann_sum(const FBoundaryPoint& xi, const HPair& z, const HPair& zp) {
  return busemann(xi.xi1, z[0], zp[0]) + busemann(xi.xi2, z[1], zp[1]);
}

bool in_horoball(const HPair& z, const Horoball& hb) {
  return busemann_sum(hb.base, z, hb.reference) > hb.level;
}

std::optional<GElem> is_parabolic_point(const FBoundaryPoint& xi, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  const auto hit = find_first(
      lat->size(),
      [&](std::size_t i) {
        const auto& e = (*lat)[i];
        return e.kind.tag == PairKind::Tag::Parabolic && fixes(e.g, xi);
      },
      spec.exec);
  if (!hit) return std::nullopt;
  return (*lat)[*hit].g;
}

std::optional<GElem> are_conjugate_parabolic(const FBoundaryPoint& xi, const FBoundaryPoint& eta,
                                             const LatticeSpec& spec) {
  if (!is_parabolic_point(xi, spec) || !is_parabolic_point(eta, spec)) return std::nullopt;
  const auto lat = lattice_for(spec);
  const auto hit = find_first(
      lat->size(),
      [&](std::size_t i) {
        const auto& e = (*lat)[i];
        return e.kind.tag == PairKind::Tag::Hyperbolic && fixes(e.g, xi) && fixes(e.g, eta);
      },
      spec.exec);
  if (!hit) return std::nullopt;
  return (*lat)[*hit].g;
}

}  // namespace weyl
