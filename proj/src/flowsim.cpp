#include "weyl/flowsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

constexpr int kRenormalizeEvery = 64;

}  // namespace

FlowState make_state(const GElem& g, FlowMode mode) {
  FlowState s;
  s.frame = GElem(g.first(), g.second());
  s.mode = mode;
  return s;
}

FlowState step(const FlowState& s, double dt1, double dt2) {
  if (s.mode == FlowMode::APlus && (dt1 < 0.0 || dt2 < 0.0)) {
    throw DomainError("A+ flow needs non-negative time increments");
  }
  FlowState r = s;
  Mobius m1 = s.frame.first() * geodesic_flow(dt1);
  Mobius m2 = s.frame.second() * geodesic_flow(dt2);
  for (double e : m1.entries()) {
    if (!std::isfinite(e)) throw DomainError("trajectory left the floating-point range");
  }
  for (double e : m2.entries()) {
    if (!std::isfinite(e)) throw DomainError("trajectory left the floating-point range");
  }
  if (++r.since_renormalize >= kRenormalizeEvery) {
    m1 = m1.renormalized();
    m2 = m2.renormalized();
    r.since_renormalize = 0;
  }
  r.frame = GElem(m1, m2);
  r.t1 += dt1;
  r.t2 += dt2;
  return r;
}

HPair basepoint(const FlowState& s) { return weyl::apply(s.frame, kReferencePair); }

FlowState reduce(const FlowState& s, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  FlowState r = s;
  HPair z = basepoint(r);
  double dist = product_distance(z, kReferencePair);
  for (int iter = 0; iter < 10000; ++iter) {
    std::size_t best = lat->size();
    double best_dist = dist;
    for (std::size_t i = 0; i < lat->size(); ++i) {
      const auto& e = (*lat)[i];
      if (e.kind.tag == PairKind::Tag::Identity) continue;
      const double d = product_distance(weyl::apply(e.g, z), kReferencePair);
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    if (best == lat->size() || !(best_dist < dist - 1e-12)) break;
    const auto& e = (*lat)[best];
    r.frame = GElem(e.g.first() * r.frame.first(), e.g.second() * r.frame.second());
    r.reduction_log.push_back(e.coeffs);
    z = basepoint(r);
    dist = product_distance(z, kReferencePair);
  }
  return r;
}

double excursion_level(const FlowState& s, const std::vector<FBoundaryPoint>& cusps) {
  if (cusps.empty()) throw DomainError("excursion_level needs at least one cusp");
  const HPair z = basepoint(s);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cusps) best = std::max(best, busemann_sum(c, z, kReferencePair));
  return best;
}

std::vector<FBoundaryPoint> default_cusps(const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  const FBoundaryPoint inf{BPoint::infinity(), BPoint::infinity()};
  const BPoint zero = BPoint::exact(QuadExt(QuadElem(spec.field)));
  const FBoundaryPoint origin{zero, zero};
  std::vector<FBoundaryPoint> out;
  for (const auto& e : lat->elements()) {
    for (const auto& p : {apply(e.g, inf), apply(e.g, origin)}) {
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const FBoundaryPoint& q) { return same_point(p, q); });
      if (!seen) out.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::int64_t Grid::columns() const {
  return static_cast<std::int64_t>(std::ceil(2.0 * re_max / cell - 1e-9));
}

std::int64_t Grid::rows() const {
  return static_cast<std::int64_t>(std::ceil((im_max - im_min) / cell - 1e-9));
}

std::optional<std::int64_t> Grid::factor_cell(const HPoint& z) const {
  if (z.x < -re_max || z.x >= re_max || z.y < im_min || z.y >= im_max) return std::nullopt;
  const auto col = std::min(columns() - 1, static_cast<std::int64_t>((z.x + re_max) / cell));
  const auto row = std::min(rows() - 1, static_cast<std::int64_t>((z.y - im_min) / cell));
  return row * columns() + col;
}

std::optional<std::int64_t> Grid::index(const HPair& z) const {
  const auto c1 = factor_cell(z[0]);
  const auto c2 = factor_cell(z[1]);
  if (!c1 || !c2) return std::nullopt;
  return *c1 * cells_per_factor() + *c2;
}

namespace {

void write_row(std::ostream& os, std::int64_t k, const FlowState& s, const HPair& z, double exc) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                static_cast<long long>(k), s.t1, s.t2, z[0].x, z[0].y, z[1].x, z[1].y, exc);
  os << buf;
}

}  // namespace

TrajectoryStats run(const GElem& g, const LatticeSpec& spec, std::array<double, 2> direction,
                    std::int64_t steps, double dt, const RunOptions& options) {
  if (steps < 1) throw DomainError("run needs at least one step");
  if (!(dt > 0.0)) throw DomainError("run needs a positive time step");
  if (options.mode == FlowMode::APlus && (direction[0] < 0.0 || direction[1] < 0.0)) {
    throw DomainError("A+ run needs a direction in the positive cone");
  }
  const std::vector<FBoundaryPoint> cusps =
      options.cusps.empty()
          ? default_cusps(LatticeSpec(spec.field, options.cusp_height, spec.exec))
          : options.cusps;

  FlowState s = reduce(make_state(g, options.mode), spec);
  const HPair start = basepoint(s);

  TrajectoryStats st;
  st.basepoint_samples.reserve(static_cast<std::size_t>(steps));
  st.excursions.reserve(static_cast<std::size_t>(steps));
  st.return_distances.reserve(static_cast<std::size_t>(steps));
  st.max_excursion = -std::numeric_limits<double>::infinity();
  st.min_return_distance = std::numeric_limits<double>::infinity();
  if (options.csv) *options.csv << "step,t1,t2,re1,im1,re2,im2,excursion\n";

  std::size_t next_checkpoint = 0;
  std::vector<std::int64_t> checkpoints = options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());

  for (std::int64_t k = 1; k <= steps; ++k) {
    s = reduce(step(s, dt * direction[0], dt * direction[1]), spec);
    // Only the current frame matters from here on.
    s.reduction_log.clear();
    const HPair z = basepoint(s);
    const double exc = excursion_level(s, cusps);
    st.basepoint_samples.push_back(z);
    st.excursions.push_back(exc);
    st.max_excursion = std::max(st.max_excursion, exc);
    if (const auto c = options.grid.index(z)) st.visited_cells.insert(*c);
    const double ret = product_distance(z, start);
    st.return_distances.push_back(ret);
    st.min_return_distance = std::min(st.min_return_distance, ret);
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= k) {
      if (checkpoints[next_checkpoint] == k) st.checkpoint_cells.emplace_back(k, st.visited_cells.size());
      ++next_checkpoint;
    }
    if (options.csv) write_row(*options.csv, k, s, z, exc);
  }
  return st;
}

}  // namespace weyl
