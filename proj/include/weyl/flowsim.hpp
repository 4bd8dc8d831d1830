#pragma once

// Weyl chamber flow on Gamma\G: right translation by (phi^t1, phi^t2), greedy
// reduction toward the reference point (i, i), cusp-excursion tracking and
// visit statistics.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <vector>

#include "weyl/boundary.hpp"
#include "weyl/glattice.hpp"

namespace weyl {

enum class FlowMode { A, APlus };

struct FlowState {
  GElem frame;
  double t1 = 0.0;
  double t2 = 0.0;
  std::vector<IntMatrix> reduction_log;
  FlowMode mode = FlowMode::A;
  int since_renormalize = 0;
};

FlowState make_state(const GElem& g, FlowMode mode = FlowMode::A);

/// frame * (phi^dt1, phi^dt2). In A+ mode negative increments throw
/// DomainError. Rows are rescaled to determinant one every 64 steps.
FlowState step(const FlowState& s, double dt1, double dt2);

/// Greedy best-improvement descent: left-multiplies by the lattice element
/// that most decreases the product distance from g(i, i) to (i, i), until no
/// element gives a strict decrease. Ties go to the earliest element in
/// canonical order.
FlowState reduce(const FlowState& s, const LatticeSpec& spec);

HPair basepoint(const FlowState& s);

/// max over cusps of busemann_sum(cusp, basepoint, (i, i)). Throws
/// DomainError on an empty list.
double excursion_level(const FlowState& s, const std::vector<FBoundaryPoint>& cusps);

/// Distinct points gamma(inf, inf), gamma(0, 0) over the lattice at the spec's
/// height.
std::vector<FBoundaryPoint> default_cusps(const LatticeSpec& spec);

/// Product-space grid: |Re| <= re_max, im_min <= Im < im_max in each factor,
/// square cells; per-factor cells are numbered row-major (rows are Im bands)
/// and the pair index is first * cells_per_factor + second.
struct Grid {
  double cell = 0.25;
  double re_max = 2.0;
  double im_min = 0.25;
  double im_max = 4.0;

  std::int64_t columns() const;
  std::int64_t rows() const;
  std::int64_t cells_per_factor() const { return columns() * rows(); }
  std::optional<std::int64_t> factor_cell(const HPoint& z) const;
  std::optional<std::int64_t> index(const HPair& z) const;
};

struct RunOptions {
  Grid grid;
  FlowMode mode = FlowMode::A;
  /// Empty: default_cusps at cusp_height.
  std::vector<FBoundaryPoint> cusps;
  std::int64_t cusp_height = 1;
  /// Step counts at which the visited-cell count is recorded.
  std::vector<std::int64_t> checkpoints;
  /// When set, one CSV row per step (header included).
  std::ostream* csv = nullptr;
};

struct TrajectoryStats {
  std::vector<HPair> basepoint_samples;
  std::vector<double> excursions;
  double max_excursion = 0.0;
  std::set<std::int64_t> visited_cells;
  std::vector<double> return_distances;
  double min_return_distance = 0.0;
  std::vector<std::pair<std::int64_t, std::size_t>> checkpoint_cells;
};

/// Steps by dt * direction, reducing with the spec's lattice after every step.
/// Throws DomainError unless steps >= 1 and dt > 0.
TrajectoryStats run(const GElem& g, const LatticeSpec& spec, std::array<double, 2> direction,
                    std::int64_t steps, double dt, const RunOptions& options = {});

}  // namespace weyl
