#include "weyl/classifier.hpp"

#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

BPoint exact_zero(const QuadField& f) { return BPoint::exact(QuadExt(QuadElem(f))); }

std::array<BPoint, 2> float_ends(const Mobius& m) {
  return {apply_boundary(m, BPoint::infinity()), apply_boundary(m, BPoint::finite(0.0))};
}

// Sends (inf, 0) to (p, q).
Mobius frame_matrix(const BPoint& p, const BPoint& q) {
  if (p.is_infinity()) return Mobius(1.0, q.value(), 0.0, 1.0);
  if (q.is_infinity()) return Mobius(p.value(), -1.0, 1.0, 0.0);
  const double x = p.value();
  const double y = q.value();
  return x - y > 0.0 ? Mobius(x, y, 1.0, 1.0) : Mobius(x, -y, 1.0, -1.0);
}

const Mobius kW(0.0, -1.0, 1.0, 0.0);

}  // namespace

Frame::Frame(GElem g) : g_(std::move(g)) {
  if (g_.provenance()) {
    const QuadMatrix& m = *g_.provenance();
    const BPoint zero = exact_zero(m.field());
    ends_ = {apply_boundary_exact(m, 1, BPoint::infinity()), apply_boundary_exact(m, 1, zero),
             apply_boundary_exact(m, 2, BPoint::infinity()), apply_boundary_exact(m, 2, zero)};
    return;
  }
  const auto e1 = float_ends(g_.first());
  const auto e2 = float_ends(g_.second());
  ends_ = {e1[0], e1[1], e2[0], e2[1]};
}

Frame::Frame(GElem g, std::array<BPoint, 4> ends) : g_(std::move(g)), ends_(std::move(ends)) {}

Frame Frame::eigenframe(const QuadMatrix& gamma) {
  const FixedPoints f1 = fixed_points_exact(gamma, 1);
  const FixedPoints f2 = fixed_points_exact(gamma, 2);
  if (f1.kind != IsometryKind::Hyperbolic || f2.kind != IsometryKind::Hyperbolic) {
    throw DomainError("eigenframe: element must be hyperbolic in both factors");
  }
  GElem g(frame_matrix(f1.attracting, f1.repelling), frame_matrix(f2.attracting, f2.repelling));
  return Frame(std::move(g), {f1.attracting, f1.repelling, f2.attracting, f2.repelling});
}

Frame Frame::attracting(const QuadMatrix& gamma, int factor, const Mobius& other) {
  const FixedPoints fp = fixed_points_exact(gamma, factor);
  if (fp.kind != IsometryKind::Hyperbolic) {
    throw DomainError("attracting frame: component " + std::to_string(factor) + " is not hyperbolic");
  }
  Mobius m;
  std::array<BPoint, 2> own{BPoint::infinity(), exact_zero(gamma.field())};
  if (!fp.attracting.is_infinity()) {
    m = Mobius(fp.attracting.value(), -1.0, 1.0, 0.0);
    own = {fp.attracting, BPoint::infinity()};
  }
  const auto rest = float_ends(other);
  if (factor == 1) return Frame(GElem(m, other), {own[0], own[1], rest[0], rest[1]});
  return Frame(GElem(other, m), {rest[0], rest[1], own[0], own[1]});
}

const BPoint& Frame::end(int factor, bool infinity) const {
  return ends_[static_cast<std::size_t>((factor == 1 ? 0 : 2) + (infinity ? 0 : 1))];
}

Frame Frame::weyl(bool w1, bool w2) const {
  GElem g;
  if (w1 && w2 && g_.provenance()) {
    const QuadField& f = g_.provenance()->field();
    g = g_ * hilbert_embed(QuadMatrix({QuadElem(f), QuadElem(f, -1), QuadElem(f, 1), QuadElem(f)}));
  } else {
    g = GElem(w1 ? g_.first() * kW : g_.first(), w2 ? g_.second() * kW : g_.second());
  }
  std::array<BPoint, 4> e = ends_;
  if (w1) std::swap(e[0], e[1]);
  if (w2) std::swap(e[2], e[3]);
  return Frame(std::move(g), std::move(e));
}

Frame Frame::left(const GElem& gamma) const {
  std::array<BPoint, 4> e;
  for (std::size_t k = 0; k < 4; ++k) {
    const int factor = k < 2 ? 1 : 2;
    e[k] = gamma.provenance() ? apply_boundary_exact(*gamma.provenance(), factor, ends_[k])
                              : apply_boundary(gamma.factor(factor), ends_[k]);
  }
  return Frame(gamma * g_, std::move(e));
}

std::array<FBoundaryPoint, 4> corner_points(const Frame& f) {
  const BPoint& i1 = f.end(1, true);
  const BPoint& z1 = f.end(1, false);
  const BPoint& i2 = f.end(2, true);
  const BPoint& z2 = f.end(2, false);
  return {FBoundaryPoint{i1, i2}, FBoundaryPoint{z1, z2}, FBoundaryPoint{z1, i2},
          FBoundaryPoint{i1, z2}};
}

std::array<FBoundaryPoint, 4> corner_points(const GElem& g) { return corner_points(Frame(g)); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Compact: return "Compact";
    case Verdict::ClosedNonCompact: return "ClosedNonCompact";
    case Verdict::DenseSemiOrbit: return "DenseSemiOrbit";
    case Verdict::AsymptoticToCompact: return "AsymptoticToCompact";
    case Verdict::Dense: return "Dense";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Compact, Verdict::ClosedNonCompact, Verdict::DenseSemiOrbit,
                    Verdict::AsymptoticToCompact, Verdict::Dense, Verdict::Unknown}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

OrbitVerdict make(Verdict v, const char* r, const LatticeElement* e, const Frame& f,
                  const LatticeSpec& spec) {
  OrbitVerdict out;
  out.verdict = v;
  out.rule = r;
  if (e) out.witness = e->g;
  out.height_used = spec.height_bound;
  out.corner_points = corner_points(f);
  return out;
}

bool hyper_regular(const LatticeElement& e) {
  return e.kind.tag == PairKind::Tag::Hyperbolic && e.kind.hyper_regular;
}

// Density and asymptotic rules of the semi-orbit search, in order.
std::optional<OrbitVerdict> semiorbit_rules(const Frame& f, const Lattice& lat, const LatticeSpec& spec) {
  const BPoint& xi1 = f.end(1, true);
  const BPoint& xi2 = f.end(2, true);
  const std::size_t n = lat.size();
  std::vector<char> fix1(n, 0);
  std::vector<char> fix2(n, 0);
  auto nontrivial = [&](std::size_t i) { return lat[i].kind.tag != PairKind::Tag::Identity; };
  for (std::size_t i : filter_indices(n, [&](std::size_t i) { return nontrivial(i) && fixes(lat[i].g, 1, xi1); },
                                      spec.exec)) {
    fix1[i] = 1;
  }
  for (std::size_t i : filter_indices(n, [&](std::size_t i) { return nontrivial(i) && fixes(lat[i].g, 2, xi2); },
                                      spec.exec)) {
    fix2[i] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (hyper_regular(lat[i]) && fix1[i] && fix2[i]) {
      return make(Verdict::AsymptoticToCompact, rule::kAsymptotic, &lat[i], f, spec);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lat[i].kind.tag == PairKind::Tag::Mixed && (fix1[i] || fix2[i])) {
      return make(Verdict::DenseSemiOrbit, rule::kMixed, &lat[i], f, spec);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (hyper_regular(lat[i]) && (fix1[i] != fix2[i])) {
      return make(Verdict::DenseSemiOrbit, rule::kHyperRegularOne, &lat[i], f, spec);
    }
  }
  return std::nullopt;
}

std::optional<OrbitVerdict> closed_rules(const Frame& f, const Lattice& lat, const LatticeSpec& spec) {
  const auto corners = corner_points(f);
  const auto hit = find_first(
      lat.size(),
      [&](std::size_t i) {
        return hyper_regular(lat[i]) && fixes(lat[i].g, corners[0]) && fixes(lat[i].g, corners[1]);
      },
      spec.exec);
  if (hit) return make(Verdict::Compact, rule::kBothCorners, &lat[*hit], f, spec);
  for (const auto& [p, q] : {std::pair{corners[0], corners[1]}, std::pair{corners[2], corners[3]}}) {
    if (const auto w = are_conjugate_parabolic(p, q, spec)) {
      OrbitVerdict out = make(Verdict::ClosedNonCompact, rule::kConjugateParabolic, nullptr, f, spec);
      out.witness = *w;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

OrbitVerdict classify_semiorbit(const Frame& f, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  if (auto v = semiorbit_rules(f, *lat, spec)) return *v;
  if (auto v = closed_rules(f, *lat, spec)) return *v;
  return make(Verdict::Unknown, "", nullptr, f, spec);
}

OrbitVerdict classify_semiorbit(const GElem& g, const LatticeSpec& spec) {
  return classify_semiorbit(Frame(g), spec);
}

OrbitVerdict classify_orbit(const Frame& f, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  if (auto v = closed_rules(f, *lat, spec)) return *v;
  static const std::array<std::pair<bool, bool>, 4> translates{
      std::pair{false, false}, std::pair{true, false}, std::pair{false, true}, std::pair{true, true}};
  for (const auto& [w1, w2] : translates) {
    const auto v = semiorbit_rules(f.weyl(w1, w2), *lat, spec);
    if (v && v->verdict == Verdict::DenseSemiOrbit) {
      OrbitVerdict out = *v;
      out.verdict = Verdict::Dense;
      out.corner_points = corner_points(f);
      out.weyl_translate = std::string(w1 ? "w" : "id") + "," + (w2 ? "w" : "id");
      return out;
    }
  }
  return make(Verdict::Unknown, "", nullptr, f, spec);
}

OrbitVerdict classify_orbit(const GElem& g, const LatticeSpec& spec) {
  return classify_orbit(Frame(g), spec);
}

int check_rank_criterion(const GElem& g, const LatticeSpec& spec) {
  return intersect_conjugated_diagonal(g, spec).rank;
}

}  // namespace weyl
