#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weyl/classifier.hpp"

using namespace weyl;

namespace {

const QuadField k2(2);

QuadMatrix mat(std::array<std::pair<std::int64_t, std::int64_t>, 4> c) { return QuadMatrix::from_basis(k2, c); }

// Hyper-regular, used for the compact regression frame.
const QuadMatrix kRegular = mat({{{0, 1}, {1, 1}, {1, 1}, {2, 2}}});
// Hyperbolic first, elliptic second.
const QuadMatrix kMixed = mat({{{2, 1}, {1, 0}, {1, 1}, {1, 0}}});
const GElem kGeneric(Mobius(0.7, 0.31, -0.2, 1.3), Mobius(1.1, -0.45, 0.37, 0.8));
const Mobius kOther(1.1, -0.45, 0.37, 0.8);

}  // namespace

TEST_CASE("verdict names") {
  for (Verdict v : {Verdict::Compact, Verdict::ClosedNonCompact, Verdict::DenseSemiOrbit,
                    Verdict::AsymptoticToCompact, Verdict::Dense, Verdict::Unknown}) {
    CHECK(verdict_from_string(to_string(v)) == v);
  }
  CHECK_FALSE(verdict_from_string("Closed"));
}

TEST_CASE("frames") {
  const Frame id(hilbert_embed(QuadMatrix::identity(k2)));
  CHECK(id.end(1, true).is_infinity());
  CHECK(id.end(2, false).value() == 0.0);
  const Frame w = id.weyl(true, false);
  CHECK(w.end(1, true).value() == 0.0);
  CHECK(w.end(1, false).is_infinity());
  CHECK(psl_distance(w.g().first(), Mobius(0, -1, 1, 0)) < 1e-15);
  const Frame e = Frame::eigenframe(kRegular);
  const auto fp = fixed_points_exact(kRegular, 2);
  CHECK(same_point(e.end(2, true), fp.attracting));
  CHECK(same_point(apply_boundary(e.g().second(), BPoint::infinity()), fp.attracting));
  CHECK_THROWS(Frame::eigenframe(kMixed));
  const auto c = corner_points(id);
  CHECK(c[0].xi1.is_infinity());
  CHECK(c[1].xi2.value() == 0.0);
}

TEST_CASE("identity frame is closed non-compact") {
  for (std::int64_t h : {2, 3}) {
    const OrbitVerdict v = classify_orbit(Frame(hilbert_embed(QuadMatrix::identity(k2))), LatticeSpec(k2, h));
    CHECK(v.verdict == Verdict::ClosedNonCompact);
    CHECK(v.rule == rule::kConjugateParabolic);
    REQUIRE(v.witness);
    CHECK(v.witness->provenance()->equals_up_to_sign(mat({{{1, 1}, {0, 0}, {0, 0}, {-1, 1}}})));
    CHECK(v.height_used == h);
  }
  CHECK(check_rank_criterion(GElem(), LatticeSpec(k2, 3)) == 1);
}

TEST_CASE("hyper-regular eigenframe is compact") {
  const LatticeSpec spec(k2, 3);
  const Frame f = Frame::eigenframe(kRegular);
  const OrbitVerdict v = classify_orbit(f, spec);
  CHECK(v.verdict == Verdict::Compact);
  CHECK(v.rule == rule::kBothCorners);
  REQUIRE(v.witness);
  CHECK(is_hyper_regular(*v.witness));
  CHECK(fixes(*v.witness, v.corner_points[0]));
  CHECK(fixes(*v.witness, v.corner_points[1]));
  CHECK(check_rank_criterion(f.g(), spec) == 2);
  const OrbitVerdict s = classify_semiorbit(f, spec);
  CHECK(s.verdict == Verdict::AsymptoticToCompact);
  CHECK(s.rule == rule::kAsymptotic);
}

TEST_CASE("generic frame is unknown") {
  const LatticeSpec spec(k2, 3);
  const OrbitVerdict v = classify_orbit(kGeneric, spec);
  CHECK(v.verdict == Verdict::Unknown);
  CHECK(v.rule.empty());
  CHECK_FALSE(v.witness);
  CHECK(check_rank_criterion(kGeneric, spec) == 0);
}

TEST_CASE("mixed element fixing g1(inf) gives a dense semi-orbit") {
  const LatticeSpec spec(k2, 3);
  const Frame f = Frame::attracting(kMixed, 1);
  CHECK(f.end(1, true).value() == doctest::Approx(1.31499).epsilon(1e-5));
  const OrbitVerdict s = classify_semiorbit(f, spec);
  CHECK(s.verdict == Verdict::DenseSemiOrbit);
  CHECK(s.rule == rule::kMixed);
  REQUIRE(s.witness);
  CHECK(classify_pair(*s.witness).tag == PairKind::Tag::Mixed);
  CHECK(fixes(*s.witness, 1, f.end(1, true)));
  const OrbitVerdict o = classify_orbit(f, spec);
  CHECK(o.verdict == Verdict::Dense);
  CHECK(o.weyl_translate == "id,id");
}

TEST_CASE("hyper-regular element fixing one end") {
  const OrbitVerdict s = classify_semiorbit(Frame::attracting(kRegular, 1, kOther), LatticeSpec(k2, 3));
  CHECK(s.verdict == Verdict::DenseSemiOrbit);
  CHECK(s.rule == rule::kHyperRegularOne);
}

TEST_CASE("raising the height only resolves Unknown") {
  const std::array<Frame, 4> frames{Frame(hilbert_embed(QuadMatrix::identity(k2))), Frame::eigenframe(kRegular),
                                    Frame::attracting(kMixed, 1), Frame(kGeneric)};
  for (const Frame& f : frames) {
    const OrbitVerdict lo = classify_orbit(f, LatticeSpec(k2, 2));
    const OrbitVerdict hi = classify_orbit(f, LatticeSpec(k2, 3));
    if (lo.verdict != Verdict::Unknown) CHECK(hi.verdict == lo.verdict);
  }
}
