#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weyl/errors.hpp"
#include "weyl/serialize.hpp"

using namespace weyl;

namespace {

const QuadField k2(2);
const QuadMatrix kMixed = QuadMatrix::from_basis(k2, {std::pair<std::int64_t, std::int64_t>{2, 1}, {1, 0}, {1, 1}, {1, 0}});

}  // namespace

TEST_CASE("lattice elements") {
  const Json j = to_json(kMixed);
  CHECK(j.dump() == R"({"d":2,"entries":[[2,1],[1,0],[1,1],[1,0]]})");
  CHECK(quad_matrix_from_json(j) == kMixed);
  const GElem g = gelem_from_json(to_json(hilbert_embed(kMixed)));
  REQUIRE(g.provenance());
  CHECK(*g.provenance() == kMixed);
}

TEST_CASE("float elements and boundary points") {
  const GElem g(Mobius(0.7, 0.31, -0.2, 1.3), Mobius(1.1, -0.45, 0.37, 0.8));
  const Json j = to_json(g);
  CHECK(j.contains("first"));
  CHECK(emit(to_json(gelem_from_json(j))) == emit(j));
  CHECK(to_json(BPoint::infinity()) == "inf");
  CHECK(bpoint_from_json(Json("inf")).is_infinity());
  CHECK(bpoint_from_json(Json(0.5)).value() == 0.5);
  CHECK_THROWS_AS(bpoint_from_json(Json("nan")), DomainError);
}

TEST_CASE("verdict round trip") {
  const LatticeSpec spec(k2, 2);
  for (const Frame& f : {Frame(hilbert_embed(QuadMatrix::identity(k2))), Frame::attracting(kMixed, 1),
                         Frame(GElem(Mobius(0.7, 0.31, -0.2, 1.3), Mobius(1.1, -0.45, 0.37, 0.8)))}) {
    const std::string text = emit(to_json(classify_orbit(f, spec)));
    const OrbitVerdict back = verdict_from_json(Json::parse(text));
    CHECK(emit(to_json(back)) == text);
  }
  const Json j = to_json(classify_orbit(Frame(hilbert_embed(QuadMatrix::identity(k2))), spec));
  CHECK(j["verdict"] == "ClosedNonCompact");
  CHECK(j["rule"] == "T4.3-conjugate-parabolic");
  CHECK(j["height_used"] == 2);
  CHECK(j["corner_points"][0]["xi1"] == "inf");
}

TEST_CASE("witness round trip") {
  const WitnessSequence pp = pingpong_limit(hilbert_embed(kMixed), Frame::attracting(kMixed, 1), 12);
  const std::string text = emit(to_json(pp));
  CHECK(emit(to_json(witness_from_json(Json::parse(text)))) == text);
  const Json j = Json::parse(text);
  CHECK(j["elements"].size() == 12);
  CHECK(j["error_tracks"].contains("first"));
  CHECK(j["elements"][1]["exponent"] == "9");

  const WitnessSequence rd =
      refined_density_sequence(Mobius(), BPoint::infinity(), BPoint::finite(0.0), LatticeSpec(k2, 2), 5);
  const std::string rtext = emit(to_json(rd));
  CHECK(emit(to_json(witness_from_json(Json::parse(rtext)))) == rtext);
  CHECK(Json::parse(rtext)["target"]["eta_plus"] == "inf");
}

TEST_CASE("summaries") {
  TrajectoryStats st;
  st.visited_cells = {1, 5, 9};
  st.max_excursion = 2.5;
  st.min_return_distance = std::numeric_limits<double>::infinity();
  st.checkpoint_cells = {{10, 2}};
  const Json j = summary_json(st);
  CHECK(j["visited_cells"] == 3);
  CHECK(j["min_return_distance"].is_null());
  CHECK(j["checkpoints"][0]["step"] == 10);
  HoroballReport r;
  r.persist = true;
  r.coordinate_check = true;
  CHECK(to_json(r)["coordinate_check"] == "pass");
  r.coordinate_check.reset();
  CHECK(to_json(r)["coordinate_check"] == "n/a");
}
