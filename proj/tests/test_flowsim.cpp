#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/flowsim.hpp"

using namespace weyl;

namespace {

const QuadField k2(2);
const FBoundaryPoint kInfInf{BPoint::infinity(), BPoint::infinity()};

}  // namespace

TEST_CASE("stepping") {
  FlowState s = make_state(GElem());
  s = step(s, 1.0, -1.0);
  const HPair b = basepoint(s);
  CHECK(b[0].y == doctest::Approx(std::exp(1.0)));
  CHECK(b[1].y == doctest::Approx(std::exp(-1.0)));
  CHECK(s.t1 == 1.0);
  CHECK(excursion_level(s, {kInfInf}) == doctest::Approx(0.0).epsilon(1e-12));
  FlowState plus = make_state(GElem(), FlowMode::APlus);
  CHECK_THROWS_AS(step(plus, 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(excursion_level(s, {}), DomainError);
}

TEST_CASE("reduction moves the basepoint toward the reference") {
  const LatticeSpec spec(k2, 1);
  FlowState s = make_state(GElem(Mobius(1, 5.3, 0, 1), Mobius(1, -2.2, 0, 1)));
  const double before = product_distance(basepoint(s), kReferencePair);
  const FlowState r = reduce(s, spec);
  CHECK(product_distance(basepoint(r), kReferencePair) < before);
  CHECK(!r.reduction_log.empty());
  // Already reduced: no change.
  const FlowState again = reduce(r, spec);
  CHECK(again.reduction_log.size() == r.reduction_log.size());
}

TEST_CASE("reduction keeps the coset") {
  const LatticeSpec spec(k2, 1);
  const GElem g(Mobius(2, 7.1, 0, 0.5), Mobius(0.5, -3.3, 0, 2));
  const FlowState r = reduce(make_state(g), spec);
  // r.frame = gamma g for the logged gamma.
  GElem gamma;
  for (const IntMatrix& m : r.reduction_log) gamma = hilbert_embed(to_quad_matrix(k2, m)) * gamma;
  const GElem expect = gamma * g;
  CHECK(psl_distance(expect.first(), r.frame.first()) < 1e-9);
  CHECK(psl_distance(expect.second(), r.frame.second()) < 1e-9);
}

TEST_CASE("grid indexing") {
  const Grid grid;
  CHECK(grid.columns() == 16);
  CHECK(grid.rows() == 15);
  CHECK(grid.factor_cell({0.0, 1.0}).has_value());
  CHECK_FALSE(grid.factor_cell({0.0, 10.0}));
  CHECK_FALSE(grid.factor_cell({3.0, 1.0}));
  const auto a = grid.index({HPoint{0.0, 1.0}, HPoint{1.0, 2.0}});
  const auto b = grid.index({HPoint{1.0, 2.0}, HPoint{0.0, 1.0}});
  REQUIRE(a);
  REQUIRE(b);
  CHECK(*a != *b);
}

TEST_CASE("default cusps") {
  const auto cusps = default_cusps(LatticeSpec(k2, 1));
  CHECK(cusps.size() > 2);
  for (std::size_t i = 0; i < cusps.size(); ++i) {
    for (std::size_t j = i + 1; j < cusps.size(); ++j) CHECK_FALSE(same_point(cusps[i], cusps[j]));
  }
}

TEST_CASE("antidiagonal direction keeps the excursion at the cusp") {
  RunOptions opt;
  opt.cusps = {kInfInf};
  const TrajectoryStats st = run(GElem(), LatticeSpec(k2, 1), {1.0, -1.0}, 500, 0.05, opt);
  for (double e : st.excursions) CHECK(std::abs(e) < 1e-9);
}

TEST_CASE("diagonal direction escapes linearly") {
  const TrajectoryStats st = run(GElem(), LatticeSpec(k2, 1), {1.0, 1.0}, 200, 0.05);
  CHECK(st.max_excursion == doctest::Approx(2.0 * 0.05 * 200).epsilon(0.01));
}

TEST_CASE("csv output and checkpoints") {
  std::ostringstream csv;
  RunOptions opt;
  opt.csv = &csv;
  opt.checkpoints = {5, 10};
  const TrajectoryStats st = run(GElem(), LatticeSpec(k2, 1), {1.0, 0.5}, 10, 0.1, opt);
  const std::string text = csv.str();
  CHECK(text.rfind("step,t1,t2,re1,im1,re2,im2,excursion\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  REQUIRE(st.checkpoint_cells.size() == 2);
  CHECK(st.checkpoint_cells[0].first == 5);
  CHECK(st.checkpoint_cells[1].second >= st.checkpoint_cells[0].second);
  CHECK_THROWS_AS(run(GElem(), LatticeSpec(k2, 1), {1.0, 0.5}, 0, 0.1), DomainError);
  CHECK_THROWS_AS(run(GElem(), LatticeSpec(k2, 1), {1.0, 0.5}, 10, -0.1), DomainError);
}
