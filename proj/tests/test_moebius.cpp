#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/moebius.hpp"

using namespace weyl;

namespace {

Mobius random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.2) return Mobius(a, b, c, d);
  }
}

HPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0), y(0.2, 3.0);
  return {x(rng), y(rng)};
}

}  // namespace

TEST_CASE("construction normalizes") {
  const Mobius m(2.0, 0.0, 0.0, 2.0);
  CHECK(m.det() == doctest::Approx(1.0));
  CHECK(psl_distance(m, Mobius()) < 1e-15);
  CHECK(psl_distance(Mobius(-1, 0, 0, -1), Mobius()) < 1e-15);
  CHECK_THROWS_AS(Mobius(0, 1, 1, 0), DomainError);
  CHECK_THROWS_AS(Mobius(1, 0, 0, NAN), DomainError);
}

TEST_CASE("classification by trace") {
  CHECK(classify(Mobius()) == IsometryKind::Identity);
  CHECK(classify(Mobius(2, 1, 1, 1)) == IsometryKind::Hyperbolic);
  CHECK(classify(Mobius(1, 1, 0, 1)) == IsometryKind::Parabolic);
  CHECK(classify(Mobius(0, -1, 1, 0)) == IsometryKind::Elliptic);
  CHECK(classify(Mobius(-1, 1, 0, -1)) == IsometryKind::Parabolic);
}

TEST_CASE("fixed points") {
  const auto fp = fixed_points(Mobius(2, 1, 1, 1));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(fp.attracting.value() == doctest::Approx(golden));
  CHECK(fp.repelling.value() == doctest::Approx(1.0 - golden));
  const auto diag = fixed_points(Mobius(2, 0, 0, 0.5));
  CHECK(diag.attracting.is_infinity());
  CHECK(diag.repelling.value() == 0.0);
  const auto par = fixed_points(Mobius(1, 0, 1, 1));
  CHECK(par.attracting.value() == 0.0);
  const auto ell = fixed_points(Mobius(0, -1, 1, 0));
  CHECK(ell.center.x == doctest::Approx(0.0));
  CHECK(ell.center.y == doctest::Approx(1.0));
  CHECK_THROWS_AS(fixed_points(Mobius()), DomainError);

  const QuadField k(5);
  const auto ex = fixed_points_exact(QuadMatrix::from_basis(k, {std::pair<std::int64_t, std::int64_t>{2, 0}, {1, 0}, {1, 0}, {1, 0}}));
  REQUIRE(ex.attracting.exact_value());
  CHECK(ex.attracting.value() == doctest::Approx(golden));
  CHECK(*ex.attracting.exact_value() == QuadExt(QuadElem::from_basis(k, 0, 1)));
}

TEST_CASE("dominant eigenvalue and flow") {
  CHECK(dominant_eigenvalue(Mobius(2, 1, 1, 1)) == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0));
  CHECK_THROWS_AS(dominant_eigenvalue(Mobius(1, 1, 0, 1)), DomainError);
  const HPoint z = apply(geodesic_flow(2.0), HPoint{0.0, 1.0});
  CHECK(z.y == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("busemann normalization") {
  CHECK(busemann(BPoint::infinity(), {0, 1}, {0, 2}) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(busemann(BPoint::finite(0.0), {0, 1}, {0, 2}) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("busemann cocycle and invariance") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> b(-4.0, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Mobius m = random_mobius(rng);
    const BPoint xi = i % 10 == 0 ? BPoint::infinity() : BPoint::finite(b(rng));
    const HPoint x = random_point(rng), y = random_point(rng), z = random_point(rng);
    const double cocycle = busemann(xi, x, z) - busemann(xi, x, y) - busemann(xi, y, z);
    const double inv = busemann(apply_boundary(m, xi), apply(m, x), apply(m, y)) - busemann(xi, x, y);
    worst = std::max({worst, std::abs(cocycle), std::abs(inv)});
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("distances") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Mobius m = random_mobius(rng);
    const HPoint z = random_point(rng), w = random_point(rng);
    CHECK(hyperbolic_distance(apply(m, z), apply(m, w)) == doctest::Approx(hyperbolic_distance(z, w)).epsilon(1e-9));
  }
  CHECK(hyperbolic_distance({0, 1}, {0, std::exp(1.0)}) == doctest::Approx(1.0));
  CHECK(chordal_distance(BPoint::infinity(), BPoint::finite(0.0)) == doctest::Approx(2.0));
  CHECK(chordal_distance(BPoint::finite(1.0), BPoint::finite(-1.0)) == doctest::Approx(2.0));
  CHECK(disk_distance({0, 1}, BPoint::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("same_point") {
  CHECK(same_point(BPoint::infinity(), BPoint::infinity()));
  CHECK(same_point(BPoint::infinity(), BPoint::finite(1e12)));
  CHECK_FALSE(same_point(BPoint::infinity(), BPoint::finite(1e6)));
  CHECK(same_point(BPoint::finite(1.0), BPoint::finite(1.0 + 1e-12)));
  CHECK_FALSE(same_point(BPoint::finite(1.0), BPoint::finite(1.001)));
}

TEST_CASE("projective maps agree with Mobius maps") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Mobius m = random_mobius(rng), n = random_mobius(rng);
    const ProjMap p = ProjMap::from(m) * ProjMap::from(n);
    const HPoint z = random_point(rng);
    const HPoint a = p.apply(z), b = apply(m * n, z);
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-9));
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-9));
    const HPoint back = p.inverse().apply(a);
    CHECK(back.x == doctest::Approx(z.x).epsilon(1e-8));
    CHECK(back.y == doctest::Approx(z.y).epsilon(1e-8));
  }
  // Scale is carried in the log.
  const ProjMap big = ProjMap::from(geodesic_flow(40.0));
  CHECK(big.log_scale == doctest::Approx(20.0));
  CHECK(big.apply(BPoint::finite(1.0)).value() == doctest::Approx(std::exp(40.0)));
}

TEST_CASE("exact boundary action") {
  const QuadField k(2);
  const QuadMatrix m = QuadMatrix::from_basis(k, {std::pair<std::int64_t, std::int64_t>{1, 1}, {0, 1}, {1, 0}, {1, 0}});
  const BPoint p = apply_boundary_exact(m, 1, BPoint::infinity());
  REQUIRE(p.exact_value());
  CHECK(p.value() == doctest::Approx(1.0 + std::sqrt(2.0)));
  const BPoint q = apply_boundary_exact(m, 2, BPoint::infinity());
  CHECK(q.value() == doctest::Approx(1.0 - std::sqrt(2.0)));
  CHECK(classify_exact(m, 1) == classify(Mobius::from_exact(m, 1)));
}
