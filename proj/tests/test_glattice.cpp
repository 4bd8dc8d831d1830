#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "weyl/errors.hpp"
#include "weyl/glattice.hpp"

using namespace weyl;

namespace {

QuadMatrix mat(const QuadField& k, std::array<std::pair<std::int64_t, std::int64_t>, 4> c) {
  return QuadMatrix::from_basis(k, c);
}

}  // namespace

TEST_CASE("embedding and kinds") {
  const QuadField k(2);
  CHECK(classify_pair(hilbert_embed(QuadMatrix::identity(k))).tag == PairKind::Tag::Identity);
  const GElem h = hilbert_embed(mat(k, {{{2, 0}, {1, 0}, {1, 0}, {1, 0}}}));
  const PairKind pk = classify_pair(h);
  CHECK(pk.tag == PairKind::Tag::Hyperbolic);
  CHECK_FALSE(pk.hyper_regular);
  CHECK_FALSE(is_hyper_regular(h));
  const PairKind mixed = classify_pair(hilbert_embed(mat(k, {{{2, 1}, {1, 0}, {1, 1}, {1, 0}}})));
  CHECK(mixed.tag == PairKind::Tag::Mixed);
  CHECK(mixed.hyperbolic_factor == 1);
  CHECK(mixed.second == IsometryKind::Elliptic);
  const GElem reg = hilbert_embed(mat(k, {{{0, 1}, {1, 1}, {1, 1}, {2, 2}}}));
  CHECK(is_hyper_regular(reg));
  CHECK_THROWS_AS(is_hyper_regular(hilbert_embed(mat(k, {{{1, 0}, {1, 0}, {0, 0}, {1, 0}}}))), DomainError);
}

TEST_CASE("float pairs") {
  const GElem g(Mobius(2, 0, 0, 0.5), Mobius(3, 0, 0, 1.0 / 3.0));
  CHECK(classify_pair(g).tag == PairKind::Tag::Hyperbolic);
  CHECK(classify_pair(g).hyper_regular);
  const GElem anti(Mobius(2, 0, 0, 0.5), Mobius(0.5, 0, 0, 2));
  CHECK_FALSE(classify_pair(anti).hyper_regular);
}

TEST_CASE("non-integral entries are rejected") {
  const QuadField k(2);
  const QuadElem half(k, Rational(1, 2));
  const QuadMatrix m({QuadElem(k, 1), half, QuadElem(k), QuadElem(k, 1)});
  CHECK_THROWS_AS(hilbert_embed(m), DomainError);
  CHECK_THROWS_AS(to_int_matrix(m), DomainError);
}

TEST_CASE("products and inverses keep provenance") {
  const QuadField k(2);
  const GElem a = hilbert_embed(mat(k, {{{2, 1}, {1, 0}, {1, 1}, {1, 0}}}));
  const GElem b = hilbert_embed(mat(k, {{{1, 0}, {0, 1}, {0, 0}, {1, 0}}}));
  const GElem ab = a * b;
  REQUIRE(ab.provenance());
  CHECK(psl_distance(ab.first(), Mobius::from_exact(*ab.provenance(), 1)) < 1e-12);
  CHECK(psl_distance(ab.second(), Mobius::from_exact(*ab.provenance(), 2)) < 1e-12);
  CHECK(classify_pair(a * a.inverse()).tag == PairKind::Tag::Identity);
  const GElem f = GElem(Mobius(2, 1, 1, 1), Mobius()) * a;
  CHECK_FALSE(f.provenance());
}

TEST_CASE("lattice enumeration") {
  const QuadField k(2);
  const LatticeSpec spec(k, 1);
  const auto lat = lattice_for(spec);
  CHECK(lat->size() == 178);
  CHECK(lattice_for(spec).get() == lat.get());
  const auto all = enumerate_lattice(spec);
  CHECK(std::count(all.begin(), all.end(), QuadMatrix::identity(k)) == 1);
  CHECK_THROWS_AS(LatticeSpec(k, 0), DomainError);
}

TEST_CASE("stabilizer of infinity") {
  const QuadField k(2);
  const auto fix = fixing_elements(BPoint::infinity(), 1, LatticeSpec(k, 2));
  CHECK(!fix.empty());
  for (const GElem& g : fix) {
    REQUIRE(g.provenance());
    CHECK(g.provenance()->c().is_zero());
  }
}

TEST_CASE("exact fixing of quadratic irrationals") {
  const QuadField k(2);
  const QuadMatrix m = mat(k, {{{0, 1}, {1, 1}, {1, 1}, {2, 2}}});
  const GElem g = hilbert_embed(m);
  const auto fp = fixed_points_exact(m, 1);
  CHECK(fixes(g, 1, fp.attracting));
  CHECK(fixes(g, 1, fp.repelling));
  CHECK_FALSE(fixes(g, 1, BPoint::finite(fp.attracting.value() + 1e-3)));
  CHECK(fixes(g, 2, fixed_points_exact(m, 2).attracting));
}

TEST_CASE("conjugated diagonal rank") {
  const QuadField k(2);
  const LatticeSpec spec(k, 2);
  CHECK(intersect_conjugated_diagonal(GElem(), spec).rank == 1);
  CHECK(intersect_conjugated_diagonal(GElem(Mobius(0.7, 0.31, -0.2, 1.3), Mobius(1.1, -0.45, 0.37, 0.8)), spec).rank == 0);
}

TEST_CASE("finite order") {
  const QuadField k(2);
  CHECK(finite_order(mat(k, {{{0, 0}, {-1, 0}, {1, 0}, {0, 0}}})) == 2);
  CHECK(finite_order(mat(k, {{{0, 0}, {-1, 0}, {1, 0}, {1, 0}}})) == 3);
  CHECK_FALSE(finite_order(mat(k, {{{2, 0}, {1, 0}, {1, 0}, {1, 0}}})));
}
