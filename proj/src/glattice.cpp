#include "weyl/glattice.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "weyl/errors.hpp"

namespace weyl {

GElem GElem::inverse() const {
  GElem r(first_.inverse(), second_.inverse());
  if (provenance_) r.provenance_ = provenance_->inverse();
  return r;
}

GElem operator*(const GElem& x, const GElem& y) {
  GElem r(x.first_ * y.first_, x.second_ * y.second_);
  if (x.provenance_ && y.provenance_) r.provenance_ = *x.provenance_ * *y.provenance_;
  return r;
}

GElem hilbert_embed(const QuadMatrix& m) {
  if (!m.is_integral()) throw DomainError("hilbert_embed: entries must be algebraic integers");
  GElem g(Mobius::from_exact(m, 1), Mobius::from_exact(m, 2));
  g.provenance_ = m;
  return g;
}

HPair apply(const GElem& g, const HPair& z) {
  return {apply(g.first(), z[0]), apply(g.second(), z[1])};
}

double product_distance(const HPair& z, const HPair& w) {
  return std::hypot(hyperbolic_distance(z[0], w[0]), hyperbolic_distance(z[1], w[1]));
}

const char* to_string(PairKind::Tag t) {
  switch (t) {
    case PairKind::Tag::Identity: return "identity";
    case PairKind::Tag::Hyperbolic: return "hyperbolic";
    case PairKind::Tag::Parabolic: return "parabolic";
    case PairKind::Tag::Elliptic: return "elliptic";
    case PairKind::Tag::Mixed: return "mixed";
  }
  return "?";
}

namespace {

bool trace_matches(const Mobius& m, double exact) {
  return std::abs(std::abs(m.trace()) - std::abs(exact)) <= 1e-9 * std::max(1.0, std::abs(exact));
}

PairKind combine(IsometryKind k1, IsometryKind k2) {
  PairKind pk;
  pk.first = k1;
  pk.second = k2;
  if (k1 == k2) {
    switch (k1) {
      case IsometryKind::Identity: pk.tag = PairKind::Tag::Identity; break;
      case IsometryKind::Hyperbolic: pk.tag = PairKind::Tag::Hyperbolic; break;
      case IsometryKind::Parabolic: pk.tag = PairKind::Tag::Parabolic; break;
      case IsometryKind::Elliptic: pk.tag = PairKind::Tag::Elliptic; break;
    }
    return pk;
  }
  pk.tag = PairKind::Tag::Mixed;
  if (k1 == IsometryKind::Hyperbolic) pk.hyperbolic_factor = 1;
  if (k2 == IsometryKind::Hyperbolic) pk.hyperbolic_factor = 2;
  return pk;
}

}  // namespace

PairKind classify_pair(const GElem& g, double tol) {
  if (!g.provenance()) {
    PairKind pk = combine(classify(g.first(), tol), classify(g.second(), tol));
    if (pk.tag == PairKind::Tag::Hyperbolic) {
      pk.hyper_regular = std::abs(std::abs(g.first().trace()) - std::abs(g.second().trace())) > tol;
    }
    return pk;
  }
  const QuadMatrix& m = *g.provenance();
  const QuadElem tr = m.trace();
  if (!trace_matches(g.first(), tr.to_double(1)) || !trace_matches(g.second(), tr.to_double(2))) {
    throw IntegrityError("trace relation tr(second) = sigma(tr(first)) violated");
  }
  const IsometryKind k1 = classify_exact(m, 1);
  const IsometryKind k2 = classify_exact(m, 2);
  const bool pe = (k1 == IsometryKind::Parabolic && k2 == IsometryKind::Elliptic) ||
                  (k1 == IsometryKind::Elliptic && k2 == IsometryKind::Parabolic);
  if (pe) throw IntegrityError("lattice element with one parabolic and one elliptic component");
  if ((k1 == IsometryKind::Identity) != (k2 == IsometryKind::Identity)) {
    throw IntegrityError("lattice element with exactly one trivial component");
  }
  PairKind pk = combine(k1, k2);
  if (pk.tag == PairKind::Tag::Hyperbolic) {
    // |t| = |sigma(t)| iff t is rational or t is a rational multiple of sqrt d.
    pk.hyper_regular = sgn(tr.a()) != 0 && sgn(tr.b()) != 0;
  }
  return pk;
}

bool is_hyper_regular(const GElem& g, double tol) {
  const PairKind pk = classify_pair(g, tol);
  if (pk.tag != PairKind::Tag::Hyperbolic) {
    throw DomainError("is_hyper_regular: element is not hyperbolic in both factors");
  }
  return pk.hyper_regular;
}

// ---------------------------------------------------------------------------

LatticeSpec::LatticeSpec(QuadField f, std::int64_t h, Exec e) : field(f), height_bound(h), exec(e) {
  if (h < 1) throw DomainError("lattice height bound must be at least 1");
}

QuadMatrix to_quad_matrix(const QuadField& field, const IntMatrix& m) {
  return QuadMatrix::from_basis(field, {std::pair{m.e[0].u, m.e[0].v}, std::pair{m.e[1].u, m.e[1].v},
                                        std::pair{m.e[2].u, m.e[2].v}, std::pair{m.e[3].u, m.e[3].v}});
}

IntMatrix to_int_matrix(const QuadMatrix& m) {
  IntMatrix r;
  for (int k = 0; k < 4; ++k) {
    const auto c = m.entries()[k].basis_coords();
    if (!c) throw DomainError("matrix entry " + m.entries()[k].to_string() + " is not integral");
    r.e[k] = {c->first, c->second};
  }
  return r;
}

Lattice::Lattice(const LatticeSpec& spec) : spec_(spec) {
  const auto coeffs = enumerate_box(spec.field.d(), spec.height_bound, spec.exec);
  elems_.reserve(coeffs.size());
  for (const IntMatrix& c : coeffs) {
    QuadMatrix q = to_quad_matrix(spec.field, c);
    GElem g = hilbert_embed(q);
    PairKind k = classify_pair(g);
    elems_.push_back({c, std::move(q), std::move(g), k});
  }
}

std::shared_ptr<const Lattice> lattice_for(const LatticeSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const Lattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{spec.field.d(), spec.height_bound}];
  if (!slot) slot = std::make_shared<const Lattice>(spec);
  return slot;
}

std::vector<QuadMatrix> enumerate_lattice(const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  std::vector<QuadMatrix> out;
  out.reserve(lat->size());
  for (const auto& e : lat->elements()) out.push_back(e.exact);
  return out;
}

// ---------------------------------------------------------------------------

bool fixes(const GElem& g, int factor, const BPoint& xi) {
  const Mobius& m = g.factor(factor);
  if (xi.is_infinity()) {
    // sigma(c) = 0 iff c = 0, so one exact test covers both factors.
    if (g.provenance()) return g.provenance()->c().is_zero();
    return chordal_distance(apply_boundary(m, xi), xi) <= kBoundaryTol;
  }
  const double dist = chordal_distance(apply_boundary(m, xi), xi);
  if (dist > 1e-6) return false;
  if (g.provenance() && xi.exact_value() && xi.exact_value()->field() == g.provenance()->field()) {
    const QuadMatrix a = factor == 2 ? g.provenance()->conjugate() : *g.provenance();
    const QuadExt& x = *xi.exact_value();
    // c x^2 + (d - a) x - b = 0
    const QuadExt r = QuadExt(a.c()) * x * x + QuadExt(a.d() - a.a()) * x - QuadExt(a.b());
    return r.is_zero();
  }
  return dist <= kBoundaryTol;
}

std::vector<GElem> fixing_elements(const BPoint& xi, int factor, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  const auto hits = filter_indices(
      lat->size(),
      [&](std::size_t i) {
        const auto& e = (*lat)[i];
        return e.kind.tag != PairKind::Tag::Identity && fixes(e.g, factor, xi);
      },
      spec.exec);
  std::vector<GElem> out;
  for (std::size_t i : hits) out.push_back((*lat)[i].g);
  return out;
}

DiagonalIntersection intersect_conjugated_diagonal(const GElem& g, const LatticeSpec& spec) {
  const auto lat = lattice_for(spec);
  const GElem gi = g.inverse();
  auto conj_diag = [&](std::size_t i) -> std::optional<std::array<double, 2>> {
    const auto& e = (*lat)[i];
    if (e.kind.tag != PairKind::Tag::Hyperbolic) return std::nullopt;
    const Mobius h1 = (gi.first() * e.g.first() * g.first()).renormalized();
    const Mobius h2 = (gi.second() * e.g.second() * g.second()).renormalized();
    for (const Mobius* h : {&h1, &h2}) {
      if (std::abs(h->b()) >= 1e-8 || std::abs(h->c()) >= 1e-8) return std::nullopt;
    }
    return std::array<double, 2>{std::log(std::abs(h1.a())), std::log(std::abs(h2.a()))};
  };
  const auto hits =
      filter_indices(lat->size(), [&](std::size_t i) { return conj_diag(i).has_value(); }, spec.exec);

  DiagonalIntersection out;
  std::optional<std::array<double, 2>> base;
  for (std::size_t i : hits) {
    out.elements.push_back((*lat)[i].g);
    const auto v = *conj_diag(i);
    const double nv = std::hypot(v[0], v[1]);
    if (nv < 1e-9) continue;
    if (!base) {
      base = v;
      out.rank = 1;
      continue;
    }
    const double cross = (*base)[0] * v[1] - (*base)[1] * v[0];
    if (std::abs(cross) > 1e-6 * std::hypot((*base)[0], (*base)[1]) * nv) out.rank = 2;
  }
  return out;
}

std::optional<int> finite_order(const QuadMatrix& m, int cap) {
  QuadMatrix p = m;
  for (int n = 1; n <= cap; ++n) {
    if (p.is_plus_minus_identity()) return n;
    p = p * m;
  }
  return std::nullopt;
}

}  // namespace weyl
