#include "weyl/witness.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

#include "weyl/errors.hpp"

namespace weyl {

namespace mp = boost::multiprecision;
using Big = mp::number<mp::cpp_bin_float<120>>;

const std::vector<double>& WitnessSequence::track(const std::string& name) const {
  for (const auto& [n, v] : error_tracks) {
    if (n == name) return v;
  }
  throw DomainError("no error track named " + name);
}

namespace {

using Mat = std::array<double, 4>;

Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

double frobenius(const Mat& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]); }

Big to_big(const Rational& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }

Big big_value(const QuadElem& t, int embedding) {
  const Big s = mp::sqrt(Big(t.field().d()));
  const Big b = to_big(t.b());
  return to_big(t.a()) + (embedding == 1 ? b : Big(-b)) * s;
}

std::string fraction_of(const Big& abs_trace) {
  if (abs_trace >= 2) throw DomainError("rotation angle requested for a non-elliptic trace");
  const Big theta = mp::acos(abs_trace / 2);
  const Big x = theta / (2 * boost::math::constants::pi<Big>());
  return x.str(110);
}

// Conjugacy of an elliptic element to a rotation: m = P R(sign * theta) P^-1
// with P(i) the center and theta in (0, pi/2].
struct EllipticFrame {
  Mobius p;
  int sign = 1;
};

EllipticFrame elliptic_frame(const Mobius& m) {
  const FixedPoints fp = fixed_points(m);
  if (fp.kind != IsometryKind::Elliptic) throw DomainError("element is not elliptic");
  const double r = std::sqrt(fp.center.y);
  const Mobius p(r, fp.center.x / r, 0.0, 1.0 / r);
  const Mobius x = p.inverse() * m * p;
  const double s = (x.a() >= 0.0 ? 1.0 : -1.0) * x.c();
  return {p, s >= 0.0 ? 1 : -1};
}

Mobius rotation(double phi) { return Mobius(std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)); }

// R(phi) - Id without cancellation.
Mat rotation_minus_identity(double phi) {
  const double h = std::sin(phi / 2.0);
  return {-2.0 * h * h, -std::sin(phi), std::sin(phi), -2.0 * h * h};
}

// Sends inf to p and 0 to q.
Mobius frame_through(const BPoint& p, const BPoint& q) {
  if (p.is_infinity()) return Mobius(1.0, q.value(), 0.0, 1.0);
  if (q.is_infinity()) return Mobius(p.value(), -1.0, 1.0, 0.0);
  if (p.value() > q.value()) return Mobius(p.value(), q.value(), 1.0, 1.0);
  return Mobius(p.value(), -q.value(), 1.0, -1.0);
}

// Q diag(1, exp(-2 n log lambda)) Q^-1 with scale n log lambda, or its inverse.
ProjMap hyperbolic_power(const Mobius& q, double n_log_lambda, bool inverse) {
  const double small = std::exp(-2.0 * n_log_lambda);
  const Mat d = inverse ? Mat{small, 0.0, 0.0, 1.0} : Mat{1.0, 0.0, 0.0, small};
  const ProjMap core{d, inverse ? -n_log_lambda : n_log_lambda};
  return ProjMap::from(q) * core * ProjMap::from(q.inverse());
}

double as_double(const std::string& n) { return std::stod(n); }

}  // namespace

std::string rotation_fraction(const QuadElem& trace, int embedding) {
  return fraction_of(mp::abs(big_value(trace, embedding)));
}

std::string rotation_fraction(double trace) { return fraction_of(Big(std::abs(trace))); }

Convergents convergent_denominators(const std::string& xs, int count) {
  if (count < 1) throw DomainError("count must be positive");
  const Big x(xs);
  if (x <= 0 || x >= 1) throw DomainError("convergents: x must lie in (0, 1)");
  // Beyond q ~ 1e50 the residuals fall below the working precision.
  const Big q_cap("1e50");
  const Big eps("1e-100");
  Convergents out;
  mp::cpp_int p2 = 0, p1 = 1, q2 = 1, q1 = 0;
  Big r = x;
  while (static_cast<int>(out.denominators.size()) < count) {
    const Big a_big = mp::floor(r);
    const mp::cpp_int a = a_big.convert_to<mp::cpp_int>();
    const mp::cpp_int p = a * p1 + p2;
    const mp::cpp_int q = a * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    if (Big(q) > q_cap) break;
    if (q >= 1 && (out.denominators.empty() || q.str() != out.denominators.back())) {
      out.denominators.push_back(q.str());
      out.residuals.push_back(static_cast<double>(Big(q) * x - Big(p)));
    }
    const Big frac = r - a_big;
    if (frac < eps) {
      out.terminated = true;
      break;
    }
    r = 1 / frac;
  }
  if (out.terminated) {
    // Rational rotation number: multiples of the period return exactly.
    const mp::cpp_int period(out.denominators.back());
    for (mp::cpp_int k = 2; static_cast<int>(out.denominators.size()) < count; ++k) {
      out.denominators.push_back(mp::cpp_int(k * period).str());
      out.residuals.push_back(0.0);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

WitnessSequence refined_density_sequence(const Mobius& g1, const BPoint& eta_plus,
                                         const BPoint& eta_minus, const LatticeSpec& spec, int count) {
  if (same_point(eta_plus, eta_minus)) throw DomainError("refined density: eta+ must differ from eta-");
  if (count < 1) throw DomainError("count must be positive");
  const auto lat = lattice_for(spec);

  const auto mixed = filter_indices(
      lat->size(),
      [&](std::size_t i) {
        const PairKind& k = (*lat)[i].kind;
        return k.tag == PairKind::Tag::Mixed && k.first == IsometryKind::Elliptic &&
               k.second == IsometryKind::Hyperbolic;
      },
      spec.exec);
  if (mixed.empty()) {
    throw SearchExhausted("insufficient height: no element with elliptic first and hyperbolic second "
                          "component at height " + std::to_string(spec.height_bound));
  }

  const auto gi = argmin(
      lat->size(), [&](std::size_t i) { return psl_distance((*lat)[i].g.first(), g1); }, spec.exec);
  const LatticeElement& gamma = (*lat)[gi->index];
  const Mobius gamma2_inv = gamma.g.second().inverse();

  std::vector<FixedPoints> ends(mixed.size());
  for (std::size_t k = 0; k < mixed.size(); ++k) ends[k] = fixed_points((*lat)[mixed[k]].g.second());
  std::vector<Mobius> steer_minus(lat->size());
  for (std::size_t j = 0; j < lat->size(); ++j) steer_minus[j] = gamma2_inv * (*lat)[j].g.second();

  const std::size_t n_delta = lat->size();
  const auto best = argmin(
      mixed.size() * n_delta,
      [&](std::size_t idx) {
        const std::size_t k = idx / n_delta;
        const std::size_t j = idx % n_delta;
        const double e_plus = chordal_distance(apply_boundary((*lat)[j].g.second(), ends[k].attracting), eta_plus);
        const double e_minus = chordal_distance(apply_boundary(steer_minus[j], ends[k].repelling), eta_minus);
        return std::max(e_plus, e_minus);
      },
      spec.exec);
  const LatticeElement& alpha = (*lat)[mixed[best->index / n_delta]];
  const LatticeElement& delta = (*lat)[best->index % n_delta];
  const FixedPoints& a2 = ends[best->index / n_delta];

  const EllipticFrame ef = elliptic_frame(alpha.g.first());
  const Convergents cv = convergent_denominators(rotation_fraction(alpha.exact.trace(), 1), count);
  const Mobius q = frame_through(a2.attracting, a2.repelling);
  const double log_lambda = std::log(dominant_eigenvalue(alpha.g.second()));

  const Mobius d1 = delta.g.first();
  const ProjMap d2 = ProjMap::from(delta.g.second());
  const ProjMap d2_inv = ProjMap::from(delta.g.second().inverse());
  const ProjMap c2 = ProjMap::from(gamma.g.second());
  const ProjMap c2_inv = ProjMap::from(gamma2_inv);
  const HPoint i{0.0, 1.0};

  WitnessSequence ws;
  ws.kind = "refined-density";
  ws.factors = {{"alpha", alpha.exact}, {"gamma", gamma.exact}, {"delta", delta.exact}};
  ws.target_first = g1;
  ws.eta_plus = eta_plus;
  ws.eta_minus = eta_minus;
  std::vector<double> e1, e2, e3;
  for (std::size_t k = 0; k < cv.denominators.size(); ++k) {
    const std::string& n = cv.denominators[k];
    const double phi = ef.sign * 2.0 * std::numbers::pi * cv.residuals[k];
    const Mobius first = (d1 * ef.p * rotation(phi) * ef.p.inverse() * d1.inverse() * gamma.g.first()).renormalized();
    const double nl = as_double(n) * log_lambda;
    const ProjMap second = d2 * hyperbolic_power(q, nl, false) * d2_inv * c2;
    const ProjMap second_inv = c2_inv * d2 * hyperbolic_power(q, nl, true) * d2_inv;
    ws.elements.push_back({first, second, n});
    e1.push_back(psl_distance(first, g1));
    e2.push_back(disk_distance(second.apply(i), eta_plus));
    e3.push_back(disk_distance(second_inv.apply(i), eta_minus));
    ws.achieved_errors.push_back(std::max({e1.back(), e2.back(), e3.back()}));
  }
  ws.error_tracks = {{"identity", e1}, {"attracting", e2}, {"repelling", e3}};
  return ws;
}

// ---------------------------------------------------------------------------

WitnessSequence pingpong_limit(const GElem& gamma, const Frame& g, int count) {
  if (count < 1) throw DomainError("count must be positive");
  const PairKind pk = classify_pair(gamma);
  if (pk.tag != PairKind::Tag::Mixed || pk.first != IsometryKind::Hyperbolic ||
      pk.second != IsometryKind::Elliptic) {
    throw DomainError("precondition failed: gamma must be mixed with hyperbolic first and elliptic "
                      "second component");
  }
  const FixedPoints h = gamma.provenance() ? fixed_points_exact(*gamma.provenance(), 1) : fixed_points(gamma.first());
  if (same_point(g.end(1, true), h.repelling)) {
    throw DomainError("precondition failed: g1(inf) equals the repelling fixed point h1-");
  }
  if (!same_point(g.end(1, true), h.attracting)) {
    throw DomainError("precondition failed: g1(inf) is not the attracting fixed point h1+");
  }

  const Mobius& g1 = g.g().first();
  const Mobius& g2 = g.g().second();
  double s = 0.0;
  if (!same_point(g.end(1, false), h.repelling)) {
    const BPoint sp = apply_boundary(g1.inverse(), h.repelling);
    if (sp.is_infinity()) throw DomainError("precondition failed: g1(inf) equals the repelling fixed point h1-");
    s = sp.value();
  }
  const double log_lambda = std::log(dominant_eigenvalue(gamma.first()));
  const double col1 = std::hypot(g1.a(), g1.c());

  const EllipticFrame ef = elliptic_frame(gamma.second());
  const std::string x = gamma.provenance() ? rotation_fraction(gamma.provenance()->trace(), 2)
                                           : rotation_fraction(gamma.second().trace());
  const Convergents cv = convergent_denominators(x, count);
  const Mat p = ef.p.entries();
  const Mat p_inv = ef.p.inverse().entries();

  WitnessSequence ws;
  ws.kind = "pingpong";
  ws.target_first = (g1 * Mobius(1.0, s, 0.0, 1.0)).renormalized();
  ws.target_second = g2;
  if (gamma.provenance()) ws.factors = {{"gamma", *gamma.provenance()}};
  std::vector<double> ef1, ef2;
  for (std::size_t k = 0; k < cv.denominators.size(); ++k) {
    const std::string& m = cv.denominators[k];
    const double t = 2.0 * as_double(m) * log_lambda;
    const double shrink = std::exp(-t);
    const Mobius first = (g1 * Mobius(1.0, s * (1.0 - shrink), 0.0, 1.0)).renormalized();
    // e2^{-m} = P R(-phi) P^-1 with phi the residual rotation.
    const double phi = ef.sign * 2.0 * std::numbers::pi * cv.residuals[k];
    const Mobius second = (ef.p * rotation(-phi) * ef.p.inverse() * g2).renormalized();
    ws.elements.push_back({first, ProjMap::from(second), m});
    ws.companion_times.push_back(t);
    ef1.push_back(std::abs(s) * shrink * col1);
    ef2.push_back(frobenius(mul(mul(mul(p, rotation_minus_identity(-phi)), p_inv), g2.entries())));
    ws.achieved_errors.push_back(std::max(ef1.back(), ef2.back()));
  }
  ws.error_tracks = {{"first", ef1}, {"second", ef2}};
  return ws;
}

GElem pingpong_term_direct(const GElem& gamma, const GElem& g, int m) {
  const double t = 2.0 * m * std::log(dominant_eigenvalue(gamma.first()));
  GElem power;
  const GElem gi = gamma.inverse();
  for (int k = 0; k < m; ++k) power = power * gi;
  const GElem r = power * g * GElem(geodesic_flow(t), Mobius());
  return GElem(r.first().renormalized(), r.second().renormalized());
}

// ---------------------------------------------------------------------------

namespace {

// ln P(eta, e^sigma z) for the Poisson kernel P(eta, w) = Im w / |w - eta|^2
// (Im w for eta = inf), without overflow for large |sigma|.
double log_poisson_scaled(const BPoint& eta, const HPoint& z, double sigma) {
  if (eta.is_infinity()) return sigma + std::log(z.y);
  const double e = eta.value();
  if (sigma >= 0.0) {
    const double dx = z.x - e * std::exp(-sigma);
    return std::log(z.y) - sigma - std::log(dx * dx + z.y * z.y);
  }
  const double es = std::exp(sigma);
  const double dx = es * z.x - e;
  return sigma + std::log(z.y) - std::log(dx * dx + es * es * z.y * z.y);
}

bool is_identity(const Mobius& m) { return psl_distance(m, Mobius()) <= 1e-12; }

}  // namespace

HoroballReport verify_horoball_lemma(const GElem& g, const GElem& a, const Horoball& hb, int n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
  int k = 0;
  if (is_identity(a.second()) && !is_identity(a.first())) k = 1;
  if (is_identity(a.first()) && !is_identity(a.second())) k = 2;
  if (k == 0) throw DomainError("a must have exactly one nontrivial factor");
  const Mobius& ak = a.factor(k);
  const double scale = std::max(std::abs(ak.a()), std::abs(ak.d()));
  if (std::abs(ak.b()) > 1e-12 * scale || std::abs(ak.c()) > 1e-12 * scale) {
    throw DomainError("the nontrivial factor of a must be diagonal");
  }
  const double log_mu = std::log(std::abs(ak.a()));
  if (std::abs(log_mu) <= 1e-12) throw DomainError("the nontrivial factor of a must be hyperbolic");
  const int j = 3 - k;

  // beta_xi(g w, z) = beta_{g^-1 xi}(w, g^-1 z) with w = a^n z_k = mu^{2n} z_k.
  const auto& prov = g.provenance();
  const BPoint& xi_k = hb.base.factor(k);
  const BPoint eta = prov ? apply_boundary_exact(prov->inverse(), k, xi_k)
                          : apply_boundary(g.factor(k).inverse(), xi_k);
  const HPoint& zk = hb.reference[static_cast<std::size_t>(k - 1)];
  const HPoint& zj = hb.reference[static_cast<std::size_t>(j - 1)];
  const HPoint pulled = apply(g.factor(k).inverse(), zk);
  const double offset_k = -log_poisson_scaled(eta, pulled, 0.0);
  const double fixed_j = busemann(hb.base.factor(j), apply(g.factor(j), zj), zj);

  HoroballReport rep;
  rep.factor = k;
  for (int n = 1; n <= n_max; ++n) {
    const double level = fixed_j + log_poisson_scaled(eta, zk, 2.0 * n * log_mu) + offset_k;
    rep.levels.push_back(level);
    rep.memberships.push_back(level > hb.level);
    if (rep.memberships.back()) ++rep.memberships_observed;
  }
  const int half = (n_max + 1) / 2;
  bool tail = true;
  for (int n = half; n <= n_max; ++n) tail = tail && rep.memberships[static_cast<std::size_t>(n - 1)];
  rep.persist = tail && rep.levels.back() > rep.levels[static_cast<std::size_t>(half - 1)];
  if (rep.persist) {
    BPoint attracting = log_mu > 0.0 ? BPoint::infinity() : BPoint::finite(0.0);
    if (prov && log_mu < 0.0) attracting = BPoint::exact(QuadExt(QuadElem(prov->field())));
    const BPoint expected =
        prov ? apply_boundary_exact(*prov, k, attracting) : apply_boundary(g.factor(k), attracting);
    rep.coordinate_check = same_point(xi_k, expected);
  }
  return rep;
}

}  // namespace weyl
