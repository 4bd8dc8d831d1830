#include "weyl/serialize.hpp"

#include <cmath>
#include <limits>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

// JSON has no infinities; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double real_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<double> reals_from(const Json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(real_from(x));
  return v;
}

std::array<double, 4> four(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw DomainError("expected an array of four numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

}  // namespace

Json to_json(const QuadMatrix& m) {
  const IntMatrix c = to_int_matrix(m);
  Json entries = Json::array();
  for (const IntElem& e : c.e) entries.push_back(Json::array({e.u, e.v}));
  return Json{{"d", m.field().d()}, {"entries", entries}};
}

QuadMatrix quad_matrix_from_json(const Json& j) {
  const QuadField f(j.at("d").get<std::int64_t>());
  const Json& e = j.at("entries");
  if (!e.is_array() || e.size() != 4) throw DomainError("lattice element needs four entries");
  std::array<std::pair<std::int64_t, std::int64_t>, 4> c;
  for (std::size_t k = 0; k < 4; ++k) c[k] = {e[k].at(0).get<std::int64_t>(), e[k].at(1).get<std::int64_t>()};
  return QuadMatrix::from_basis(f, {c[0], c[1], c[2], c[3]});
}

Json to_json(const Mobius& m) {
  Json a = Json::array();
  for (double x : m.entries()) a.push_back(x);
  return a;
}

Mobius mobius_from_json(const Json& j) { return Mobius::unchecked(four(j)); }

Json to_json(const ProjMap& p) {
  Json a = Json::array();
  for (double x : p.m) a.push_back(x);
  return Json{{"m", a}, {"log_scale", number(p.log_scale)}};
}

ProjMap projmap_from_json(const Json& j) { return {four(j.at("m")), real_from(j.at("log_scale"))}; }

Json to_json(const GElem& g) {
  if (g.provenance()) return to_json(*g.provenance());
  return Json{{"first", to_json(g.first())}, {"second", to_json(g.second())}};
}

GElem gelem_from_json(const Json& j) {
  if (j.contains("entries")) return hilbert_embed(quad_matrix_from_json(j));
  return GElem(mobius_from_json(j.at("first")), mobius_from_json(j.at("second")));
}

Json to_json(const BPoint& p) {
  if (p.is_infinity()) return "inf";
  return p.value();
}

BPoint bpoint_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw DomainError("boundary point must be a number or \"inf\"");
    return BPoint::infinity();
  }
  return BPoint::finite(j.get<double>());
}

Json to_json(const FBoundaryPoint& p) { return Json{{"xi1", to_json(p.xi1)}, {"xi2", to_json(p.xi2)}}; }

FBoundaryPoint fboundary_from_json(const Json& j) {
  return {bpoint_from_json(j.at("xi1")), bpoint_from_json(j.at("xi2"))};
}

Json to_json(const OrbitVerdict& v) {
  Json corners = Json::array();
  for (const auto& c : v.corner_points) corners.push_back(to_json(c));
  return Json{{"verdict", to_string(v.verdict)},
              {"rule", v.rule},
              {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
              {"height_used", v.height_used},
              {"corner_points", corners},
              {"weyl_translate", v.weyl_translate}};
}

OrbitVerdict verdict_from_json(const Json& j) {
  OrbitVerdict v;
  const auto verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (!verdict) throw DomainError("unknown verdict " + j.at("verdict").dump());
  v.verdict = *verdict;
  v.rule = j.at("rule").get<std::string>();
  if (!j.at("witness").is_null()) v.witness = gelem_from_json(j.at("witness"));
  v.height_used = j.at("height_used").get<std::int64_t>();
  const Json& c = j.at("corner_points");
  if (c.size() != 4) throw DomainError("corner_points needs four entries");
  for (std::size_t k = 0; k < 4; ++k) v.corner_points[k] = fboundary_from_json(c[k]);
  v.weyl_translate = j.at("weyl_translate").get<std::string>();
  return v;
}

Json to_json(const WitnessSequence& w) {
  Json elements = Json::array();
  for (const auto& e : w.elements) {
    elements.push_back(Json{{"exponent", e.exponent}, {"first", to_json(e.first)}, {"second", to_json(e.second)}});
  }
  Json tracks = Json::object();
  for (const auto& [name, v] : w.error_tracks) tracks[name] = numbers(v);
  Json factors = Json::object();
  for (const auto& [name, m] : w.factors) factors[name] = to_json(m);
  Json target = Json::object();
  if (w.target_first) target["first"] = to_json(*w.target_first);
  if (w.target_second) target["second"] = to_json(*w.target_second);
  if (w.eta_plus) target["eta_plus"] = to_json(*w.eta_plus);
  if (w.eta_minus) target["eta_minus"] = to_json(*w.eta_minus);
  return Json{{"kind", w.kind},
              {"target", target},
              {"factors", factors},
              {"elements", elements},
              {"companion_times", numbers(w.companion_times)},
              {"achieved_errors", numbers(w.achieved_errors)},
              {"error_tracks", tracks}};
}

WitnessSequence witness_from_json(const Json& j) {
  WitnessSequence w;
  w.kind = j.at("kind").get<std::string>();
  const Json& t = j.at("target");
  if (t.contains("first")) w.target_first = mobius_from_json(t["first"]);
  if (t.contains("second")) w.target_second = mobius_from_json(t["second"]);
  if (t.contains("eta_plus")) w.eta_plus = bpoint_from_json(t["eta_plus"]);
  if (t.contains("eta_minus")) w.eta_minus = bpoint_from_json(t["eta_minus"]);
  for (const auto& [name, m] : j.at("factors").items()) w.factors.emplace_back(name, quad_matrix_from_json(m));
  for (const auto& e : j.at("elements")) {
    w.elements.push_back({mobius_from_json(e.at("first")), projmap_from_json(e.at("second")),
                          e.at("exponent").get<std::string>()});
  }
  w.companion_times = reals_from(j.at("companion_times"));
  w.achieved_errors = reals_from(j.at("achieved_errors"));
  for (const auto& [name, v] : j.at("error_tracks").items()) w.error_tracks.emplace_back(name, reals_from(v));
  return w;
}

Json summary_json(const TrajectoryStats& s) {
  Json checkpoints = Json::array();
  for (const auto& [step, cells] : s.checkpoint_cells) {
    checkpoints.push_back(Json{{"step", step}, {"visited_cells", cells}});
  }
  return Json{{"visited_cells", s.visited_cells.size()},
              {"max_excursion", number(s.max_excursion)},
              {"min_return_distance", number(s.min_return_distance)},
              {"checkpoints", checkpoints}};
}

Json to_json(const HoroballReport& r) {
  const char* check = !r.coordinate_check ? "n/a" : *r.coordinate_check ? "pass" : "fail";
  return Json{{"factor", r.factor},
              {"memberships_observed", r.memberships_observed},
              {"n_max", r.memberships.size()},
              {"persist", r.persist},
              {"coordinate_check", check}};
}

std::string emit(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace weyl
