#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "weyl/classifier.hpp"
#include "weyl/errors.hpp"
#include "weyl/flowsim.hpp"
#include "weyl/serialize.hpp"
#include "weyl/witness.hpp"

namespace weyl {

namespace {

struct Config {
  std::int64_t d = 2;
  std::optional<std::int64_t> height;
  double tol = kClassifyTol;
  std::int64_t steps = 1000;
  double dt = 0.05;
  double grid = 0.25;
  std::uint64_t seed = 1;
  std::string output = "-";
  bool require_verdict = false;
  std::int64_t cusp_height = 1;
};

struct FrameArgs {
  std::string kind = "identity";
  std::string matrix;
  std::string real;
  std::string other;
  int factor = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_real(const std::string& tok) {
  const std::string t = trim(tok);
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + tok + "'");
  }
  if (pos != t.size() || !std::isfinite(x)) throw UsageError("not a number: '" + tok + "'");
  return x;
}

std::int64_t parse_coefficient(const std::string& tok) {
  const std::string t = trim(tok);
  const double x = parse_real(t);
  if (x != std::floor(x) || t.find_first_of(".eE") != std::string::npos) {
    throw DomainError("coefficient '" + t + "' is not integral");
  }
  if (std::abs(x) > 1e15) throw UsageError("coefficient '" + t + "' is too large");
  return std::stoll(t);
}

// "u,v;u,v;u,v;u,v" in the integral basis.
QuadMatrix parse_matrix(const std::string& s, const QuadField& field) {
  const auto rows = split(s, ';');
  if (rows.size() != 4) throw UsageError("matrix must have four entries 'u,v;u,v;u,v;u,v'");
  std::array<std::pair<std::int64_t, std::int64_t>, 4> c;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto uv = split(rows[k], ',');
    if (uv.size() != 2) throw UsageError("matrix entry '" + rows[k] + "' must be 'u,v'");
    c[k] = {parse_coefficient(uv[0]), parse_coefficient(uv[1])};
  }
  return QuadMatrix::from_basis(field, c);
}

// "a,b,c,d".
Mobius parse_mobius(const std::string& s) {
  const auto t = split(s, ',');
  if (t.size() != 4) throw UsageError("real matrix must be 'a,b,c,d'");
  return Mobius(parse_real(t[0]), parse_real(t[1]), parse_real(t[2]), parse_real(t[3]));
}

BPoint parse_bpoint(const std::string& s) {
  const std::string t = trim(s);
  if (t == "inf" || t == "infinity") return BPoint::infinity();
  return BPoint::finite(parse_real(t));
}

std::array<double, 2> parse_pair(const std::string& s) {
  const auto t = split(s, ',');
  if (t.size() != 2) throw UsageError("expected 'x,y', got '" + s + "'");
  return {parse_real(t[0]), parse_real(t[1])};
}

Mobius random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.1) return Mobius(a, b, c, d);
  }
}

Frame build_frame(const FrameArgs& f, const Config& cfg, const QuadField& field) {
  if (f.factor != 1 && f.factor != 2) throw UsageError("--factor must be 1 or 2");
  auto need_matrix = [&] {
    if (f.matrix.empty()) throw UsageError("--frame " + f.kind + " needs --matrix");
    return parse_matrix(f.matrix, field);
  };
  if (f.kind == "identity") return Frame(hilbert_embed(QuadMatrix::identity(field)));
  if (f.kind == "random") {
    std::mt19937_64 rng(cfg.seed);
    const Mobius m1 = random_mobius(rng);
    return Frame(GElem(m1, random_mobius(rng)));
  }
  if (f.kind == "eigen") return Frame::eigenframe(need_matrix());
  if (f.kind == "attracting") {
    return Frame::attracting(need_matrix(), f.factor, f.other.empty() ? Mobius() : parse_mobius(f.other));
  }
  if (f.kind == "exact") return Frame(hilbert_embed(need_matrix()));
  if (f.kind == "real") {
    const auto parts = split(f.real, ';');
    if (parts.size() != 2) throw UsageError("--real must be 'a,b,c,d;a,b,c,d'");
    return Frame(GElem(parse_mobius(parts[0]), parse_mobius(parts[1])));
  }
  throw UsageError("unknown frame kind '" + f.kind + "'");
}

void add_frame_options(CLI::App* cmd, FrameArgs& f) {
  cmd->add_option("--frame", f.kind, "identity, random, eigen, attracting, exact or real")
      ->check(CLI::IsMember({"identity", "random", "eigen", "attracting", "exact", "real"}));
  cmd->add_option("--matrix", f.matrix, "Exact matrix 'u,v;u,v;u,v;u,v' in the integral basis");
  cmd->add_option("--real", f.real, "Two real matrices 'a,b,c,d;a,b,c,d'");
  cmd->add_option("--other", f.other, "Other factor 'a,b,c,d' for --frame attracting");
  cmd->add_option("--factor", f.factor, "Factor for --frame attracting");
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

const char* kind_name(PairKind::Tag t) { return to_string(t); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl chamber flow toolkit for Hilbert modular lattices", "weylflow"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--d", cfg.d, "Square-free d of Q(sqrt d)");
  app.add_option("--height", cfg.height, "Lattice height bound");
  app.add_option("--tol", cfg.tol, "Classification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--steps", cfg.steps, "Flow steps")->check(CLI::PositiveNumber);
  app.add_option("--dt", cfg.dt, "Flow step size")->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid, "Grid cell size")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for random frames");
  app.add_option("--output", cfg.output, "Output path, '-' for stdout");
  app.add_flag("--require-verdict", cfg.require_verdict, "Exit 4 on an Unknown verdict");
  app.add_option("--cusp-height", cfg.cusp_height, "Height for default cusp representatives")
      ->check(CLI::PositiveNumber);

  auto* field_info = app.add_subcommand("field-info", "Fundamental unit and integral basis");

  auto* classify_element = app.add_subcommand("classify-element", "Kind of an exact lattice element");
  std::string element_matrix;
  classify_element->add_option("--matrix", element_matrix, "'u,v;u,v;u,v;u,v'")->required();

  auto* orbit_cmd = app.add_subcommand("classify-orbit", "Orbit verdict for a frame");
  FrameArgs orbit_frame;
  bool semi = false;
  add_frame_options(orbit_cmd, orbit_frame);
  orbit_cmd->add_flag("--semi", semi, "Classify the A+ semi-orbit instead of the A-orbit");

  auto* simulate = app.add_subcommand("simulate", "Run the Weyl chamber flow");
  FrameArgs sim_frame;
  std::string direction = "1,1";
  std::string mode = "A";
  std::string csv_path;
  std::vector<std::int64_t> checkpoints;
  add_frame_options(simulate, sim_frame);
  simulate->add_option("--direction", direction, "Direction 'x,y'");
  simulate->add_option("--mode", mode, "A or A+")->check(CLI::IsMember({"A", "A+"}));
  simulate->add_option("--csv", csv_path, "Write one CSV row per step to this path");
  simulate->add_option("--checkpoints", checkpoints, "Steps at which visited cells are recorded")
      ->delimiter(',');

  auto* witness = app.add_subcommand("witness", "Explicit limit sequences");
  witness->require_subcommand(1);
  auto* refined = witness->add_subcommand("refined-density", "Refined density sequence");
  std::string g1_text, eta_plus_text = "inf", eta_minus_text = "0";
  int refined_count = 8;
  refined->add_option("--g1", g1_text, "Target first component 'a,b,c,d' (default identity)");
  refined->add_option("--eta-plus", eta_plus_text, "Attracting target, number or inf");
  refined->add_option("--eta-minus", eta_minus_text, "Repelling target, number or inf");
  refined->add_option("--count", refined_count, "Number of terms")->check(CLI::PositiveNumber);

  auto* pingpong = witness->add_subcommand("pingpong", "Ping-pong limit for a mixed element");
  std::string pp_matrix = "2,1;1,0;1,1;1,0";
  std::string pp_other;
  int pp_count = 50;
  pingpong->add_option("--matrix", pp_matrix, "Mixed element 'u,v;u,v;u,v;u,v'");
  pingpong->add_option("--other", pp_other, "Second frame factor 'a,b,c,d' (default identity)");
  pingpong->add_option("--count", pp_count, "Number of terms")->check(CLI::PositiveNumber);

  auto* horoball = witness->add_subcommand("horoball-lemma", "Check the horoball basepoint lemma");
  std::string hb_g, hb_base = "inf,inf";
  int hb_factor = 1;
  double hb_time = 1.0, hb_level = 0.0;
  int hb_n_max = 200;
  horoball->add_option("--g", hb_g, "Exact element 'u,v;u,v;u,v;u,v' (default identity)");
  horoball->add_option("--a-factor", hb_factor, "Nontrivial factor of a (1 or 2)");
  horoball->add_option("--a-time", hb_time, "a = diag(e^{t/2}, e^{-t/2}) in that factor");
  horoball->add_option("--base", hb_base, "Horoball base 'xi1,xi2', entries number or inf");
  horoball->add_option("--level", hb_level, "Horoball level T");
  horoball->add_option("--n-max", hb_n_max, "Largest power checked")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const QuadField field(cfg.d);
    auto spec_at = [&](std::int64_t def) { return LatticeSpec(field, cfg.height.value_or(def)); };
    Output sink(cfg.output, out);
    std::ostream& os = sink.stream();

    if (field_info->parsed()) {
      const QuadElem u = fundamental_unit(field);
      const bool half = field.half_integral_basis();
      const std::string root = "√" + std::to_string(cfg.d);
      Json j{{"d", cfg.d},
             {"discriminant", half ? cfg.d : 4 * cfg.d},
             {"integral_basis", Json::array({"1", half ? "(1+" + root + ")/2" : root})},
             {"unit", u.to_string()},
             {"norm", u.norm().get_num().get_si()}};
      os << emit(j);
      return 0;
    }

    if (classify_element->parsed()) {
      const QuadMatrix m = parse_matrix(element_matrix, field);
      const GElem g = hilbert_embed(m);
      const PairKind pk = classify_pair(g, cfg.tol);
      Json j{{"matrix", to_json(m)},
             {"kind", kind_name(pk.tag)},
             {"first", to_string(pk.first)},
             {"second", to_string(pk.second)},
             {"hyper_regular", pk.tag == PairKind::Tag::Hyperbolic ? Json(pk.hyper_regular) : Json(nullptr)},
             {"hyperbolic_factor", pk.hyperbolic_factor}};
      os << emit(j);
      return 0;
    }

    if (orbit_cmd->parsed()) {
      const Frame f = build_frame(orbit_frame, cfg, field);
      const LatticeSpec spec = spec_at(3);
      const OrbitVerdict v = semi ? classify_semiorbit(f, spec) : classify_orbit(f, spec);
      os << emit(to_json(v));
      if (cfg.require_verdict && v.verdict == Verdict::Unknown) {
        err << "no certificate found at height " << spec.height_bound << "\n";
        return 4;
      }
      return 0;
    }

    if (simulate->parsed()) {
      const Frame f = build_frame(sim_frame, cfg, field);
      RunOptions opts;
      opts.grid.cell = cfg.grid;
      opts.mode = mode == "A+" ? FlowMode::APlus : FlowMode::A;
      opts.cusp_height = cfg.cusp_height;
      opts.checkpoints = checkpoints;
      std::ofstream csv;
      if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw UsageError("cannot open CSV file '" + csv_path + "'");
        opts.csv = &csv;
      }
      const TrajectoryStats st = run(f.g(), spec_at(1), parse_pair(direction), cfg.steps, cfg.dt, opts);
      os << emit(summary_json(st));
      return 0;
    }

    if (refined->parsed()) {
      const BPoint ep = parse_bpoint(eta_plus_text);
      const BPoint em = parse_bpoint(eta_minus_text);
      if (same_point(ep, em)) throw UsageError("--eta-plus and --eta-minus must differ");
      const Mobius g1 = g1_text.empty() ? Mobius() : parse_mobius(g1_text);
      os << emit(to_json(refined_density_sequence(g1, ep, em, spec_at(4), refined_count)));
      return 0;
    }

    if (pingpong->parsed()) {
      const QuadMatrix m = parse_matrix(pp_matrix, field);
      const Frame f = Frame::attracting(m, 1, pp_other.empty() ? Mobius() : parse_mobius(pp_other));
      os << emit(to_json(pingpong_limit(hilbert_embed(m), f, pp_count)));
      return 0;
    }

    if (horoball->parsed()) {
      if (hb_factor != 1 && hb_factor != 2) throw UsageError("--a-factor must be 1 or 2");
      const GElem g = hilbert_embed(hb_g.empty() ? QuadMatrix::identity(field) : parse_matrix(hb_g, field));
      const GElem a = hb_factor == 1 ? GElem(geodesic_flow(hb_time), Mobius()) : GElem(Mobius(), geodesic_flow(hb_time));
      const auto base = split(hb_base, ',');
      if (base.size() != 2) throw UsageError("--base must be 'xi1,xi2'");
      const Horoball hb{{parse_bpoint(base[0]), parse_bpoint(base[1])}, hb_level};
      os << emit(to_json(verify_horoball_lemma(g, a, hb, hb_n_max)));
      return 0;
    }
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return 3;
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace weyl
