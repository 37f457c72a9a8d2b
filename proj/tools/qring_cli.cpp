// qring: collective-emission spectra, sweeps, scattering, far-field maps and
// two-photon correlations for planar ring oligomers of two-level emitters.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qring/drive.hpp"
#include "qring/farfield.hpp"
#include "qring/hybrid.hpp"
#include "qring/io.hpp"
#include "qring/sweep.hpp"

using nlohmann::json;
using namespace qring;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;
constexpr int kPartial = 4;

struct GeometryOpts {
  std::string kind = "ring";
  int n_d = 6;
  double a = 0.16;
  double b_over_a = 2.2;
  double twist = 0.0;
};

struct OutputOpts {
  std::string format = "csv";
  std::string path;
};

json config_file_values;  // loaded from --config when it names a file

void load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("config: cannot open '" + path + "'");
  config_file_values = json::parse(in);
  if (!config_file_values.is_object()) {
    throw std::domain_error("config: top-level JSON object expected");
  }
}

// flags override the config file; unset flags pick up config values
void merge_config(CLI::App* cmd) {
  if (config_file_values.is_null()) return;
  for (auto& [key, value] : config_file_values.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;
    opt->clear();
    if (value.is_boolean()) {
      if (value.get<bool>()) opt->add_result("true");
    } else if (value.is_string()) {
      opt->add_result(value.get<std::string>());
    } else {
      opt->add_result(value.dump());
    }
    opt->run_callback();
  }
}

void add_geometry_flags(CLI::App* cmd, GeometryOpts& g, bool allow_single) {
  auto valid = allow_single
                   ? CLI::IsMember({"ring", "ring-center", "double-ring", "single"})
                   : CLI::IsMember({"ring", "ring-center", "double-ring"});
  cmd->add_option("--geometry", g.kind, "oligomer type")->check(valid);
  cmd->add_option("--nd", g.n_d, "emitters per ring");
  cmd->add_option("--a", g.a, "nearest-neighbor spacing in lambda0");
  cmd->add_option("--b-over-a", g.b_over_a, "outer/inner spacing ratio (double-ring)");
  cmd->add_option("--twist", g.twist, "outer-ring angular offset in rad");
}

void add_output_flags(CLI::App* cmd, OutputOpts& o) {
  cmd->add_option("--out", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", o.path, "output file (default stdout)");
}

EmitterArray make_geometry(const GeometryOpts& g) {
  if (g.kind == "ring") return build_ring(g.n_d, g.a);
  if (g.kind == "ring-center") return build_ring_plus_center(g.n_d, g.a);
  if (g.kind == "double-ring") return build_double_ring(g.n_d, g.a, g.b_over_a, g.twist);
  if (g.kind == "single") return from_points({Eigen::Vector3d::Zero()});
  throw std::domain_error("unknown geometry '" + g.kind + "'");
}

json geometry_config(const GeometryOpts& g) {
  json j;
  j["geometry"] = g.kind;
  if (g.kind != "single") {
    j["nd"] = g.n_d;
    j["a"] = g.a;
    if (g.kind == "double-ring") {
      j["b_over_a"] = g.b_over_a;
      j["twist"] = g.twist;
    }
  }
  return j;
}

void emit(const OutputOpts& o, const std::string& text) {
  if (o.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + o.path + "'");
  out << text;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const GeometryOpts& gopt, int excitations, const OutputOpts& out) {
  const EmitterArray g = make_geometry(gopt);
  json cfg = geometry_config(gopt);
  cfg["command"] = "spectrum";
  cfg["excitations"] = excitations;
  if (excitations == 1) {
    const auto states = solve_single(g);
    emit(out, out.format == "json" ? states_to_json(states, cfg.dump())
                                   : states_to_csv(states, cfg.dump()));
  } else {
    const auto states = solve_double(g);
    emit(out, out.format == "json" ? states_to_json(states, cfg.dump())
                                   : states_to_csv(states, cfg.dump()));
  }
  return kOk;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const GeometryOpts& gopt, const std::string& target, double a_min, double a_max,
              int a_steps, int m, const OutputOpts& out) {
  SweepSpec spec;
  if (gopt.kind == "ring") spec.geometry = OligomerTag::Ring;
  else if (gopt.kind == "ring-center") spec.geometry = OligomerTag::RingPlusCenter;
  else if (gopt.kind == "double-ring") spec.geometry = OligomerTag::DoubleRing;
  else throw std::domain_error("sweep: geometry must be ring, ring-center or double-ring");
  spec.n_d = gopt.n_d;
  spec.ratio = gopt.b_over_a;
  spec.twist = gopt.twist;
  spec.a_min = a_min;
  spec.a_max = a_max;
  spec.a_count = a_steps;
  spec.momentum = m;
  if (target == "single-spectrum") spec.target = SweepTarget::SingleSpectrum;
  else if (target == "double-spectrum") spec.target = SweepTarget::DoubleSpectrum;
  else if (target == "two-mode") spec.target = SweepTarget::TwoMode;
  else if (target == "b1-lifetime") spec.target = SweepTarget::B1Lifetime;
  else throw std::domain_error("sweep: unknown target '" + target + "'");

  json cfg = geometry_config(gopt);
  cfg["command"] = "sweep";
  cfg["target"] = target;
  cfg["a_min"] = a_min;
  cfg["a_max"] = a_max;
  cfg["a_steps"] = a_steps;
  if (spec.target == SweepTarget::TwoMode) cfg["m"] = m;

  const Table t = run_sweep(spec);
  emit(out, out.format == "json" ? table_to_json(t, cfg.dump()) : table_to_csv(t, cfg.dump()));
  if (t.failed_rows() == static_cast<int>(t.rows.size())) return kNumerical;
  if (t.failed_rows() > 0) return kPartial;
  return kOk;
}

// --------------------------------------------------------------------- scs

int cmd_scs(const GeometryOpts& gopt, const BesselBeam& beam, double det_min, double det_max,
            int det_steps, int n_theta, int n_phi, const OutputOpts& out) {
  const EmitterArray g = make_geometry(gopt);
  if (det_steps < 1) throw std::domain_error("scs: need at least one detuning");
  std::vector<double> dets;
  for (int i = 0; i < det_steps; ++i) {
    dets.push_back(det_steps == 1 ? det_min
                                  : det_min + (det_max - det_min) * i / (det_steps - 1));
  }
  json cfg = geometry_config(gopt);
  cfg["command"] = "scs";
  cfg["beam_ell"] = beam.oam_ell;
  cfg["beam_spin"] = beam.spin;
  cfg["cone_deg"] = beam.cone_half_angle * 180.0 / std::numbers::pi;
  cfg["detuning_min"] = det_min;
  cfg["detuning_max"] = det_max;
  cfg["detuning_steps"] = det_steps;
  cfg["theta_nodes"] = n_theta;
  cfg["phi_nodes"] = n_phi;

  const auto pts = scattering_cross_section_sweep(g, beam, dets, n_theta, n_phi);
  emit(out, out.format == "json" ? scs_to_json(pts, cfg.dump()) : scs_to_csv(pts, cfg.dump()));
  int failed = 0;
  for (const auto& p : pts) failed += p.ok ? 0 : 1;
  if (failed == static_cast<int>(pts.size())) return kNumerical;
  if (failed > 0) return kPartial;
  return kOk;
}

// ----------------------------------------------------------------- pattern

int cmd_pattern(const GeometryOpts& gopt, std::optional<int> m, const std::string& branch,
                int state_index, int n_theta, int n_phi, const OutputOpts& out) {
  const EmitterArray g = make_geometry(gopt);
  const auto states = solve_single(g);
  const SingleExcState* pick = nullptr;
  if (state_index >= 0) {
    if (state_index >= static_cast<int>(states.size())) {
      throw std::domain_error("pattern: state index out of range");
    }
    pick = &states[state_index];
  } else if (m.has_value()) {
    for (const auto& s : states) {
      if (s.momentum != *m) continue;
      if (!branch.empty() && (!s.hybrid_tag || *s.hybrid_tag != branch[0])) continue;
      if (pick == nullptr || s.decay_rate() < pick->decay_rate()) pick = &s;
    }
    if (pick == nullptr) throw std::domain_error("pattern: no state with the requested labels");
  } else {
    for (const auto& s : states) {
      if (pick == nullptr || s.decay_rate() < pick->decay_rate()) pick = &s;
    }
  }

  json cfg = geometry_config(gopt);
  cfg["command"] = "pattern";
  if (m) cfg["m"] = *m;
  if (!branch.empty()) cfg["s"] = branch;
  if (state_index >= 0) cfg["state_index"] = state_index;
  cfg["theta_nodes"] = n_theta;
  cfg["phi_nodes"] = n_phi;
  cfg["selected_energy"] = {pick->energy.real(), pick->energy.imag()};

  const FarFieldMap map =
      radiation_pattern(pick->amplitudes, g, SphericalGrid::gauss_legendre(n_theta, n_phi));
  emit(out, out.format == "json" ? map_to_json(map, cfg.dump()) : map_to_csv(map, cfg.dump()));
  return kOk;
}

// ---------------------------------------------------------------------- g2

int cmd_g2(const GeometryOpts& gopt, const std::string& detector_config, const std::string& b1,
           int state_index, int n_theta, int n_phi, bool self_test, const OutputOpts& out) {
  const EmitterArray g = make_geometry(gopt);
  if (g.size() < 2) throw std::domain_error("g2: need at least two emitters");

  DoubleExcState state;
  json cfg = geometry_config(gopt);
  cfg["command"] = "g2";
  if (state_index >= 0) {
    const auto doubles = solve_double(g);
    if (state_index >= static_cast<int>(doubles.size())) {
      throw std::domain_error("g2: state index out of range");
    }
    state = doubles[state_index];
    cfg["state_index"] = state_index;
  } else if (gopt.kind == "double-ring" && gopt.n_d == 6 && gopt.twist == 0.0) {
    const ProductStateSet set = b1_product_states(gopt.a, gopt.b_over_a);
    if (b1.size() != 2 || (b1[0] != 'm' && b1[0] != 'p') || (b1[1] != 'm' && b1[1] != 'p')) {
      throw std::domain_error("g2: --b1 takes mm, mp, pm or pp");
    }
    state = set.states[set.index_of(b1[0] == 'm' ? '-' : '+', b1[1] == 'm' ? '-' : '+')];
    cfg["b1"] = b1;
  } else {
    // default: most subradiant pair eigenstate
    const auto doubles = solve_double(g);
    int best = 0;
    for (std::size_t i = 1; i < doubles.size(); ++i) {
      if (doubles[i].decay_rate() < doubles[best].decay_rate()) best = static_cast<int>(i);
    }
    state = doubles[best];
    cfg["state_index"] = best;
  }

  DetectorConfig det = DetectorConfig::Coincident;
  if (detector_config == "polar-fixed" || detector_config == "1") {
    det = DetectorConfig::PolarFixed;
  } else if (detector_config == "coincident" || detector_config == "2") {
    det = DetectorConfig::Coincident;
  } else {
    throw std::domain_error("g2: detector configuration must be polar-fixed or coincident");
  }
  cfg["detector_config"] = detector_config;
  cfg["theta_nodes"] = n_theta;
  cfg["phi_nodes"] = n_phi;

  const FarFieldMap map =
      g2_map(state, g, det, SphericalGrid::gauss_legendre(n_theta, n_phi));
  emit(out, out.format == "json" ? map_to_json(map, cfg.dump()) : map_to_csv(map, cfg.dump()));

  if (self_test) {
    // exchange symmetry plus, for hexagonal oligomers, the pi/3 azimuthal period
    bool ok = true;
    const SphericalGrid grid = SphericalGrid::gauss_legendre(24, 60);
    for (int i = 0; i < 8; ++i) {
      const Eigen::Vector3d n1 = grid.direction(3 * i % 24, (7 * i) % 60);
      const Eigen::Vector3d n2 = grid.direction((5 * i + 2) % 24, (11 * i + 3) % 60);
      const double g12 = g2_value(state, g, n1, n2);
      const double g21 = g2_value(state, g, n2, n1);
      if (std::abs(g12 - g21) > 1e-10 * std::max(1.0, g12)) ok = false;
    }
    if (gopt.n_d == 6 && gopt.kind != "single") {
      const FarFieldMap check = g2_map(state, g, det, grid);
      for (int i = 0; i < 24 && ok; ++i) {
        for (int j = 0; j < 60; ++j) {
          if (check.mask(i, j) || check.mask(i, (j + 10) % 60)) continue;
          if (std::abs(check.values(i, j) - check.values(i, (j + 10) % 60)) >
              1e-8 * std::max(1.0, check.values(i, j))) {
            ok = false;
            break;
          }
        }
      }
    }
    std::cerr << "self-test: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) return kNumerical;
  }
  return kOk;
}

// ---------------------------------------------------------------- optimize

int cmd_optimize(double a_min, double a_max, int a_steps, double b_min, double b_max, int b_steps,
                 bool refine, const OutputOpts& out) {
  const OptimizationResult res =
      optimize_b1_lifetime(a_min, a_max, a_steps, b_min, b_max, b_steps, refine);
  json cfg;
  cfg["command"] = "optimize";
  cfg["a_min"] = a_min;
  cfg["a_max"] = a_max;
  cfg["a_steps"] = a_steps;
  cfg["b_min"] = b_min;
  cfg["b_max"] = b_max;
  cfg["b_steps"] = b_steps;
  cfg["refine"] = refine;

  if (out.format == "json") {
    json j;
    j["schema"] = 1;
    j["config"] = cfg;
    j["best"] = {{"a", res.best_a},
                 {"b_over_a", res.best_ratio},
                 {"enhancement", res.best_enhancement}};
    j["evaluations"] = res.evaluations;
    j["surface_columns"] = res.surface.columns;
    j["surface"] = json::array();
    for (const auto& row : res.surface.rows) {
      json r = json::array();
      for (double v : row) r.push_back(std::isnan(v) ? json(nullptr) : json(v));
      j["surface"].push_back(r);
    }
    emit(out, j.dump());
  } else {
    std::string text = table_to_csv(res.surface, cfg.dump());
    text += "# best_a=" + format_number(res.best_a) +
            " best_b_over_a=" + format_number(res.best_ratio) +
            " best_enhancement=" + format_number(res.best_enhancement) + "\n";
    emit(out, text);
  }
  return res.surface.failed_rows() > 0 ? kPartial : kOk;
}

// ------------------------------------------------------------------- count

int cmd_count(int n_d, int n_r, const OutputOpts& out) {
  Table t;
  t.columns = {"m", "n_states"};
  int even = -1, odd = -1;
  for (int m : brillouin_zone(n_d)) {
    const int c = count_double_states(n_d, n_r, m);
    t.rows.push_back({double(m), double(c)});
    t.row_error.emplace_back();
    (std::abs(m) % 2 == 0 ? even : odd) = c;
  }
  json cfg;
  cfg["command"] = "count";
  cfg["nd"] = n_d;
  cfg["nr"] = n_r;
  if (out.format == "json") {
    json j;
    j["schema"] = 1;
    j["config"] = cfg;
    j["counts"] = json::array();
    for (const auto& row : t.rows) {
      j["counts"].push_back({{"m", int(row[0])}, {"n_states", int(row[1])}});
    }
    j["even_m"] = even;
    j["odd_m"] = odd;
    emit(out, j.dump());
  } else {
    std::string text = table_to_csv(t, cfg.dump());
    text += "# even_m=" + std::to_string(even);
    if (odd >= 0) text += " odd_m=" + std::to_string(odd);
    text += "\n";
    emit(out, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collective emission in planar ring oligomers of two-level emitters"};
  app.require_subcommand(1);

  GeometryOpts gopt;
  OutputOpts out;
  std::string config_path;

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "collective eigenstates of an oligomer");
  int excitations = 1;
  add_geometry_flags(spectrum, gopt, true);
  add_output_flags(spectrum, out);
  spectrum->add_option("--excitations", excitations)->check(CLI::IsMember({1, 2}));
  spectrum->add_option("--config", config_path, "JSON config file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "geometry sweeps with per-point observables");
  std::string target = "single-spectrum";
  double a_min = 0.05, a_max = 0.25;
  int a_steps = 41, sector_m = 0;
  add_geometry_flags(sweep, gopt, false);
  add_output_flags(sweep, out);
  sweep->add_option("--target", target)
      ->check(CLI::IsMember({"single-spectrum", "double-spectrum", "two-mode", "b1-lifetime"}));
  sweep->add_option("--a-min", a_min);
  sweep->add_option("--a-max", a_max);
  sweep->add_option("--a-steps", a_steps);
  sweep->add_option("--m", sector_m, "momentum sector for two-mode sweeps");
  sweep->add_option("--config", config_path, "JSON config file");

  // scs
  auto* scs = app.add_subcommand("scs", "normalized scattering cross-section spectrum");
  BesselBeam beam;
  double cone_deg = 60.0, det_min = -4.0, det_max = 5.0;
  int det_steps = 451, theta_nodes = 64, phi_nodes = 128;
  add_geometry_flags(scs, gopt, true);
  add_output_flags(scs, out);
  scs->add_option("--beam-ell", beam.oam_ell);
  scs->add_option("--beam-spin", beam.spin)->check(CLI::IsMember({-1, 0, 1}));
  scs->add_option("--cone-deg", cone_deg);
  scs->add_option("--detuning-min", det_min);
  scs->add_option("--detuning-max", det_max);
  scs->add_option("--detuning-steps", det_steps);
  scs->add_option("--theta-nodes", theta_nodes);
  scs->add_option("--phi-nodes", phi_nodes);
  scs->add_option("--config", config_path, "JSON config file");

  // pattern
  auto* pattern = app.add_subcommand("pattern", "far-field radiation pattern of an eigenstate");
  int pattern_m = std::numeric_limits<int>::min();
  std::string branch;
  int state_index = -1;
  add_geometry_flags(pattern, gopt, true);
  add_output_flags(pattern, out);
  pattern->add_option("--m", pattern_m, "momentum label of the state");
  pattern->add_option("--s", branch, "hybrid branch, + or -")
      ->check(CLI::IsMember({"+", "-"}));
  pattern->add_option("--state-index", state_index, "pick by sorted index instead");
  pattern->add_option("--theta-nodes", theta_nodes);
  pattern->add_option("--phi-nodes", phi_nodes);
  pattern->add_option("--config", config_path, "JSON config file");

  // g2
  auto* g2 = app.add_subcommand("g2", "two-detector correlation map of a pair eigenstate");
  std::string detector_config = "coincident";
  std::string b1 = "mm";
  bool self_test = false;
  add_geometry_flags(g2, gopt, false);
  add_output_flags(g2, out);
  g2->add_option("--config", detector_config,
                 "detector configuration (polar-fixed | coincident); a value naming "
                 "neither is read as a JSON config file path");
  g2->add_option("--b1", b1, "product-state tags s1 s2 as mm|mp|pm|pp");
  g2->add_option("--state-index", state_index, "pick a pair eigenstate by sorted index");
  g2->add_option("--theta-nodes", theta_nodes);
  g2->add_option("--phi-nodes", phi_nodes);
  g2->add_flag("--self-test", self_test, "verify exchange symmetry and azimuthal period");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "grid-maximize the product-state lifetime");
  double oa_min = 0.05, oa_max = 0.25, ob_min = 1.5, ob_max = 3.0;
  int oa_steps = 41, ob_steps = 31;
  bool refine = false;
  add_output_flags(optimize, out);
  optimize->add_option("--a-min", oa_min);
  optimize->add_option("--a-max", oa_max);
  optimize->add_option("--a-steps", oa_steps);
  optimize->add_option("--b-min", ob_min);
  optimize->add_option("--b-max", ob_max);
  optimize->add_option("--b-steps", ob_steps);
  optimize->add_flag("--refine", refine, "golden-section refinement around the argmax");
  optimize->add_option("--config", config_path, "JSON config file");

  // count
  auto* count = app.add_subcommand("count", "pair-state counts per momentum sector");
  int count_nd = 6, count_nr = 1;
  add_output_flags(count, out);
  count->add_option("--nd", count_nd);
  count->add_option("--nr", count_nr);
  count->add_option("--config", config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    // the g2 --config value doubles as a config-file path when it names a file
    if (active == g2 && detector_config != "polar-fixed" && detector_config != "coincident" &&
        detector_config != "1" && detector_config != "2") {
      config_path = detector_config;
      detector_config = "coincident";
    }
    if (!config_path.empty()) {
      load_config_file(config_path);
      merge_config(active);
    }
    if (active == spectrum) return cmd_spectrum(gopt, excitations, out);
    if (active == sweep) return cmd_sweep(gopt, target, a_min, a_max, a_steps, sector_m, out);
    if (active == scs) {
      beam.cone_half_angle = cone_deg * std::numbers::pi / 180.0;
      return cmd_scs(gopt, beam, det_min, det_max, det_steps, theta_nodes, phi_nodes, out);
    }
    if (active == pattern) {
      std::optional<int> sel;
      if (pattern_m != std::numeric_limits<int>::min()) sel = pattern_m;
      return cmd_pattern(gopt, sel, branch, state_index, theta_nodes, phi_nodes, out);
    }
    if (active == g2) {
      return cmd_g2(gopt, detector_config, b1, state_index, theta_nodes, phi_nodes, self_test,
                    out);
    }
    if (active == optimize) {
      return cmd_optimize(oa_min, oa_max, oa_steps, ob_min, ob_max, ob_steps, refine, out);
    }
    if (active == count) return cmd_count(count_nd, count_nr, out);
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
