#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "json.hpp"
#include "output.hpp"
#include "twisted/modes.hpp"
#include "twisted/observables.hpp"
#include "twisted/propagator.hpp"

namespace twisted::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

const MagneticScales& require_field(const BeamGeometry& g, const char* command) {
  if (!g.in_field())
    throw ConfigError(std::string(command) + " needs a magnetic field (B_tesla > 0)");
  return g.field();
}

double longitudinal_scale(const BeamGeometry& g) { return g.in_field() ? g.field().z_m : g.z_R(); }

BeamFamily make_family(FamilySelector sel, const BeamQuantumNumbers& qn, const BeamGeometry& g) {
  if (!g.in_field()) return BeamFamily::free_lg(qn, g);
  switch (sel) {
    case FamilySelector::Landau: return BeamFamily::landau(qn, g);
    case FamilySelector::Free: return BeamFamily::free_lg(qn, g);
    case FamilySelector::General: break;
  }
  return BeamFamily::general(qn, g);
}

// Waist used by the in-field propagation and penetration runs.
BeamGeometry test_geometry(const RunConfig& cfg, const BeamGeometry& g) {
  if (!g.in_field() || cfg.w0_over_wm == 0.0) return g;
  return g.with_waist(cfg.w0_over_wm * g.field().w_m);
}

fs::path prepare(const RunConfig& cfg, CommandOutcome& outcome) {
  ensure_directory(cfg.out);
  const auto path = cfg.out / "effective_config.json";
  write_text(path, to_json(cfg));
  outcome.files.push_back(path);
  return cfg.out;
}

json geometry_json(const BeamGeometry& g) {
  json j;
  j["k_per_m"] = g.k() / kMetresPerUnit;
  j["K_per_m"] = g.compton_k() / kMetresPerUnit;
  j["w0_m"] = to_metres(g.w0());
  j["z_R_m"] = to_metres(g.z_R());
  if (g.in_field()) {
    j["w_m_m"] = to_metres(g.field().w_m);
    j["z_m_m"] = to_metres(g.field().z_m);
  } else {
    j["w_m_m"] = nullptr;
    j["z_m_m"] = nullptr;
  }
  return j;
}

// Mixed absolute/relative difference.
double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Check {
  std::string name;
  double value;
  double threshold;
  bool below = true;  // pass when value < threshold (else value > threshold)

  bool passed() const { return below ? value < threshold : value > threshold; }
  json to_json() const {
    return {{"name", name},
            {"value", value},
            {"threshold", threshold},
            {"comparison", below ? "<" : ">"},
            {"pass", passed()}};
  }
};

RadialGrid residual_grid(const BeamFamily& family, double z) {
  return RadialGrid::uniform_staggered(8.0 * family.parameters_at(z).w, 8000);
}

double max_pde_residual(const BeamFamily& family, std::span<const double> zs) {
  double worst = 0.0;
  for (double z : zs)
    worst = std::max(worst, closed_form_residual(family, z, residual_grid(family, z)).max_abs);
  return worst;
}

// Closed form with the width stretched by `factor` while keeping the
// z-derivative of the true solution.
double corrupted_residual(const BeamFamily& family, double z, double factor) {
  const auto grid = residual_grid(family, z);
  RadialWavefunction state{family.quantum_numbers().ell, z, grid, std::vector<cplx>(grid.size())};
  std::vector<cplx> dpsi(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    state.values[j] = evaluate(family, z, r / factor) / factor;
    dpsi[j] = evaluate_dz(family, z, r);
  }
  return residual(state, dpsi, family.geometry(), family.quantum_numbers()).max_abs;
}

PropagatorConfig checked_propagator_config(const BeamFamily& family, double z_end,
                                           const RunConfig& cfg) {
  auto pc = default_propagator_config(family, z_end, cfg.dz_over_zm, cfg.grid_points);
  try {
    pc.validate(family, z_end);
  } catch (const GridCoverageError& e) {
    throw ConfigError(std::string("propagator settings rejected: ") + e.what());
  }
  return pc;
}

struct OracleRun {
  double l2;
  double norm_drift;
};

OracleRun oracle_propagation(const BeamFamily& family, double z_end, const RunConfig& cfg) {
  const auto pc = checked_propagator_config(family, z_end, cfg);
  const auto start = sample(family, 0.0, pc.grid);
  const auto op = ParaxialOperator::from(family.geometry(), family.quantum_numbers());
  const auto end = propagate(op, start, z_end, pc.dz);
  const auto expected = sample(family, z_end, pc.grid);
  return {l2_distance(pc.grid, end.values, expected.values), std::abs(end.norm() - start.norm())};
}

double r2_disagreement(const BeamFamily& family, std::span<const double> zs) {
  double worst = 0.0;
  for (double z : zs) {
    const auto psi = sample(family, z, local_grid(family, z));
    worst = std::max(worst, rel_diff(r2_mean(family, z), r2_mean(psi)));
  }
  return worst;
}

double phase_rate_disagreement(const BeamFamily& family, std::span<const double> zs) {
  const double lambda = lambda_value(family);
  double worst = 0.0;
  for (double z : zs)
    worst = std::max(worst, std::abs(lambda + mean_phase_rate(family, z, local_grid(family, z))) /
                                std::abs(lambda));
  return worst;
}

void report_checks(const std::vector<Check>& checks, std::ostream& log) {
  for (const auto& c : checks)
    log << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << c.value << (c.below ? " < " : " > ")
        << c.threshold << '\n';
}

}  // namespace

CommandOutcome cmd_figure1(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  const auto g = cfg.geometry();
  const auto& f = require_field(g, "figure1");
  const auto qn = cfg.quantum_numbers();

  const auto curve = [&](const BeamFamily& beam, const std::string& name) {
    CsvFile csv(dir / name, {"z_over_zm", "w_over_wm"});
    constexpr int points = 400;
    for (int i = 0; i < points; ++i) {
      const double u = -2.0 + 4.0 * i / (points - 1);
      csv.row({u, beam.parameters_at(u * f.z_m).w / f.w_m});
    }
    outcome.files.push_back(csv.path());
  };
  const std::array<std::pair<double, const char*>, 3> ratios{{{0.5, "0.5"}, {1.0, "1"}, {2.0, "2"}}};
  for (const auto& [ratio, label] : ratios)
    curve(BeamFamily::general(qn, g.with_waist(ratio * f.w_m)),
          std::string("figure1_general_w0_") + label + "wm.csv");
  curve(BeamFamily::free_lg(qn, g.with_waist(0.5 * f.w_m)), "figure1_free_w0_0.5wm.csv");
  log << "figure1: wrote " << outcome.files.size() - 1 << " curves to " << dir.string() << '\n';
  return outcome;
}

CommandOutcome cmd_figure2(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  const auto g = cfg.geometry();
  const auto& f = require_field(g, "figure2");
  const auto qn = cfg.quantum_numbers();

  const auto panel_a = BeamFamily::general(qn, g.with_waist(f.w_m));
  const auto panel_bc = BeamFamily::general(qn, g.with_waist(0.5 * f.w_m));
  const auto grid = RadialGrid::uniform_staggered(8.0 * f.w_m, 800);
  const auto density = [](const BeamFamily& beam, double z, double r) {
    return std::norm(evaluate(beam, z, r)) * 2.0 * kPi * r;
  };

  CsvFile csv(dir / "figure2.csv", {"r_nm", "r_over_wm", "a_z0_density_per_nm",
                                    "a_zm_density_per_nm", "b_density_per_nm", "c_density_per_nm"});
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    csv.row({r, r / f.w_m, density(panel_a, 0.0, r), density(panel_a, f.z_m, r),
             density(panel_bc, 0.0, r), density(panel_bc, f.z_m, r)});
  }
  outcome.files.push_back(csv.path());
  log << "figure2: wrote " << csv.path().string() << '\n';
  return outcome;
}

CommandOutcome cmd_verify(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  // In a field the suite runs at the test waist: for w0 << w_m the curvature
  // phase k r^2/2R outgrows any fixed residual grid and the fixed ODE step.
  const auto g = test_geometry(cfg, cfg.geometry());
  const auto qn = cfg.quantum_numbers();
  std::vector<Check> checks;
  json probe;
  json report;
  report["config"] = json::parse(to_json(cfg));
  report["geometry"] = geometry_json(g);

  if (g.in_field()) {
    report["suite"] = "field";
    const auto& f = g.field();
    const double period = kPi * f.z_m;
    std::vector<double> zs;
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) zs.push_back(x * period);

    for (const auto& [n, ell] : std::array<std::pair<int, int>, 3>{{{0, 0}, {1, 2}, {2, -3}}}) {
      const auto beam = BeamFamily::general({n, ell, qn.spin}, g);
      checks.push_back({"pde_residual_general_n" + std::to_string(n) + "_l" + std::to_string(ell),
                        max_pde_residual(beam, zs), 1e-7});
    }
    checks.push_back({"pde_residual_landau", max_pde_residual(BeamFamily::landau(qn, g), zs), 1e-9});

    std::vector<double> ode_z(100);
    for (int i = 0; i < 100; ++i) ode_z[i] = 2.0 * period * i / 99.0;
    checks.push_back({"parameter_ode_residual",
                      check_parameter_odes(BeamFamily::general(qn, g), ode_z).max(), 1e-8});

    const auto general = BeamFamily::general(qn, g);
    double w_period = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double z = period * i / 50.0;
      w_period = std::max(w_period, rel_diff(general.parameters_at(z + period).w,
                                             general.parameters_at(z).w));
    }
    checks.push_back({"width_periodicity", w_period, 1e-12});
    const auto pp = period_and_pitch(g);
    checks.push_back({"period_equals_helix_pitch", rel_diff(pp.period_m, pp.helix_pitch_m), 1e-10});

    const auto matched = g.with_waist(f.w_m);
    checks.push_back({"lambda_general_equals_landau_at_w0_wm",
                      rel_diff(lambda_value(BeamFamily::general(qn, matched)),
                               lambda_value(BeamFamily::landau(qn, matched))),
                      1e-14});
    checks.push_back({"r2_closed_form_vs_quadrature", r2_disagreement(general, zs), 1e-8});

    checks.push_back({"lambda_vs_mean_phase_rate", phase_rate_disagreement(general, zs), 1e-6});
    const auto landau0 = BeamFamily::landau({0, 0, qn.spin}, g);
    checks.push_back({"kinetic_oam_landau_ground",
                      std::abs(kinetic_oam(sample(landau0, 0.0, local_grid(landau0, 0.0)), g) - 1.0),
                      1e-8});

    const auto run = oracle_propagation(general, period, cfg);
    checks.push_back({"crank_nicolson_vs_closed_form_l2", run.l2, 1e-4});
    checks.push_back({"crank_nicolson_norm_drift", run.norm_drift, 1e-10});

    const double corrupted = corrupted_residual(general, 0.3 * period, 1.1);
    probe = {{"name", "corrupted_width_1.1"},
             {"residual", corrupted},
             {"threshold", 1e-7},
             {"status", corrupted < 1e-7 ? "PASS" : "FAIL"},
             {"detected", corrupted > 1e-2}};
  } else {
    report["suite"] = "free_space";
    const auto beam = BeamFamily::free_lg(qn, g);
    std::vector<double> zs;
    for (double x : {-2.0, -0.5, 0.0, 0.5, 2.0}) zs.push_back(x * g.z_R());
    checks.push_back({"pde_residual_free", max_pde_residual(beam, zs), 1e-7});
    checks.push_back({"r2_closed_form_vs_quadrature", r2_disagreement(beam, zs), 1e-8});
    checks.push_back({"lambda_vs_mean_phase_rate", phase_rate_disagreement(beam, zs), 1e-6});
    checks.push_back({"kinetic_oam_equals_ell", std::abs(kinetic_oam(beam, 0.0) - qn.ell), 1e-15});
    const auto run = oracle_propagation(beam, g.z_R(), cfg);
    checks.push_back({"crank_nicolson_vs_closed_form_l2", run.l2, 1e-4});
    checks.push_back({"crank_nicolson_norm_drift", run.norm_drift, 1e-10});

    const double corrupted = corrupted_residual(beam, 0.5 * g.z_R(), 1.1);
    probe = {{"name", "corrupted_width_1.1"},
             {"residual", corrupted},
             {"threshold", 1e-7},
             {"status", corrupted < 1e-7 ? "PASS" : "FAIL"},
             {"detected", corrupted > 1e-2}};
  }

  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  all = all && probe["detected"].get<bool>();
  json list = json::array();
  for (const auto& c : checks) list.push_back(c.to_json());
  report["checks"] = list;
  report["sensitivity_probe"] = probe;
  report["pass"] = all;

  const auto path = dir / "verify.json";
  write_text(path, report.dump(2) + "\n");
  outcome.files.push_back(path);
  report_checks(checks, log);
  log << "probe " << probe["name"].get<std::string>() << ": " << probe["status"].get<std::string>()
      << " (residual " << probe["residual"].get<double>() << ")\n";
  log << "verify: " << (all ? "PASS" : "FAIL") << '\n';
  outcome.passed = all;
  return outcome;
}

CommandOutcome cmd_observables(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  const auto g = cfg.geometry();
  const auto qn = cfg.quantum_numbers();
  const auto family = make_family(cfg.family, qn, g);
  const double z = cfg.z_over_zm * longitudinal_scale(g);

  const auto obs = observe(family, z);
  const auto params = family.parameters_at(z);
  const double lambda_free = qn.N() / (g.k() * g.w0() * g.w0());
  const auto mass = mass_spacing(family);

  json j;
  j["family"] = to_string(family.kind());
  j["n"] = qn.n;
  j["ell"] = qn.ell;
  j["s_z"] = qn.s_z();
  j["B_tesla"] = g.lab().B_tesla;
  j["kinetic_keV"] = g.lab().kinetic_eV / 1e3;
  j["w0_m"] = to_metres(g.w0());
  j["z_m"] = to_metres(z);
  j["geometry"] = geometry_json(g);
  j["norm"] = obs.norm;
  j["r2_mean_m2"] = obs.r2_mean_m2;
  j["Q0_C_m2"] = obs.Q0_C_m2;
  j["vz_mean_m_per_s"] = obs.vz_m_per_s;
  j["m_eff_eV"] = obs.m_eff_eV;
  j["lambda_per_m"] = obs.lambda_per_m;
  j["lambda_free_per_m"] = lambda_free / kMetresPerUnit;
  j["lambda_over_lambda_free"] = lambda_value(family) / lambda_free;
  j["L_kin_hbar"] = obs.L_kin;
  j["velocity_spacing_m_per_s"] = velocity_spacing(family);
  j["mass_spacing_approx_eV"] = mass.approx_eV;
  j["mass_spacing_exact_eV"] = mass.exact_eV;
  j["paraxiality_N_over_kw"] = qn.N() / (g.k() * params.w);
  j["width_at_z_m"] = to_metres(params.w);

  if (g.in_field()) {
    const auto pp = period_and_pitch(g);
    j["period_m"] = pp.period_m;
    j["helix_pitch_m"] = pp.helix_pitch_m;
    const auto lg = BeamFamily::general(qn, g);
    const auto landau = BeamFamily::landau(qn, g);
    json cmp;
    cmp["lg_velocity_spacing_m_per_s"] = velocity_spacing(lg);
    cmp["landau_velocity_spacing_m_per_s"] = velocity_spacing(landau);
    cmp["landau_over_lg_velocity_spacing"] = velocity_spacing(landau) / velocity_spacing(lg);
    const auto m_lg = mass_spacing(BeamFamily::free_lg(qn, g));
    const auto m_landau = mass_spacing(landau);
    cmp["lg_mass_spacing_approx_eV"] = m_lg.approx_eV;
    cmp["landau_mass_spacing_approx_eV"] = m_landau.approx_eV;
    cmp["landau_over_lg_mass_spacing_approx"] = m_landau.approx_eV / m_lg.approx_eV;
    cmp["landau_over_lg_mass_spacing_exact"] = m_landau.exact_eV / m_lg.exact_eV;
    cmp["w0_over_wm_squared"] = g.w0() * g.w0() / g.field().w_m_squared;
    j["landau_comparison"] = cmp;
  }

  const auto path = dir / "observables.json";
  write_text(path, j.dump(2) + "\n");
  outcome.files.push_back(path);
  log << "observables: lambda/lambda_free = " << j["lambda_over_lambda_free"].get<double>()
      << ", velocity spacing = " << j["velocity_spacing_m_per_s"].get<double>() << " m/s\n";
  return outcome;
}

CommandOutcome cmd_penetrate(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  const auto g = cfg.geometry();
  const auto& f = require_field(g, "penetrate");
  const double w0 = test_geometry(cfg, g).w0();
  const PenetrationOptions options{cfg.periods, cfg.samples_per_period, cfg.n_max};
  const auto pair = penetration_pair(cfg.n, std::abs(cfg.ell), w0, g, cfg.lab.spin, options);

  double periodicity = 0.0;
  const auto dump = [&](const PenetrationReport& rep) {
    const std::string sign = rep.ell < 0 ? "m" : "p";
    CsvFile csv(dir / ("penetrate_ell_" + sign + std::to_string(std::abs(rep.ell)) + ".csv"),
                {"z_over_zm", "r2_over_wm2"});
    for (std::size_t i = 0; i < rep.z_nm.size(); ++i)
      csv.row({rep.z_nm[i] / f.z_m, rep.r2_nm2[i] / f.w_m_squared});
    outcome.files.push_back(csv.path());

    const auto per = static_cast<std::size_t>(cfg.samples_per_period);
    for (std::size_t i = 0; i + per < rep.r2_nm2.size(); ++i)
      periodicity = std::max(periodicity, rel_diff(rep.r2_nm2[i], rep.r2_nm2[i + per]));

    json spectrum = json::array();
    for (const auto& c : rep.coeffs.coeffs) spectrum.push_back(std::norm(c));
    const auto [lo, hi] = std::minmax_element(rep.kinetic_oam.begin(), rep.kinetic_oam.end());
    return json{{"ell", rep.ell},
                {"n", rep.n},
                {"initial_w0_m", to_metres(rep.initial_w0_nm)},
                {"completeness", rep.coeffs.completeness},
                {"n_max", rep.coeffs.n_max()},
                {"mode_weights", spectrum},
                {"kinetic_oam_mean_hbar", rep.mean_kinetic_oam},
                {"kinetic_oam_min_hbar", *lo},
                {"kinetic_oam_max_hbar", *hi},
                {"fitted_waist_m", to_metres(rep.fitted_waist_nm)}};
  };

  json j;
  j["positive"] = dump(pair.positive);
  j["negative"] = dump(pair.negative);
  const auto [lo, hi] = std::minmax_element(pair.oam_sum.begin(), pair.oam_sum.end());
  j["asymmetry"] = {{"oam_sum_min_hbar", *lo},
                    {"oam_sum_max_hbar", *hi},
                    {"oam_sum_positive_everywhere", *lo > 0.0},
                    {"fitted_waist_positive_less_than_negative",
                     pair.positive.fitted_waist_nm < pair.negative.fitted_waist_nm}};
  j["r2_periodicity_max_rel"] = periodicity;
  j["w_m_m"] = to_metres(f.w_m);
  j["z_m_m"] = to_metres(f.z_m);

  const auto path = dir / "penetrate.json";
  write_text(path, j.dump(2) + "\n");
  outcome.files.push_back(path);
  log << "penetrate: l'_1 + l'_2 in [" << *lo << ", " << *hi << "], r2 periodicity " << periodicity
      << '\n';
  outcome.passed = periodicity < 1e-6;
  return outcome;
}

CommandOutcome cmd_propagate(const RunConfig& cfg, std::ostream& log) {
  CommandOutcome outcome;
  const auto dir = prepare(cfg, outcome);
  const auto g = test_geometry(cfg, cfg.geometry());
  const auto qn = cfg.quantum_numbers();
  const auto family = make_family(cfg.family, qn, g);
  const double z_end = cfg.z_end_over_zm * longitudinal_scale(g);

  const auto pc = checked_propagator_config(family, z_end, cfg);
  const auto start = sample(family, 0.0, pc.grid);
  const auto op = ParaxialOperator::from(g, qn);

  const auto snap_path = dir / "propagate_snapshots.csv";
  std::ofstream snap_file(snap_path);
  if (!snap_file) throw IoError("cannot write " + snap_path.string());
  snap_file.imbue(std::locale::classic());
  CsvSnapshotWriter writer(snap_file);
  const double every = cfg.snapshots > 0 ? std::abs(z_end) / cfg.snapshots : 0.0;
  const auto end = propagate(op, start, z_end, pc.dz, std::ref(writer), every);
  snap_file.close();
  if (!snap_file) throw IoError("write failed for " + snap_path.string());
  outcome.files.push_back(snap_path);

  write_wavefunction(dir, "wavefunction_initial", start, qn, family.parameters_at(0.0));
  write_wavefunction(dir, "wavefunction_final", end, qn, family.parameters_at(z_end));
  for (const char* stem : {"wavefunction_initial", "wavefunction_final"}) {
    outcome.files.push_back(dir / (std::string(stem) + ".csv"));
    outcome.files.push_back(dir / (std::string(stem) + ".json"));
  }
  const auto expected = sample(family, z_end, pc.grid);
  const double l2 = l2_distance(pc.grid, end.values, expected.values);

  json j;
  j["family"] = to_string(family.kind());
  j["w0_m"] = to_metres(g.w0());
  j["z_end_m"] = to_metres(z_end);
  j["dz_m"] = to_metres(pc.dz);
  j["grid_points"] = pc.grid.size();
  j["r_max_m"] = to_metres(pc.grid.r_max());
  j["norm_drift"] = std::abs(end.norm() - start.norm());
  j["l2_vs_closed_form"] = l2;
  j["paraxiality_N_over_kw"] = qn.N() / (g.k() * family.parameters_at(z_end).w);
  const auto path = dir / "propagate.json";
  write_text(path, j.dump(2) + "\n");
  outcome.files.push_back(path);
  log << "propagate: L2 distance to closed form " << l2 << '\n';
  return outcome;
}

}  // namespace twisted::cli
