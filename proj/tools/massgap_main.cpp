// massgap command-line front end.
//
// Subcommands: elliptic, verify-classical, su2-solve, stability, spectrum,
// propagator, ds-check, lattice-run, measure-gap.  Reports are machine
// readable (JSON schema 1 / RFC-4180 CSV), deterministic, and written both
// to stdout and to the output directory (--out, env MASSGAP_OUT).
// Exit codes: 0 all checks pass, 1 physics/domain failure, 2 usage error.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "massgap/massgap.hpp"

namespace mg = massgap;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::string out_dir = ".";
  std::string format = "json";
};

void write_report(const GlobalOpts& g, const mg::ResidualReport& r) {
  const std::string json = mg::report_to_json(r);
  std::cout << json;
  fs::create_directories(g.out_dir);
  mg::write_text_file(g.out_dir + "/" + r.command + "_report.json", json);
  if (g.format == "csv") {
    std::string csv = "name,value,tolerance,pass\r\n";
    for (const auto& c : r.checks)
      csv += mg::csv_field(c.name) + "," + mg::fmt17(c.value) + "," +
             mg::fmt17(c.tolerance) + "," + (c.pass ? "true" : "false") +
             "\r\n";
    mg::write_text_file(g.out_dir + "/" + r.command + "_report.csv", csv);
  }
}

int finish(const GlobalOpts& g, const mg::ResidualReport& r) {
  write_report(g, r);
  return r.pass() ? 0 : 1;
}

void emit_json_object(const GlobalOpts& g, const std::string& name,
                      const std::vector<std::pair<std::string, std::string>>&
                          fields) {
  std::string out = "{";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + fields[i].first + "\": " + fields[i].second;
  }
  out += "}\n";
  std::cout << out;
  fs::create_directories(g.out_dir);
  mg::write_text_file(g.out_dir + "/" + name + ".json", out);
}

// Deterministic sampler for self tests (64-bit LCG, fixed seed).
struct Lcg {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  double uniform(double lo, double hi) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
};

// ---------------------------------------------------------------- selftests

mg::ResidualReport selftest_elliptic() {
  mg::ResidualReport r;
  r.command = "elliptic-selftest";
  r.provenance.grid = "400 LCG samples, u in [-12,12], m in [-1,0.99]";
  Lcg rng;
  double worst_id1 = 0.0, worst_id2 = 0.0, worst_parity = 0.0,
         worst_period = 0.0, worst_deriv = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double u = rng.uniform(-12.0, 12.0);
    const double m = rng.uniform(-1.0, 0.99);
    const mg::JacobiPoint j = mg::jacobi(u, m);
    worst_id1 = std::max(worst_id1, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    worst_id2 = std::max(worst_id2,
                         std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0));
    const mg::JacobiPoint jm = mg::jacobi(-u, m);
    worst_parity = std::max({worst_parity, std::abs(jm.sn + j.sn),
                             std::abs(jm.cn - j.cn)});
    const double period = 4.0 * mg::complete_K(m);
    worst_period = std::max(
        worst_period, std::abs(mg::jacobi(u + period, m).sn - j.sn));
    const auto sn_only = [m](double x) { return mg::jacobi(x, m).sn; };
    worst_deriv = std::max(worst_deriv,
                           std::abs(mg::fd_first(sn_only, u, 1e-3) -
                                    j.cn * j.dn));
  }
  r.add_check("sn2_plus_cn2_minus_1", worst_id1, 1e-12);
  r.add_check("dn2_plus_m_sn2_minus_1", worst_id2, 1e-12);
  r.add_check("parity", worst_parity, 1e-12);
  r.add_check("periodicity_4K", worst_period, 1e-10);
  r.add_check("derivative_sn_eq_cn_dn", worst_deriv, 1e-8);
  r.add_check("K_at_zero_minus_half_pi",
              mg::complete_K(0.0) - 1.57079632679489662, 1e-14);
  return r;
}

mg::ResidualReport selftest_classical(double lambda, double mu) {
  mg::ResidualReport r;
  r.command = "verify-classical-selftest";
  r.add_param("lambda", lambda);
  r.add_param("mu", mu);
  Lcg rng;
  double worst_disp = 0.0, worst_scale = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double l = rng.uniform(0.1, 10.0);
    const double m = rng.uniform(0.1, 3.0);
    worst_disp = std::max(worst_disp,
                          std::abs(mg::dispersion_p2(l, m) -
                                   m * m * std::sqrt(0.5 * l)));
    // scaling covariance mu -> s mu
    const double s = rng.uniform(0.5, 2.0);
    const auto a1 = mg::scalar_amplitude_modulus(l, m);
    const auto a2 = mg::scalar_amplitude_modulus(l, s * m);
    worst_scale = std::max(
        worst_scale, std::abs(a2.amplitude - s * a1.amplitude) /
                         a2.amplitude);
    worst_scale = std::max(
        worst_scale, std::abs(mg::dispersion_p2(l, s * m) -
                              s * s * mg::dispersion_p2(l, m)) /
                         mg::dispersion_p2(l, s * m));
  }
  r.add_check("dispersion_closed_form", worst_disp, 1e-12);
  r.add_check("mu_scaling_covariance", worst_scale, 1e-12);
  const mg::ScalarWaveSolution sol = mg::make_scalar_wave(lambda, mu);
  r.add_check("classical_residual", mg::max_residual_scalar(sol, 100, 1.0, 5e-3),
              1e-8);
  // perturbed amplitude must be detected
  mg::ScalarWaveSolution bad = sol;
  bad.amplitude *= 1.01;
  r.add_check_verdict("perturbed_amplitude_detected",
                      mg::max_residual_scalar(bad, 100, 1.0, 5e-3), 1e-3,
                      mg::max_residual_scalar(bad, 100, 1.0, 5e-3) > 1e-3);
  return r;
}

mg::ResidualReport selftest_su2() {
  mg::ResidualReport r;
  r.command = "su2-selftest";
  Lcg rng;
  double worst_landau = 0.0, worst_backsub = 0.0;
  for (int i = 0; i < 25; ++i) {
    const double g = rng.uniform(0.5, 4.0);
    const double mu = rng.uniform(0.5, 2.0);
    const double px = rng.uniform(-1.0, 1.0);
    const double py = rng.uniform(-1.0, 1.0);
    const auto p = mg::FourMomentum::on_shell(mu * mu * g, px, py, 0.0);
    const mg::SU2Ansatz a = mg::su2_solve(p, 1.0, g, mu);
    const double expect = mu / std::sqrt(g);
    worst_landau = std::max({worst_landau, std::abs(a.X - expect),
                             std::abs(a.Y - expect), std::abs(a.Z - expect)});
    // back substitution into the algebraic system
    const double base = 2.0 * mu * mu / g;
    worst_backsub = std::max(
        worst_backsub, std::abs(a.Y * a.Y + a.Z * a.Z - base));
  }
  r.add_check("landau_amplitude_mu_over_sqrt_g", worst_landau, 1e-12);
  r.add_check("back_substitution", worst_backsub, 1e-12);
  return r;
}

mg::ResidualReport selftest_stability(double lambda, double mu) {
  mg::ResidualReport r;
  r.command = "stability-selftest";
  const double shell = mg::dispersion_p2(lambda, mu);
  const mg::StabilityResult sr = mg::stability_eigencheck(lambda, mu, shell);
  r.add_check("eigenvalue_minus_closed_form",
              sr.eigenvalue + 3.0 * mu * mu * std::sqrt(0.5 * lambda), 1e-12);
  r.add_check("operator_residual", sr.residual, 1e-8);
  // eigenvalue scaling under mu -> s mu
  Lcg rng;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double s = rng.uniform(0.5, 2.0);
    const double e1 = -3.0 * mu * mu * std::sqrt(0.5 * lambda);
    const double e2 = -3.0 * (s * mu) * (s * mu) * std::sqrt(0.5 * lambda);
    worst = std::max(worst, std::abs(e2 - s * s * e1) / std::abs(e2));
  }
  r.add_check("eigenvalue_scaling", worst, 1e-12);
  const mg::ScalarWaveSolution sol = mg::make_scalar_wave(lambda, mu);
  const auto w1 = [&sol](double z) { return mg::zero_mode(sol, z); };
  r.add_check("zero_mode_lame_residual",
              mg::lame_residual(sol, w1, 200, 10.0, 5e-3), 1e-8);
  return r;
}

mg::ResidualReport selftest_spectrum(double lambda, double mu) {
  mg::ResidualReport r;
  r.command = "spectrum-selftest";
  double sum = 0.0;
  for (int n = 0; n <= 20; ++n) sum += mg::weight_n(n);
  r.add_check("weight_sum_minus_1", sum - 1.0, 1e-6);
  double worst_ratio = 0.0;
  for (int n = 0; n <= 10; ++n)
    worst_ratio = std::max(worst_ratio,
                           std::abs(mg::mass_n(n, lambda, mu) /
                                        mg::mass_n(0, lambda, mu) -
                                    (2.0 * n + 1.0)));
  r.add_check("mass_ratio_odd_integers", worst_ratio, 1e-12);
  r.add_check("kappa0_two_routes", mg::kappa0() - mg::kappa0_closed_form(),
              1e-10);
  return r;
}

mg::ResidualReport selftest_propagator(double lambda, double mu) {
  mg::ResidualReport r;
  r.command = "propagator-selftest";
  // spacelike p^2 < 0: strictly negative real part as epsilon -> 0
  Lcg rng;
  bool neg_ok = true;
  for (int i = 0; i < 20; ++i) {
    const double p2 = -rng.uniform(0.1, 50.0);
    const auto v = mg::propagator_momentum(p2, lambda, mu, 1e-12, 20);
    if (v.value.real() >= 0.0) neg_ok = false;
  }
  r.add_check_verdict("spacelike_real_negative", neg_ok ? 0.0 : 1.0, 0.5,
                      neg_ok);
  // residue at the first pole
  const double m0 = mg::mass_n(0, lambda, mu);
  const double d = 1e-6;
  const auto near = mg::propagator_momentum(m0 * m0 + d, lambda, mu, 1e-14, 20);
  r.add_check("residue_at_first_pole",
              near.value.real() * d - mg::weight_n(0), 1e-4);
  return r;
}

mg::ResidualReport selftest_ds(double lambda, double mu) {
  mg::ResidualReport r;
  r.command = "ds-selftest";
  r.add_check("g1_residual_zero_closure",
              mg::g1_residual(lambda, mu, {}), 1e-8);
  const auto [jump_err, ode_res] = mg::g2_greens_residual(lambda, mu, 0);
  r.add_check("g2_jump_error", jump_err, 1e-8);
  r.add_check("g2_ode_residual", ode_res, 1e-8);
  r.add_check("g3_origin_quadrature",
              mg::g3_at_origin(lambda, mu).quadrature_check, 1e-12);
  r.add_check("g3_coincident", mg::g3_convolution(0.0, 1.5, lambda, mu), 1e-10);
  r.add_check("g4_coincident",
              mg::g4_convolution(0.0, 0.0, 1.5, lambda, mu), 1e-10);
  // wrong phase must fail
  const double s3 = std::pow(mg::jacobi(0.5 * mg::quarter_period_m_minus_one(),
                                        -1.0).sn, 3.0);
  r.add_check_verdict("wrong_phase_detected", std::abs(s3 - 1.0), 0.1,
                      std::abs(s3 - 1.0) > 0.1);
  return r;
}

mg::ResidualReport selftest_lattice() {
  mg::ResidualReport r;
  r.command = "lattice-selftest";
  mg::LatticeRunConfig cfg;
  cfg.dim = 0;
  cfg.periods = 4.0;
  cfg.steps_per_period = 4096;
  const auto run = mg::evolve(cfg);
  r.add_check("rest_frame_energy_drift_4_periods", run.max_energy_drift, 1e-6);
  // zero initial data is a fixed point of the update
  mg::LatticeRunConfig z = cfg;
  z.periods = 1.0;
  z.initial_scale = 0.0;
  const auto zero_run = mg::evolve(z);
  double zmax = 0.0;
  for (double v : zero_run.series.samples) zmax = std::max(zmax, std::abs(v));
  r.add_check("zero_data_stays_zero", zmax, 0.0);
  r.add_check("zero_data_energy", zero_run.final_energy, 0.0);
  return r;
}

mg::ResidualReport selftest_measure_gap() {
  mg::ResidualReport r;
  r.command = "measure-gap-selftest";
  // pure sine calibration at omega = 1
  mg::TimeSeries ts;
  const std::size_t n = 1 << 14;
  const double T = 2.0 * 3.14159265358979323846;
  ts.sample_dt = 64.0 * T / static_cast<double>(n);  // 64 periods
  for (std::size_t i = 0; i < n; ++i)
    ts.samples.push_back(std::sin(ts.sample_dt * static_cast<double>(i)));
  const auto m = mg::measure_mass_gap(ts, 32.0);
  r.add_check("pure_sine_omega_minus_1", m.omega_fundamental - 1.0, 1e-4);
  return r;
}

// ------------------------------------------------------------- subcommands

int run_elliptic(const GlobalOpts& g, double u, double m, bool selftest) {
  if (selftest) return finish(g, selftest_elliptic());
  const mg::JacobiPoint j = mg::jacobi(u, m);
  emit_json_object(g, "elliptic",
                   {{"u", mg::fmt17(u)},
                    {"m", mg::fmt17(m)},
                    {"sn", mg::fmt17(j.sn)},
                    {"cn", mg::fmt17(j.cn)},
                    {"dn", mg::fmt17(j.dn)},
                    {"K", mg::fmt17(mg::complete_K(m))}});
  return 0;
}

int run_verify_classical(const GlobalOpts& g, double lambda, double mu,
                         double gc, double alpha, bool selftest) {
  if (selftest) return finish(g, selftest_classical(lambda, mu));
  mg::ResidualReport r;
  r.command = "verify-classical";
  r.add_param("lambda", lambda);
  r.add_param("mu", mu);
  r.add_param("g", gc);
  r.add_param("alpha", alpha);
  r.provenance.grid = "100 zeta points, 1 period, h=5e-3";

  const mg::ScalarWaveSolution sol = mg::make_scalar_wave(lambda, mu);
  r.add_check("scalar_residual_max", mg::max_residual_scalar(sol, 100, 1.0, 5e-3),
              1e-8);
  r.add_check("dispersion_identity",
              sol.p.squared() - mg::dispersion_p2(lambda, mu), 1e-12);

  const auto p = mg::FourMomentum::rest_frame(mu * std::sqrt(gc));
  const mg::SU2Ansatz a = mg::su2_solve(p, alpha, gc, mu);
  r.add_check("su2_residual_max", mg::max_residual_su2(a, 100, 1.0, 5e-3),
              1e-8);
  if (alpha == 1.0) {
    const double expect = mu / std::sqrt(gc);
    r.add_check("su2_landau_amplitude",
                std::max({std::abs(a.X - expect), std::abs(a.Y - expect),
                          std::abs(a.Z - expect)}),
                1e-14);
  }
  return finish(g, r);
}

int run_su2_solve(const GlobalOpts& g, double alpha, double gc, double mu,
                  double p0, double p1, double p2, double p3, bool selftest) {
  if (selftest) return finish(g, selftest_su2());
  const mg::FourMomentum p{p0, p1, p2, p3};
  const mg::SU2Ansatz a = mg::su2_solve(p, alpha, gc, mu);
  const double res = mg::max_residual_su2(a, 64, 1.0, 5e-3);
  emit_json_object(g, "su2-solve",
                   {{"X", mg::fmt17(a.X)},
                    {"Y", mg::fmt17(a.Y)},
                    {"Z", mg::fmt17(a.Z)},
                    {"residual", mg::fmt17(res)}});
  return res <= 1e-8 ? 0 : 1;
}

int run_stability(const GlobalOpts& g, double lambda, double mu, double p2,
                  bool have_p2, bool selftest) {
  if (selftest) return finish(g, selftest_stability(lambda, mu));
  const double shell = mg::dispersion_p2(lambda, mu);
  const double use_p2 = have_p2 ? p2 : shell;
  const mg::StabilityResult s = mg::stability_eigencheck(lambda, mu, use_p2);
  emit_json_object(g, "stability",
                   {{"eigenvalue", mg::fmt17(s.eigenvalue)},
                    {"residual", mg::fmt17(s.residual)},
                    {"onshell", s.onshell ? "true" : "false"}});
  return (s.onshell && s.residual <= 1e-8) ? 0 : 1;
}

int run_spectrum(const GlobalOpts& g, double lambda, double mu, int nmax,
                 bool selftest) {
  if (selftest) return finish(g, selftest_spectrum(lambda, mu));
  std::string csv = "n,mass,weight\r\n";
  for (int n = 0; n <= nmax; ++n)
    csv += std::to_string(n) + "," + mg::fmt17(mg::mass_n(n, lambda, mu)) +
           "," + mg::fmt17(mg::weight_n(n)) + "\r\n";
  std::cout << csv;
  fs::create_directories(g.out_dir);
  mg::write_text_file(g.out_dir + "/spectrum.csv", csv);
  return 0;
}

int run_propagator(const GlobalOpts& g, double p2, double lambda, double mu,
                   double epsilon, int nmax, bool selftest) {
  if (selftest) return finish(g, selftest_propagator(lambda, mu));
  const mg::PropagatorValue v =
      mg::propagator_momentum(p2, lambda, mu, epsilon, nmax);
  emit_json_object(g, "propagator",
                   {{"re", mg::fmt17(v.value.real())},
                    {"im", mg::fmt17(v.value.imag())},
                    {"tail_bound", mg::fmt17(v.tail_bound)},
                    {"near_pole", v.near_pole ? "true" : "false"}});
  return 0;
}

int run_ds_check(const GlobalOpts& g, const std::string& mode, double lambda,
                 bool have_lambda, double gc, bool have_g, int N, double mu,
                 bool selftest) {
  const bool ym = (mode == "ym");
  if ((ym && have_lambda) || (!ym && have_g))
    throw CLI::ValidationError(
        "ds-check", "supply --lambda for scalar mode or --g/--N for ym mode");
  const double lam = ym ? static_cast<double>(N) * gc * gc : lambda;
  if (selftest) return finish(g, selftest_ds(lam, mu));

  mg::ResidualReport r;
  r.command = "ds-check";
  r.add_param_str("mode", mode);
  if (ym) {
    r.add_param("g", gc);
    r.add_param("N", static_cast<double>(N));
  } else {
    r.add_param("lambda", lam);
  }
  r.add_param("mu", mu);
  r.provenance.grid = "200 zeta points, h=5e-3, simpson step=period/64";

  r.add_check("g1_residual", mg::g1_residual(lam, mu, {}), 1e-8);
  const auto [jump_err, ode_res] = mg::g2_greens_residual(lam, mu, 0);
  r.add_check("g2_jump_error", jump_err, 1e-8);
  r.add_check("g2_ode_residual", ode_res, 1e-8);
  r.add_check("g3_at_origin", mg::g3_at_origin(lam, mu).quadrature_check,
              1e-12);
  r.add_check("g3_coincident_y", mg::g3_convolution(0.0, 2.0, lam, mu), 1e-10);
  r.add_check("g4_coincident_yz",
              mg::g4_convolution(0.0, 0.0, 2.0, lam, mu), 1e-10);
  r.add_check("ghost_jump_minus_1", mg::ghost_jump() - 1.0, 1e-10);

  if (ym) {
    const double shell = mu * mu * std::sqrt(0.5 * lam);
    const auto p = mg::FourMomentum::on_shell(shell, 0.4, 0.2, 0.1);
    const mg::YmTwoPointReport y = mg::ym_two_point_check(N, gc, mu, p);
    r.add_check("ym_transversality", y.transversality, 1e-12);
    r.add_check("ym_projector_idempotence", y.idempotence, 1e-12);
    r.add_check("ym_delta_jump_error", y.jump_error, 1e-8);
    r.add_check("ym_delta_ode_residual", y.ode_residual, 1e-8);
    double mass_mismatch = 0.0;
    for (std::size_t n = 0; n < y.masses.size(); ++n)
      mass_mismatch = std::max(
          mass_mismatch,
          std::abs(y.masses[n] - mg::mass_n(static_cast<int>(n), lam, mu)));
    r.add_check("ym_scalar_mass_mapping", mass_mismatch, 0.0);
  }
  return finish(g, r);
}

int run_lattice(const GlobalOpts& g, const mg::LatticeRunConfig& cfg,
                const std::string& series_path, bool selftest) {
  if (selftest) return finish(g, selftest_lattice());
  const mg::LatticeRunSummary s = mg::evolve(cfg);
  emit_json_object(
      g, "lattice-run",
      {{"dim", std::to_string(cfg.dim)},
       {"steps", std::to_string(s.steps)},
       {"dt", mg::fmt17(s.dt)},
       {"n_sites", std::to_string(s.n_sites)},
       {"t_final", mg::fmt17(s.t_final)},
       {"initial_energy", mg::fmt17(s.initial_energy)},
       {"final_energy", mg::fmt17(s.final_energy)},
       {"max_energy_drift", mg::fmt17(s.max_energy_drift)},
       {"linf_error_vs_exact", mg::fmt17(s.linf_error)},
       {"samples", std::to_string(s.series.samples.size())}});
  if (!series_path.empty()) {
    std::string csv = "t,phi\r\n";
    for (std::size_t i = 0; i < s.series.samples.size(); ++i)
      csv += mg::fmt17(s.series.sample_dt * static_cast<double>(i)) + "," +
             mg::fmt17(s.series.samples[i]) + "\r\n";
    mg::write_text_file(series_path, csv);
  }
  return 0;
}

int run_measure_gap(const GlobalOpts& g, const std::string& input,
                    double min_periods, bool selftest) {
  if (selftest) return finish(g, selftest_measure_gap());
  std::ifstream f(input);
  if (!f) throw std::runtime_error("measure-gap: cannot open " + input);
  mg::TimeSeries ts;
  std::string line;
  double t0 = 0.0, t1 = 0.0;
  std::size_t rows = 0;
  while (std::getline(f, line)) {
    if (line.empty() || !(std::isdigit(line[0]) || line[0] == '-' ||
                          line[0] == '+' || line[0] == '.'))
      continue;  // header or blank
    std::istringstream ss(line);
    std::string tf, pf;
    if (!std::getline(ss, tf, ',') || !std::getline(ss, pf, ',')) continue;
    const double t = std::stod(tf);
    const double phi = std::stod(pf);
    if (rows == 0) t0 = t;
    if (rows == 1) t1 = t;
    ts.samples.push_back(phi);
    ++rows;
  }
  if (rows < 64) throw std::runtime_error("measure-gap: series too short");
  ts.sample_dt = t1 - t0;
  const mg::MassGapMeasurement m = mg::measure_mass_gap(ts, min_periods);
  emit_json_object(
      g, "measure-gap",
      {{"omega_fundamental", mg::fmt17(m.omega_fundamental)},
       {"omega_secondary", mg::fmt17(m.omega_secondary)},
       {"power_ratio_secondary", mg::fmt17(m.power_ratio_secondary)},
       {"even_harmonic_ratio", mg::fmt17(m.even_harmonic_ratio)},
       {"periods_spanned", mg::fmt17(m.periods_spanned)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact nonlinear-wave solutions, fluctuation spectra and "
               "Dyson-Schwinger consistency checks for the quartic scalar "
               "field and SU(2) Yang-Mills theory"};
  app.set_config("--config");
  app.require_subcommand(1);

  GlobalOpts gopt;
  app.add_option("--out,-o", gopt.out_dir, "output directory for reports")
      ->envname("MASSGAP_OUT");
  app.add_option("--format", gopt.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // elliptic
  double e_u = 0.0, e_m = -1.0;
  bool e_self = false;
  auto* c_ell = app.add_subcommand("elliptic", "evaluate sn, cn, dn and K");
  c_ell->add_option("--u", e_u, "argument");
  c_ell->add_option("--m", e_m, "parameter (m < 1)");
  c_ell->add_flag("--selftest", e_self, "run the module property suite");

  // verify-classical
  double vc_lambda = 2.0, vc_mu = 1.0, vc_g = 1.0, vc_alpha = 1.0;
  bool vc_self = false;
  auto* c_vc = app.add_subcommand("verify-classical",
                                  "residuals of the exact classical solutions");
  c_vc->add_option("--lambda", vc_lambda, "scalar coupling");
  c_vc->add_option("--mu", vc_mu, "integration-constant scale");
  c_vc->add_option("--g", vc_g, "SU(2) coupling for the ansatz check");
  c_vc->add_option("--alpha", vc_alpha, "gauge parameter");
  c_vc->add_flag("--selftest", vc_self, "run the module property suite");

  // su2-solve
  double s_alpha = 1.0, s_g = 1.0, s_mu = 1.0, s_p0 = 1.0, s_p1 = 0.0,
         s_p2 = 0.0, s_p3 = 0.0;
  bool s_self = false;
  auto* c_su2 = app.add_subcommand("su2-solve",
                                   "solve the diagonal SU(2) amplitude system");
  c_su2->add_option("--alpha", s_alpha, "gauge parameter");
  c_su2->add_option("--g", s_g, "coupling");
  c_su2->add_option("--mu", s_mu, "scale");
  c_su2->add_option("--p0", s_p0, "energy");
  c_su2->add_option("--p1", s_p1, "momentum x");
  c_su2->add_option("--p2", s_p2, "momentum y");
  c_su2->add_option("--p3", s_p3, "momentum z");
  c_su2->add_flag("--selftest", s_self, "run the module property suite");

  // stability
  double st_lambda = 2.0, st_mu = 1.0, st_p2 = 0.0;
  bool st_self = false;
  auto* c_st = app.add_subcommand("stability",
                                  "fluctuation eigencheck about the wave");
  c_st->add_option("--lambda", st_lambda, "coupling");
  c_st->add_option("--mu", st_mu, "scale");
  auto* st_p2_opt = c_st->add_option("--p2", st_p2,
                                     "operator momentum squared "
                                     "(default: on shell)");
  c_st->add_flag("--selftest", st_self, "run the module property suite");

  // spectrum
  double sp_lambda = 2.0, sp_mu = 1.0;
  int sp_nmax = 20;
  bool sp_self = false;
  auto* c_sp = app.add_subcommand("spectrum", "mass spectrum and weights CSV");
  c_sp->add_option("--lambda", sp_lambda, "coupling");
  c_sp->add_option("--mu", sp_mu, "scale");
  c_sp->add_option("--nmax", sp_nmax, "largest level index");
  c_sp->add_flag("--selftest", sp_self, "run the module property suite");

  // propagator
  double pr_p2 = 0.0, pr_lambda = 2.0, pr_mu = 1.0, pr_eps = 1e-9;
  int pr_nmax = 20;
  bool pr_self = false;
  auto* c_pr = app.add_subcommand("propagator",
                                  "momentum-space two-point function");
  c_pr->add_option("--p2", pr_p2, "momentum squared");
  c_pr->add_option("--lambda", pr_lambda, "coupling");
  c_pr->add_option("--mu", pr_mu, "scale");
  c_pr->add_option("--epsilon", pr_eps, "pole width");
  c_pr->add_option("--nmax", pr_nmax, "truncation index");
  c_pr->add_flag("--selftest", pr_self, "run the module property suite");

  // ds-check
  std::string ds_mode = "scalar";
  double ds_lambda = 2.0, ds_g = 1.0, ds_mu = 1.0;
  int ds_N = 2;
  bool ds_self = false;
  auto* c_ds = app.add_subcommand("ds-check",
                                  "Dyson-Schwinger residual verification");
  c_ds->add_option("mode", ds_mode, "scalar or ym")
      ->check(CLI::IsMember({"scalar", "ym"}));
  auto* ds_l_opt = c_ds->add_option("--lambda", ds_lambda, "scalar coupling");
  auto* ds_g_opt = c_ds->add_option("--g", ds_g, "gauge coupling");
  c_ds->add_option("--N", ds_N, "color factor (lambda = N g^2)");
  c_ds->add_option("--mu", ds_mu, "scale");
  c_ds->add_flag("--selftest", ds_self, "run the module property suite");

  // lattice-run
  mg::LatticeRunConfig lat;
  std::string lat_series;
  bool lat_self = false;
  auto* c_lat = app.add_subcommand("lattice-run",
                                   "symplectic evolution from exact data");
  c_lat->add_option("--dim", lat.dim, "0 = rest-frame ODE, 1 = 1+1D")
      ->check(CLI::Range(0, 1));
  c_lat->add_option("--lambda", lat.lambda, "coupling");
  c_lat->add_option("--mu", lat.mu, "scale");
  c_lat->add_option("--periods", lat.periods, "run length in wave periods");
  c_lat->add_option("--sites", lat.sites_per_wavelength,
                    "sites per wavelength (dim 1)");
  c_lat->add_option("--dt-frac", lat.dt_frac, "dt / spacing (dim 1)");
  c_lat->add_option("--steps-per-period", lat.steps_per_period,
                    "time resolution (dim 0)");
  c_lat->add_option("--p1", lat.p1, "traveling-wave momentum (dim 1)");
  c_lat->add_option("--chi", lat.chi, "initial phase");
  c_lat->add_option("--samples", lat.target_samples,
                    "record roughly this many probe samples (power of two)");
  c_lat->add_option("--series", lat_series, "write the probe series CSV here");
  c_lat->add_flag("--selftest", lat_self, "run the module property suite");

  // measure-gap
  std::string mgap_input;
  double mgap_min_periods = 32.0;
  bool mgap_self = false;
  auto* c_mg = app.add_subcommand("measure-gap",
                                  "FFT mass-gap estimate from a series CSV");
  c_mg->add_option("--input", mgap_input, "series CSV (t,phi)");
  c_mg->add_option("--min-periods", mgap_min_periods,
                   "required span in fundamental periods");
  c_mg->add_flag("--selftest", mgap_self, "run the module property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (c_ell->parsed()) return run_elliptic(gopt, e_u, e_m, e_self);
    if (c_vc->parsed())
      return run_verify_classical(gopt, vc_lambda, vc_mu, vc_g, vc_alpha,
                                  vc_self);
    if (c_su2->parsed())
      return run_su2_solve(gopt, s_alpha, s_g, s_mu, s_p0, s_p1, s_p2, s_p3,
                           s_self);
    if (c_st->parsed())
      return run_stability(gopt, st_lambda, st_mu, st_p2,
                           st_p2_opt->count() > 0, st_self);
    if (c_sp->parsed())
      return run_spectrum(gopt, sp_lambda, sp_mu, sp_nmax, sp_self);
    if (c_pr->parsed())
      return run_propagator(gopt, pr_p2, pr_lambda, pr_mu, pr_eps, pr_nmax,
                            pr_self);
    if (c_ds->parsed())
      return run_ds_check(gopt, ds_mode, ds_lambda, ds_l_opt->count() > 0,
                          ds_g, ds_g_opt->count() > 0, ds_N, ds_mu, ds_self);
    if (c_lat->parsed()) return run_lattice(gopt, lat, lat_series, lat_self);
    if (c_mg->parsed())
      return run_measure_gap(gopt, mgap_input, mgap_min_periods, mgap_self);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // physics/domain failures leave a machine-readable trace
    std::string err = std::string("{\"schema\": 1, \"error\": \"") +
                      mg::detail::json_escape(e.what()) + "\"}\n";
    std::cout << err;
    try {
      fs::create_directories(gopt.out_dir);
      mg::write_text_file(gopt.out_dir + "/error.json", err);
    } catch (...) {
    }
    return 1;
  }
  return 2;
}
