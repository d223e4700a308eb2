#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "commands.hpp"
#include "csv.hpp"
#include "qmfs/downconv.hpp"
#include "qmfs/epr.hpp"
#include "qmfs/gwd.hpp"
#include "qmfs/ladder.hpp"
#include "qmfs/sensing.hpp"
#include "qmfs/suppression.hpp"

namespace qmfs::cli {

namespace {

struct Check {
  std::string name;
  double measured = 0.0;
  double allowed = 0.0;
};

// Two-tone oscillator with gamma = Gamma = 1e-4 W~ and W~/W0 = ratio.
struct TwoToneCase {
  Oscillator osc;
  CouplingEnvelope env;
  EffectiveOscillator eff;
};

TwoToneCase two_tone_case(double ratio, double phi = 0.3) {
  const double w0 = 1.0;
  const double wt = ratio * w0;
  Oscillator osc({w0, 1e-4 * wt, 1e-4 * wt, 1.0, 0.0});
  auto env = two_tone_envelope(wt, phi);
  return {osc, env, effective_params(osc, env, Compensation::raw)};
}

std::vector<double> symmetric_grid(double half_width, int points) {
  return linear_grid(-half_width, half_width, points);
}

Check ladder_vs_effective(double ratio) {
  const auto c = two_tone_case(ratio);
  double worst = 0.0;
  for (double w : symmetric_grid(10.0 * std::abs(c.eff.detuning), 41)) {
    const auto t = badcavity_transfer(c.osc, c.env, w);
    const double lad = output_psd(t, RungInputs::vacuum(t));
    const double eff = effective_io_psd(c.eff, SqueezeConfig{}, 0.0, w, ExtraneousQba::include, c.env);
    worst = std::max(worst, std::abs(lad - eff) / eff);
  }
  return {"ladder PSD vs effective model, W~/|W0| = " + format_double(ratio), worst, 1e-2};
}

Check extraneous_vs_ladder() {
  const auto c = two_tone_case(0.999);
  const double lam = std::abs(c.eff.detuning);
  double worst = 0.0;
  for (double w : symmetric_grid(10.0 * lam, 21)) {
    const auto t = badcavity_transfer(c.osc, c.env, w);
    const auto g = extraneous_qba_gains(c.eff, c.env, w);
    for (int n : {-2, 2})
      worst = std::max(worst, std::abs(t.amplitude_gain(n) - g.at(n)) / std::abs(g.at(n)));
  }
  const double tol = 5.0 * std::max({10.0 * lam, c.osc.damping(), c.osc.readout_rate()}) /
                     c.env.omega_tilde();
  return {"extraneous gains vs ladder rungs +-2", worst, tol};
}

Check constant_drive() {
  Oscillator osc({1.0, 0.01, 0.2, 1.0, 0.0});
  CouplingEnvelope env(1.0, {cplx{1.0, 0.0}});
  double worst = 0.0;
  for (double w : linear_grid(-3.0, 3.0, 31)) {
    const auto t = badcavity_transfer(osc, env, w);
    const cplx expect = osc.readout_rate() * susceptibility(osc, w);
    worst = std::max(worst, std::abs(t.amplitude_gain(0) - expect) / std::abs(expect));
  }
  return {"constant drive reproduces Gamma chi", worst, 1e-12};
}

Check truncation_invariance() {
  const auto c = two_tone_case(1.001);
  double worst = 0.0;
  for (double w : {-1e-3, 0.0, 2e-3}) {
    const auto a = badcavity_transfer(c.osc, c.env, w);
    const auto b = badcavity_transfer(c.osc, c.env, w, a.n_max + 5);
    for (int p = -a.amplitude_rungs(); p <= a.amplitude_rungs(); ++p)
      worst = std::max(worst, std::abs(a.amplitude_gain(p) - b.amplitude_gain(p)));
  }
  return {"rung truncation invariance", worst, 1e-15};
}

TwinCascade twin_case() {
  Oscillator osc({1.0, 1e-4, 2e-4, 1.0, 0.0});
  return TwinCascade::uniform(osc, two_tone_envelope(1.001, 0.0), 2);
}

Check twin_residual(bool nominal) {
  const auto tc = twin_case();
  double worst = 0.0;
  for (double w : linear_grid(-1e-2, 1e-2, 50)) {
    const auto r = twin_cancellation_transfer(tc, w);
    worst = std::max(worst, nominal ? r.nominal_error : r.extraneous_residual);
  }
  return nominal ? Check{"twin cascade nominal gain vs single oscillator", worst, 1e-8}
                 : Check{"twin cascade extraneous residual", worst, 1e-10};
}

struct MatchedCase {
  Oscillator probe;
  EffectiveOscillator aux;
};

MatchedCase matched_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double wp = 1.0 + 9.0 * u(rng);
  const double gp = wp * std::pow(10.0, -3.0 + 2.0 * u(rng));
  const double rate = std::pow(10.0, -1.0 + 2.0 * u(rng));
  Oscillator probe({wp, gp, rate, 1.0, 0.0});
  auto aux = matched_auxiliary(rate * wp, -wp, gp, 10.0 * u(rng));
  return {probe, aux};
}

Check matched_null() {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto m = matched_case(rng);
    SensingPair pair(ProbeModel::bare(m.probe), m.aux, SqueezeConfig{}, Topology::serial);
    for (double w : linear_grid(0.01, 20.0, 50)) {
      const double scale = std::abs(pair.probe.response(w) / m.probe.omega0()) *
                           std::sqrt(m.aux.readout_rate / m.probe.readout_rate());
      worst = std::max(worst, std::abs(k_res(pair, w)) / scale);
    }
  }
  return {"matching null |K_res| (relative)", worst, 1e-10};
}

Check matched_identity(Topology topo) {
  std::mt19937_64 rng(topo == Topology::serial ? 21 : 22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto m = matched_case(rng);
    const auto mode = topo == Topology::serial ? SqueezeMode::single : SqueezeMode::two_mode;
    SensingPair pair(ProbeModel::bare(m.probe), m.aux, SqueezeConfig(1.5 * u(rng), mode), topo);
    for (int i = 0; i < 20; ++i) {
      const double w = 20.0 * u(rng);
      const auto [ser, par] = matched_psds(pair, w);
      const double general = m.probe.omega0() * (topo == Topology::serial ? serial_force_psd(pair, w)
                                                                         : parallel_force_psd(pair, w));
      const double special = topo == Topology::serial ? ser : par;
      worst = std::max(worst, std::abs(general - special) / special);
    }
  }
  return {topo == Topology::serial ? "serial general vs matched form"
                                   : "parallel general vs matched form",
          worst, 1e-10};
}

// Force-estimate noise of b_P/(sqrt(G_P) chi_P) + alpha b_A built from the
// individual input quadratures and their two-mode correlations.
double combination_psd(const SensingPair& pair, double w, cplx alpha) {
  const auto& p = pair.probe.oscillator();
  const auto& a = pair.auxiliary;
  const double r = pair.squeeze.r();
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  const cplx chi_a = effective_susceptibility(a, w);
  const cplx u = pair.probe.response(w) / p.omega0() / std::sqrt(p.readout_rate());
  // inputs: a_P^c, a_P^s, a_A^c, a_A^s, f_A
  const cplx v[5] = {std::sqrt(p.readout_rate()), u, alpha * a.readout_rate * chi_a, alpha,
                     alpha * std::sqrt(a.readout_rate) * chi_a};
  const double m[5][5] = {{c, 0, s, 0, 0},
                          {0, c, 0, -s, 0},
                          {s, 0, c, 0, 0},
                          {0, -s, 0, c, 0},
                          {0, 0, 0, 0, effective_force_psd(a, a.thermal_psd(), w)}};
  double total = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) total += (v[i] * std::conj(v[j])).real() * m[i][j];
  return total;
}

double brute_force_minimum(const std::function<double(cplx)>& f) {
  cplx x{};
  double fx = f(x);
  double step = 1.0;
  while (step > 1e-12) {
    bool moved = false;
    for (cplx d : {cplx{step, 0}, cplx{-step, 0}, cplx{0, step}, cplx{0, -step}}) {
      const double fy = f(x + d);
      if (fy < fx) {
        x += d;
        fx = fy;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return fx;
}

Check alpha_oracle() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double wp = 1.0 + 4.0 * u(rng);
    Oscillator probe({wp, 0.05 * wp * u(rng) + 1e-3, 0.2 + u(rng), 1.0, 0.0});
    EffectiveOscillator aux;
    aux.readout_rate = 0.2 + u(rng);
    aux.omega_eff = -(0.5 + 4.0 * u(rng));
    aux.damping = 0.01 + 0.1 * u(rng);
    aux.occupancy = 3.0 * u(rng);
    SensingPair pair(ProbeModel::bare(probe), aux, SqueezeConfig(u(rng), SqueezeMode::two_mode),
                     Topology::parallel);
    const double w = 6.0 * u(rng);
    const double brute = brute_force_minimum([&](cplx al) { return combination_psd(pair, w, al); });
    const double formula = parallel_force_psd(pair, w);
    worst = std::max(worst, std::abs(brute - formula) / formula);
  }
  return {"parallel optimum vs brute-force weight search", worst, 1e-6};
}

Check stroboscopic_even() {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  const double wt = 1.0;
  const double half = std::numbers::pi / wt;
  for (int k = 0; k < 10; ++k) {
    // Random samples tapered to zero at both edges.
    std::vector<double> samples(33);
    for (std::size_t i = 0; i < samples.size(); ++i)
      samples[i] = u(rng) * std::sin(std::numbers::pi * i / (samples.size() - 1));
    const auto env = stroboscopic_envelope(sampled_pulse(samples, half), u(rng), wt, 63);
    for (int n = -env.n_max(); n <= env.n_max(); ++n)
      if (n % 2 == 0) worst = std::max(worst, std::abs(env.coeff(n)));
  }
  return {"stroboscopic envelopes have no even harmonics", worst, 1e-10};
}

Check n_fold_grid() {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int disagreements = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<cplx> harmonics(7);
      for (int j = 0; j < 7; j += 2) harmonics[j] = {u(rng), u(rng)};
      const auto env = CouplingEnvelope::from_harmonics(1.0, harmonics);
      Oscillator osc({1.001, 1e-4, 1e-4, 1.0, 0.0});
      const auto tc = TwinCascade::uniform(osc, env, n);
      for (const auto& r : n_fold_cancellation_report(tc, 3e-4))
        if (std::abs(r.rung) <= 12 && r.observed != r.predicted) ++disagreements;
    }
  }
  return {"N-fold cancellation rule, N = 2..4, |n| <= 12", static_cast<double>(disagreements), 0.0};
}

Check full_cavity_limit() {
  const auto c = two_tone_case(1.001);
  const double kappa = 1e3 * c.env.omega_tilde();
  const auto cav = CavityParams::from_readout_rate(kappa, c.osc.readout_rate());
  double worst = 0.0;
  for (double w : symmetric_grid(1e-2, 11)) {
    const auto a = badcavity_transfer(c.osc, c.env, w);
    const auto b = fullcavity_transfer(c.osc, c.env, cav, w);
    for (int p = -a.amplitude_rungs(); p <= a.amplitude_rungs(); ++p) {
      if (std::abs(a.amplitude_gain(p)) == 0.0) continue;
      worst = std::max(worst, std::abs(std::abs(b.amplitude_gain(p)) - std::abs(a.amplitude_gain(p))) /
                                  std::abs(a.amplitude_gain(p)));
    }
  }
  return {"full cavity -> bad cavity at kappa/W~ = 1e3", worst, 1e-2};
}

Check good_cavity_filter() {
  const auto c = two_tone_case(1.001);
  const double wt = c.env.omega_tilde();
  const double kappa = 0.1 * wt;
  const auto cav = CavityParams::from_readout_rate(kappa, c.osc.readout_rate());
  double worst = 0.0;
  const double expect = std::abs(kappa / cplx{kappa, -2.0 * wt});
  for (double w : symmetric_grid(1e-3, 5)) {
    const auto a = badcavity_transfer(c.osc, c.env, w);
    const auto b = fullcavity_transfer(c.osc, c.env, cav, w);
    for (int p : {-2, 2}) {
      const double ratio = std::abs(b.amplitude_gain(p)) / std::abs(a.amplitude_gain(p));
      worst = std::max(worst, std::abs(ratio - expect) / expect);
    }
  }
  return {"good-cavity extraneous suppression vs cavity Lorentzian", worst, 1e-2};
}

std::vector<Check> fig5_checks() {
  const auto rows = fig5_curves(GwdPreset::table_one(AuxiliaryKind::spin));
  double min_par = 1e300;
  double dip = 1e300, par_at_dip = 0.0;
  double hf = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.f_hz >= 30.0 && r.f_hz <= 1000.0) min_par = std::min(min_par, r.gain_parallel_db);
    if (r.f_hz >= 8.0 && r.f_hz <= 12.0 && i > 0 && i + 1 < rows.size() &&
        r.gain_serial_db <= rows[i - 1].gain_serial_db && r.gain_serial_db <= rows[i + 1].gain_serial_db &&
        r.gain_serial_db < dip) {
      dip = r.gain_serial_db;
      par_at_dip = r.gain_parallel_db;
    }
    if (r.f_hz >= 500.0) hf = std::max(hf, std::abs(r.gain_serial_db - r.gain_parallel_db));
  }
  return {{"detector curves, spin: -min parallel gain on 30-1000 Hz (dB)", -min_par, 0.0},
          {"detector curves, spin: serial dip in 8-12 Hz minus parallel + 10 dB", dip - par_at_dip + 10.0, 0.0},
          {"detector curves, spin: |serial - parallel| on 500-2000 Hz (dB)", hf, 1.0}};
}

// Resonance (pole magnitude) from the peak of |W chi_eff(W)|.
double resonance_peak(const EffectiveOscillator& eff, double step) {
  double best = 0.0, where = 0.0;
  for (double w = step; w < 3.0 * std::abs(eff.omega_eff); w += step) {
    const double v = std::abs(w * effective_susceptibility(eff, w));
    if (v > best) {
      best = v;
      where = w;
    }
  }
  return where;
}

Check parametric_pole() {
  EffectiveOscillator eff;
  eff.omega_eff = 1.0;
  eff.damping = 0.3;
  eff.readout_rate = 1.0;
  const double step = 1e-4;
  eff.compensation = Compensation::parametric;
  const double par = resonance_peak(eff, step);
  eff.compensation = Compensation::raw;
  const double raw = resonance_peak(eff, step);
  const double err = std::max(std::abs(par - 1.0), std::abs(raw - std::sqrt(1.09)));
  return {"parametric pole at |Omega_eff| (grid steps off)", err / step, 1.0};
}

Check epr_numbers() {
  const double a = std::abs(duan_sum_thermal({2.0, 2.0, 1.0, 1.0}) - 0.5);
  const double b = std::abs(duan_bound_loss({1.0, 1.0, 1.0, 0.45}) - std::sqrt(0.55 / 2.35));
  return {"Duan thermal sum and loss bound", std::max(a, b), 1e-12};
}

// Optimal subtraction gain found by golden-section search.
Check measured_scheme() {
  double worst = 0.0;
  const double g = 0.7;
  for (int k = 0; k <= 10; ++k) {
    const double eta = 0.1 * k;
    auto residual = [&](double c) {
      return 0.5 * ((g - c * std::sqrt(eta)) * (g - c * std::sqrt(eta)) + c * c * (1.0 - eta));
    };
    double lo = -2.0, hi = 2.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
      const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
      if (residual(x1) < residual(x2))
        hi = x2;
      else
        lo = x1;
    }
    const double numeric = residual(0.5 * (lo + hi));
    const double formula = measured_suppression(0.5 * g * g, {1.0, eta});
    worst = std::max(worst, std::abs(numeric - formula) / (0.5 * g * g));
  }
  return {"measured suppression factor 1 - eta", worst, 1e-6};
}

}  // namespace

bool run_verify(const VerifyOptions& opts, std::ostream& out) {
  std::vector<std::function<std::vector<Check>()>> suite;
  auto one = [&](auto f) { suite.push_back([f] { return std::vector<Check>{f()}; }); };
  one([] { return ladder_vs_effective(0.999); });
  one([] { return ladder_vs_effective(1.001); });
  one(extraneous_vs_ladder);
  one(constant_drive);
  one(truncation_invariance);
  one([] { return twin_residual(false); });
  one([] { return twin_residual(true); });
  one(matched_null);
  one([] { return matched_identity(Topology::serial); });
  one([] { return matched_identity(Topology::parallel); });
  one(alpha_oracle);
  one(stroboscopic_even);
  if (opts.level == VerifyLevel::full) {
    one(n_fold_grid);
    one(full_cavity_limit);
    one(good_cavity_filter);
    suite.push_back(fig5_checks);
    one(parametric_pole);
    one(epr_numbers);
    one(measured_scheme);
  }

  int failed = 0, total = 0;
  for (const auto& run : suite) {
    std::vector<Check> checks;
    try {
      checks = run();
    } catch (const std::exception& e) {
      out << "FAIL  (exception) " << e.what() << '\n';
      ++failed;
      ++total;
      continue;
    }
    for (auto& c : checks) {
      if (opts.injected_tolerance) c.allowed = *opts.injected_tolerance;
      const bool ok = c.measured <= c.allowed;
      failed += !ok;
      ++total;
      out << (ok ? "PASS  " : "FAIL  ") << c.name << "  measured=" << format_double(c.measured)
          << " allowed=" << format_double(c.allowed) << '\n';
    }
  }
  out << (total - failed) << "/" << total << " checks passed\n";
  return failed == 0;
}

}  // namespace qmfs::cli
