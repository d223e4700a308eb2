#include "model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qmfs/downconv.hpp"
#include "qmfs/gwd.hpp"
#include "qmfs/suppression.hpp"

namespace qmfs::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ProbeModel make_probe(const ProbeConfig& p) {
  if (p.free_mass) {
    const double j = std::pow(two_pi, 3) * p.free_mass->j_hz3;
    return freemass_probe(j, hz_to_rad(p.free_mass->kappa_hz)).model();
  }
  const double w0 = hz_to_rad(*p.omega0_hz);
  return ProbeModel::bare(Oscillator({w0, hz_to_rad(*p.gamma_hz), hz_to_rad(*p.gamma_rate_hz),
                                      p.mass_kg ? *p.mass_kg * w0 : 1.0, p.n_t}));
}

}  // namespace

std::vector<double> read_pulse_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open pulse file");
  std::stringstream text;
  text << in.rdbuf();
  std::string s = text.str();
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream tokens(s);
  std::vector<double> out;
  std::string tok;
  while (tokens >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ConfigError(path.string(), "not a number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.size() < 3) throw ConfigError(path.string(), "pulse needs at least 3 samples");
  return out;
}

CouplingEnvelope build_envelope(const DriveConfig& d) {
  const double wt = hz_to_rad(d.omega_tilde_hz);
  if (d.type == DriveType::two_tone) return two_tone_envelope(wt, d.phi);
  const double half_period = std::numbers::pi / wt;
  UnitPulse pulse;
  if (d.pulse_file) {
    pulse = sampled_pulse(read_pulse_samples(*d.pulse_file), half_period);
  } else {
    pulse = UnitPulse{[wt](double t) { return std::numbers::sqrt2 * std::cos(wt * t); }, half_period};
  }
  return stroboscopic_envelope(pulse, d.phi / wt, wt, d.n_max);
}

SpectraModel build_model(const RunConfig& cfg, std::ostream& log) {
  ProbeModel probe = make_probe(cfg.probe);
  CouplingEnvelope env = build_envelope(cfg.auxiliary.drive);
  const auto& ac = cfg.auxiliary;

  double rate = 0.0;
  if (ac.gamma_rate_hz) {
    rate = hz_to_rad(*ac.gamma_rate_hz);
  } else {
    const Oscillator trial({hz_to_rad(ac.omega0_hz), hz_to_rad(ac.gamma_hz), 1.0, 1.0, ac.n_t});
    const auto eff = effective_params(trial, env, ac.compensation);
    if (!(eff.omega_eff < 0.0))
      throw ConfigError("/auxiliary/Gamma_hz",
                        "cannot derive from back-action matching: Omega_Aeff must be negative");
    const double k1 = env.first_harmonic();
    rate = -probe.product() / eff.omega_eff / (k1 * k1);
  }
  Oscillator aux_bare({hz_to_rad(ac.omega0_hz), hz_to_rad(ac.gamma_hz), rate, 1.0, ac.n_t});
  const auto aux = effective_params(aux_bare, env, ac.compensation);

  const SqueezeMode mode = cfg.squeeze.mode.value_or(
      cfg.topology == Topology::serial ? SqueezeMode::single : SqueezeMode::two_mode);
  SensingPair pair(probe, aux, SqueezeConfig::from_db(cfg.squeeze.r_db, mode), cfg.topology);

  const auto& g = cfg.grid;
  auto grid = g.log_spacing ? log_grid(g.f_min_hz, g.f_max_hz, g.points)
                            : linear_grid(g.f_min_hz, g.f_max_hz, g.points);

  if (!aux.within_validity())
    log << "warning: auxiliary validity ratio max(|Lambda|, gamma)/omega_tilde = "
        << aux.validity_ratio << " exceeds 0.1\n";
  if (!aux_bare.high_q()) log << "warning: auxiliary quality factor is below " << kHighQThreshold << "\n";
  if (probe.is_free_mass() && !pragmatic_criterion(aux.omega_eff))
    log << "warning: |Omega_Aeff| is not below the 20 Hz band edge\n";
  const auto& sup = cfg.suppression;
  if (sup.scheme == SuppressionScheme::measured) {
    const auto sep = check_separation({hz_to_rad(sup.kappa_filter_hz), sup.eta_aux},
                                      hz_to_rad(grid.back()), env.omega_tilde());
    if (!sep.ok())
      log << "warning: filter cavity separation not satisfied (band/kappa = " << sep.band_ratio
          << ", kappa/omega_tilde = " << sep.filter_ratio << ")\n";
  } else if (sup.scheme == SuppressionScheme::twin && sup.n < required_cascade_size(env)) {
    log << "note: a cascade of " << sup.n << " leaves extraneous rungs; "
        << required_cascade_size(env) << " members cancel all of them\n";
  }

  return SpectraModel{std::move(probe), cfg.probe.mass_kg, aux_bare, env, aux, pair,
                      sup, std::move(grid)};
}

std::vector<std::string> SpectraModel::columns() const {
  std::vector<std::string> c{"f_hz"};
  if (!probe.is_free_mass()) c.push_back("S_f_norm");
  c.push_back("S_F_per_hbar_m");
  if (mass) {
    c.push_back("S_F_dim");
    c.push_back("S_x");
  }
  c.push_back(probe.is_free_mass() ? "d_mismatch_abs" : "k_res_abs");
  c.push_back("extraneous_residual");
  c.push_back("validity_ratio");
  return c;
}

double SpectraModel::residual_extraneous_psd(double omega) const {
  const auto gains = extraneous_qba_gains(aux, envelope, omega);
  switch (suppression.scheme) {
    case SuppressionScheme::none:
      return extraneous_qba_psd(gains);
    case SuppressionScheme::measured:
      return measured_suppression(extraneous_qba_psd(gains),
                                  {hz_to_rad(suppression.kappa_filter_hz), suppression.eta_aux});
    case SuppressionScheme::twin:
      return twin_residual_psd(gains, suppression.n);
  }
  return 0.0;
}

std::vector<double> SpectraModel::evaluate(double f_hz) const {
  const double w = hz_to_rad(f_hz);
  const double extra = residual_extraneous_psd(w);
  const double reduced = reduced_force_psd(pair, w, extra);
  std::vector<double> row{f_hz};
  if (!probe.is_free_mass()) row.push_back(reduced / probe.oscillator().omega0());
  row.push_back(reduced);
  if (mass) {
    row.push_back(hbar * *mass * reduced);
    row.push_back(displacement_psd(reduced, *mass, w));
  }
  if (probe.is_free_mass()) {
    row.push_back(aux.readout_rate * aux.omega_eff != 0.0 ? std::abs(response_mismatch(pair, w)) : nan);
  } else {
    const bool ok = aux.readout_rate > 0.0 && aux.omega_eff != 0.0;
    row.push_back(ok ? std::abs(k_res(pair, w)) : nan);
  }
  row.push_back(extra);
  row.push_back(aux.validity_ratio);
  return row;
}

}  // namespace qmfs::cli
