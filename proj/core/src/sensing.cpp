#include "qmfs/sensing.hpp"

#include <cmath>

#include "qmfs/downconv.hpp"
#include "qmfs/error.hpp"

namespace qmfs {

std::string_view to_string(Topology t) {
  return t == Topology::serial ? "serial" : "parallel";
}

Topology topology_from_string(std::string_view s) {
  if (s == "serial") return Topology::serial;
  if (s == "parallel") return Topology::parallel;
  throw DomainError("unknown topology '" + std::string(s) + "'");
}

ProbeModel ProbeModel::bare(const Oscillator& osc) {
  if (osc.omega0() <= 0.0) throw DomainError("probe: omega0 must be positive");
  ProbeModel p;
  p.osc_ = osc;
  p.product_ = osc.readout_rate() * osc.omega0();
  return p;
}

ProbeModel ProbeModel::free_mass(double product) {
  if (!(product > 0.0)) throw DomainError("free-mass probe: Gamma_P Omega_P must be > 0");
  ProbeModel p;
  p.product_ = product;
  return p;
}

const Oscillator& ProbeModel::oscillator() const {
  if (!osc_) throw DomainError("probe: free-mass model has no oscillator parameters");
  return *osc_;
}

cplx ProbeModel::response(double omega) const noexcept {
  if (!osc_) return {-omega * omega, 0.0};
  const double w0 = osc_->omega0();
  return {(w0 - omega) * (w0 + omega), -2.0 * osc_->damping() * omega};
}

double ProbeModel::inverse_q() const noexcept {
  return osc_ ? 2.0 * osc_->damping() / osc_->omega0() : 0.0;
}

FreeMassProbe freemass_probe(double j, double kappa) {
  if (!(j > 0.0) || !(kappa > 0.0)) throw DomainError("freemass_probe: J and kappa must be > 0");
  return FreeMassProbe{2.0 * j / kappa};
}

SensingPair::SensingPair(ProbeModel p, EffectiveOscillator a, SqueezeConfig sq, Topology t)
    : probe(std::move(p)), auxiliary(a), squeeze(sq), topology(t) {
  if (t == Topology::serial && sq.mode() != SqueezeMode::single)
    throw DomainError("serial topology requires single-mode squeezing");
  if (t == Topology::parallel && sq.mode() != SqueezeMode::two_mode)
    throw DomainError("parallel topology requires two-mode squeezing");
  if (a.readout_rate < 0.0) throw DomainError("auxiliary: readout rate must be >= 0");
}

bool MatchReport::fully_matched(double rel) const noexcept {
  return qba_match <= rel * qba_scale && freq_match <= rel * freq_scale &&
         damp_match <= rel * damp_scale;
}

MatchReport match_report(const SensingPair& pair) {
  const auto& a = pair.auxiliary;
  MatchReport m;
  const double p = pair.probe.product();
  m.qba_scale = std::abs(p);
  m.qba_match = std::abs(a.readout_rate * a.omega_eff + p);
  const double wp = pair.probe.is_free_mass() ? 0.0 : pair.probe.oscillator().omega0();
  const double gp = pair.probe.is_free_mass() ? 0.0 : pair.probe.oscillator().damping();
  m.freq_scale = wp * wp;
  m.freq_match = std::abs(a.omega_eff * a.omega_eff - wp * wp);
  m.damp_scale = gp + a.damping;
  m.damp_match = std::abs(a.damping - gp);
  const double inv_qa = a.omega_eff != 0.0 ? 2.0 * a.damping / std::abs(a.omega_eff) : 0.0;
  m.inverse_q_gap = pair.probe.inverse_q() - inv_qa;
  return m;
}

cplx probe_response(const SensingPair& pair, double omega) { return pair.probe.response(omega); }

cplx auxiliary_response(const SensingPair& pair, double omega) {
  return effective_response(pair.auxiliary, omega);
}

double reduced_thermal_psd(const EffectiveOscillator& aux, double omega) {
  const double wa = std::abs(aux.omega_eff);
  if (wa == 0.0) throw DomainError("reduced_thermal_psd: Omega_Aeff = 0");
  const double gm = aux.damping + aux.mu();
  return (wa * wa + gm * gm + omega * omega) / (2.0 * wa) * aux.thermal_psd();
}

cplx k_res(const SensingPair& pair, double omega) {
  const auto& osc = pair.probe.oscillator();
  const double gp = osc.readout_rate();
  const double ga = pair.auxiliary.readout_rate;
  if (!(gp > 0.0) || !(ga > 0.0)) throw DomainError("k_res: readout rates must be > 0");
  if (pair.auxiliary.omega_eff == 0.0) throw DomainError("k_res: Omega_Aeff = 0");
  const cplx inv_chi_p = pair.probe.response(omega) / osc.omega0();
  const cplx inv_chi_a = auxiliary_response(pair, omega) / pair.auxiliary.omega_eff;
  return std::sqrt(ga / gp) * inv_chi_p + std::sqrt(gp / ga) * inv_chi_a;
}

cplx response_mismatch(const SensingPair& pair, double omega) {
  const auto& a = pair.auxiliary;
  const double ga_wa = a.readout_rate * a.omega_eff;
  if (ga_wa == 0.0) throw DomainError("response_mismatch: Gamma_Aeff Omega_Aeff = 0");
  return pair.probe.response(omega) +
         auxiliary_response(pair, omega) * (pair.probe.product() / ga_wa);
}

namespace {

// Gamma_A chi_A and Gamma_A |chi_A|^2 S_Teff, both finite at Omega_A = 0.
struct AuxTerms {
  cplx g;
  double thermal;
};

AuxTerms aux_terms(const EffectiveOscillator& a, double omega) {
  const cplx d = effective_response(a, omega);
  const double gm = a.damping + a.mu();
  const double we2 = a.omega_eff * a.omega_eff;
  return {a.readout_rate * a.omega_eff / d,
          a.readout_rate * (we2 + gm * gm + omega * omega) / (2.0 * std::norm(d)) *
              a.thermal_psd()};
}

double reduced_serial(cplx d_p, double p, const AuxTerms& t, double r, double extra) {
  const double e2r = std::exp(2.0 * r);
  const double dp2 = std::norm(d_p);
  return 0.5 * (dp2 / p / e2r + std::norm(t.g * d_p + p) / p * e2r +
                2.0 * dp2 * (t.thermal + 0.5 * extra) / p);
}

// Quadratic form in the auxiliary weight; the auxiliary output is rescaled
// by 1/(sqrt(G_A) chi_A) relative to the probe's force units, which keeps
// every term finite as G_A -> 0.
struct ParallelForm {
  double a;
  cplx b;
  double c;
};

ParallelForm parallel_form(cplx d_p, double p, const AuxTerms& t, double r, double extra) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double sp = std::sqrt(p);
  return {0.5 * ch * sum_noise(d_p, p), 0.5 * sh * (sp * t.g - std::conj(d_p) / sp),
          0.5 * ch * (1.0 + std::norm(t.g)) + t.thermal + extra};
}

double reduced_parallel(cplx d_p, double p, const AuxTerms& t, double r, double extra) {
  const auto f = parallel_form(d_p, p, t, r, extra);
  return f.a - std::norm(f.b) / f.c;
}

}  // namespace

double sum_noise(cplx response, double product) {
  return std::norm(response) / product + product;
}

double serial_force_psd(const SensingPair& pair, double omega) {
  const auto& osc = pair.probe.oscillator();
  const auto& a = pair.auxiliary;
  const double gp = osc.readout_rate();
  if (!(gp > 0.0)) throw DomainError("serial_force_psd: probe readout rate must be > 0");
  const double r = pair.squeeze.r();
  const cplx inv_chi_p = pair.probe.response(omega) / osc.omega0();
  const double ichi2 = std::norm(inv_chi_p);
  // sqrt(G_A) chi_A K_res written without dividing by G_A or Omega_A.
  const auto t = aux_terms(a, omega);
  const cplx chi_p = 1.0 / inv_chi_p;
  const cplx ga_chi_kres = (t.g + gp * chi_p) / (std::sqrt(gp) * chi_p);
  // G_A |chi_A|^2 * 2 |chi_P^-1|^2 S~_T / (G_P |Omega_A|) = 2 |chi_P^-1|^2 / G_P * G_A |chi_A|^2 S_Teff.
  return 0.5 * (ichi2 / gp * std::exp(-2.0 * r) + std::norm(ga_chi_kres) * std::exp(2.0 * r) +
                2.0 * ichi2 / gp * t.thermal);
}

double parallel_force_psd(const SensingPair& pair, double omega) {
  const auto& osc = pair.probe.oscillator();
  const auto& a = pair.auxiliary;
  const double wp = osc.omega0();
  const double wa = std::abs(a.omega_eff);
  const double r = pair.squeeze.r();
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double kp = sum_noise(pair.probe.response(omega), osc.readout_rate() * wp);
  const double ka = sum_noise(auxiliary_response(pair, omega), a.readout_rate * wa);
  const double st = reduced_thermal_psd(a, omega);
  const double kres2 = std::norm(k_res(pair, omega));
  return (kp * (ka + 2.0 * st * ch) + wp * wa * kres2 * sh * sh) / (ka * ch + 2.0 * st) /
         (2.0 * wp);
}

cplx parallel_optimal_weight(const SensingPair& pair, double omega) {
  const auto& osc = pair.probe.oscillator();
  const auto t = aux_terms(pair.auxiliary, omega);
  const auto f = parallel_form(pair.probe.response(omega), pair.probe.product(), t,
                               pair.squeeze.r(), 0.0);
  // The reduced form measures the probe estimate in units scaled by
  // sqrt(Omega_P); b_A^s enters unscaled.
  return -std::conj(f.b) / f.c / std::sqrt(osc.omega0());
}

double reduced_force_psd(const SensingPair& pair, double omega, double extra_aux_psd) {
  if (extra_aux_psd < 0.0) throw DomainError("reduced_force_psd: negative extra noise");
  const cplx d_p = pair.probe.response(omega);
  const double p = pair.probe.product();
  const auto t = aux_terms(pair.auxiliary, omega);
  const double r = pair.squeeze.r();
  return pair.topology == Topology::serial ? reduced_serial(d_p, p, t, r, extra_aux_psd)
                                           : reduced_parallel(d_p, p, t, r, extra_aux_psd);
}

std::pair<double, double> matched_psds(const SensingPair& pair, double omega) {
  const auto m = match_report(pair);
  if (!m.fully_matched())
    throw MismatchError(!m.qba_matched() ? "qba" : (m.freq_match > 1e-10 * m.freq_scale ? "frequency" : "damping"),
                        "matched_psds: matching conditions violated; use partial_match_psds or "
                        "reduced_force_psd");
  const double r = pair.squeeze.r();
  const double p = pair.probe.product();
  const double kp = sum_noise(pair.probe.response(omega), p);
  const double st = reduced_thermal_psd(pair.auxiliary, omega);
  const double ch = std::cosh(2.0 * r);
  const double ser = 0.5 * (std::norm(pair.probe.response(omega)) / p * std::exp(-2.0 * r) + 2.0 * st);
  const double par = 0.5 * kp * (kp + 2.0 * st * ch) / (kp * ch + 2.0 * st);
  return {ser, par};
}

std::pair<double, double> partial_match_psds(const SensingPair& pair, double omega) {
  const auto m = match_report(pair);
  if (!m.qba_matched())
    throw MismatchError("qba", "partial_match_psds: Gamma_A Omega_A != -Gamma_P Omega_P");
  const double r = pair.squeeze.r();
  const double p = pair.probe.product();
  const auto& a = pair.auxiliary;
  const cplx d_p = pair.probe.response(omega);
  const cplx d_a = auxiliary_response(pair, omega);
  const double kp = sum_noise(d_p, p);
  const double ka = sum_noise(d_a, a.readout_rate * std::abs(a.omega_eff));
  const double st = reduced_thermal_psd(a, omega);
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const cplx ratio = d_p / d_a;
  const double ser = 0.5 * (std::norm(d_p) / p * std::exp(-2.0 * r) +
                            p * std::norm(ratio - 1.0) * std::exp(2.0 * r) +
                            2.0 * std::norm(ratio) * st);
  const double par =
      0.5 * (kp * (ka + 2.0 * st * ch) + std::norm(d_p - d_a) * sh * sh) / (ka * ch + 2.0 * st);
  return {ser, par};
}

EffectiveOscillator matched_auxiliary(double probe_product, double omega_eff, double damping,
                                      double occupancy, Compensation compensation) {
  if (!(omega_eff < 0.0))
    throw DomainError("matched_auxiliary: a positive-mass probe needs Omega_Aeff < 0");
  if (!(damping > 0.0)) throw DomainError("matched_auxiliary: damping must be > 0");
  if (occupancy < 0.0) throw DomainError("matched_auxiliary: occupancy must be >= 0");
  EffectiveOscillator a;
  a.readout_rate = -probe_product / omega_eff;
  a.omega_eff = omega_eff;
  a.detuning = -omega_eff;  // s = -1
  a.sign = -1;
  a.damping = damping;
  a.occupancy = occupancy;
  a.compensation = compensation;
  return a;
}

bool pragmatic_criterion(double omega_eff, double omega_low) {
  return std::abs(omega_eff) < omega_low;
}

}  // namespace qmfs
