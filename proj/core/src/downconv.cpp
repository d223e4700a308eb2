#include "qmfs/downconv.hpp"

#include <cmath>

#include "qmfs/error.hpp"

namespace qmfs {

cplx effective_response(const EffectiveOscillator& eff, double omega) {
  const double we = eff.omega_eff;
  const double g = eff.damping;
  const double mu = eff.mu();
  return cplx{we * we + g * g - mu * mu - omega * omega, -2.0 * g * omega};
}

cplx effective_susceptibility(const EffectiveOscillator& eff, double omega) {
  return eff.omega_eff / effective_response(eff, omega);
}

std::pair<double, double> quadrature_damping(double gamma, double mu) {
  return {gamma - mu, gamma + mu};
}

std::map<int, cplx> extraneous_qba_gains(const Oscillator& osc, const CouplingEnvelope& env,
                                         double omega) {
  return extraneous_qba_gains(effective_params(osc, env), env, omega);
}

std::map<int, cplx> extraneous_qba_gains(const EffectiveOscillator& eff,
                                         const CouplingEnvelope& env, double omega) {
  const double k1 = env.first_harmonic();
  if (k1 == 0.0) throw DomainError("extraneous_qba_gains: k_1 = 0, no effective oscillator");
  const cplx pre = cplx{0.0, eff.sign * eff.readout_rate / (2.0 * k1)};
  const cplx lower = std::polar(1.0, -eff.phase) / inverse_lorentzian(eff.damping, omega - eff.detuning);
  const cplx upper = std::polar(1.0, eff.phase) / inverse_lorentzian(eff.damping, omega + eff.detuning);
  std::map<int, cplx> out;
  const int reach = env.support() + 1;
  for (int n = -reach; n <= reach; ++n) {
    if (n == 0) continue;
    const cplx g = pre * (lower * env.coeff(n + 1) - upper * env.coeff(n - 1));
    if (g != cplx{}) out.emplace(n, g);
  }
  return out;
}

double extraneous_qba_psd(const std::map<int, cplx>& gains) {
  double s = 0.0;
  for (const auto& [n, g] : gains) s += 0.5 * std::norm(g);
  return s;
}

double effective_force_psd(const EffectiveOscillator& eff, double s_t, double omega) {
  if (s_t < 0.0) throw DomainError("effective_force_psd: S_T must be >= 0");
  if (eff.omega_eff == 0.0)
    throw DomainError("effective_force_psd: Omega_eff = 0, effective force is undefined");
  const double we2 = eff.omega_eff * eff.omega_eff;
  const double gm = eff.damping + eff.mu();
  return (we2 + gm * gm + omega * omega) / (2.0 * we2) * s_t;
}

double effective_io_psd(const EffectiveOscillator& eff, const SqueezeConfig& squeeze, double s_t,
                        double omega, ExtraneousQba extraneous, const CouplingEnvelope& env) {
  if (s_t < 0.0) throw DomainError("effective_io_psd: S_T must be >= 0");
  const cplx den = effective_response(eff, omega);
  const double den2 = std::norm(den);
  const double ge = eff.readout_rate;
  const double we2 = eff.omega_eff * eff.omega_eff;
  const double gm = eff.damping + eff.mu();
  double s = squeeze.phase_psd();
  s += ge * ge * we2 / den2 * squeeze.amplitude_psd();
  // G_eff |chi_eff|^2 S_feff with the Omega_eff^2 cancelled.
  s += ge * (we2 + gm * gm + omega * omega) / (2.0 * den2) * s_t;
  if (extraneous == ExtraneousQba::include)
    s += extraneous_qba_psd(extraneous_qba_gains(eff, env, omega));
  return s;
}

}  // namespace qmfs
