#pragma once

// Effective (down-converted) oscillator model: susceptibility, extraneous
// back action, effective thermal spectra, and parametric compensation.

#include <map>
#include <utility>

#include "qmfs/core.hpp"

namespace qmfs {

// Omega_eff / (Omega_eff^2 + gamma^2 - mu^2 - W^2 - 2 i gamma W).
// raw: mu = 0; parametric: mu = -gamma; custom: eff.custom_mu.
cplx effective_susceptibility(const EffectiveOscillator& eff, double omega);

// Denominator of the effective susceptibility.
cplx effective_response(const EffectiveOscillator& eff, double omega);

// Damping rates (gamma - mu, gamma + mu) of the two effective quadratures
// under a parametric modulation of depth mu.
std::pair<double, double> quadrature_damping(double gamma, double mu);

// Extraneous back-action gains from a^c(W - n W~) to b^s(W), n != 0:
//   (i s G_eff / (2|k_1|)) [e^{-i Phi} k_{n+1}/l(W - L) - e^{i Phi} k_{n-1}/l(W + L)].
// Rungs with a zero gain are omitted. Throws DomainError if k_1 = 0.
std::map<int, cplx> extraneous_qba_gains(const Oscillator& osc, const CouplingEnvelope& env,
                                         double omega);
std::map<int, cplx> extraneous_qba_gains(const EffectiveOscillator& eff,
                                         const CouplingEnvelope& env, double omega);

// Output PSD carried by the extraneous rungs for vacuum input (1/2 each).
double extraneous_qba_psd(const std::map<int, cplx>& gains);

// Effective force PSD (Omega_eff^2 + (gamma + mu)^2 + W^2) / (2 Omega_eff^2) * S_T.
// Throws DomainError for Omega_eff = 0 or S_T < 0.
double effective_force_psd(const EffectiveOscillator& eff, double s_t, double omega);

enum class ExtraneousQba { exclude, include };

// PSD of b^s for the effective input-output relation
//   b^s = a^s + G_eff chi_eff a^c + sqrt(G_eff) chi_eff f_eff [+ extraneous].
// The squeeze configuration sets the rung-0 quadrature PSDs; extraneous rungs
// always see vacuum. Finite at Omega_eff = 0, where the nominal terms vanish.
double effective_io_psd(const EffectiveOscillator& eff, const SqueezeConfig& squeeze, double s_t,
                        double omega, ExtraneousQba extraneous, const CouplingEnvelope& env);

}  // namespace qmfs
