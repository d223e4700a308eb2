#pragma once

// Exact multi-sideband solution of the modulated-coupling input-output
// equations. The oscillator only ever sees the amplitude quadrature, which
// passes through unchanged, so the system is feed-forward and every gain is
// a finite sum over the envelope harmonics.

#include <optional>
#include <span>
#include <vector>

#include "qmfs/core.hpp"

namespace qmfs {

// Gains into the output phase quadrature b^s(W) at one Fourier frequency W.
//
// Oscillator sidebands X(W - n W~) are kept for |n| <= n_max. Because the
// drive enters twice (once to apply back action, once to read out), the
// amplitude-noise rungs a^c(W - p W~) extend to |p| <= 2 n_max.
struct LadderTransfer {
  double omega = 0.0;
  int n_max = 0;
  std::vector<cplx> from_amplitude;              // index p + 2 n_max
  cplx from_phase{1.0, 0.0};                     // a^s(W) -> b^s(W)
  std::vector<std::vector<cplx>> from_force;     // [channel][n + n_max]
  cplx amplitude_passthrough{1.0, 0.0};          // a^c(W) -> b^c(W)

  int amplitude_rungs() const noexcept { return 2 * n_max; }
  cplx amplitude_gain(int p) const noexcept;
  cplx force_gain(int n, std::size_t channel = 0) const noexcept;
};

// Finite-bandwidth cavity between the light and the oscillator.
struct CavityParams {
  double kappa = 0.0;  // half-bandwidth, rad/s
  double g = 0.0;      // pump-enhanced coupling, rad/s

  static CavityParams from_readout_rate(double kappa, double readout_rate);
  double readout_rate() const noexcept { return 8.0 * g * g / kappa; }
  bool weak_coupling(double factor = 10.0) const noexcept {
    return kappa > factor * readout_rate();
  }
};

// Envelope support + 2.
int default_rung_truncation(const CouplingEnvelope& env);

// Bad-cavity model: b^c = a^c, b^s = a^s + sqrt(Gamma) sum_n k_n X(W - n W~),
// X(W') = chi(W') [sqrt(Gamma) sum_m k_m a^c(W' - m W~) + f(W')].
LadderTransfer badcavity_transfer(const Oscillator& osc, const CouplingEnvelope& env,
                                  double omega, std::optional<int> n_max = std::nullopt);

// Cavity of half-bandwidth kappa resonant with the carrier. The output
// convention b = -a + sqrt(2 kappa) q is kept, so the amplitude passthrough is
// (kappa + iW)/(kappa - iW) and tends to +1 only in the bad-cavity limit.
// The cavity's readout rate 8 g^2 / kappa must equal osc.readout_rate().
LadderTransfer fullcavity_transfer(const Oscillator& osc, const CouplingEnvelope& env,
                                   const CavityParams& cav, double omega,
                                   std::optional<int> n_max = std::nullopt);

// Input PSDs per rung. Rungs are mutually independent. Amplitude rungs are
// indexed like LadderTransfer::from_amplitude.
struct RungInputs {
  std::vector<double> amplitude;
  double phase = 0.5;
  std::vector<std::vector<double>> force;

  // Vacuum light (PSD 1/2 on every rung) and a flat force PSD per channel.
  static RungInputs vacuum(const LadderTransfer& t, double force_psd = 0.0);
};

// S_bs = sum_p |T_p|^2 S_ac[p] + |T_s|^2 S_as + sum_{c,n} |F_cn|^2 S_f[c][n].
// Squeezing rescales rung 0 only: S_ac[0] by 2*amplitude_psd and S_as by
// 2*phase_psd of the squeeze configuration.
double output_psd(const LadderTransfer& t, const RungInputs& in,
                  const SqueezeConfig& squeeze = SqueezeConfig{});

// Serial cascade of bad-cavity stages, light passing through them in order.
// Amplitude gains add, phase gains multiply, force channels are concatenated.
LadderTransfer cascade(std::span<const LadderTransfer> stages);

}  // namespace qmfs
