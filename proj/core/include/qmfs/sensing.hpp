#pragma once

// Force-sensing spectral densities for a probe oscillator paired with a
// down-converted auxiliary oscillator, in the serial (same light through
// both) and parallel (two-mode squeezed beams, weighted post-processing)
// topologies.
//
// Two unit systems are used. "Normalized" PSDs S^f refer to the probe's
// normalized force. "Reduced" PSDs are S^F / (hbar m) = Omega_P S^f; they
// depend on the probe only through D_P(W) and the product Gamma_P Omega_P
// and therefore stay finite for a free-mass probe.

#include <optional>
#include <string_view>
#include <utility>

#include "qmfs/core.hpp"

namespace qmfs {

enum class Topology { serial, parallel };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view s);

// Probe: either a bare oscillator or a free mass characterized only by
// Gamma_P Omega_P (with D_P = -W^2).
class ProbeModel {
 public:
  static ProbeModel bare(const Oscillator& osc);
  static ProbeModel free_mass(double rate_frequency_product);

  bool is_free_mass() const noexcept { return !osc_.has_value(); }
  // The bare oscillator; throws DomainError for a free mass.
  const Oscillator& oscillator() const;
  // Gamma_P Omega_P.
  double product() const noexcept { return product_; }
  // D_P(W) = Omega_P^2 - W^2 - 2 i gamma_P W, or -W^2 for a free mass.
  cplx response(double omega) const noexcept;
  // 1/Q_P = 2 gamma_P / Omega_P, zero for a free mass.
  double inverse_q() const noexcept;

 private:
  std::optional<Oscillator> osc_;
  double product_ = 0.0;
};

struct FreeMassProbe {
  double rate_frequency_product = 0.0;  // Gamma_P Omega_P = 2 J / kappa
  cplx response(double omega) const noexcept { return {-omega * omega, 0.0}; }
  ProbeModel model() const { return ProbeModel::free_mass(rate_frequency_product); }
};

// J is the normalized optical power (rad^3/s^3), kappa the detector half-bandwidth.
FreeMassProbe freemass_probe(double j, double kappa);

struct SensingPair {
  ProbeModel probe;
  EffectiveOscillator auxiliary;
  SqueezeConfig squeeze;
  Topology topology = Topology::serial;

  // Serial requires single-mode squeezing, parallel two-mode.
  SensingPair(ProbeModel probe, EffectiveOscillator auxiliary, SqueezeConfig squeeze,
              Topology topology);
};

struct MatchReport {
  double qba_match = 0.0;   // |G_A Omega_A + G_P Omega_P|
  double freq_match = 0.0;  // |Omega_A^2 - Omega_P^2|
  double damp_match = 0.0;  // |gamma_A - gamma_P|
  double inverse_q_gap = 0.0;  // 1/Q_P - 1/Q_A
  double qba_scale = 0.0;   // Gamma_P Omega_P, for relative comparisons
  double freq_scale = 0.0;  // Omega_P^2
  double damp_scale = 0.0;  // gamma_P + gamma_A

  // W^2 (1/Q_P - 1/Q_A)^2.
  double im_kres_sq(double omega) const noexcept {
    return omega * omega * inverse_q_gap * inverse_q_gap;
  }
  bool qba_matched(double rel = 1e-10) const noexcept { return qba_match <= rel * qba_scale; }
  bool fully_matched(double rel = 1e-10) const noexcept;
};

MatchReport match_report(const SensingPair& pair);

// D_P(W) and D_Aeff(W) = Omega_A chi_A^{-1}(W).
cplx probe_response(const SensingPair& pair, double omega);
cplx auxiliary_response(const SensingPair& pair, double omega);

// S~_T = |Omega_A| S_Teff(W) = (Omega_A^2 + (gamma + mu)^2 + W^2) / (2|Omega_A|) S_T.
double reduced_thermal_psd(const EffectiveOscillator& aux, double omega);

// sqrt(G_A/G_P) chi_P^{-1} + sqrt(G_P/G_A) chi_A^{-1}. Bare probe only;
// throws DomainError for zero readout rates or Omega_A = 0.
cplx k_res(const SensingPair& pair, double omega);

// D_P - D_A (-G_P Omega_P / (G_A Omega_A)), which reduces to D_P - D_A when
// the back-action amplitudes are matched. Works for free-mass probes.
cplx response_mismatch(const SensingPair& pair, double omega);

// Normalized serial PSD with single-mode squeezing (bare probe).
double serial_force_psd(const SensingPair& pair, double omega);

// Normalized parallel PSD, already minimized over the post-processing
// weight (bare probe). Input beams are two-mode squeezed with zero squeeze
// angle: every quadrature has PSD cosh(2r)/2, S(a_P^c, a_A^c) = sinh(2r)/2
// and S(a_P^s, a_A^s) = -sinh(2r)/2.
double parallel_force_psd(const SensingPair& pair, double omega);

// The minimizing weight alpha(W) applied to the auxiliary output b_A^s when
// it is added to the probe's force estimate b_P^s / (sqrt(G_P) chi_P).
cplx parallel_optimal_weight(const SensingPair& pair, double omega);

// Reduced PSD for either topology and either probe kind. `extra_aux_psd` is
// additional white noise (normalized output PSD) on the auxiliary readout,
// e.g. residual extraneous back action.
double reduced_force_psd(const SensingPair& pair, double omega, double extra_aux_psd = 0.0);

// (serial, parallel) reduced PSDs under full matching. Throws MismatchError
// if any matching residual exceeds 1e-10 relative.
std::pair<double, double> matched_psds(const SensingPair& pair, double omega);

// (serial, parallel) reduced PSDs when only the back-action amplitudes are
// matched (G_A Omega_A = -G_P Omega_P). Throws MismatchError otherwise.
// The pair's squeeze factor is used for both; the topology field is ignored.
std::pair<double, double> partial_match_psds(const SensingPair& pair, double omega);

// Auxiliary satisfying G_A Omega_A = -G_P Omega_P for a given probe.
EffectiveOscillator matched_auxiliary(double probe_product, double omega_eff, double damping,
                                      double occupancy,
                                      Compensation compensation = Compensation::parametric);

// |Omega_Aeff| < Omega_low.
bool pragmatic_criterion(double omega_eff, double omega_low = hz_to_rad(20.0));

// Probe-only sum noise K(W) = |D|^2 / P + P with P = Gamma Omega.
double sum_noise(cplx response, double product);

}  // namespace qmfs
