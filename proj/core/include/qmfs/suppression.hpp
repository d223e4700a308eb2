#pragma once

// Suppression of extraneous back action: measurement-based subtraction via a
// filter cavity, and coherent cancellation across a cascade of identical
// oscillators driven with staggered delays.

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "qmfs/core.hpp"
#include "qmfs/ladder.hpp"

namespace qmfs {

// A filter cavity separating the extraneous sidebands (near multiples of
// W~) from the signal band, followed by an auxiliary detector.
struct FilterCavitySetup {
  double kappa_filter = 0.0;  // rad/s
  double eta_aux = 1.0;       // auxiliary detection efficiency in [0, 1]
};

// |W|max << kappa_filter << W~, expressed as the two ratios.
struct SeparationReport {
  double band_ratio = 0.0;    // max |W| / kappa_filter
  double filter_ratio = 0.0;  // kappa_filter / W~
  double limit = 0.1;
  bool ok() const noexcept { return band_ratio <= limit && filter_ratio <= limit; }
};

SeparationReport check_separation(const FilterCavitySetup& setup, double max_omega,
                                  double omega_tilde, double limit = 0.1);

// Residual extraneous PSD after optimal subtraction of the auxiliary record:
// (1 - eta_aux) * psd. Throws DomainError for eta_aux outside [0, 1] or psd < 0.
double measured_suppression(double extraneous_psd, const FilterCavitySetup& setup);

// N identical oscillators, each carrying Gamma / N, driven by copies of one
// envelope delayed by tau_l = pi (l - 1) / (N W~).
class TwinCascade {
 public:
  // Validates that members share omega0, damping, impedance, occupancy and
  // readout rate; throws MismatchError naming the first differing field.
  TwinCascade(std::vector<Oscillator> members, const CouplingEnvelope& envelope);

  // Splits `total`'s readout rate evenly over n members.
  static TwinCascade uniform(const Oscillator& total, const CouplingEnvelope& envelope, int n);

  int size() const noexcept { return static_cast<int>(members_.size()); }
  const std::vector<Oscillator>& members() const noexcept { return members_; }
  const CouplingEnvelope& envelope() const noexcept { return envelope_; }
  double delay(int l) const;  // l = 1..N
  std::vector<CouplingEnvelope> member_envelopes() const;
  // A single oscillator carrying the summed readout rate.
  Oscillator combined_oscillator() const;

 private:
  std::vector<Oscillator> members_;
  CouplingEnvelope envelope_;
};

// Serial bad-cavity composition of arbitrary (possibly mismatched) members.
LadderTransfer cascade_transfer(std::span<const Oscillator> members,
                                std::span<const CouplingEnvelope> envelopes, double omega,
                                std::optional<int> n_max = std::nullopt);
LadderTransfer cascade_transfer(const TwinCascade& cascade, double omega,
                                std::optional<int> n_max = std::nullopt);

struct TwinCancellation {
  LadderTransfer combined;
  // max over extraneous rungs of |combined gain| / |gain of member 1|.
  double extraneous_residual = 0.0;
  // |combined rung-0 gain - single oscillator rung-0 gain| / |single|.
  double nominal_error = 0.0;
  // |sum_l |force gain|^2 - single oscillator's| / single, at rung +-1.
  double force_error = 0.0;
};

// Two members, two-tone drive at phases (Phi, Phi + pi/2).
TwinCancellation twin_cancellation_transfer(const TwinCascade& cascade, double omega);

enum class RungFate { cancelled, constructive, indeterminate };

std::string_view to_string(RungFate f);

// Rule for stroboscopic envelopes: even rung n != 0 cancels iff (n/2) mod N != 0.
RungFate predicted_fate(int rung, int n);

struct RungReport {
  int rung = 0;
  RungFate predicted = RungFate::indeterminate;
  RungFate observed = RungFate::indeterminate;
  double ratio = 0.0;  // |combined| / (N |member|)
};

// Classifies every populated nonzero rung of the composed ladder and
// compares with the rule. Throws DomainError when the envelope has even
// harmonics (the rule only holds for the stroboscopic class).
std::vector<RungReport> n_fold_cancellation_report(const TwinCascade& cascade, double omega);

// Extraneous PSD (vacuum input) left by an N-member cascade whose total
// readout rate equals that of the single oscillator producing `gains`:
// rungs with (n/2) mod N == 0 survive unchanged, the rest cancel.
double twin_residual_psd(const std::map<int, cplx>& gains, int n);

// Smallest cascade that cancels every extraneous rung of a stroboscopic
// envelope: (number of nonzero k_n) / 2 + 1.
int required_cascade_size(const CouplingEnvelope& env);

}  // namespace qmfs
