#pragma once

// Duan-criterion figures of merit for two oscillators probed in cascade.

namespace qmfs {

struct EprLink {
  double cq1 = 0.0;  // quantum cooperativities (Gamma/2)/S_T, > 0
  double cq2 = 0.0;
  double eta = 1.0;  // detection efficiency in (0, 1]
  double nu = 1.0;   // intersystem power transmission in [0, 1]

  // Throws DomainError when a field is out of range.
  void validate() const;
};

// (Gamma / 2) / S_T.
double quantum_cooperativity(double readout_rate, double thermal_psd);

// Thermal-noise estimate (1/(2 sqrt(eta))) sqrt(1/C1 + 1/C2), assuming
// matched readout rates and lossless linkage.
double duan_sum_thermal(const EprLink& link);

// Lower bound from intersystem loss (cooperativities unused): (1/sqrt(eta)) sqrt((1 - nu)/(1 + 3 nu)).
double duan_bound_loss(const EprLink& link);

// Cooperativity 1/(2 eta) at which a symmetric link reaches Sigma = 1.
double threshold_cooperativity(double eta);

}  // namespace qmfs
