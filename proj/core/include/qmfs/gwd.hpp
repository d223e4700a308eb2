#pragma once

// Gravitational-wave-detector estimates: free-mass probe with a
// down-converted negative-mass auxiliary, compared against the same detector
// without auxiliary and without squeezing.

#include <string_view>
#include <vector>

#include "qmfs/core.hpp"
#include "qmfs/sensing.hpp"

namespace qmfs {

enum class AuxiliaryKind { spin, mechanical };

std::string_view to_string(AuxiliaryKind k);
AuxiliaryKind auxiliary_kind_from_string(std::string_view s);

struct GwdPreset {
  AuxiliaryKind kind = AuxiliaryKind::spin;
  double j = 0.0;           // normalized optical power, rad^3/s^3
  double kappa = 0.0;       // detector half-bandwidth, rad/s
  double r_serial = 0.0;    // e^{2r} = 4
  double r_parallel = 0.0;  // e^{2r} = 8
  double omega_aeff = 0.0;  // rad/s, negative
  double gamma_a = 0.0;     // rad/s
  double n_t = 0.0;
  double mass = 40.0;       // kg, only sets the absolute displacement scale
  double f_min_hz = 5.0;
  double f_max_hz = 2000.0;
  int points = 600;

  static GwdPreset table_one(AuxiliaryKind kind);

  FreeMassProbe probe() const { return freemass_probe(j, kappa); }
  EffectiveOscillator auxiliary() const;
  SensingPair pair(Topology t) const;
  std::vector<double> grid_hz() const { return log_grid(f_min_hz, f_max_hz, points); }
};

// S^x = hbar S_reduced / (m W^4) for a reduced force PSD S^F / (hbar m).
// Throws DomainError for W = 0 or m <= 0.
double displacement_psd(double reduced_force_psd, double mass, double omega);

// Same conversion from a normalized PSD S^f with impedance rho = m Omega_P:
// S^x = hbar rho S^f / (m^2 W^4).
double displacement_psd_normalized(double normalized_force_psd, double impedance, double mass,
                                   double omega);

// Reference detector: K_P / 2 at r = 0, reduced units.
double baseline_psd(double j, double kappa, double omega);

struct Fig5Row {
  double f_hz = 0.0;
  double sx_serial = 0.0;
  double sx_parallel = 0.0;
  double sx_baseline = 0.0;
  double gain_serial_db = 0.0;
  double gain_parallel_db = 0.0;
};

// 10 log10(baseline / scheme).
double gain_db(double baseline, double scheme);

// Both topologies over the preset's grid. Rows are independent; `threads`
// caps the workers used (0 or 1 runs inline).
std::vector<Fig5Row> fig5_curves(const GwdPreset& preset, unsigned threads = 1);

}  // namespace qmfs
