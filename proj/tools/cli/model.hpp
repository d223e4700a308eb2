#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "qmfs/core.hpp"
#include "qmfs/sensing.hpp"

namespace qmfs::cli {

// Physics objects resolved from a RunConfig (all rad/s).
struct SpectraModel {
  ProbeModel probe;
  std::optional<double> mass;
  Oscillator aux_bare;
  CouplingEnvelope envelope;
  EffectiveOscillator aux;
  SensingPair pair;
  SuppressionConfig suppression;
  std::vector<double> grid_hz;

  std::vector<std::string> columns() const;
  // One CSV row at frequency f (Hz), matching columns().
  std::vector<double> evaluate(double f_hz) const;
  // Extraneous back action left on the auxiliary readout after suppression.
  double residual_extraneous_psd(double omega) const;
};

// Warnings (validity, separation, cascade size) go to `log`.
SpectraModel build_model(const RunConfig& cfg, std::ostream& log);

CouplingEnvelope build_envelope(const DriveConfig& drive);

// Whitespace- or comma-separated samples.
std::vector<double> read_pulse_samples(const std::filesystem::path& path);

}  // namespace qmfs::cli
