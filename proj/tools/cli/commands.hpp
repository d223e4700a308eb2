#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "qmfs/gwd.hpp"

namespace qmfs::cli {

// CSV of the configured spectrum.
void run_spectra(const RunConfig& cfg, std::ostream& out, std::ostream& log, unsigned threads);

// fig5_{serial,parallel}_{spin,mechanical}.csv in `dir`; returns the paths.
std::vector<std::filesystem::path> run_fig5(const std::filesystem::path& dir, unsigned threads);

// One topology of one preset, as written by run_fig5.
void write_fig5_csv(const GwdPreset& preset, Topology topology,
                    const std::vector<Fig5Row>& rows, std::ostream& out);

struct EprArgs {
  std::optional<double> cq1, cq2;
  double eta = 1.0;
  double nu = 1.0;
};

void run_epr(const EprArgs& args, std::ostream& out);

// Fourier coefficients of a drive envelope; a summary goes to `log`.
void run_envelope(const DriveConfig& drive, std::ostream& out, std::ostream& log);

enum class VerifyLevel { quick, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  // Replaces every allowed bound; only for exercising the failure path.
  std::optional<double> injected_tolerance;
};

// Prints one line per check; returns true iff all pass.
bool run_verify(const VerifyOptions& opts, std::ostream& out);

}  // namespace qmfs::cli
