#pragma once

// Run configuration: a JSON document with frequencies in Hz, converted to
// rad/s when the physics model is built. Unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qmfs/core.hpp"
#include "qmfs/error.hpp"
#include "qmfs/sensing.hpp"

namespace qmfs::cli {

class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct FreeMassConfig {
  double j_hz3 = 0.0;
  double kappa_hz = 0.0;
};

struct ProbeConfig {
  std::optional<double> omega0_hz;
  std::optional<double> gamma_hz;
  std::optional<double> gamma_rate_hz;  // "Gamma_hz"
  double n_t = 0.0;
  std::optional<double> mass_kg;
  std::optional<FreeMassConfig> free_mass;
};

enum class DriveType { two_tone, stroboscopic };

struct DriveConfig {
  DriveType type = DriveType::two_tone;
  double omega_tilde_hz = 0.0;
  double phi = 0.0;
  std::optional<std::filesystem::path> pulse_file;
  int n_max = 15;
};

struct AuxiliaryConfig {
  double omega0_hz = 0.0;
  double gamma_hz = 0.0;
  std::optional<double> gamma_rate_hz;  // derived from back-action matching if absent
  double n_t = 0.0;
  DriveConfig drive;
  Compensation compensation = Compensation::parametric;
};

struct SqueezeSection {
  double r_db = 0.0;
  std::optional<SqueezeMode> mode;  // defaults from the topology
};

struct GridConfig {
  double f_min_hz = 5.0;
  double f_max_hz = 2000.0;
  int points = 600;
  bool log_spacing = true;
};

enum class SuppressionScheme { none, measured, twin };

struct SuppressionConfig {
  SuppressionScheme scheme = SuppressionScheme::none;
  double eta_aux = 0.0;
  double kappa_filter_hz = 0.0;
  int n = 2;
};

struct RunConfig {
  ProbeConfig probe;
  AuxiliaryConfig auxiliary;
  SqueezeSection squeeze;
  Topology topology = Topology::serial;
  GridConfig grid;
  SuppressionConfig suppression;

  nlohmann::json document;  // the validated input, for hashing
};

// Validates `doc` against the schema. Relative pulse files resolve against
// `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Directory holding the shipped presets; QMFS_PRESET_DIR in the environment
// overrides the compiled-in location.
std::filesystem::path preset_dir();
std::filesystem::path preset_path(const std::string& name);

// "fnv1a64:<16 hex digits>" of the compact dump of the validated document.
std::string config_hash(const RunConfig& cfg);

}  // namespace qmfs::cli
