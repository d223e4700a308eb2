#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "parallel.hpp"

using namespace qmfs;
using namespace qmfs::cli;

namespace {

// stdout unless --out names a file.
struct Sink {
  std::ofstream file;
  std::ostream& get(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    return file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-noise spectra of back-action-evading hybrid measurements"};
  app.require_subcommand(1);

  std::string out_path;
  std::string config_path;
  std::string preset;
  auto* spectra = app.add_subcommand("spectra", "Force/displacement noise spectrum from a config");
  spectra->add_option("config", config_path, "Run configuration (JSON)");
  spectra->add_option("--preset", preset, "Shipped preset name, e.g. fig5_spin_serial");
  spectra->add_option("--out", out_path, "Output CSV (default stdout)");

  std::string fig5_dir = ".";
  auto* fig5 = app.add_subcommand("fig5", "Write the four GWD sensitivity CSVs");
  fig5->add_option("--out", fig5_dir, "Output directory");

  std::string level = "quick";
  double injected = 0.0;
  auto* verify = app.add_subcommand("verify", "Run the model-vs-oracle checks");
  verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  auto* inject = verify->add_option("--inject-tolerance", injected)->group("");

  EprArgs epr_args;
  auto* epr = app.add_subcommand("epr", "Duan-criterion estimates");
  auto* cq1 = epr->add_option("--cq1", "Quantum cooperativity of system 1")
                  ->check(CLI::PositiveNumber);
  auto* cq2 = epr->add_option("--cq2", "Quantum cooperativity of system 2")
                  ->check(CLI::PositiveNumber);
  epr->add_option("--eta", epr_args.eta, "Detection efficiency in (0, 1]")
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            double x = 0.0;
            if (!CLI::detail::lexical_cast(v, x)) return "eta must be a number";
            return x > 0.0 && x <= 1.0 ? "" : "eta must lie in (0, 1]";
          },
          "(0,1]"));
  epr->add_option("--nu", epr_args.nu, "Intersystem power transmission in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));

  DriveConfig drive;
  std::string drive_type = "two_tone";
  std::string pulse_file;
  auto* envelope = app.add_subcommand("envelope", "Fourier coefficients of a drive envelope");
  envelope->add_option("--type", drive_type)->check(CLI::IsMember({"two_tone", "stroboscopic"}));
  envelope->add_option("--omega-tilde-hz", drive.omega_tilde_hz, "Modulation frequency (Hz)")
      ->required()
      ->check(CLI::PositiveNumber);
  envelope->add_option("--phi", drive.phi, "Phase Phi (rad)");
  envelope->add_option("--pulse-file", pulse_file, "Pulse samples spanning half a period");
  envelope->add_option("--n-max", drive.n_max, "Highest harmonic kept")->check(CLI::Range(1, 256));
  envelope->add_option("--out", out_path, "Output CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    Sink sink;
    if (*spectra) {
      if (config_path.empty() == preset.empty()) {
        std::cerr << "spectra: give exactly one of a config path or --preset\n";
        return 2;
      }
      const auto cfg = load_run_config(preset.empty() ? std::filesystem::path(config_path)
                                                      : preset_path(preset));
      run_spectra(cfg, sink.get(out_path), std::cerr, worker_count());
    } else if (*fig5) {
      for (const auto& p : run_fig5(fig5_dir, worker_count())) std::cerr << "wrote " << p.string() << '\n';
    } else if (*verify) {
      VerifyOptions opts;
      opts.level = level == "full" ? VerifyLevel::full : VerifyLevel::quick;
      if (*inject) opts.injected_tolerance = injected;
      return run_verify(opts, std::cout) ? 0 : 1;
    } else if (*epr) {
      if (*cq1) epr_args.cq1 = cq1->as<double>();
      if (*cq2) epr_args.cq2 = cq2->as<double>();
      run_epr(epr_args, std::cout);
    } else if (*envelope) {
      drive.type = drive_type == "two_tone" ? DriveType::two_tone : DriveType::stroboscopic;
      if (!pulse_file.empty()) {
        if (drive.type != DriveType::stroboscopic) {
          std::cerr << "envelope: --pulse-file needs --type stroboscopic\n";
          return 2;
        }
        drive.pulse_file = pulse_file;
      }
      run_envelope(drive, sink.get(out_path), std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
