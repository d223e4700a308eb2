#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "config.hpp"

using namespace qmfs;
using namespace qmfs::cli;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "probe": {"omega0_hz": 100.0, "gamma_hz": 0.01, "Gamma_hz": 50.0},
    "auxiliary": {"omega0_hz": 100000.0, "gamma_hz": 0.01,
                  "drive": {"type": "two_tone", "omega_tilde_hz": 100100.0}},
    "squeeze": {"r_db": 3.0},
    "topology": "serial"
  })");
}

std::string error_path(const json& doc) {
  try {
    (void)parse_run_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("minimal config and defaults") {
  const auto cfg = parse_run_config(minimal());
  CHECK(cfg.probe.omega0_hz == 100.0);
  CHECK(cfg.probe.gamma_rate_hz == 50.0);
  CHECK_FALSE(cfg.probe.free_mass.has_value());
  CHECK(cfg.auxiliary.drive.type == DriveType::two_tone);
  CHECK(cfg.auxiliary.drive.n_max == 15);
  CHECK(cfg.auxiliary.compensation == Compensation::parametric);
  CHECK_FALSE(cfg.auxiliary.gamma_rate_hz.has_value());
  CHECK(cfg.grid.points == 600);
  CHECK(cfg.grid.log_spacing);
  CHECK(cfg.suppression.scheme == SuppressionScheme::none);
  CHECK(cfg.topology == Topology::serial);
}

TEST_CASE("unknown keys are rejected with their path") {
  auto doc = minimal();
  doc["probe"]["omega_hz"] = 1.0;
  CHECK(error_path(doc) == "/probe/omega_hz");
  doc = minimal();
  doc["auxiliary"]["drive"]["phase"] = 1.0;
  CHECK(error_path(doc) == "/auxiliary/drive/phase");
  doc = minimal();
  doc["extras"] = json::object();
  CHECK(error_path(doc) == "/extras");
}

TEST_CASE("missing and malformed values") {
  auto doc = minimal();
  doc.erase("topology");
  CHECK(error_path(doc) == "/topology");
  doc = minimal();
  doc["auxiliary"]["drive"].erase("omega_tilde_hz");
  CHECK(error_path(doc) == "/auxiliary/drive/omega_tilde_hz");
  doc = minimal();
  doc["topology"] = "series";
  CHECK(error_path(doc) == "/topology");
  doc = minimal();
  doc["probe"]["gamma_hz"] = "fast";
  CHECK(error_path(doc) == "/probe/gamma_hz");
  doc = minimal();
  doc["auxiliary"]["drive"]["n_max"] = 0;
  CHECK(error_path(doc) == "/auxiliary/drive/n_max");
  doc = minimal();
  doc["squeeze"]["mode"] = "two_mode";
  CHECK(error_path(doc) != "<accepted>");
  doc = minimal();
  doc["suppression"] = json{{"scheme", "measured"}, {"eta_aux", 1.5}, {"kappa_filter_hz", 10.0}};
  CHECK(error_path(doc) == "/suppression/eta_aux");
}

TEST_CASE("shipped presets parse") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(preset_dir())) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_run_config(entry.path()));
    ++count;
  }
  CHECK(count >= 5);
  CHECK(std::filesystem::exists(preset_path("fig5_spin_serial")));
}

TEST_CASE("config hash is stable and content sensitive") {
  const auto a = parse_run_config(minimal());
  const auto b = parse_run_config(json::parse(minimal().dump(4)));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).rfind("fnv1a64:", 0) == 0);
  CHECK(config_hash(a).size() == 8 + 16);
  auto doc = minimal();
  doc["squeeze"]["r_db"] = 3.5;
  CHECK(config_hash(parse_run_config(doc)) != config_hash(a));
}

TEST_CASE("pulse file resolves against the config directory") {
  const std::filesystem::path dir = std::filesystem::path(QMFS_TEST_TMP) / "cfg";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "pulse.txt") << "0\n1\n0\n";
  }
  auto doc = minimal();
  doc["auxiliary"]["drive"] = json{{"type", "stroboscopic"}, {"omega_tilde_hz", 100100.0},
                                   {"pulse_file", "pulse.txt"}};
  {
    std::ofstream(dir / "run.json") << doc.dump();
  }
  const auto cfg = load_run_config(dir / "run.json");
  REQUIRE(cfg.auxiliary.drive.pulse_file.has_value());
  CHECK(std::filesystem::equivalent(*cfg.auxiliary.drive.pulse_file, dir / "pulse.txt"));
  const auto before = config_hash(cfg);
  {
    std::ofstream(dir / "pulse.txt") << "0\n0.5\n0\n";
  }
  CHECK(config_hash(load_run_config(dir / "run.json")) != before);
  CHECK_THROWS_AS(load_run_config(dir / "absent.json"), ConfigError);
}
