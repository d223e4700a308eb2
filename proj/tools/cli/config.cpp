#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "csv.hpp"

namespace qmfs::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) throw ConfigError(path + "/" + key, "unknown key");
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& need(const json& obj, const std::string& path, const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(path + "/" + key, "missing required key");
  return *v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

double number(const json& obj, const std::string& path, const char* key) {
  return as_number(need(obj, path, key), path + "/" + key);
}

std::optional<double> opt_number(const json& obj, const std::string& path, const char* key) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  return as_number(*v, path + "/" + key);
}

void require(bool ok, const std::string& path, const char* what) {
  if (!ok) throw ConfigError(path, what);
}

ProbeConfig parse_probe(const json& j) {
  const std::string path = "/probe";
  check_keys(j, path, {"omega0_hz", "gamma_hz", "Gamma_hz", "n_T", "mass_kg", "free_mass"});
  ProbeConfig p;
  p.omega0_hz = opt_number(j, path, "omega0_hz");
  p.gamma_hz = opt_number(j, path, "gamma_hz");
  p.gamma_rate_hz = opt_number(j, path, "Gamma_hz");
  p.n_t = opt_number(j, path, "n_T").value_or(0.0);
  p.mass_kg = opt_number(j, path, "mass_kg");
  require(p.n_t >= 0.0, path + "/n_T", "must be >= 0");
  if (p.mass_kg) require(*p.mass_kg > 0.0, path + "/mass_kg", "must be > 0");
  if (const json* fm = find(j, "free_mass")) {
    const std::string fp = path + "/free_mass";
    check_keys(*fm, fp, {"J_hz3", "kappa_hz"});
    FreeMassConfig f{number(*fm, fp, "J_hz3"), number(*fm, fp, "kappa_hz")};
    require(f.j_hz3 > 0.0, fp + "/J_hz3", "must be > 0");
    require(f.kappa_hz > 0.0, fp + "/kappa_hz", "must be > 0");
    require(!p.omega0_hz, path + "/omega0_hz", "not allowed together with free_mass");
    p.free_mass = f;
  } else {
    require(p.omega0_hz.has_value(), path + "/omega0_hz", "missing required key");
    require(*p.omega0_hz > 0.0, path + "/omega0_hz", "must be > 0");
    require(p.gamma_hz.has_value(), path + "/gamma_hz", "missing required key");
    require(*p.gamma_hz > 0.0, path + "/gamma_hz", "must be > 0");
    require(p.gamma_rate_hz.has_value(), path + "/Gamma_hz", "missing required key");
    require(*p.gamma_rate_hz > 0.0, path + "/Gamma_hz", "must be > 0");
  }
  return p;
}

DriveConfig parse_drive(const json& j, const std::filesystem::path& base_dir) {
  const std::string path = "/auxiliary/drive";
  check_keys(j, path, {"type", "omega_tilde_hz", "Phi", "pulse_file", "n_max"});
  DriveConfig d;
  const std::string type = as_string(need(j, path, "type"), path + "/type");
  if (type == "two_tone")
    d.type = DriveType::two_tone;
  else if (type == "stroboscopic")
    d.type = DriveType::stroboscopic;
  else
    throw ConfigError(path + "/type", "expected two_tone or stroboscopic");
  d.omega_tilde_hz = number(j, path, "omega_tilde_hz");
  require(d.omega_tilde_hz > 0.0, path + "/omega_tilde_hz", "must be > 0");
  d.phi = opt_number(j, path, "Phi").value_or(0.0);
  if (const json* pf = find(j, "pulse_file")) {
    require(d.type == DriveType::stroboscopic, path + "/pulse_file",
            "only valid for stroboscopic drives");
    std::filesystem::path f = as_string(*pf, path + "/pulse_file");
    d.pulse_file = f.is_absolute() ? f : base_dir / f;
  }
  if (const json* n = find(j, "n_max")) {
    d.n_max = as_int(*n, path + "/n_max");
    require(d.n_max >= 1 && d.n_max <= 256, path + "/n_max", "must lie in [1, 256]");
  }
  return d;
}

AuxiliaryConfig parse_auxiliary(const json& j, const std::filesystem::path& base_dir) {
  const std::string path = "/auxiliary";
  check_keys(j, path, {"omega0_hz", "gamma_hz", "Gamma_hz", "n_T", "drive", "compensation"});
  AuxiliaryConfig a;
  a.omega0_hz = number(j, path, "omega0_hz");
  require(a.omega0_hz != 0.0, path + "/omega0_hz", "must be nonzero");
  a.gamma_hz = number(j, path, "gamma_hz");
  require(a.gamma_hz > 0.0, path + "/gamma_hz", "must be > 0");
  a.gamma_rate_hz = opt_number(j, path, "Gamma_hz");
  if (a.gamma_rate_hz) require(*a.gamma_rate_hz >= 0.0, path + "/Gamma_hz", "must be >= 0");
  a.n_t = opt_number(j, path, "n_T").value_or(0.0);
  require(a.n_t >= 0.0, path + "/n_T", "must be >= 0");
  a.drive = parse_drive(need(j, path, "drive"), base_dir);
  if (const json* c = find(j, "compensation")) {
    const std::string s = as_string(*c, path + "/compensation");
    require(s == "raw" || s == "parametric", path + "/compensation", "expected raw or parametric");
    a.compensation = compensation_from_string(s);
  }
  return a;
}

SqueezeSection parse_squeeze(const json& j) {
  const std::string path = "/squeeze";
  check_keys(j, path, {"r_db", "mode"});
  SqueezeSection s;
  s.r_db = number(j, path, "r_db");
  require(s.r_db >= 0.0, path + "/r_db", "must be >= 0");
  if (const json* m = find(j, "mode")) {
    const std::string v = as_string(*m, path + "/mode");
    require(v == "single" || v == "two_mode", path + "/mode", "expected single or two_mode");
    s.mode = squeeze_mode_from_string(v);
  }
  return s;
}

GridConfig parse_grid(const json& j) {
  const std::string path = "/grid";
  check_keys(j, path, {"f_min_hz", "f_max_hz", "points", "spacing"});
  GridConfig g;
  g.f_min_hz = number(j, path, "f_min_hz");
  g.f_max_hz = number(j, path, "f_max_hz");
  g.points = as_int(need(j, path, "points"), path + "/points");
  require(g.points >= 1, path + "/points", "must be >= 1");
  require(g.f_min_hz > 0.0, path + "/f_min_hz", "must be > 0");
  require(g.points == 1 || g.f_max_hz > g.f_min_hz, path + "/f_max_hz", "must exceed f_min_hz");
  if (const json* s = find(j, "spacing")) {
    const std::string v = as_string(*s, path + "/spacing");
    require(v == "log" || v == "linear", path + "/spacing", "expected log or linear");
    g.log_spacing = v == "log";
  }
  return g;
}

SuppressionConfig parse_suppression(const json& j) {
  const std::string path = "/suppression";
  check_keys(j, path, {"scheme", "eta_aux", "kappa_filter_hz", "N"});
  SuppressionConfig s;
  const std::string scheme = as_string(need(j, path, "scheme"), path + "/scheme");
  if (scheme == "none") {
    check_keys(j, path, {"scheme"});
  } else if (scheme == "measured") {
    check_keys(j, path, {"scheme", "eta_aux", "kappa_filter_hz"});
    s.scheme = SuppressionScheme::measured;
    s.eta_aux = number(j, path, "eta_aux");
    require(s.eta_aux >= 0.0 && s.eta_aux <= 1.0, path + "/eta_aux", "must lie in [0, 1]");
    s.kappa_filter_hz = number(j, path, "kappa_filter_hz");
    require(s.kappa_filter_hz > 0.0, path + "/kappa_filter_hz", "must be > 0");
  } else if (scheme == "twin") {
    check_keys(j, path, {"scheme", "N"});
    s.scheme = SuppressionScheme::twin;
    s.n = as_int(need(j, path, "N"), path + "/N");
    require(s.n >= 1, path + "/N", "must be >= 1");
  } else {
    throw ConfigError(path + "/scheme", "expected none, measured or twin");
  }
  return s;
}

}  // namespace

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "", {"probe", "auxiliary", "squeeze", "topology", "grid", "suppression"});
  RunConfig cfg;
  cfg.probe = parse_probe(need(doc, "", "probe"));
  cfg.auxiliary = parse_auxiliary(need(doc, "", "auxiliary"), base_dir);
  cfg.squeeze = parse_squeeze(need(doc, "", "squeeze"));
  const std::string topo = as_string(need(doc, "", "topology"), "/topology");
  require(topo == "serial" || topo == "parallel", "/topology", "expected serial or parallel");
  cfg.topology = topology_from_string(topo);
  if (const json* g = find(doc, "grid")) cfg.grid = parse_grid(*g);
  if (const json* s = find(doc, "suppression")) cfg.suppression = parse_suppression(*s);
  if (cfg.squeeze.mode) {
    const bool ok = (cfg.topology == Topology::serial) == (*cfg.squeeze.mode == SqueezeMode::single);
    require(ok, "/squeeze/mode", "serial needs single, parallel needs two_mode");
  }
  cfg.document = doc;
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(doc, path.parent_path());
}

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("QMFS_PRESET_DIR"); env && *env) return env;
  return QMFS_PRESET_DIR;
}

std::filesystem::path preset_path(const std::string& name) {
  std::filesystem::path p = preset_dir() / name;
  if (p.extension() != ".json") p += ".json";
  if (!std::filesystem::exists(p)) throw ConfigError(name, "no such preset in " + preset_dir().string());
  return p;
}

std::string config_hash(const RunConfig& cfg) {
  std::string text = cfg.document.dump();
  if (const auto& pf = cfg.auxiliary.drive.pulse_file) {
    std::ifstream in(*pf, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    text += '\n';
    text += bytes.str();
  }
  return content_hash(text);
}

}  // namespace qmfs::cli
