#include "commands.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "csv.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "qmfs/epr.hpp"
#include "qmfs/suppression.hpp"

namespace qmfs::cli {

void run_spectra(const RunConfig& cfg, std::ostream& out, std::ostream& log, unsigned threads) {
  const auto model = build_model(cfg, log);
  const auto rows = ordered_map(model.grid_hz.size(), threads,
                                [&](std::size_t i) { return model.evaluate(model.grid_hz[i]); });
  CsvWriter csv(out, config_hash(cfg), model.columns());
  for (const auto& r : rows) csv.row(r);
}

namespace {

std::string preset_hash(const GwdPreset& p, Topology t) {
  nlohmann::json doc{{"auxiliary", std::string(to_string(p.kind))},
                     {"topology", std::string(to_string(t))},
                     {"J", p.j},
                     {"kappa", p.kappa},
                     {"r", t == Topology::serial ? p.r_serial : p.r_parallel},
                     {"omega_aeff", p.omega_aeff},
                     {"gamma_a", p.gamma_a},
                     {"n_T", p.n_t},
                     {"mass_kg", p.mass},
                     {"grid", {p.f_min_hz, p.f_max_hz, p.points}}};
  return content_hash(doc.dump());
}

}  // namespace

void write_fig5_csv(const GwdPreset& preset, Topology topology, const std::vector<Fig5Row>& rows,
                    std::ostream& out) {
  const std::string t(to_string(topology));
  CsvWriter csv(out, preset_hash(preset, topology),
                {"f_hz", "S_x_" + t, "S_x_baseline", "gain_" + t + "_db"});
  const bool ser = topology == Topology::serial;
  for (const auto& r : rows) {
    const double v[] = {r.f_hz, ser ? r.sx_serial : r.sx_parallel, r.sx_baseline,
                        ser ? r.gain_serial_db : r.gain_parallel_db};
    csv.row(v);
  }
}

std::vector<std::filesystem::path> run_fig5(const std::filesystem::path& dir, unsigned threads) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (auto kind : {AuxiliaryKind::spin, AuxiliaryKind::mechanical}) {
    const auto preset = GwdPreset::table_one(kind);
    const auto rows = fig5_curves(preset, threads);
    for (auto topo : {Topology::serial, Topology::parallel}) {
      const auto path = dir / ("fig5_" + std::string(to_string(topo)) + "_" +
                               std::string(to_string(kind)) + ".csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot write " + path.string());
      write_fig5_csv(preset, topo, rows, out);
      written.push_back(path);
    }
  }
  return written;
}

void run_epr(const EprArgs& a, std::ostream& out) {
  EprLink link{a.cq1.value_or(1.0), a.cq2.value_or(1.0), a.eta, a.nu};
  const double bound = duan_bound_loss(link);
  if (a.cq1 && a.cq2)
    out << "sigma_thermal " << format_double(duan_sum_thermal(link)) << '\n';
  else
    out << "sigma_thermal n/a (needs --cq1 and --cq2)\n";
  out << "sigma_loss_bound " << format_double(bound) << '\n';
}

void run_envelope(const DriveConfig& drive, std::ostream& out, std::ostream& log) {
  const auto env = build_envelope(drive);
  nlohmann::json doc{{"type", drive.type == DriveType::two_tone ? "two_tone" : "stroboscopic"},
                     {"omega_tilde_hz", drive.omega_tilde_hz},
                     {"Phi", drive.phi},
                     {"n_max", drive.n_max}};
  std::string text = doc.dump();
  if (drive.pulse_file) {
    std::ifstream in(*drive.pulse_file, std::ios::binary);
    text += '\n';
    text.append(std::istreambuf_iterator<char>(in), {});
  }
  CsvWriter csv(out, content_hash(text), {"n", "re_k", "im_k", "abs_k"});
  for (int n = -env.n_max(); n <= env.n_max(); ++n) {
    const cplx k = env.coeff(n);
    const double v[] = {static_cast<double>(n), k.real(), k.imag(), std::abs(k)};
    csv.row(v);
  }
  const double k1 = env.first_harmonic();
  log << "Gamma_eff/Gamma " << format_double(k1 * k1) << '\n'
      << "stroboscopic " << (env.stroboscopic() ? "yes" : "no") << '\n';
  if (env.stroboscopic()) log << "cascade_size_for_full_cancellation " << required_cascade_size(env) << '\n';
}

}  // namespace qmfs::cli
