#include "qmfs/gwd.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "qmfs/error.hpp"

namespace qmfs {

std::string_view to_string(AuxiliaryKind k) {
  return k == AuxiliaryKind::spin ? "spin" : "mechanical";
}

AuxiliaryKind auxiliary_kind_from_string(std::string_view s) {
  if (s == "spin") return AuxiliaryKind::spin;
  if (s == "mechanical") return AuxiliaryKind::mechanical;
  throw DomainError("unknown auxiliary kind '" + std::string(s) + "'");
}

GwdPreset GwdPreset::table_one(AuxiliaryKind kind) {
  GwdPreset p;
  p.kind = kind;
  const double w = hz_to_rad(100.0);
  p.j = w * w * w;
  p.kappa = hz_to_rad(500.0);
  p.r_serial = 0.5 * std::log(4.0);
  p.r_parallel = 0.5 * std::log(8.0);
  p.omega_aeff = -hz_to_rad(10.0);
  if (kind == AuxiliaryKind::spin) {
    p.gamma_a = hz_to_rad(3.0);
    p.n_t = 0.0;
  } else {
    p.gamma_a = hz_to_rad(1e-3);
    p.n_t = 2100.0;
  }
  return p;
}

EffectiveOscillator GwdPreset::auxiliary() const {
  return matched_auxiliary(probe().rate_frequency_product, omega_aeff, gamma_a, n_t);
}

SensingPair GwdPreset::pair(Topology t) const {
  const bool ser = t == Topology::serial;
  return SensingPair(probe().model(), auxiliary(),
                     SqueezeConfig(ser ? r_serial : r_parallel,
                                   ser ? SqueezeMode::single : SqueezeMode::two_mode),
                     t);
}

double displacement_psd(double reduced_force_psd, double mass, double omega) {
  if (omega == 0.0) throw DomainError("displacement_psd: W = 0");
  if (!(mass > 0.0)) throw DomainError("displacement_psd: mass must be > 0");
  const double w2 = omega * omega;
  return hbar * reduced_force_psd / (mass * w2 * w2);
}

double displacement_psd_normalized(double normalized_force_psd, double impedance, double mass,
                                   double omega) {
  if (omega == 0.0) throw DomainError("displacement_psd: W = 0");
  if (!(mass > 0.0) || !(impedance > 0.0))
    throw DomainError("displacement_psd: mass and impedance must be > 0");
  const double w2 = omega * omega;
  return hbar * impedance * normalized_force_psd / (mass * mass * w2 * w2);
}

double baseline_psd(double j, double kappa, double omega) {
  const auto probe = freemass_probe(j, kappa);
  return 0.5 * sum_noise(probe.response(omega), probe.rate_frequency_product);
}

double gain_db(double baseline, double scheme) { return 10.0 * std::log10(baseline / scheme); }

std::vector<Fig5Row> fig5_curves(const GwdPreset& preset, unsigned threads) {
  const auto grid = preset.grid_hz();
  const auto ser = preset.pair(Topology::serial);
  const auto par = preset.pair(Topology::parallel);
  std::vector<Fig5Row> rows(grid.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double w = hz_to_rad(grid[i]);
      const double base = baseline_psd(preset.j, preset.kappa, w);
      const double s = partial_match_psds(ser, w).first;
      const double p = partial_match_psds(par, w).second;
      auto& row = rows[i];
      row.f_hz = grid[i];
      row.sx_serial = displacement_psd(s, preset.mass, w);
      row.sx_parallel = displacement_psd(p, preset.mass, w);
      row.sx_baseline = displacement_psd(base, preset.mass, w);
      row.gain_serial_db = gain_db(base, s);
      row.gain_parallel_db = gain_db(base, p);
    }
  };

  const std::size_t n = rows.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    work(0, n);
    return rows;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) {
      const std::size_t b = k * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  return rows;
}

}  // namespace qmfs
