#include "qmfs/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmfs/error.hpp"

namespace qmfs {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

Oscillator::Oscillator(const Params& p) : p_(p) {
  require(finite(p.omega0) && p.omega0 != 0.0, "oscillator: omega0 must be finite and nonzero");
  require(finite(p.damping) && p.damping > 0.0, "oscillator: damping must be > 0");
  require(finite(p.readout_rate) && p.readout_rate >= 0.0,
          "oscillator: readout_rate must be >= 0");
  require(finite(p.impedance) && p.impedance > 0.0, "oscillator: impedance must be > 0");
  require(finite(p.occupancy) && p.occupancy >= 0.0, "oscillator: occupancy must be >= 0");
}

double Oscillator::quality_factor() const noexcept {
  return std::abs(p_.omega0) / (2.0 * p_.damping);
}

Oscillator Oscillator::with_readout_rate(double rate) const {
  Params p = p_;
  p.readout_rate = rate;
  return Oscillator(p);
}

Oscillator Oscillator::with_omega0(double omega0) const {
  Params p = p_;
  p.omega0 = omega0;
  return Oscillator(p);
}

cplx inverse_lorentzian(double damping, double omega) { return {damping, -omega}; }

cplx inverse_lorentzian(const Oscillator& osc, double omega) {
  return inverse_lorentzian(osc.damping(), omega);
}

cplx susceptibility(const Oscillator& osc, double omega) {
  const double w0 = osc.omega0();
  // (w0 - W)(w0 + W) keeps precision when W sits close to the resonance.
  const cplx den{(w0 - omega) * (w0 + omega), -2.0 * omega * osc.damping()};
  return w0 / den;
}

double thermal_force_psd(const Oscillator& osc) {
  return 2.0 * osc.damping() * (2.0 * osc.occupancy() + 1.0);
}

double bose_occupancy(double hbar_omega_over_kt) {
  require(hbar_omega_over_kt > 0.0, "bose_occupancy: argument must be > 0");
  return 1.0 / std::expm1(hbar_omega_over_kt);
}

double EffectiveOscillator::mu() const noexcept {
  switch (compensation) {
    case Compensation::raw:
      return 0.0;
    case Compensation::parametric:
      return -damping;
    case Compensation::custom:
      return custom_mu;
  }
  return 0.0;
}

EffectiveOscillator effective_params(const Oscillator& osc, const CouplingEnvelope& env,
                                     Compensation compensation, double custom_mu) {
  EffectiveOscillator eff;
  const double k1 = env.first_harmonic();
  eff.readout_rate = k1 * k1 * osc.readout_rate();
  eff.detuning = std::abs(osc.omega0()) - env.omega_tilde();
  eff.sign = osc.sign();
  eff.omega_eff = eff.sign * eff.detuning;
  eff.damping = osc.damping();
  eff.phase = env.phase();
  eff.occupancy = osc.occupancy();
  eff.compensation = compensation;
  eff.custom_mu = compensation == Compensation::custom ? custom_mu : 0.0;
  eff.validity_ratio = std::max(std::abs(eff.detuning), eff.damping) / env.omega_tilde();
  return eff;
}

std::string_view to_string(Compensation c) {
  switch (c) {
    case Compensation::raw:
      return "raw";
    case Compensation::parametric:
      return "parametric";
    case Compensation::custom:
      return "custom";
  }
  return "?";
}

Compensation compensation_from_string(std::string_view s) {
  if (s == "raw") return Compensation::raw;
  if (s == "parametric") return Compensation::parametric;
  if (s == "custom") return Compensation::custom;
  throw DomainError("unknown compensation '" + std::string(s) + "'");
}

std::string_view to_string(SqueezeMode m) {
  return m == SqueezeMode::single ? "single" : "two_mode";
}

SqueezeMode squeeze_mode_from_string(std::string_view s) {
  if (s == "single") return SqueezeMode::single;
  if (s == "two_mode") return SqueezeMode::two_mode;
  throw DomainError("unknown squeeze mode '" + std::string(s) + "'");
}

SqueezeConfig::SqueezeConfig(double r, SqueezeMode mode) : r_(r), mode_(mode) {
  require(finite(r) && r >= 0.0, "squeeze: r must be >= 0");
}

SqueezeConfig SqueezeConfig::from_db(double db, SqueezeMode mode) {
  // e^{2r} = 10^{dB/10}
  return SqueezeConfig(db * std::log(10.0) / 20.0, mode);
}

double SqueezeConfig::db() const noexcept { return 20.0 * r_ / std::log(10.0); }

double SqueezeConfig::amplitude_psd() const noexcept {
  return mode_ == SqueezeMode::single ? 0.5 * std::exp(2.0 * r_) : 0.5 * std::cosh(2.0 * r_);
}

double SqueezeConfig::phase_psd() const noexcept {
  return mode_ == SqueezeMode::single ? 0.5 * std::exp(-2.0 * r_) : 0.5 * std::cosh(2.0 * r_);
}

double SqueezeConfig::cross_psd() const noexcept {
  return mode_ == SqueezeMode::two_mode ? 0.5 * std::sinh(2.0 * r_) : 0.0;
}

std::string_view to_string(SpectrumUnit u) {
  switch (u) {
    case SpectrumUnit::normalized_force:
      return "normalized_force";
    case SpectrumUnit::reduced_force:
      return "reduced_force";
    case SpectrumUnit::dimensional_force:
      return "dimensional_force";
    case SpectrumUnit::displacement:
      return "displacement";
  }
  return "?";
}

NoiseSpectrum::NoiseSpectrum(std::vector<double> grid, std::vector<double> values,
                             SpectrumUnit unit)
    : grid_(std::move(grid)), values_(std::move(values)), unit_(unit) {
  require(grid_.size() == values_.size(), "spectrum: grid and values differ in length");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    require(finite(grid_[i]), "spectrum: non-finite grid point");
    require(finite(values_[i]) && values_[i] >= 0.0,
            "spectrum: value at index " + std::to_string(i) + " is negative or non-finite");
    if (i > 0) require(grid_[i] > grid_[i - 1], "spectrum: grid must be strictly increasing");
  }
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  require(points >= 1, "grid: need at least one point");
  if (points == 1) return {lo};
  require(hi > lo, "grid: upper bound must exceed lower bound");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  require(lo > 0.0, "grid: log spacing needs a positive lower bound");
  if (points == 1) return {lo};
  require(points >= 1 && hi > lo, "grid: invalid log range");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * i / (points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace qmfs
