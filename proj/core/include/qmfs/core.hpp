#pragma once

// Domain types and elementary frequency-domain functions.
//
// Conventions: every frequency is an angular frequency in rad/s. Fourier
// amplitudes follow x(t) = \int x(W) exp(-i W t) dW / 2pi, so d/dt -> -iW.
// Spectral densities are symmetrized and one-sided in the sense used for
// quadratures: vacuum noise of a light quadrature has PSD 1/2.

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace qmfs {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;  // J s

constexpr double hz_to_rad(double f_hz) { return two_pi * f_hz; }
constexpr double rad_to_hz(double omega) { return omega / two_pi; }

// Quality factor above which narrowband (rotating-wave) approximations are
// considered trustworthy.
inline constexpr double kHighQThreshold = 10.0;

// A bare harmonic oscillator with a signed evolution frequency. A negative
// frequency is equivalent to a negative effective mass.
class Oscillator {
 public:
  struct Params {
    double omega0 = 0.0;        // rad/s, nonzero, sign = sign of the mass
    double damping = 0.0;       // gamma, half width, rad/s, > 0
    double readout_rate = 0.0;  // Gamma, mean light coupling, rad/s, >= 0
    double impedance = 1.0;     // rho = m * omega0, kg rad/s, > 0
    double occupancy = 0.0;     // n_T, mean thermal quanta, >= 0
  };

  explicit Oscillator(const Params& p);

  double omega0() const noexcept { return p_.omega0; }
  double damping() const noexcept { return p_.damping; }
  double readout_rate() const noexcept { return p_.readout_rate; }
  double impedance() const noexcept { return p_.impedance; }
  double occupancy() const noexcept { return p_.occupancy; }
  const Params& params() const noexcept { return p_; }

  int sign() const noexcept { return p_.omega0 > 0 ? 1 : -1; }
  double quality_factor() const noexcept;
  bool high_q() const noexcept { return quality_factor() > kHighQThreshold; }

  Oscillator with_readout_rate(double rate) const;
  Oscillator with_omega0(double omega0) const;

 private:
  Params p_;
};

// gamma - i*W, the inverse complex Lorentzian of an oscillator line.
cplx inverse_lorentzian(double damping, double omega);
cplx inverse_lorentzian(const Oscillator& osc, double omega);

// omega0 / (omega0^2 - W^2 - 2 i W gamma), viscous damping.
cplx susceptibility(const Oscillator& osc, double omega);

// Flat thermal force PSD 2 gamma (2 n_T + 1) in normalized force units.
double thermal_force_psd(const Oscillator& osc);

// Bose-Einstein occupancy for a given hbar|omega0| / (k_B T).
double bose_occupancy(double hbar_omega_over_kt);

// A real T-periodic coupling envelope k(t) = sum_n k_n exp(-i n W t),
// stored as coefficients n = -n_max..n_max with sum |k_n|^2 = 1.
class CouplingEnvelope {
 public:
  // coeffs[i] is k_{i - n_max}; size must be odd. Throws DomainError if the
  // coefficients are not Hermitian or not normalized to 1e-10.
  CouplingEnvelope(double omega_tilde, std::vector<cplx> coeffs);

  // Mirror k_1..k_N (plus a real k_0) into a Hermitian set and normalize.
  static CouplingEnvelope from_harmonics(double omega_tilde,
                                         std::span<const cplx> positive,
                                         double k0 = 0.0);

  double omega_tilde() const noexcept { return omega_tilde_; }
  int n_max() const noexcept { return n_max_; }
  cplx coeff(int n) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  // Largest |n| with a coefficient above 1e-14.
  int support() const noexcept;
  std::vector<int> nonzero_indices(double threshold = 1e-14) const;
  double total_power() const noexcept;
  bool stroboscopic(double threshold = 1e-10) const noexcept;

  // arg k_1 and |k_1|.
  double phase() const noexcept { return std::arg(coeff(1)); }
  double first_harmonic() const noexcept { return std::abs(coeff(1)); }

  // Envelope of k(t - tau).
  CouplingEnvelope delayed(double tau) const;

 private:
  double omega_tilde_;
  int n_max_;
  std::vector<cplx> coeffs_;
};

// k(t) = sqrt(2) cos(W t - phi): k_{+-1} = exp(+-i phi)/sqrt(2).
CouplingEnvelope two_tone_envelope(double omega_tilde, double phi);

// A single pulse K(t) supported on [-duration/2, duration/2].
struct UnitPulse {
  std::function<double(double)> shape;
  double duration = 0.0;
};

// Linear interpolation through samples spread uniformly over
// [-duration/2, duration/2] (endpoints included).
UnitPulse sampled_pulse(std::vector<double> samples, double duration);

// Alternating pulse train sum_n [K(t - nT - tau) - K(t - (n+1/2)T - tau)].
// Coefficients come from composite Simpson quadrature over the pulse support
// (at least `intervals` subintervals), then are rescaled so the retained
// harmonics carry unit power. Rejects pulses longer than T/2 and truncations
// that lose more than 1% of the train's power.
CouplingEnvelope stroboscopic_envelope(const UnitPulse& pulse, double tau,
                                       double omega_tilde, int n_max,
                                       int intervals = 4096);

// Integrand-agnostic composite Simpson rule on [a, b] with an even number of
// subintervals.
template <class F>
auto simpson(F&& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  auto sum = f(a) + f(b);
  using T = decltype(sum);
  T odd{}, even{};
  for (int i = 1; i < intervals; ++i) {
    const auto v = f(a + i * h);
    if (i % 2 != 0)
      odd += v;
    else
      even += v;
  }
  return (sum + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

enum class Compensation { raw, parametric, custom };

std::string_view to_string(Compensation c);
Compensation compensation_from_string(std::string_view s);

// The down-converted oscillator seen by an observer using a periodic drive.
struct EffectiveOscillator {
  double readout_rate = 0.0;  // Gamma_eff = |k_1|^2 Gamma
  double omega_eff = 0.0;     // s * Lambda
  double damping = 0.0;       // gamma (unchanged by the down-conversion)
  double detuning = 0.0;      // Lambda = |omega0| - omega_tilde
  double phase = 0.0;         // Phi = arg k_1
  int sign = 1;               // sign of the bare omega0
  double occupancy = 0.0;     // n_T of the bare oscillator
  Compensation compensation = Compensation::parametric;
  double custom_mu = 0.0;     // used when compensation == custom
  double validity_ratio = 0.0;  // max(|Lambda|, gamma) / omega_tilde

  // Parametric modulation depth mu; -gamma for the parametric scheme.
  double mu() const noexcept;
  bool within_validity(double limit = 0.1) const noexcept {
    return validity_ratio <= limit;
  }
  // Flat bare thermal PSD 2 gamma (2 n_T + 1).
  double thermal_psd() const noexcept { return 2.0 * damping * (2.0 * occupancy + 1.0); }
};

// Effective parameters from a bare oscillator and a drive envelope. Never
// throws on poor validity; callers inspect validity_ratio.
EffectiveOscillator effective_params(
    const Oscillator& osc, const CouplingEnvelope& env,
    Compensation compensation = Compensation::parametric, double custom_mu = 0.0);

enum class SqueezeMode { single, two_mode };

std::string_view to_string(SqueezeMode m);
SqueezeMode squeeze_mode_from_string(std::string_view s);

class SqueezeConfig {
 public:
  SqueezeConfig() = default;
  SqueezeConfig(double r, SqueezeMode mode);

  static SqueezeConfig from_db(double db, SqueezeMode mode);
  static SqueezeConfig vacuum(SqueezeMode mode = SqueezeMode::single) { return {0.0, mode}; }

  double r() const noexcept { return r_; }
  SqueezeMode mode() const noexcept { return mode_; }
  double db() const noexcept;

  // Quadrature PSDs of one arm: e^{+-2r}/2 (single) or cosh(2r)/2 (two-mode).
  double amplitude_psd() const noexcept;
  double phase_psd() const noexcept;
  // Two-mode cross-spectrum magnitude sinh(2r)/2; zero in single mode.
  double cross_psd() const noexcept;

 private:
  double r_ = 0.0;
  SqueezeMode mode_ = SqueezeMode::single;
};

enum class SpectrumUnit { normalized_force, reduced_force, dimensional_force, displacement };

std::string_view to_string(SpectrumUnit u);

// Sampled PSD. Grid strictly increasing; values finite and non-negative.
class NoiseSpectrum {
 public:
  NoiseSpectrum(std::vector<double> grid, std::vector<double> values, SpectrumUnit unit);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  SpectrumUnit unit() const noexcept { return unit_; }
  std::size_t size() const noexcept { return grid_.size(); }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  SpectrumUnit unit_;
};

std::vector<double> linear_grid(double lo, double hi, int points);
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace qmfs
