#include <algorithm>
#include <cmath>
#include <string>

#include "qmfs/core.hpp"
#include "qmfs/error.hpp"

namespace qmfs {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kNormTol = 1e-10;
constexpr double kMaxNormCorrection = 0.01;

}  // namespace

CouplingEnvelope::CouplingEnvelope(double omega_tilde, std::vector<cplx> coeffs)
    : omega_tilde_(omega_tilde), n_max_(0), coeffs_(std::move(coeffs)) {
  if (!(omega_tilde_ > 0.0) || !std::isfinite(omega_tilde_))
    throw DomainError("envelope: omega_tilde must be > 0");
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw DomainError("envelope: coefficient count must be odd (n = -N..N)");
  n_max_ = static_cast<int>(coeffs_.size() / 2);
  for (int n = 0; n <= n_max_; ++n) {
    if (std::abs(coeff(-n) - std::conj(coeff(n))) > kHermitianTol)
      throw DomainError("envelope: k_{-" + std::to_string(n) + "} != conj(k_" +
                        std::to_string(n) + ")");
  }
  if (std::abs(total_power() - 1.0) > kNormTol)
    throw DomainError("envelope: sum |k_n|^2 must equal 1");
}

CouplingEnvelope CouplingEnvelope::from_harmonics(double omega_tilde,
                                                  std::span<const cplx> positive, double k0) {
  const int n = static_cast<int>(positive.size());
  std::vector<cplx> c(2 * n + 1);
  c[n] = k0;
  double power = k0 * k0;
  for (int i = 1; i <= n; ++i) {
    c[n + i] = positive[i - 1];
    c[n - i] = std::conj(positive[i - 1]);
    power += 2.0 * std::norm(positive[i - 1]);
  }
  if (!(power > 0.0)) throw DomainError("envelope: all harmonics are zero");
  const double scale = 1.0 / std::sqrt(power);
  for (auto& v : c) v *= scale;
  return CouplingEnvelope(omega_tilde, std::move(c));
}

cplx CouplingEnvelope::coeff(int n) const noexcept {
  if (n < -n_max_ || n > n_max_) return {};
  return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

int CouplingEnvelope::support() const noexcept {
  for (int n = n_max_; n > 0; --n)
    if (std::abs(coeff(n)) > 1e-14) return n;
  return 0;
}

std::vector<int> CouplingEnvelope::nonzero_indices(double threshold) const {
  std::vector<int> out;
  for (int n = -n_max_; n <= n_max_; ++n)
    if (std::abs(coeff(n)) > threshold) out.push_back(n);
  return out;
}

double CouplingEnvelope::total_power() const noexcept {
  double p = 0.0;
  for (const auto& c : coeffs_) p += std::norm(c);
  return p;
}

bool CouplingEnvelope::stroboscopic(double threshold) const noexcept {
  for (int n = -n_max_; n <= n_max_; n += 1)
    if (n % 2 == 0 && std::abs(coeff(n)) >= threshold) return false;
  return true;
}

CouplingEnvelope CouplingEnvelope::delayed(double tau) const {
  std::vector<cplx> c(coeffs_.size());
  for (int n = -n_max_; n <= n_max_; ++n)
    c[n + n_max_] = coeff(n) * std::polar(1.0, n * omega_tilde_ * tau);
  // Hermitian symmetry is exact in exact arithmetic; restore it bitwise.
  for (int n = 1; n <= n_max_; ++n) c[n_max_ - n] = std::conj(c[n_max_ + n]);
  c[n_max_] = c[n_max_].real();
  return CouplingEnvelope(omega_tilde_, std::move(c));
}

CouplingEnvelope two_tone_envelope(double omega_tilde, double phi) {
  const double a = 1.0 / std::numbers::sqrt2;
  return CouplingEnvelope(omega_tilde, {std::polar(a, -phi), cplx{}, std::polar(a, phi)});
}

UnitPulse sampled_pulse(std::vector<double> samples, double duration) {
  if (samples.size() < 2) throw DomainError("pulse: need at least two samples");
  if (!(duration > 0.0)) throw DomainError("pulse: duration must be > 0");
  const double half = 0.5 * duration;
  const double step = duration / static_cast<double>(samples.size() - 1);
  auto shape = [s = std::move(samples), half, step](double t) {
    if (t < -half || t > half) return 0.0;
    const double x = (t + half) / step;
    const auto i = std::min(static_cast<std::size_t>(x), s.size() - 2);
    const double frac = x - static_cast<double>(i);
    return s[i] + (s[i + 1] - s[i]) * frac;
  };
  return UnitPulse{std::move(shape), duration};
}

CouplingEnvelope stroboscopic_envelope(const UnitPulse& pulse, double tau, double omega_tilde,
                                       int n_max, int intervals) {
  if (!(omega_tilde > 0.0)) throw DomainError("stroboscopic: omega_tilde must be > 0");
  if (n_max < 1) throw DomainError("stroboscopic: n_max must be >= 1");
  if (!pulse.shape) throw DomainError("stroboscopic: empty pulse shape");
  const double period = two_pi / omega_tilde;
  if (!(pulse.duration > 0.0) || pulse.duration > 0.5 * period * (1.0 + 1e-12))
    throw DomainError("stroboscopic: pulse duration must lie in (0, T/2]");

  intervals = std::max(intervals, 4096);
  const double a = -0.5 * pulse.duration, b = 0.5 * pulse.duration;

  // The train holds one positive and one negative copy of K per period, and
  // the copies never overlap, so the period integral splits into two pulse
  // integrals differing by the phase exp(i n pi):
  //   k_n = (1/T) exp(i n W tau) (1 - (-1)^n) \int K(u) exp(i n W u) du.
  const double mean_square =
      2.0 / period * simpson([&](double u) { const double k = pulse.shape(u); return k * k; },
                             a, b, intervals);
  if (!(mean_square > 0.0)) throw DomainError("stroboscopic: pulse has zero energy");

  std::vector<cplx> c(2 * n_max + 1);
  for (int n = 1; n <= n_max; n += 2) {
    const double w = n * omega_tilde;
    const cplx integral =
        simpson([&](double u) { return pulse.shape(u) * std::polar(1.0, w * u); }, a, b,
                intervals);
    c[n_max + n] = 2.0 / period * std::polar(1.0, w * tau) * integral;
    c[n_max - n] = std::conj(c[n_max + n]);
  }

  double captured = 0.0;
  for (const auto& v : c) captured += std::norm(v);
  const double correction = 1.0 - captured / mean_square;
  if (std::abs(correction) > kMaxNormCorrection)
    throw DomainError("stroboscopic: retained harmonics hold " +
                      std::to_string(100.0 * captured / mean_square) +
                      "% of the train power; raise n_max or the sampling");
  const double scale = 1.0 / std::sqrt(captured);
  for (auto& v : c) v *= scale;
  return CouplingEnvelope(omega_tilde, std::move(c));
}

}  // namespace qmfs
