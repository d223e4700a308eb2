#include "qmfs/ladder.hpp"

#include <cmath>
#include <string>

#include "qmfs/error.hpp"

namespace qmfs {

cplx LadderTransfer::amplitude_gain(int p) const noexcept {
  const int r = amplitude_rungs();
  if (p < -r || p > r) return {};
  return from_amplitude[static_cast<std::size_t>(p + r)];
}

cplx LadderTransfer::force_gain(int n, std::size_t channel) const noexcept {
  if (channel >= from_force.size() || n < -n_max || n > n_max) return {};
  return from_force[channel][static_cast<std::size_t>(n + n_max)];
}

CavityParams CavityParams::from_readout_rate(double kappa, double readout_rate) {
  if (!(kappa > 0.0)) throw DomainError("cavity: kappa must be > 0");
  if (!(readout_rate >= 0.0)) throw DomainError("cavity: readout rate must be >= 0");
  return CavityParams{kappa, std::sqrt(readout_rate * kappa / 8.0)};
}

int default_rung_truncation(const CouplingEnvelope& env) { return env.support() + 2; }

namespace {

int resolve_truncation(const CouplingEnvelope& env, std::optional<int> n_max) {
  const int n = n_max.value_or(default_rung_truncation(env));
  if (n < env.support())
    throw DomainError("ladder: n_max=" + std::to_string(n) +
                      " is below the envelope support " + std::to_string(env.support()));
  return n;
}

// Shared sideband sum. `readout(W')` is the filter seen by an oscillator
// sideband on its way to the detector, `drive(W')` the one applied to the
// amplitude noise before it reaches the oscillator; both are 1 in the
// bad-cavity limit.
template <class Readout, class Drive>
LadderTransfer assemble(const Oscillator& osc, const CouplingEnvelope& env, double omega,
                        int n_max, Readout readout, Drive drive) {
  LadderTransfer t;
  t.omega = omega;
  t.n_max = n_max;
  t.from_amplitude.assign(static_cast<std::size_t>(4 * n_max + 1), cplx{});
  t.from_force.assign(1, std::vector<cplx>(static_cast<std::size_t>(2 * n_max + 1)));

  const double rate = osc.readout_rate();
  const double root_rate = std::sqrt(rate);
  const double wt = env.omega_tilde();
  const cplx out_filter = readout(omega);

  for (int n = -n_max; n <= n_max; ++n) {
    const cplx kn = env.coeff(n);
    if (kn == cplx{}) continue;
    const double w_side = omega - n * wt;
    const cplx chi = susceptibility(osc, w_side);
    t.from_force[0][static_cast<std::size_t>(n + n_max)] = root_rate * out_filter * kn * chi;
    for (int m = -n_max; m <= n_max; ++m) {
      const cplx km = env.coeff(m);
      if (km == cplx{}) continue;
      const int p = n + m;
      t.from_amplitude[static_cast<std::size_t>(p + 2 * n_max)] +=
          rate * out_filter * kn * km * chi * drive(omega - p * wt);
    }
  }
  return t;
}

}  // namespace

LadderTransfer badcavity_transfer(const Oscillator& osc, const CouplingEnvelope& env,
                                  double omega, std::optional<int> n_max) {
  const int n = resolve_truncation(env, n_max);
  auto unity = [](double) { return cplx{1.0, 0.0}; };
  return assemble(osc, env, omega, n, unity, unity);
}

LadderTransfer fullcavity_transfer(const Oscillator& osc, const CouplingEnvelope& env,
                                   const CavityParams& cav, double omega,
                                   std::optional<int> n_max) {
  const int n = resolve_truncation(env, n_max);
  if (!(cav.kappa > 0.0)) throw DomainError("cavity: kappa must be > 0");
  const double rate = cav.readout_rate();
  if (std::abs(rate - osc.readout_rate()) > 1e-9 * std::max(rate, osc.readout_rate()))
    throw DomainError("fullcavity: 8 g^2 / kappa differs from the oscillator readout rate");
  // kappa / (kappa - i W): q = sqrt(2 kappa)/(kappa - i W) a, and every route
  // through the cavity carries one such factor normalized to its DC value.
  const double kappa = cav.kappa;
  auto lorentz = [kappa](double w) { return cplx{kappa, 0.0} / cplx{kappa, -w}; };
  LadderTransfer t = assemble(osc, env, omega, n, lorentz, lorentz);
  const cplx reflect = cplx{kappa, omega} / cplx{kappa, -omega};
  t.from_phase = reflect;
  t.amplitude_passthrough = reflect;
  return t;
}

RungInputs RungInputs::vacuum(const LadderTransfer& t, double force_psd) {
  RungInputs in;
  in.amplitude.assign(t.from_amplitude.size(), 0.5);
  in.phase = 0.5;
  in.force.assign(t.from_force.size(),
                  std::vector<double>(static_cast<std::size_t>(2 * t.n_max + 1), force_psd));
  return in;
}

double output_psd(const LadderTransfer& t, const RungInputs& in, const SqueezeConfig& squeeze) {
  if (in.amplitude.size() != t.from_amplitude.size())
    throw DomainError("output_psd: amplitude rung count mismatch");
  if (in.force.size() != t.from_force.size())
    throw DomainError("output_psd: force channel count mismatch");
  if (in.phase < 0.0) throw DomainError("output_psd: negative phase-quadrature PSD");

  const int r = t.amplitude_rungs();
  double s = 0.0;
  for (int p = -r; p <= r; ++p) {
    double sp = in.amplitude[static_cast<std::size_t>(p + r)];
    if (sp < 0.0) throw DomainError("output_psd: negative amplitude PSD at rung " +
                                    std::to_string(p));
    if (p == 0) sp *= 2.0 * squeeze.amplitude_psd();
    s += std::norm(t.amplitude_gain(p)) * sp;
  }
  s += std::norm(t.from_phase) * in.phase * 2.0 * squeeze.phase_psd();
  for (std::size_t c = 0; c < t.from_force.size(); ++c) {
    if (in.force[c].size() != t.from_force[c].size())
      throw DomainError("output_psd: force rung count mismatch");
    for (std::size_t i = 0; i < t.from_force[c].size(); ++i) {
      if (in.force[c][i] < 0.0) throw DomainError("output_psd: negative force PSD");
      s += std::norm(t.from_force[c][i]) * in.force[c][i];
    }
  }
  return s;
}

LadderTransfer cascade(std::span<const LadderTransfer> stages) {
  if (stages.empty()) throw DomainError("cascade: no stages");
  LadderTransfer out;
  out.omega = stages.front().omega;
  out.n_max = 0;
  for (const auto& s : stages) {
    if (s.omega != out.omega) throw DomainError("cascade: stages evaluated at different omega");
    if (std::abs(s.amplitude_passthrough - cplx{1.0, 0.0}) > 1e-12)
      throw DomainError("cascade: only bad-cavity stages (b^c = a^c) compose");
    out.n_max = std::max(out.n_max, s.n_max);
  }
  const int r = 2 * out.n_max;
  out.from_amplitude.assign(static_cast<std::size_t>(2 * r + 1), cplx{});
  out.from_phase = cplx{1.0, 0.0};
  for (const auto& s : stages) {
    // Each stage adds its response to the common amplitude noise and relays
    // the incoming phase quadrature with gain from_phase.
    for (auto& g : out.from_amplitude) g *= s.from_phase;
    for (auto& ch : out.from_force)
      for (auto& g : ch) g *= s.from_phase;
    out.from_phase *= s.from_phase;
    for (int p = -s.amplitude_rungs(); p <= s.amplitude_rungs(); ++p)
      out.from_amplitude[static_cast<std::size_t>(p + r)] += s.amplitude_gain(p);
    for (const auto& ch : s.from_force) {
      std::vector<cplx> padded(static_cast<std::size_t>(2 * out.n_max + 1));
      for (int n = -s.n_max; n <= s.n_max; ++n)
        padded[static_cast<std::size_t>(n + out.n_max)] = ch[static_cast<std::size_t>(n + s.n_max)];
      out.from_force.push_back(std::move(padded));
    }
  }
  return out;
}

}  // namespace qmfs
