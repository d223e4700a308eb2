#include "qmfs/suppression.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmfs/error.hpp"

namespace qmfs {

SeparationReport check_separation(const FilterCavitySetup& setup, double max_omega,
                                  double omega_tilde, double limit) {
  if (!(setup.kappa_filter > 0.0)) throw DomainError("filter cavity: kappa_filter must be > 0");
  if (!(omega_tilde > 0.0)) throw DomainError("filter cavity: omega_tilde must be > 0");
  return SeparationReport{std::abs(max_omega) / setup.kappa_filter,
                          setup.kappa_filter / omega_tilde, limit};
}

double measured_suppression(double extraneous_psd, const FilterCavitySetup& setup) {
  if (!(setup.eta_aux >= 0.0 && setup.eta_aux <= 1.0))
    throw DomainError("measured_suppression: eta_aux must lie in [0, 1]");
  if (extraneous_psd < 0.0) throw DomainError("measured_suppression: negative PSD");
  return (1.0 - setup.eta_aux) * extraneous_psd;
}

TwinCascade::TwinCascade(std::vector<Oscillator> members, const CouplingEnvelope& envelope)
    : members_(std::move(members)), envelope_(envelope) {
  if (members_.empty()) throw DomainError("twin cascade: no members");
  const auto& ref = members_.front().params();
  for (std::size_t j = 1; j < members_.size(); ++j) {
    const auto& p = members_[j].params();
    auto check = [&](const char* field, double a, double b) {
      if (a != b)
        throw MismatchError(field, "twin cascade: member " + std::to_string(j + 1) + " differs in " +
                                       field + " (" + std::to_string(b) + " vs " +
                                       std::to_string(a) + ")");
    };
    check("omega0", ref.omega0, p.omega0);
    check("damping", ref.damping, p.damping);
    check("impedance", ref.impedance, p.impedance);
    check("occupancy", ref.occupancy, p.occupancy);
    check("readout_rate", ref.readout_rate, p.readout_rate);
  }
}

TwinCascade TwinCascade::uniform(const Oscillator& total, const CouplingEnvelope& envelope, int n) {
  if (n < 1) throw DomainError("twin cascade: N must be >= 1");
  std::vector<Oscillator> members(static_cast<std::size_t>(n),
                                  total.with_readout_rate(total.readout_rate() / n));
  return TwinCascade(std::move(members), envelope);
}

double TwinCascade::delay(int l) const {
  if (l < 1 || l > size()) throw DomainError("twin cascade: member index out of range");
  return std::numbers::pi * (l - 1) / (size() * envelope_.omega_tilde());
}

std::vector<CouplingEnvelope> TwinCascade::member_envelopes() const {
  std::vector<CouplingEnvelope> out;
  out.reserve(members_.size());
  for (int l = 1; l <= size(); ++l) out.push_back(envelope_.delayed(delay(l)));
  return out;
}

Oscillator TwinCascade::combined_oscillator() const {
  double rate = 0.0;
  for (const auto& m : members_) rate += m.readout_rate();
  return members_.front().with_readout_rate(rate);
}

LadderTransfer cascade_transfer(std::span<const Oscillator> members,
                                std::span<const CouplingEnvelope> envelopes, double omega,
                                std::optional<int> n_max) {
  if (members.size() != envelopes.size())
    throw DomainError("cascade_transfer: one envelope per member required");
  std::vector<LadderTransfer> stages;
  stages.reserve(members.size());
  for (std::size_t j = 0; j < members.size(); ++j)
    stages.push_back(badcavity_transfer(members[j], envelopes[j], omega, n_max));
  return cascade(stages);
}

LadderTransfer cascade_transfer(const TwinCascade& c, double omega, std::optional<int> n_max) {
  const auto envs = c.member_envelopes();
  return cascade_transfer(c.members(), envs, omega, n_max);
}

TwinCancellation twin_cancellation_transfer(const TwinCascade& c, double omega) {
  if (c.size() != 2) throw DomainError("twin_cancellation_transfer: needs exactly two members");
  const auto& env = c.envelope();
  if (env.support() != 1)
    throw DomainError("twin_cancellation_transfer: needs a two-tone envelope");
  const int n_max = default_rung_truncation(env);
  const auto envs = c.member_envelopes();
  TwinCancellation out;
  out.combined = cascade_transfer(c.members(), envs, omega, n_max);
  const auto first = badcavity_transfer(c.members()[0], envs[0], omega, n_max);
  const auto single = badcavity_transfer(c.combined_oscillator(), env, omega, n_max);

  for (int p = -first.amplitude_rungs(); p <= first.amplitude_rungs(); ++p) {
    if (p == 0) continue;
    const double ref = std::abs(first.amplitude_gain(p));
    if (ref == 0.0) continue;
    out.extraneous_residual =
        std::max(out.extraneous_residual, std::abs(out.combined.amplitude_gain(p)) / ref);
  }
  out.nominal_error = std::abs(out.combined.amplitude_gain(0) - single.amplitude_gain(0)) /
                      std::abs(single.amplitude_gain(0));
  for (int n : {-1, 1}) {
    double joint = 0.0;
    for (std::size_t ch = 0; ch < out.combined.from_force.size(); ++ch)
      joint += std::norm(out.combined.force_gain(n, ch));
    const double ref = std::norm(single.force_gain(n));
    out.force_error = std::max(out.force_error, std::abs(joint - ref) / ref);
  }
  return out;
}

std::string_view to_string(RungFate f) {
  switch (f) {
    case RungFate::cancelled:
      return "cancelled";
    case RungFate::constructive:
      return "constructive";
    case RungFate::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

RungFate predicted_fate(int rung, int n) {
  if (rung % 2 != 0) throw DomainError("predicted_fate: odd rung " + std::to_string(rung));
  if (n < 1) throw DomainError("predicted_fate: N must be >= 1");
  return (rung / 2) % n != 0 ? RungFate::cancelled : RungFate::constructive;
}

std::vector<RungReport> n_fold_cancellation_report(const TwinCascade& c, double omega) {
  const auto& env = c.envelope();
  if (!env.stroboscopic())
    throw DomainError("n_fold_cancellation_report: envelope has even harmonics");
  const int n_max = default_rung_truncation(env);
  const auto envs = c.member_envelopes();
  const auto combined = cascade_transfer(c.members(), envs, omega, n_max);
  const auto member = badcavity_transfer(c.members()[0], envs[0], omega, n_max);
  const int n = c.size();

  std::vector<RungReport> out;
  for (int p = -member.amplitude_rungs(); p <= member.amplitude_rungs(); ++p) {
    if (p == 0) continue;
    const double ref = std::abs(member.amplitude_gain(p));
    if (ref < 1e-300) continue;
    if (p % 2 != 0)
      throw DomainError("n_fold_cancellation_report: odd rung " + std::to_string(p) + " populated");
    RungReport r;
    r.rung = p;
    r.predicted = predicted_fate(p, n);
    r.ratio = std::abs(combined.amplitude_gain(p)) / (n * ref);
    if (r.ratio < 1e-10)
      r.observed = RungFate::cancelled;
    else if (std::abs(r.ratio - 1.0) < 1e-9)
      r.observed = RungFate::constructive;
    out.push_back(r);
  }
  return out;
}

double twin_residual_psd(const std::map<int, cplx>& gains, int n) {
  if (n < 1) throw DomainError("twin_residual_psd: N must be >= 1");
  double s = 0.0;
  for (const auto& [rung, g] : gains) {
    if (rung % 2 != 0) throw DomainError("twin_residual_psd: odd rung " + std::to_string(rung));
    if ((rung / 2) % n == 0) s += 0.5 * std::norm(g);
  }
  return s;
}

int required_cascade_size(const CouplingEnvelope& env) {
  return static_cast<int>(env.nonzero_indices(1e-10).size()) / 2 + 1;
}

}  // namespace qmfs
