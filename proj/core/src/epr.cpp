#include "qmfs/epr.hpp"

#include <cmath>

#include "qmfs/error.hpp"

namespace qmfs {

namespace {

void validate_losses(const EprLink& link) {
  if (!(link.eta > 0.0 && link.eta <= 1.0)) throw DomainError("epr: eta must lie in (0, 1]");
  if (!(link.nu >= 0.0 && link.nu <= 1.0)) throw DomainError("epr: nu must lie in [0, 1]");
}

}  // namespace

void EprLink::validate() const {
  if (!(cq1 > 0.0) || !(cq2 > 0.0)) throw DomainError("epr: cooperativities must be > 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("epr: eta must lie in (0, 1]");
  if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("epr: nu must lie in [0, 1]");
}

double quantum_cooperativity(double readout_rate, double thermal_psd) {
  if (!(thermal_psd > 0.0)) throw DomainError("cooperativity: S_T must be > 0");
  return 0.5 * readout_rate / thermal_psd;
}

double duan_sum_thermal(const EprLink& link) {
  link.validate();
  return std::sqrt(1.0 / link.cq1 + 1.0 / link.cq2) / (2.0 * std::sqrt(link.eta));
}

double duan_bound_loss(const EprLink& link) {
  validate_losses(link);
  return std::sqrt((1.0 - link.nu) / (1.0 + 3.0 * link.nu)) / std::sqrt(link.eta);
}

double threshold_cooperativity(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("epr: eta must lie in (0, 1]");
  return 1.0 / (2.0 * eta);
}

}  // namespace qmfs
