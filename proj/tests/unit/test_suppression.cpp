#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qmfs/downconv.hpp"
#include "qmfs/error.hpp"
#include "qmfs/suppression.hpp"

using namespace qmfs;

namespace {

const Oscillator kTotal({1.001, 1e-4, 2e-4, 1.0, 0.0});

CouplingEnvelope odd_envelope(const std::vector<int>& harmonics, double wt = 1.0) {
  int top = 0;
  for (int h : harmonics) top = std::max(top, h);
  std::vector<cplx> pos(static_cast<std::size_t>(top));
  double ph = 0.3;
  for (int h : harmonics) pos[static_cast<std::size_t>(h - 1)] = std::polar(1.0 / h, ph += 0.4);
  return CouplingEnvelope::from_harmonics(wt, pos);
}

}  // namespace

TEST_CASE("measured suppression scales by 1 - eta") {
  for (int i = 0; i <= 10; ++i) {
    const double eta = 0.1 * i;
    CHECK(measured_suppression(2.0, {10.0, eta}) == doctest::Approx(2.0 * (1.0 - eta)));
  }
  CHECK(measured_suppression(2.0, {10.0, 1.0}) == 0.0);
  CHECK_THROWS_AS(measured_suppression(1.0, {10.0, 1.1}), DomainError);
  CHECK_THROWS_AS(measured_suppression(1.0, {10.0, -0.1}), DomainError);
  CHECK_THROWS_AS(measured_suppression(-1.0, {10.0, 0.5}), DomainError);

  // The residual is the optimum of subtracting a scaled copy of the
  // extraneous term measured with efficiency eta: the measured record is
  // sqrt(eta) x + sqrt(1-eta) v with unit-variance x and v.
  for (double eta : {0.2, 0.5, 0.9}) {
    auto left = [&](double c) {
      const double a = 1.0 - c * std::sqrt(eta);
      return a * a + c * c * (1.0 - eta);
    };
    const auto [c, best] = oracle::golden_section(left, -5.0, 5.0);
    CHECK(best == doctest::Approx(measured_suppression(1.0, {10.0, eta})).epsilon(1e-9));
  }
}

TEST_CASE("filter cavity separation") {
  const auto r = check_separation({2.0, 0.9}, 0.1, 100.0);
  CHECK(r.band_ratio == doctest::Approx(0.05));
  CHECK(r.filter_ratio == doctest::Approx(0.02));
  CHECK(r.ok());
  CHECK_FALSE(check_separation({2.0, 0.9}, 1.0, 100.0).ok());
  CHECK_FALSE(check_separation({50.0, 0.9}, 0.1, 100.0).ok());
  CHECK_THROWS_AS(check_separation({0.0, 0.9}, 0.1, 100.0), DomainError);
}

TEST_CASE("twin cascade removes the extraneous rungs") {
  const auto env = two_tone_envelope(1.0, 0.25);
  const auto twin = TwinCascade::uniform(kTotal, env, 2);
  CHECK(twin.delay(1) == 0.0);
  CHECK(twin.delay(2) == doctest::Approx(std::numbers::pi / 2.0));
  CHECK_THROWS_AS(twin.delay(3), DomainError);
  CHECK(twin.combined_oscillator().readout_rate() == doctest::Approx(kTotal.readout_rate()));
  for (double w : linear_grid(-5e-3, 5e-3, 50)) {
    const auto t = twin_cancellation_transfer(twin, w);
    CHECK(t.extraneous_residual < 1e-10);
    CHECK(t.nominal_error < 1e-8);
    CHECK(t.force_error < 1e-8);
  }
  CHECK_THROWS_AS(twin_cancellation_transfer(TwinCascade::uniform(kTotal, env, 3), 0.0), DomainError);
  CHECK_THROWS_AS(twin_cancellation_transfer(TwinCascade::uniform(kTotal, odd_envelope({1, 3}), 2), 0.0),
                  DomainError);
}

TEST_CASE("mismatched members are rejected by field") {
  const auto env = two_tone_envelope(1.0, 0.0);
  const Oscillator a({1.0, 1e-3, 1e-3, 1.0, 0.0});
  const std::pair<const char*, Oscillator> cases[] = {
      {"omega0", Oscillator({1.0 + 1e-9, 1e-3, 1e-3, 1.0, 0.0})},
      {"damping", Oscillator({1.0, 2e-3, 1e-3, 1.0, 0.0})},
      {"impedance", Oscillator({1.0, 1e-3, 1e-3, 2.0, 0.0})},
      {"occupancy", Oscillator({1.0, 1e-3, 1e-3, 1.0, 1.0})},
      {"readout_rate", Oscillator({1.0, 1e-3, 2e-3, 1.0, 0.0})},
  };
  for (const auto& [field, b] : cases) {
    try {
      TwinCascade({a, b}, env);
      FAIL("no mismatch reported for " << field);
    } catch (const MismatchError& e) {
      CHECK(e.field() == field);
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  }
  CHECK_THROWS_AS(TwinCascade({}, env), DomainError);
  CHECK_THROWS_AS(TwinCascade::uniform(a, env, 0), DomainError);
}

TEST_CASE("detuned twin leaves a residual quadratic in the detuning") {
  const auto env = two_tone_envelope(1.0, 0.0);
  const Oscillator a({1.001, 1e-4, 1e-4, 1.0, 0.0});
  const TwinCascade ref({a, a}, env);
  const auto envs = ref.member_envelopes();
  const double w = 2e-4;
  std::vector<double> d, psd;
  for (int i = -8; i <= 8; ++i) {
    const double delta = 2e-6 * i;
    const Oscillator members[] = {a, a.with_omega0(a.omega0() + delta)};
    const auto t = cascade_transfer(members, envs, w);
    double s = 0.0;
    for (int p : {-2, 2}) s += 0.5 * std::norm(t.amplitude_gain(p));
    d.push_back(delta);
    psd.push_back(s);
  }
  const auto fit = oracle::fit_quadratic(d, psd);
  CHECK(fit.r2 > 0.999);
  CHECK(fit.c > 0.0);
  CHECK(psd[8] < 1e-20);
}

TEST_CASE("N-fold cancellation rule") {
  const std::vector<std::vector<int>> shapes = {{1}, {1, 3}, {1, 3, 5}, {1, 5}};
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& shape : shapes) {
      const auto env = odd_envelope(shape);
      const auto c = TwinCascade::uniform(kTotal, env, n);
      for (double w : {-1e-3, 0.0, 7e-4}) {
        for (const auto& r : n_fold_cancellation_report(c, w)) {
          CHECK(r.observed == r.predicted);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 100);

  // Three members with harmonics {1,3,5}: rungs 6 and -6 add up, the rest cancel.
  const auto c = TwinCascade::uniform(kTotal, odd_envelope({1, 3, 5}), 3);
  for (const auto& r : n_fold_cancellation_report(c, 1e-4)) {
    if (std::abs(r.rung) == 6)
      CHECK(r.observed == RungFate::constructive);
    else
      CHECK(r.observed == RungFate::cancelled);
  }
  CHECK(predicted_fate(6, 3) == RungFate::constructive);
  CHECK(predicted_fate(-12, 3) == RungFate::constructive);
  for (int p : {2, 4, 8, 10, -2, -4, -8, -10}) CHECK(predicted_fate(p, 3) == RungFate::cancelled);
  CHECK_THROWS_AS(predicted_fate(3, 2), DomainError);
  CHECK(to_string(RungFate::cancelled) == "cancelled");

  const cplx pos[] = {{0.7, 0.0}, {0.3, 0.0}};
  const auto even = CouplingEnvelope::from_harmonics(1.0, pos);
  CHECK_THROWS_AS(n_fold_cancellation_report(TwinCascade::uniform(kTotal, even, 2), 0.0), DomainError);
}

TEST_CASE("cascade size and residual bookkeeping") {
  CHECK(required_cascade_size(two_tone_envelope(1.0, 0.0)) == 2);
  CHECK(required_cascade_size(odd_envelope({1, 3})) == 3);
  CHECK(required_cascade_size(odd_envelope({1, 3, 5})) == 4);

  const std::map<int, cplx> gains = {{-4, {1.0, 0.0}}, {-2, {0.0, 2.0}}, {2, {3.0, 0.0}}, {6, {0.0, 1.0}}};
  CHECK(twin_residual_psd(gains, 1) == doctest::Approx(0.5 * (1 + 4 + 9 + 1)));
  CHECK(twin_residual_psd(gains, 2) == doctest::Approx(0.5));
  CHECK(twin_residual_psd(gains, 3) == doctest::Approx(0.5));
  CHECK(twin_residual_psd(gains, 4) == 0.0);
  CHECK_THROWS_AS(twin_residual_psd({{1, {1.0, 0.0}}}, 2), DomainError);

  // Applying the rule to the actual gains matches the cascaded ladder.
  const auto env = odd_envelope({1, 3});
  const auto eff = effective_params(kTotal, env, Compensation::raw);
  for (int n : {2, 3}) {
    const double w = 3e-4;
    const auto c = TwinCascade::uniform(kTotal, env, n);
    const auto t = cascade_transfer(c, w);
    double lad = 0.0;
    for (int p = -4; p <= 4; p += 2)
      if (p != 0) lad += 0.5 * std::norm(t.amplitude_gain(p));
    const double model = twin_residual_psd(extraneous_qba_gains(eff, env, w), n);
    if (model == 0.0)
      CHECK(lad < 1e-20);
    else
      CHECK(oracle::rel(lad, model) < 2e-2);
  }
}
