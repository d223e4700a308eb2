#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmfs/downconv.hpp"
#include "qmfs/error.hpp"
#include "qmfs/ladder.hpp"

using namespace qmfs;

namespace {

EffectiveOscillator make_eff(double we, double gamma, Compensation c, double gamma_eff = 1.0) {
  EffectiveOscillator e;
  e.readout_rate = gamma_eff;
  e.omega_eff = we;
  e.damping = gamma;
  e.detuning = std::abs(we);
  e.sign = we >= 0 ? 1 : -1;
  e.compensation = c;
  return e;
}

// argmax of f on a dense grid, refined by golden section
double peak(const std::function<double(double)>& f, double lo, double hi) {
  double best = lo, fb = -1.0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = lo + (hi - lo) * i / 20000.0;
    if (f(x) > fb) fb = f(x), best = x;
  }
  const double h = (hi - lo) / 20000.0;
  return oracle::golden_section([&](double x) { return -f(x); }, best - h, best + h).first;
}

}  // namespace

TEST_CASE("effective susceptibility examples") {
  const auto raw = make_eff(2.0, 0.1, Compensation::raw);
  const auto par = make_eff(2.0, 0.1, Compensation::parametric);
  CHECK(par.mu() == doctest::Approx(-0.1));
  CHECK(raw.mu() == 0.0);
  // Omega_eff / (Omega_eff^2 + gamma^2 - mu^2 - W^2 - 2 i gamma W) written out
  const double w = 1.3;
  CHECK(oracle::rel(effective_susceptibility(raw, w), 2.0 / cplx{4.0 + 0.01 - w * w, -0.2 * w}) < 1e-15);
  CHECK(oracle::rel(effective_susceptibility(par, w), 2.0 / cplx{4.0 - w * w, -0.2 * w}) < 1e-15);
  // The two differ only by gamma^2 in the real part of the denominator.
  for (double x : {0.0, 0.7, 2.5}) {
    const cplx d = 1.0 / effective_susceptibility(raw, x) - 1.0 / effective_susceptibility(par, x);
    CHECK(d.real() == doctest::Approx(0.01 / 2.0));
    CHECK(std::abs(d.imag()) < 1e-15);
  }
  // Negative frequencies flip the sign of chi_eff.
  const auto neg = make_eff(-2.0, 0.1, Compensation::parametric);
  CHECK(oracle::rel(effective_susceptibility(neg, w), -effective_susceptibility(par, w)) < 1e-15);
  // Degenerate point: no restoring force, no response.
  CHECK(effective_susceptibility(make_eff(0.0, 0.1, Compensation::raw), 0.3) == cplx{});
  CHECK(std::conj(effective_susceptibility(raw, w)) == effective_susceptibility(raw, -w));
}

TEST_CASE("susceptibility peaks at sqrt(w_n^2 - 2 gamma^2)") {
  const double we = 1.0, g = 0.2;
  for (auto c : {Compensation::raw, Compensation::parametric}) {
    const auto e = make_eff(we, g, c);
    const double wn2 = we * we + g * g - e.mu() * e.mu();
    const double x = peak([&](double w) { return std::abs(effective_susceptibility(e, w)); }, 0.0, 2.0);
    CHECK(x == doctest::Approx(std::sqrt(wn2 - 2.0 * g * g)).epsilon(1e-6));
    // |W chi| peaks exactly at the pole magnitude.
    const double y = peak([&](double w) { return std::abs(w * effective_susceptibility(e, w)); }, 0.0, 2.0);
    CHECK(y == doctest::Approx(std::sqrt(wn2)).epsilon(1e-6));
  }
}

TEST_CASE("quadrature dampings") {
  for (double mu : {-0.3, 0.0, 0.1}) {
    const auto [a, b] = quadrature_damping(0.3, mu);
    CHECK(a + b == doctest::Approx(0.6));
    CHECK(a - b == doctest::Approx(-2.0 * mu));
  }
  const auto [c, s] = quadrature_damping(0.3, -0.3);
  CHECK(c == doctest::Approx(0.6));
  CHECK(s == 0.0);
}

TEST_CASE("effective force PSD") {
  const auto raw = make_eff(2.0, 0.1, Compensation::raw);
  const auto par = make_eff(2.0, 0.1, Compensation::parametric);
  CHECK(effective_force_psd(raw, 3.0, 0.5) == doctest::Approx((4.0 + 0.01 + 0.25) / 8.0 * 3.0));
  CHECK(effective_force_psd(par, 3.0, 0.5) == doctest::Approx((4.0 + 0.25) / 8.0 * 3.0));
  for (double w : {0.0, 1.0, 10.0}) CHECK(effective_force_psd(par, 2.0, w) >= 1.0);
  CHECK(effective_force_psd(par, 2.0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(effective_force_psd(make_eff(0.0, 0.1, Compensation::raw), 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(effective_force_psd(raw, -1.0, 0.0), DomainError);
}

TEST_CASE("two-tone extraneous gains") {
  const Oscillator osc({1.001, 1e-3, 2e-3, 1.0, 0.0});
  for (double phi : {0.0, 0.7}) {
    const auto env = two_tone_envelope(1.0, phi);
    const auto eff = effective_params(osc, env, Compensation::raw);
    const double G = osc.readout_rate(), lam = eff.detuning;
    for (double w : {-3e-3, 0.0, 5e-4}) {
      const auto g = extraneous_qba_gains(eff, env, w);
      REQUIRE(g.size() == 2);
      const cplx minus = cplx{0.0, G / 4.0} * std::polar(1.0, -2.0 * phi) /
                         inverse_lorentzian(1e-3, w - lam);
      const cplx plus = -cplx{0.0, G / 4.0} * std::polar(1.0, 2.0 * phi) /
                        inverse_lorentzian(1e-3, w + lam);
      CHECK(oracle::rel(g.at(-2), minus) < 1e-14);
      CHECK(oracle::rel(g.at(2), plus) < 1e-14);
      const auto via_osc = extraneous_qba_gains(effective_params(osc, env, Compensation::raw), env, w);
      for (const auto& [n, v] : via_osc) CHECK(v == g.at(n));
    }
  }
  CHECK_THROWS_AS(
      extraneous_qba_gains(osc, CouplingEnvelope(1.0, {cplx{}, cplx{1.0, 0.0}, cplx{}}), 0.0),
      DomainError);
}

TEST_CASE("three-harmonic envelope feeds rungs 2 and 4") {
  const cplx pos[] = {{0.6, 0.2}, {0.0, 0.0}, {0.25, -0.1}};
  const auto env = CouplingEnvelope::from_harmonics(1.0, pos);
  const Oscillator osc({0.999, 1e-4, 1e-4, 1.0, 0.0});
  const auto eff = effective_params(osc, env, Compensation::raw);
  for (double w : {-2e-3, 0.0, 1e-3}) {
    const auto g = extraneous_qba_gains(eff, env, w);
    std::vector<int> keys;
    for (const auto& [n, v] : g) keys.push_back(n);
    CHECK(keys == std::vector<int>{-4, -2, 2, 4});
    const auto t = badcavity_transfer(osc, env, w);
    for (int n : keys) CHECK(oracle::rel(t.amplitude_gain(n), g.at(n)) < 1e-2);
  }
}

TEST_CASE("effective IO PSD") {
  const Oscillator osc({1.0, 1e-3, 2e-3, 1.0, 0.0});
  const auto env = two_tone_envelope(1.0, 0.0);
  const auto eff = effective_params(osc, env, Compensation::raw);
  CHECK(eff.detuning == 0.0);
  const double G = osc.readout_rate(), g = osc.damping();
  const double with = effective_io_psd(eff, SqueezeConfig{}, 0.0, 0.0, ExtraneousQba::include, env);
  const double without = effective_io_psd(eff, SqueezeConfig{}, 0.0, 0.0, ExtraneousQba::exclude, env);
  CHECK(with - without == doctest::Approx(G * G / 16.0 * 2.0 / (g * g) * 0.5));

  // Omega_eff = 0 keeps the finite product form: no back-action, only thermal.
  CHECK(without == doctest::Approx(0.5));
  const double st = 4.0;
  const double th = effective_io_psd(eff, SqueezeConfig{}, st, 2e-3, ExtraneousQba::exclude, env);
  const double expect = 0.5 + eff.readout_rate * (g * g + 4e-6) /
                                  (2.0 * std::norm(effective_response(eff, 2e-3))) * st;
  CHECK(th == doctest::Approx(expect).epsilon(1e-12));

  // Away from the degenerate point the product form equals G|chi|^2 S_feff.
  const Oscillator osc2({1.002, 1e-3, 2e-3, 1.0, 0.0});
  const auto e2 = effective_params(osc2, env, Compensation::parametric);
  const SqueezeConfig sq(0.4, SqueezeMode::single);
  for (double w : {-1e-3, 0.0, 3e-3}) {
    const double chi2 = std::norm(effective_susceptibility(e2, w));
    const double ref = sq.phase_psd() + e2.readout_rate * e2.readout_rate * chi2 * sq.amplitude_psd() +
                       e2.readout_rate * chi2 * effective_force_psd(e2, st, w);
    CHECK(effective_io_psd(e2, sq, st, w, ExtraneousQba::exclude, env) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(effective_io_psd(e2, sq, -1.0, 0.0, ExtraneousQba::exclude, env), DomainError);
}

TEST_CASE("ladder agreement inside the validity window") {
  const auto env = two_tone_envelope(1.0, 0.3);
  const Oscillator osc({1.001, 1e-3, 1e-3, 1.0, 0.0});
  const auto eff = effective_params(osc, env, Compensation::raw);
  REQUIRE(eff.within_validity(1e-3));
  for (double w : linear_grid(-1e-2, 1e-2, 31)) {
    const auto t = badcavity_transfer(osc, env, w);
    const double lad = output_psd(t, RungInputs::vacuum(t));
    const double model = effective_io_psd(eff, SqueezeConfig{}, 0.0, w, ExtraneousQba::include, env);
    CHECK(oracle::rel(lad, model) < 1e-2);
  }
}
