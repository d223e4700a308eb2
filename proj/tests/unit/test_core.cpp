#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qmfs/core.hpp"
#include "qmfs/error.hpp"

using namespace qmfs;

namespace {

Oscillator make(double w0, double g, double rate = 0.0, double n = 0.0) {
  return Oscillator({w0, g, rate, 1.0, n});
}

}  // namespace

TEST_CASE("oscillator validation") {
  CHECK_THROWS_AS(make(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(make(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(make(1.0, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(make(1.0, 1.0, 0.0, -0.5), DomainError);
  CHECK_THROWS_AS(Oscillator({1.0, 1.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK(make(-3.0, 0.1).sign() == -1);
  CHECK(make(3.0, 0.1).sign() == 1);
}

TEST_CASE("high-Q flag at |omega0|/(2 gamma) = 10") {
  CHECK(make(21.0, 1.0).high_q());
  CHECK_FALSE(make(19.0, 1.0).high_q());
  CHECK(make(-21.0, 1.0).high_q());
  CHECK(make(20.0, 1.0).quality_factor() == doctest::Approx(10.0));
}

TEST_CASE("inverse Lorentzian") {
  CHECK(inverse_lorentzian(1.0, 0.0) == cplx{1.0, 0.0});
  CHECK(inverse_lorentzian(1.0, 2.0) == cplx{1.0, -2.0});
  CHECK(inverse_lorentzian(make(5.0, 0.3), 1.5) == cplx{0.3, -1.5});

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double w = u(rng), lam = u(rng), g = std::abs(u(rng)) + 1e-3;
    const cplx lhs = inverse_lorentzian(g, w + lam) * inverse_lorentzian(g, w - lam);
    const cplx l = inverse_lorentzian(g, w);
    CHECK(oracle::rel(lhs, l * l + lam * lam) < 1e-12);
  }
}

TEST_CASE("susceptibility") {
  const auto osc = make(2.0, 0.1);
  CHECK(susceptibility(osc, 0.0).real() == doctest::Approx(0.5));
  CHECK(susceptibility(osc, 0.0).imag() == 0.0);
  CHECK(susceptibility(make(-2.0, 0.1), 0.0).real() == doctest::Approx(-0.5));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto o = make(u(rng) + 20.5, std::abs(u(rng)) + 1e-3);
    const double w = u(rng);
    CHECK(oracle::rel(susceptibility(o, -w), std::conj(susceptibility(o, w))) < 1e-14);
    // Direct form of the definition.
    const cplx direct = o.omega0() / (o.omega0() * o.omega0() - w * w - cplx{0.0, 2.0 * w * o.damping()});
    CHECK(oracle::rel(susceptibility(o, w), direct) < 1e-12);
  }
}

TEST_CASE("narrowband susceptibility near +-omega_tilde") {
  // chi(W +- W~) ~ (+-i s) / (2 l(W -+ Lambda)).
  for (double sign : {1.0, -1.0}) {
    const double wt = 1.0;
    for (double lam : {-3e-3, 1e-3, 4e-3}) {
      const double g = 1e-3;
      const auto o = make(sign * (wt + lam), g);
      for (double w : {-5e-3, 0.0, 2e-3, 8e-3}) {
        const double bound = 5.0 * std::max({std::abs(w), std::abs(lam), g}) / wt;
        for (int pm : {1, -1}) {
          const cplx approx = cplx{0.0, pm * sign} / (2.0 * inverse_lorentzian(g, w - pm * lam));
          const cplx exact = susceptibility(o, w + pm * wt);
          CHECK(std::abs(exact - approx) / std::abs(exact) <= bound);
        }
      }
    }
  }
}

TEST_CASE("thermal force PSD") {
  const double g = hz_to_rad(1e-3);
  CHECK(thermal_force_psd(make(1e6, g, 0.0, 2100.0)) == doctest::Approx(2.0 * g * 4201.0));
  CHECK(thermal_force_psd(make(1.0, 0.25)) == doctest::Approx(0.5));
  const double n = bose_occupancy(std::log(2.0));
  CHECK(n == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(thermal_force_psd(make(1.0, 0.5, 0.0, n)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(bose_occupancy(0.0), DomainError);

  double prev = 0.0;
  for (double occ : {0.0, 0.5, 1.0, 10.0, 1e3}) {
    const double s = thermal_force_psd(make(1.0, 0.1, 0.0, occ));
    CHECK(s > prev);
    prev = s;
  }
  prev = 0.0;
  for (double g2 : {1e-3, 1e-2, 0.1, 1.0}) {
    const double s = thermal_force_psd(make(1.0, g2, 0.0, 3.0));
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("squeeze configuration") {
  const auto s = SqueezeConfig::from_db(10.0 * std::log10(4.0), SqueezeMode::single);
  CHECK(std::exp(2.0 * s.r()) == doctest::Approx(4.0));
  CHECK(s.amplitude_psd() == doctest::Approx(2.0));
  CHECK(s.phase_psd() == doctest::Approx(0.125));
  CHECK(s.cross_psd() == 0.0);
  const SqueezeConfig t(0.4, SqueezeMode::two_mode);
  CHECK(t.amplitude_psd() == doctest::Approx(0.5 * std::cosh(0.8)));
  CHECK(t.phase_psd() == doctest::Approx(0.5 * std::cosh(0.8)));
  CHECK(t.cross_psd() == doctest::Approx(0.5 * std::sinh(0.8)));
  CHECK(SqueezeConfig::vacuum().amplitude_psd() == 0.5);
  CHECK_THROWS_AS(SqueezeConfig(-0.1, SqueezeMode::single), DomainError);
  CHECK(squeeze_mode_from_string("two_mode") == SqueezeMode::two_mode);
  CHECK_THROWS(squeeze_mode_from_string("three_mode"));
}

TEST_CASE("noise spectrum invariants") {
  CHECK_NOTHROW(NoiseSpectrum({1.0, 2.0}, {0.0, 3.0}, SpectrumUnit::displacement));
  CHECK_THROWS_AS(NoiseSpectrum({1.0, 1.0}, {0.0, 3.0}, SpectrumUnit::displacement), DomainError);
  CHECK_THROWS_AS(NoiseSpectrum({1.0, 2.0}, {-1.0, 3.0}, SpectrumUnit::displacement), DomainError);
  CHECK_THROWS_AS(NoiseSpectrum({1.0, 2.0}, {NAN, 3.0}, SpectrumUnit::displacement), DomainError);
  CHECK_THROWS_AS(NoiseSpectrum({1.0, 2.0}, {1.0}, SpectrumUnit::displacement), DomainError);
}

TEST_CASE("frequency grids") {
  const auto g = log_grid(5.0, 2000.0, 600);
  CHECK(g.size() == 600);
  CHECK(g.front() == 5.0);
  CHECK(g.back() == 2000.0);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(log_grid(3.0, 4.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), DomainError);
  const auto l = linear_grid(-1.0, 1.0, 5);
  CHECK(l[2] == doctest::Approx(0.0));
  CHECK(hz_to_rad(1.0) == doctest::Approx(2.0 * std::numbers::pi));
}
