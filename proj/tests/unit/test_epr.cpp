#include <doctest.h>

#include <cmath>
#include <random>

#include "qmfs/epr.hpp"
#include "qmfs/error.hpp"

using namespace qmfs;

TEST_CASE("thermal estimate") {
  CHECK(std::abs(duan_sum_thermal({2.0, 2.0, 1.0, 1.0}) - 0.5) < 1e-12);
  CHECK(duan_sum_thermal({1.0, 4.0, 0.5, 1.0}) ==
        doctest::Approx(std::sqrt(1.25) / (2.0 * std::sqrt(0.5))));
  CHECK(quantum_cooperativity(4.0, 0.5) == doctest::Approx(4.0));
  CHECK_THROWS_AS(quantum_cooperativity(1.0, 0.0), DomainError);
}

TEST_CASE("entanglement threshold for symmetric links") {
  for (double eta : {0.1, 0.37, 0.8, 1.0}) {
    const double cq = threshold_cooperativity(eta);
    CHECK(cq == doctest::Approx(1.0 / (2.0 * eta)));
    CHECK(duan_sum_thermal({cq, cq, eta, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(duan_sum_thermal({cq * 1.001, cq * 1.001, eta, 1.0}) < 1.0);
    CHECK(duan_sum_thermal({cq * 0.999, cq * 0.999, eta, 1.0}) > 1.0);
  }
  CHECK_THROWS_AS(threshold_cooperativity(0.0), DomainError);
}

TEST_CASE("loss bound") {
  CHECK(std::abs(duan_bound_loss({0.0, 0.0, 1.0, 0.45}) - 0.4837) < 1e-4);
  CHECK(duan_bound_loss({1.0, 1.0, 1.0, 0.45}) == doctest::Approx(std::sqrt(0.55 / 2.35)));
  CHECK(duan_bound_loss({1.0, 1.0, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(duan_bound_loss({1.0, 1.0, 1.0, 1.0}) == 0.0);
  for (int i = 1; i <= 100; ++i) CHECK(duan_bound_loss({1.0, 1.0, 1.0, 0.01 * i}) < 1.0);
}

TEST_CASE("monotonicity on random grids") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int k = 0; k < 200; ++k) {
    const EprLink l{10.0 * u(rng), 10.0 * u(rng), u(rng), u(rng)};
    auto up = [](double v) { return std::min(1.0, v * 1.05); };
    CHECK(duan_sum_thermal({l.cq1 * 1.05, l.cq2, l.eta, l.nu}) < duan_sum_thermal(l));
    CHECK(duan_sum_thermal({l.cq1, l.cq2 * 1.05, l.eta, l.nu}) < duan_sum_thermal(l));
    if (l.eta < 0.95) CHECK(duan_sum_thermal({l.cq1, l.cq2, up(l.eta), l.nu}) < duan_sum_thermal(l));
    if (l.eta < 0.95) CHECK(duan_bound_loss({l.cq1, l.cq2, up(l.eta), l.nu}) < duan_bound_loss(l));
    if (l.nu < 0.95) CHECK(duan_bound_loss({l.cq1, l.cq2, l.eta, up(l.nu)}) < duan_bound_loss(l));
  }
}

TEST_CASE("link validation") {
  CHECK_THROWS_AS(duan_sum_thermal({0.0, 1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(duan_sum_thermal({1.0, 1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(duan_sum_thermal({1.0, 1.0, 1.2, 1.0}), DomainError);
  CHECK_THROWS_AS(duan_bound_loss({1.0, 1.0, 1.0, 1.5}), DomainError);
  CHECK_THROWS_AS(duan_bound_loss({1.0, 1.0, 1.0, -0.1}), DomainError);
  CHECK_NOTHROW(duan_bound_loss({0.0, 0.0, 0.5, 0.5}));
}
