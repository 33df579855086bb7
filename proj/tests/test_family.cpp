#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mixr2/family.hpp"

using mixr2::Family;
using mixr2::FamilyKind;
using mixr2::LinkKind;

namespace {

// Interior grid points of the mean domain for derivative checks.
std::vector<double> interior_grid(const Family& fam) {
  if (fam.kind == FamilyKind::gaussian) {
    return {-3.0, -1.0, -0.25, 0.5, 1.0, 2.5, 7.0};
  }
  if (fam.kind == FamilyKind::binomial) {
    return {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  }
  return {0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0};
}

}  // namespace

TEST_CASE("catalogue variance functions and derivatives", "[family]") {
  auto g = Family::gaussian();
  CHECK(g.variance(2.0) == 1.0);
  CHECK(g.variance_deriv(2.0) == 0.0);

  auto b = Family::binomial();
  CHECK(b.variance(0.25) == Catch::Approx(0.1875));
  CHECK(b.variance_deriv(0.25) == Catch::Approx(0.5));

  auto p = Family::poisson();
  CHECK(p.variance(3.0) == 3.0);
  CHECK(p.variance_deriv(3.0) == 1.0);

  auto ga = Family::gamma();
  CHECK(ga.variance(3.0) == 9.0);
  CHECK(ga.variance_deriv(3.0) == 6.0);

  auto ig = Family::inverse_gaussian();
  CHECK(ig.variance(2.0) == 8.0);
  CHECK(ig.variance_deriv(2.0) == 12.0);
}

TEST_CASE("variance derivative matches finite differences", "[family]") {
  const double h = 1e-5;
  for (const Family& fam :
       {Family::gaussian(), Family::binomial(), Family::poisson(),
        Family::gamma(), Family::inverse_gaussian(),
        Family::quasi_power(0.5, 3.0)}) {
    for (double mu : interior_grid(fam)) {
      if (!(mu > fam.mean_lo && mu < fam.mean_hi)) continue;
      const double fd = (fam.variance(mu + h) - fam.variance(mu - h)) / (2.0 * h);
      INFO(fam.name << " at mu=" << mu);
      CHECK(std::abs(fam.variance_deriv(mu) - fd) <= 1e-6);
      CHECK(fam.variance(mu) > 0.0);
    }
  }
}

TEST_CASE("links invert and differentiate consistently", "[family]") {
  for (const Family& fam :
       {Family::gaussian(), Family::binomial(), Family::poisson(),
        Family::gamma(), Family::inverse_gaussian()}) {
    for (double mu : interior_grid(fam)) {
      if (!(mu > fam.mean_lo && mu < fam.mean_hi)) continue;
      const double eta = fam.link(mu);
      CHECK(fam.inv_link(eta) == Catch::Approx(mu).epsilon(1e-10));
      const double h = 1e-6 * std::max(1.0, std::abs(eta));
      const double fd = (fam.inv_link(eta + h) - fam.inv_link(eta - h)) / (2.0 * h);
      CHECK(fam.mu_eta(eta) == Catch::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("unit deviances vanish at y = mu and are positive away from it",
          "[family]") {
  auto check = [](const Family& fam, double y, double mu) {
    CHECK(fam.unit_deviance(y, y) == Catch::Approx(0.0).margin(1e-12));
    CHECK(fam.unit_deviance(y, mu) > 0.0);
  };
  check(Family::gaussian(), 1.5, 0.5);
  check(Family::binomial(), 1.0, 0.4);
  check(Family::binomial(), 0.0, 0.4);
  check(Family::poisson(), 3.0, 1.5);
  check(Family::poisson(), 0.0, 1.5);
  check(Family::gamma(), 2.0, 1.0);
  check(Family::inverse_gaussian(), 2.0, 1.0);
}

TEST_CASE("family lookup by name", "[family]") {
  CHECK(Family::from_name("poisson").kind == FamilyKind::poisson);
  CHECK(Family::from_name("inverse-gaussian").kind == FamilyKind::inverse_gaussian);
  CHECK(Family::from_name("gaussian").link_kind == LinkKind::identity);
  CHECK_THROWS_AS(Family::from_name("cauchy"), std::invalid_argument);
}
