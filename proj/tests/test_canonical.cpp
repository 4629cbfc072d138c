#include <cmath>

#include "doctest.h"
#include "ringmod/canonical.hpp"
#include "ringmod/errors.hpp"

using namespace ringmod;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_SUITE("canonical") {
  TEST_CASE("grotzsch_mu special point") {
    CHECK(grotzsch_mu(1.0 / std::sqrt(2.0)) == doctest::Approx(kPi / 2).epsilon(1e-14));
  }

  TEST_CASE("grotzsch_mu complementary product") {
    for (double r : {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.95}) {
      double rp = std::sqrt(1.0 - r * r);
      CHECK(grotzsch_mu(r) * grotzsch_mu(rp) ==
            doctest::Approx(kPi * kPi / 4).epsilon(1e-13));
    }
  }

  TEST_CASE("grotzsch_mu small-argument asymptote") {
    for (double r : {1e-3, 1e-5, 1e-7}) {
      CHECK(std::abs(grotzsch_mu(r) - std::log(4.0 / r)) < r * r);
    }
  }

  TEST_CASE("grotzsch_mu is strictly decreasing") {
    double prev = grotzsch_mu(0.05);
    for (double r = 0.1; r < 1.0; r += 0.05) {
      double cur = grotzsch_mu(r);
      CHECK(cur < prev);
      prev = cur;
    }
  }

  TEST_CASE("grotzsch_mu pinned values") {
    CHECK(grotzsch_mu(0.5) == doctest::Approx(2.0094593770052852).epsilon(1e-13));
    CHECK(grotzsch_mu(std::sqrt(3.0) / 2) ==
          doctest::Approx(1.2278929987375654).epsilon(1e-13));
  }

  TEST_CASE("grotzsch_mu Landen step") {
    // mu(2 sqrt(r)/(1+r)) = mu(r)/2
    for (double r : {0.2, 0.5, 0.8}) {
      double rl = 2.0 * std::sqrt(r) / (1.0 + r);
      CHECK(grotzsch_mu(rl) == doctest::Approx(grotzsch_mu(r) / 2).epsilon(1e-13));
    }
  }

  TEST_CASE("annulus modulus") {
    auto e = modulus_canonical(CanonicalRing::annulus(1.0, 2.0));
    CHECK(e.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(e.method == "closed-form");
    CHECK(e.error >= 0.0);
    CHECK(modulus_canonical(CanonicalRing::annulus(0.5, 0.5 * std::exp(1.0))).value ==
          doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("grotzsch ring modulus") {
    CHECK(modulus_canonical(CanonicalRing::grotzsch(2.0)).value ==
          doctest::Approx(2.0094593770052852).epsilon(1e-13));
  }

  TEST_CASE("teichmuller ring modulus") {
    CHECK(modulus_canonical(CanonicalRing::teichmuller(1.0)).value ==
          doctest::Approx(kPi).epsilon(1e-13));
    CHECK(modulus_canonical(CanonicalRing::teichmuller(1.0 / 3.0)).value ==
          doctest::Approx(2.4557859974751309).epsilon(1e-13));
    CHECK(modulus_canonical(CanonicalRing::teichmuller(0.5)).value ==
          doctest::Approx(2.6847562088766241).epsilon(1e-13));
  }

  TEST_CASE("teichmuller modulus increases with the gap") {
    double prev = 0.0;
    for (double s : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
      double cur = modulus_canonical(CanonicalRing::teichmuller(s)).value;
      CHECK(cur > prev);
      prev = cur;
    }
  }

  TEST_CASE("two-ray slit ring values") {
    CHECK(modulus_canonical(CanonicalRing::double_teich(2.0, 2.0)).value ==
          doctest::Approx(2.0094593770052852).epsilon(1e-13));
    CHECK(modulus_canonical(CanonicalRing::double_teich(3.0, 3.0)).value ==
          doctest::Approx(2.4557859974751309).epsilon(1e-13));
  }

  TEST_CASE("two-ray slit ring is symmetric in (s, t)") {
    for (auto [s, t] : {std::pair{2.0, 3.0}, {1.5, 7.0}, {4.0, 9.5}}) {
      CHECK(modulus_canonical(CanonicalRing::double_teich(s, t)).value ==
            doctest::Approx(modulus_canonical(CanonicalRing::double_teich(t, s)).value)
                .epsilon(1e-15));
    }
  }

  TEST_CASE("two-ray reduction consistency") {
    // Mod F(s,t) = Mod T((s-1)(t-1) / (2(s+t)))
    for (auto [s, t] : {std::pair{2.0, 2.0}, {2.0, 5.0}, {3.0, 8.0}, {1.2, 1.7}}) {
      double sp = (s - 1.0) * (t - 1.0) / (2.0 * (s + t));
      CHECK(modulus_canonical(CanonicalRing::double_teich(s, t)).value ==
            doctest::Approx(modulus_canonical(CanonicalRing::teichmuller(sp)).value)
                .epsilon(1e-14));
    }
  }

  TEST_CASE("unit-interval form agrees with the shifted form") {
    // [a,b] with (-inf,0], [1,inf) maps to T((1-b)/(b/a-1)).
    CHECK(modulus_canonical(CanonicalRing::double_teich_unit(0.25, 0.5)).value ==
          doctest::Approx(2.6847562088766241).epsilon(1e-13));
    for (auto [a, b] : {std::pair{0.1, 0.3}, {0.4, 0.8}, {0.25, 0.5}}) {
      double sp = (1.0 - b) / (b / a - 1.0);
      CHECK(modulus_canonical(CanonicalRing::double_teich_unit(a, b)).value ==
            doctest::Approx(modulus_canonical(CanonicalRing::teichmuller(sp)).value)
                .epsilon(1e-14));
    }
  }

  TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::annulus(2.0, 1.0)), Error);
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::annulus(0.0, 1.0)), Error);
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::grotzsch(1.0)), Error);
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::double_teich(1.0, 2.0)), Error);
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::double_teich_unit(0.5, 0.25)), Error);
    CHECK_THROWS_AS(modulus_canonical(CanonicalRing::double_teich_unit(0.5, 1.0)), Error);
    try {
      modulus_canonical(CanonicalRing::annulus(2.0, 1.0));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
  }

  TEST_CASE("nitsche existence threshold") {
    CHECK(nitsche_existence(2.0, 2.0));
    CHECK(nitsche_existence(2.0, 1.25));       // equality: (2 + 1/2)/2
    CHECK_FALSE(nitsche_existence(2.0, 1.2499));
    CHECK(nitsche_existence(1.0001, 1.2));
    CHECK_FALSE(nitsche_existence(5.0, 2.0));  // needs (5 + 0.2)/2 = 2.6
  }
}
