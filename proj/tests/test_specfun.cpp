#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diskdet/errors.hpp"
#include "diskdet/specfun.hpp"

using namespace diskdet;
using namespace diskdet::specfun;

TEST_CASE("bessel_j at the origin")
{
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(2.5, 0.0) == 0.0);
}

TEST_CASE("bessel_j at the first zero of J_0")
{
    CHECK(std::abs(bessel_j(0.0, 2.404825557695773)) <= 1e-12);
}

TEST_CASE("bessel_j matches the standard library over the support range")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> order(0.0, 200.0), arg(0.0, 1000.0);
    double worst = 0.0;
    for (int i = 0; i < 4000; ++i) {
        const double nu = order(rng), x = arg(rng);
        worst = std::max(worst, std::abs(bessel_j(nu, x) - std::cyl_bessel_j(nu, x)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("derivative agrees with the recurrence")
{
    for (double nu : {0.0, 1.0, 3.0, 20.0, 150.0})
        for (double x : {0.1, 1.0, 7.0, 40.0, 300.0}) {
            const auto v = bessel_j_with_derivative(nu, x);
            const double below = nu == 0.0 ? -std::cyl_bessel_j(1.0, x) : std::cyl_bessel_j(nu - 1.0, x);
            const double expected = 0.5 * (below - std::cyl_bessel_j(nu + 1.0, x));
            CHECK(std::abs(v.derivative - expected) <= 1e-12);
            CHECK(std::abs(v.value - std::cyl_bessel_j(nu, x)) <= 1e-12);
        }
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(bessel_j(-0.5, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(201.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(1.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(bessel_zero(0.0, 0), DomainError);
    CHECK_THROWS_AS(BesselZeroTable::from_values(1.0, {3.0, 2.0}), DomainError);
    CHECK_THROWS_AS(BesselZeroTable::from_values(1.0, {-1.0, 2.0}), DomainError);
}

TEST_CASE("first zeros")
{
    CHECK(bessel_zero(0.0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-13));
    CHECK(bessel_zero(1.0, 1) == doctest::Approx(3.831705970207512).epsilon(1e-13));
    CHECK(bessel_zero(0.0, 2) == doctest::Approx(5.5200781102863106).epsilon(1e-13));
    CHECK(bessel_zero(0.0, 3) == doctest::Approx(8.6537279129110122).epsilon(1e-13));
}

TEST_CASE("zeros far out and at large order")
{
    CHECK(bessel_zero(200.0, 1) == doctest::Approx(211.02916651055466).epsilon(1e-12));
    const BesselZeroTable t(4.0, 16000);
    CHECK(t.zero(16000) == doctest::Approx(50270.98008792942).epsilon(1e-12));
}

TEST_CASE("half-integer order gives l pi")
{
    for (int l : {1, 2, 7, 100, 5000}) CHECK(bessel_zero(0.5, l) == l * std::numbers::pi);
}

TEST_CASE("table invariants")
{
    for (double nu : {0.0, 0.3, 1.0, 2.0, 10.0, 60.0}) {
        const BesselZeroTable t(nu, 300);
        const BesselZeroTable next(nu + 1.0, 300);
        REQUIRE(t.count() == 300);
        CHECK(t.zero(1) > 0.0);
        for (std::size_t l = 1; l <= 300; ++l) {
            if (l > 1) CHECK(t.zero(l) > t.zero(l - 1));
            const auto v = bessel_j_with_derivative(nu, t.zero(l));
            CHECK(std::abs(v.value) <= 1e-10 * std::max(1.0, std::abs(v.derivative)));
            if (l < 300) {
                CHECK(t.zero(l) < next.zero(l));
                CHECK(next.zero(l) < t.zero(l + 1));
            }
        }
    }
}

TEST_CASE("McMahon estimate within 1 for l > nu at small order")
{
    for (double nu : {0.0, 0.5, 1.0, 2.0, 4.0})
        for (int l = static_cast<int>(nu) + 1; l <= 200; ++l)
            CHECK(std::abs(bessel_zero(nu, l) - (l + nu / 2.0 - 0.25) * std::numbers::pi) < 1.0);
}

TEST_CASE("hurwitz zeta")
{
    CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
    CHECK(hurwitz_zeta(0.0, 0.3) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(hurwitz_zeta(-0.5, 1.0) == doctest::Approx(-0.20788622497735457).epsilon(1e-12));
    CHECK(hurwitz_zeta(3.0, 2.5) == doctest::Approx(0.1181020258208637).epsilon(1e-13));
    CHECK(hurwitz_zeta(1.5, 10.25) == doctest::Approx(0.6403026202430817).epsilon(1e-13));
}
