#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diskdet/errors.hpp"
#include "diskdet/zeta_eta.hpp"

using namespace diskdet;
constexpr double pi = std::numbers::pi;

// f'_nu(0) from brute-force sums over 1e5 zeros with Richardson extrapolation,
// computed independently before the series implementation.
constexpr double fprime_reference[] = {
    -0.45946926661379645, -0.11289567633285681, 0.5802515042261405, 1.4761312388411585, 2.5158520096801675,
};

TEST_CASE("f_nu(0)")
{
    CHECK(f_zero(0.0) == -0.25);
    CHECK(f_zero(1.0) == -0.75);
    CHECK(f_zero(0.5) == -0.5);
    CHECK_THROWS_AS(f_zero(-1.0), DomainError);
}

TEST_CASE("f'_{1/2}(0) is the Riemann value")
{
    const double expected = 0.5 * std::log(pi) - 0.5 * std::log(2.0 * pi);
    CHECK(expected == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(std::abs(f_prime_zero(0.5) - expected) <= 1e-9);
}

TEST_CASE("f'_nu(0) against the brute-force reference")
{
    for (int nu = 0; nu <= 4; ++nu) CHECK(std::abs(f_prime_zero(nu) - fprime_reference[nu]) <= 1e-8);
}

TEST_CASE("zeta_values bookkeeping")
{
    const auto z = zeta_values(2.0);
    CHECK(z.order == 2.0);
    CHECK(z.f0 == -1.25);
    CHECK(z.tail_estimate <= 1e-9);
    CHECK(z.terms_used >= 200);
    CHECK_THROWS_AS(zeta_values(1.0, 1e-30), ConvergenceError);
    CHECK_THROWS_AS(bessel_log_series(specfun::BesselZeroTable(1.0, 10)), DomainError);
}

TEST_CASE("continuation reproduces f(0) and f'(0)")
{
    for (double nu : {0.0, 0.5, 1.0, 3.0}) {
        const specfun::BesselZeroTable t(nu, 2000);
        const auto c = continue_to_zero(t);
        CHECK(std::abs(c.f0 - f_zero(nu)) <= 1e-8);
        CHECK(std::abs(c.fprime0 - f_prime_zero(nu)) <= 1e-8);
    }
}

TEST_CASE("continued zeta at s = 2 is the Rayleigh sum")
{
    const specfun::BesselZeroTable t(0.0, 2000);
    CHECK(zeta_continued(t, 2.0) == doctest::Approx(0.25).epsilon(1e-9));
    const specfun::BesselZeroTable half(0.5, 100);
    CHECK(zeta_continued(half, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK_THROWS_AS(zeta_continued(t, 1.0), DomainError);
    CHECK_THROWS_AS(zeta_continued(t, -1.5), DomainError);
}

TEST_CASE("free quotient")
{
    CHECK(free_quotient(-1, 2.0) == std::complex<double>(0.0, 0.0));
    for (double r : {0.5, 1.0, 3.0}) CHECK(free_quotient(0, r).imag() == doctest::Approx(-pi / 2.0).epsilon(1e-14));
    const auto f = free_quotient(0, 1.0);
    CHECK(std::abs(f.real() + 2.0 * (fprime_reference[1] - fprime_reference[0])) <= 2e-8);
    for (int k = -1; k <= 3; ++k) CHECK(free_quotient(k, 1.7).imag() == doctest::Approx(-(k + 1) * pi / 2.0));
    CHECK_THROWS_AS(free_quotient(-2, 1.0), DomainError);
    CHECK_THROWS_AS(free_quotient(0, -1.0), DomainError);
}

TEST_CASE("free quotient radius dependence")
{
    // d/d(ln R) = -2 (f_nu(0) - f_0(0)) = nu.
    for (int k = 0; k <= 2; ++k)
        CHECK((free_quotient(k, 2.0) - free_quotient(k, 1.0)).real() == doctest::Approx((k + 1) * std::log(2.0)));
}

TEST_CASE("boundary eigenvalues")
{
    CHECK(boundary_eigenvalue(1, 1.0, 1.0) == 0.0);
    CHECK(boundary_eigenvalue(0, 0.5, 1.0) == -0.5);
    CHECK(boundary_eigenvalue(3, 1.0, 2.0) == 1.0);
}

TEST_CASE("eta(0) closed form")
{
    auto e = eta_zero(1.0);
    CHECK(e.k == 0);
    CHECK(e.h == 1);
    CHECK(e.eta0 == 0.0);
    CHECK(e.index == 1);
    e = eta_zero(0.5);
    CHECK(e.k == 0);
    CHECK(e.h == 0);
    CHECK(e.eta0 == 0.0);
    CHECK(e.index == 1);
    e = eta_zero(0.0);
    CHECK(e.k == -1);
    CHECK(e.h == 1);
    CHECK(e.eta0 == 0.0);
    CHECK(e.index == 0);
    e = eta_zero(0.25);
    CHECK(e.k == 0);
    CHECK(e.eta0 == -0.5);
}

TEST_CASE("eta(0) by numeric continuation")
{
    for (double kappa : {0.0, 0.25, 0.5, 1.0, 1.5, 2.7})
        CHECK(std::abs(eta_zero_numeric(kappa) - eta_zero(kappa).eta0) <= 1e-6);
    CHECK(std::abs(eta_zero_numeric(0.5)) <= 1e-6);
    CHECK(std::abs(eta_zero_numeric(0.25) + 0.5) <= 1e-6);
    CHECK_THROWS_AS(eta_zero_numeric(0.5, 999), DomainError);
}

TEST_CASE("APS index equals k + 1 for random flux")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double kappa = -u(rng) + 4.0; // (-1, 5]
        const auto e = eta_zero(kappa);
        CHECK(e.index == e.k + 1);
        CHECK(e.eta0 == doctest::Approx(2.0 * (kappa - e.k) - 1.0 - e.h));
    }
}

TEST_CASE("corrupted zero table changes f'(0)")
{
    auto zeros = specfun::BesselZeroTable(1.0, 400).zeros();
    const double clean = f_prime_zero(specfun::BesselZeroTable::from_values(1.0, zeros));
    CHECK(std::abs(clean - fprime_reference[1]) <= 1e-8);
    zeros[4] *= 1.0 + 1e-5;
    const double dirty = f_prime_zero(specfun::BesselZeroTable::from_values(1.0, zeros));
    CHECK(std::abs(dirty - clean) > 1e-6);
}
