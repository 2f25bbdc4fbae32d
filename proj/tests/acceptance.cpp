#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "diskdet/determinant.hpp"
#include "diskdet/flux.hpp"
#include "diskdet/oracle.hpp"
#include "diskdet/specfun.hpp"
#include "diskdet/symbols.hpp"
#include "diskdet/zeta_eta.hpp"

using namespace diskdet;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FluxProfile gaussian(double kappa, double radius)
{
    return FluxProfile::polynomial(radius, {0.0, -kappa / (2.0 * radius * radius)});
}

Outcome continuation_f0()
{
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double nu : {0.0, 1.0, 2.0, 3.0}) {
        const specfun::BesselZeroTable table(nu, 10000);
        const auto c = continue_to_zero(table);
        worst = std::max(worst, std::abs(c.f0 - (-nu / 2.0 - 0.25)));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-6 && t <= 30.0, fmt("max |f0 - closed form| = %.3e, %.1f s", worst, t)};
}

Outcome half_order_derivative()
{
    const double err = std::abs(f_prime_zero(0.5) + 0.5 * std::numbers::ln2);
    return {err <= 1e-9, fmt("|f'_{1/2}(0) + ln2/2| = %.3e", err)};
}

Outcome free_spectrum()
{
    const auto t0 = Clock::now();
    double worst = 0.0, doubling = 0.0;
    for (int k = -1; k <= 1; ++k) {
        for (int n = 0; n <= 2; ++n) worst = std::max(worst, oracle::free_spectrum_fd(n, k, 1.0, 2000).max_rel_error);
        const auto a = oracle::free_spectrum_fd(k + 1, k, 1.0, 2000);
        const auto b = oracle::free_spectrum_fd(k, k, 1.0, 2000);
        for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
            doubling = std::max(doubling, std::abs(a.eigenvalues[i] - b.eigenvalues[i]) / std::abs(a.eigenvalues[i]));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-3 && doubling <= 1e-3 && t <= 120.0,
            fmt("max rel err %.3e, doubling mismatch %.3e", worst, doubling) + fmt(", %.1f s", t)};
}

Outcome index_three_ways()
{
    std::vector<double> kappas{0.0, 0.5, 1.0, 2.5};
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 5.0);
    while (kappas.size() < 54) {
        const double x = u(rng);
        if (x > -1.0) kappas.push_back(x);
    }
    int bad = 0;
    for (double kappa : kappas) {
        const auto r = index_report(gaussian(kappa, 1.0));
        if (r.zero_mode_count != r.chirality_trace || r.chirality_trace != r.aps_formula) ++bad;
    }
    return {bad == 0, fmt("%.0f of %.0f profiles disagree", bad, static_cast<double>(kappas.size()))};
}

Outcome eta_numeric()
{
    double worst = 0.0;
    for (double kappa : {-0.5, 0.0, 0.25, 1.0, 1.7, 3.0})
        worst = std::max(worst, std::abs(eta_zero_numeric(kappa) - eta_zero(kappa).eta0));
    return {worst <= 1e-6, fmt("max |eta numeric - closed form| = %.3e", worst)};
}

Outcome two_routes()
{
    double worst = 0.0;
    for (int k = -1; k <= 3; ++k)
        for (double radius : {0.5, 1.0, 2.0}) {
            const auto p = gaussian(k + 0.5, radius);
            worst = std::max(worst, std::abs(log_det(p).total - log_det_bessel_ratio(p).total));
        }
    return {worst <= 1e-8, fmt("max |total difference| = %.3e", worst)};
}

Outcome gauge_shift()
{
    const std::vector<FluxProfile> families{
        gaussian(1.5, 1.0),
        FluxProfile::polynomial(1.3, {0.2, -0.4, 0.15}),
    };
    double worst = 0.0;
    for (const auto& p : families) {
        const auto base = log_det(p).total;
        for (double c : {-5.0, -0.5, 0.5, 5.0}) worst = std::max(worst, std::abs(log_det(p.shifted(c)).total - base));
    }
    return {worst <= 1e-9, fmt("max shift change %.3e", worst)};
}

Outcome kappa_zero()
{
    // phi = r^2 (r^2 - 2): phi'(1) = 0
    const auto p = FluxProfile::polynomial(1.0, {0.0, -2.0, 1.0});
    const auto d = log_det(p);
    const double exact = -2.0 / 3.0;
    const double err = std::max(std::abs(d.total.real() - exact), std::abs(d.total.imag()));
    return {d.k == -1 && err <= 1e-9, fmt("total = %.15f, error %.3e", d.total.real(), err)};
}

Outcome phase()
{
    double worst = 0.0;
    for (int k = -1; k <= 2; ++k) {
        const auto d = log_det(gaussian(k + 0.5, 1.0));
        worst = std::max(worst, std::abs(d.total.imag() + std::abs(k + 1) * std::numbers::pi / 2.0));
    }
    return {worst <= 1e-10, fmt("max phase error %.3e", worst)};
}

Outcome symbols_check()
{
    using Vec = symbols::Vector<double>;
    using Mat = symbols::Matrix<double>;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    double idem = 0.0, trace = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int dim = i % 2 ? 4 : 2;
        Vec n(dim), xi(dim);
        for (int a = 0; a < dim; ++a) n(a) = g(rng), xi(a) = g(rng);
        n.normalize();
        xi -= xi.dot(n) * n;
        xi.normalize();
        const Mat q = symbols::calderon_symbol<double>(dim, xi, n).entries;
        idem = std::max(idem, (q * q - q).cwiseAbs().maxCoeff());
        trace = std::max(trace, std::abs(q.trace() - dim / 2.0));
    }

    std::uniform_real_distribution<double> u(-3.0, 3.0);
    int obstruction_failures = 0;
    for (int i = 0; i < 100; ++i) {
        double b1 = 0.0, b2 = 0.0;
        while (std::abs(b1) < 1e-3 || std::abs(b2) < 1e-3) b1 = u(rng), b2 = u(rng);
        Mat b(1, 2);
        b << b1, b2;
        const Vec w = symbols::chiral_obstruction_witness(b1, b2);
        if (symbols::numeric_rank(Mat(b * symbols::chiral_symbol_4d(w)), 1e-8, b.norm()) != 0) ++obstruction_failures;
    }

    auto full = [](const Vec& x) { return symbols::calderon_symbol_2d(x(0)); };
    bool definition = true;
    for (int i = 0; i < 20; ++i) {
        double b1 = 0.0, b2 = 0.0;
        while (std::abs(b1) < 1e-3 || std::abs(b2) < 1e-3) b1 = u(rng), b2 = u(rng);
        Mat b(1, 2);
        b << b1, b2;
        definition = definition && symbols::ellipticity_test<double>(
                                       symbols::BoundaryOperatorSymbol<double>::constant(b), full, 1)
                                           .outcome == symbols::Ellipticity::elliptic;
    }
    const symbols::BoundaryOperatorSymbol<double> aps{
        1, [](const Vec& x) { return symbols::aps_symbol_2d(x(0)); }, false};
    definition = definition &&
                 symbols::ellipticity_test<double>(aps, full, 1).outcome == symbols::Ellipticity::elliptic;

    const bool pass = idem <= 1e-12 && trace <= 1e-12 && obstruction_failures == 0 && definition;
    return {pass, fmt("idempotence %.2e, trace %.2e", idem, trace) +
                      fmt(", obstruction failures %.0f, Definition 1 ", obstruction_failures) +
                      (definition ? "ok" : "failed")};
}

Outcome rayleigh()
{
    const double err = std::abs(oracle::zeta_partial_sum(0.0, 2.0, 10000) - 0.25);
    return {err <= 1e-8, fmt("|sum - 1/4| = %.3e", err)};
}

} // namespace

int main()
{
    const std::vector<std::function<Outcome()>> criteria{
        continuation_f0, half_order_derivative, free_spectrum, index_three_ways, eta_numeric, two_routes,
        gauge_shift,     kappa_zero,            phase,         symbols_check,    rayleigh,
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
