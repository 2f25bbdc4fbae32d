#include "diskdet/zeta_eta.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "diskdet/errors.hpp"
#include "diskdet/flux.hpp"

namespace diskdet {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int first_zero_count = 200;
constexpr int max_zero_count = 12800;

void check_order(double nu)
{
    if (!(nu >= 0.0)) throw DomainError("zeta: Bessel order must be non-negative");
}

// Coefficients a_2..a_5 of ln(j_l/(l pi)) - b/l = sum_p a_p l^{-p}.
std::array<double, 4> log_ratio_coefficients(double nu)
{
    const double b = (2.0 * nu - 1.0) / 4.0;
    const double mu = 4.0 * nu * nu;
    const double a = (mu - 1.0) / 8.0;
    const double b4 = (mu - 1.0) * (7.0 * mu - 31.0) / 384.0;
    const double pi2 = pi * pi, pi4 = pi2 * pi2;
    const double b2 = b * b, b3 = b2 * b;
    return {
        -b2 / 2.0 - a / pi2,
        b3 / 3.0 + 2.0 * b * a / pi2,
        -b2 * b2 / 4.0 - 3.0 * b2 * a / pi2 - (b4 + 0.5 * a * a) / pi4,
        b2 * b3 / 5.0 + 4.0 * b3 * a / pi2 + 4.0 * b * b4 / pi4 + 2.0 * b * a * a / pi4,
    };
}

double series_up_to(const specfun::BesselZeroTable& table, std::size_t count)
{
    const double b = (2.0 * table.order() - 1.0) / 4.0;
    const auto coeffs = log_ratio_coefficients(table.order());
    double sum = 0.0;
    for (std::size_t l = count; l >= 1; --l) // small terms first
        sum += std::log(table.zero(l) / (l * pi)) - b / static_cast<double>(l);
    const double start = static_cast<double>(count) + 1.0;
    for (int p = 2; p <= 5; ++p) sum += coeffs[p - 2] * specfun::hurwitz_zeta(p, start);
    return sum;
}

double f_prime_from_series(double nu, double s_nu)
{
    return -0.5 * std::log(2.0) + ((2.0 * nu - 1.0) / 4.0) * (std::log(pi) - specfun::euler_gamma) - s_nu;
}

// Neville extrapolation of samples (x_i, y_i) to x = 0.
double extrapolate_to_zero(std::vector<double> x, std::vector<double> y)
{
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
    return y[0];
}

} // namespace

double f_zero(double nu)
{
    check_order(nu);
    return -0.5 * nu - 0.25;
}

double bessel_log_series(const specfun::BesselZeroTable& table, double* tail_estimate)
{
    const std::size_t count = table.count();
    if (count < 20) throw DomainError("bessel_log_series: need at least 20 zeros");
    const double full = series_up_to(table, count);
    if (tail_estimate) *tail_estimate = std::abs(full - series_up_to(table, count / 2)) / 31.0;
    return full;
}

ZetaValues zeta_values(double nu, double tail_tol)
{
    check_order(nu);
    for (int count = first_zero_count; count <= max_zero_count; count *= 2) {
        const specfun::BesselZeroTable table(nu, count);
        double tail = 0.0;
        const double s_nu = bessel_log_series(table, &tail);
        if (tail <= tail_tol)
            return {nu, f_zero(nu), f_prime_from_series(nu, s_nu), count, tail};
    }
    std::ostringstream msg;
    msg << "f_prime_zero: tail estimate above " << tail_tol << " for nu=" << nu << " with "
        << max_zero_count << " zeros";
    throw ConvergenceError(msg.str());
}

double f_prime_zero(double nu, double tail_tol) { return zeta_values(nu, tail_tol).fprime0; }

double f_prime_zero(const specfun::BesselZeroTable& table)
{
    return f_prime_from_series(table.order(), bessel_log_series(table));
}

double zeta_continued(const specfun::BesselZeroTable& table, double s)
{
    if (!(s > -1.0) || s == 1.0) throw DomainError("zeta_continued: need s > -1, s != 1");
    const double nu = table.order();
    const double b = nu / 2.0 - 0.25;
    const std::size_t count = table.count();
    double sum = 0.0;
    for (std::size_t l = count; l >= 1; --l) {
        const double beta = pi * (l + b);
        // j^{-s} - beta^{-s} without cancellation.
        sum += std::pow(beta, -s) * std::expm1(-s * std::log(table.zero(l) / beta));
    }
    // Beyond L: j/beta - 1 ~ -(mu-1)/(8 beta^2).
    const double amp = (4.0 * nu * nu - 1.0) / 8.0;
    const double tail = s * amp * std::pow(pi, -2.0 - s) * specfun::hurwitz_zeta(2.0 + s, count + 1.0 + b);
    return std::pow(pi, -s) * specfun::hurwitz_zeta(s, 1.0 + b) + sum + tail;
}

ContinuationAtZero continue_to_zero(const specfun::BesselZeroTable& table, double h)
{
    // Symmetric averages and differences are even in h; Richardson in h^2.
    std::vector<double> steps, values, slopes;
    for (double step = h; step <= 8.0 * h; step *= 2.0) {
        const double plus = zeta_continued(table, step);
        const double minus = zeta_continued(table, -step);
        steps.push_back(step * step);
        values.push_back(0.5 * (plus + minus));
        slopes.push_back((plus - minus) / (2.0 * step));
    }
    return {extrapolate_to_zero(steps, values), extrapolate_to_zero(steps, slopes)};
}

std::complex<double> free_quotient(int k, double radius, double tail_tol)
{
    if (k < -1) throw DomainError("free_quotient: k < -1 is not supported");
    if (!(radius > 0.0)) throw DomainError("free_quotient: radius must be positive");
    const int nu = std::abs(k + 1);
    if (nu == 0) return {0.0, 0.0};
    const double df = f_prime_zero(static_cast<double>(nu), tail_tol) - f_prime_zero(0.0, tail_tol);
    const double d0 = f_zero(nu) - f_zero(0.0);
    const std::complex<double> log_r(std::log(radius), -0.5 * pi);
    return -2.0 * (df + log_r * d0);
}

double boundary_eigenvalue(int n, double kappa, double radius)
{
    if (!(radius > 0.0)) throw DomainError("boundary_eigenvalue: radius must be positive");
    return (n - kappa) / radius;
}

EtaData eta_zero(double kappa)
{
    EtaData out{};
    out.kappa = kappa;
    out.k = level_k(kappa);
    out.h = (kappa == std::floor(kappa)) ? 1 : 0;
    out.eta0 = 2.0 * (kappa - out.k) - 1.0 - out.h;
    const double aps = kappa + (1.0 - out.h - out.eta0) / 2.0;
    if (std::abs(aps - (out.k + 1)) > 1e-9 * std::max(1.0, std::abs(kappa))) {
        std::ostringstream msg;
        msg << "eta_zero: APS index " << aps << " differs from k+1 = " << out.k + 1;
        throw ConsistencyError(msg.str());
    }
    out.index = static_cast<int>(std::lround(aps));
    return out;
}

double eta_zero_numeric(double kappa, int cutoff)
{
    if (cutoff < 1000) throw DomainError("eta_zero_numeric: cutoff must be >= 1000");
    const EtaData closed = eta_zero(kappa);
    // |a_n| R over n > kappa is {j + above}, over n < kappa is {j + below}, j >= 0.
    const double delta = kappa - closed.k; // in (0, 1]
    const double above = closed.h ? 1.0 : 1.0 - delta;
    const double below = delta;

    auto paired = [&](double s) {
        double sum = 0.0;
        for (int j = cutoff - 1; j >= 0; --j) sum += std::pow(j + above, -s) - std::pow(j + below, -s);
        return sum + specfun::hurwitz_zeta(s, cutoff + above) - specfun::hurwitz_zeta(s, cutoff + below);
    };
    std::vector<double> s_values, eta_values;
    for (double s = 0.5; s > 0.01; s *= 0.5) {
        s_values.push_back(s);
        eta_values.push_back(paired(s));
    }
    const double eta0 = extrapolate_to_zero(s_values, eta_values);
    if (std::abs(eta0 - closed.eta0) > 1e-6) {
        std::ostringstream msg;
        msg << "eta_zero_numeric: continuation " << eta0 << " disagrees with closed form "
            << closed.eta0 << " at kappa=" << kappa;
        throw ConvergenceError(msg.str());
    }
    return eta0;
}

} // namespace diskdet
