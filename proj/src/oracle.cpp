#include "diskdet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include "diskdet/errors.hpp"
#include "diskdet/specfun.hpp"

namespace diskdet::oracle {

namespace {

constexpr double pi = std::numbers::pi;
const std::complex<double> two_pi_i(0.0, 2.0 * pi);

std::complex<double> to_complex(const Eigen::Vector2d& v) { return {v.x(), v.y()}; }

void grad_phi(const FluxProfile& p, const Eigen::Vector2d& x, double& d0, double& d1)
{
    const double r = x.norm();
    if (r == 0.0) {
        d0 = d1 = 0.0;
        return;
    }
    const double dphi = p.phi_prime(r);
    d0 = dphi * x.x() / r;
    d1 = dphi * x.y() / r;
}

} // namespace

BoundaryComponent aps_component(int n, int k)
{
    return n >= k + 1 ? BoundaryComponent::upper_dirichlet : BoundaryComponent::lower_dirichlet;
}

std::string to_string(BoundaryComponent bc)
{
    return bc == BoundaryComponent::upper_dirichlet ? "upper-dirichlet" : "lower-dirichlet";
}

int spectral_order(int n, BoundaryComponent bc)
{
    return bc == BoundaryComponent::upper_dirichlet ? std::abs(n) : std::abs(n + 1);
}

std::vector<double> free_spectrum_exact(int n, int k, double radius, int count)
{
    if (count < 1) throw DomainError("free_spectrum_exact: count must be >= 1");
    if (!(radius > 0.0)) throw DomainError("free_spectrum_exact: radius must be positive");
    const int nu = spectral_order(n, aps_component(n, k));
    const specfun::BesselZeroTable table(nu, count);
    std::vector<double> out;
    out.reserve(2 * count);
    for (int l = count; l >= 1; --l) out.push_back(-table.zero(l) / radius);
    for (int l = 1; l <= count; ++l) out.push_back(table.zero(l) / radius);
    return out;
}

SpectrumReport free_spectrum_fd(int n, BoundaryComponent bc, int k, double radius, int grid,
                                int count)
{
    if (grid < 200) throw DomainError("free_spectrum_fd: grid must be >= 200");
    if (count < 1 || count >= grid) throw DomainError("free_spectrum_fd: bad eigenvalue count");
    if (!(radius > 0.0)) throw DomainError("free_spectrum_fd: radius must be positive");

    // Mode n and mode -n-1 are related by (u, w) -> (w, -u), which swaps the
    // Dirichlet component; reduce to n >= 0.
    int order = n;
    bool lower = bc == BoundaryComponent::lower_dirichlet;
    if (n < 0) {
        order = -n - 1;
        lower = !lower;
    }
    const double m = order + 0.5;
    const int size = grid;

    // Flux form: w' + (n+1)w/r = r^{-n-1}(r^{n+1} w)', -u' + n u/r = -r^n (r^{-n} u)'.
    // u on (i - 1/2) h, w on i h, scaled by sqrt(r). Upper-Dirichlet puts
    // u_{N+1} on r = R; lower-Dirichlet puts w_N there and drops it, leaving an
    // odd-sized matrix whose exact zero eigenvalue is the free zero mode r^n.
    const double h = lower ? radius / size : radius / (size + 0.5);
    const int dim = lower ? 2 * size - 1 : 2 * size;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(dim - 1);
    for (int i = 1; i <= size; ++i) {
        const double a = (i - 0.5) * h, b = i * h;
        if (2 * i - 2 < dim - 1) sub(2 * i - 2) = std::pow(b / a, m) / h;
        if (2 * i - 1 < dim - 1) sub(2 * i - 1) = -std::pow(b / (a + h), m) / h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("free_spectrum_fd: tridiagonal eigensolver failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();

    SpectrumReport report;
    report.n = n;
    report.k = k;
    report.bc_type = bc;
    report.grid_size = grid;
    report.zero_modes = lower ? 1 : 0;
    const int gap = report.zero_modes;
    for (int l = count; l >= 1; --l) report.eigenvalues.push_back(ev(size - gap - l));
    for (int l = 1; l <= count; ++l) report.eigenvalues.push_back(ev(size - 1 + l));

    const int nu = spectral_order(n, bc);
    const specfun::BesselZeroTable table(nu, count);
    report.max_rel_error = 0.0;
    report.symmetry_error = 0.0;
    for (int l = 1; l <= count; ++l) {
        const double exact = table.zero(l) / radius;
        report.reference.push_back(exact);
        const double fd = ev(size - 1 + l);
        report.max_rel_error = std::max(report.max_rel_error, std::abs(fd - exact) / exact);
        report.symmetry_error = std::max(report.symmetry_error, std::abs(fd + ev(size - gap - l)));
    }
    return report;
}

SpectrumReport free_spectrum_fd(int n, int k, double radius, int grid, int count)
{
    return free_spectrum_fd(n, aps_component(n, k), k, radius, grid, count);
}

std::complex<double> green_kernel_upper(const FluxProfile& p, double alpha, int k,
                                        const Eigen::Vector2d& x, const Eigen::Vector2d& y)
{
    const auto X = to_complex(x), Y = to_complex(y);
    const double gauge = std::exp(alpha * (p.phi(x.norm()) - p.phi(y.norm())));
    return gauge * std::pow(X / Y, k + 1) / (two_pi_i * (X - Y));
}

std::complex<double> green_kernel_lower(const FluxProfile& p, double alpha, int k,
                                        const Eigen::Vector2d& x, const Eigen::Vector2d& y)
{
    const auto Xc = std::conj(to_complex(x)), Yc = std::conj(to_complex(y));
    const double gauge = std::exp(-alpha * (p.phi(x.norm()) - p.phi(y.norm())));
    return gauge * std::pow(Yc / Xc, k + 1) / (two_pi_i * (Xc - Yc));
}

double green_residual(const FluxProfile& p, double alpha, const Eigen::Vector2d& x,
                      const Eigen::Vector2d& y, double step)
{
    const double separation = (x - y).norm();
    if (separation < 1e-3) throw DomainError("green_residual: points closer than 1e-3 to the diagonal");
    const int k = level_k(flux_kappa(p));
    if (k < -1) throw DomainError("green_residual: k < -1 is not supported");

    const Eigen::Vector2d e0(step, 0.0), e1(0.0, step);
    const std::complex<double> i(0.0, 1.0);
    double d0 = 0.0, d1 = 0.0;
    grad_phi(p, x, d0, d1);

    auto upper = [&](const Eigen::Vector2d& z) { return green_kernel_upper(p, alpha, k, z, y); };
    auto lower = [&](const Eigen::Vector2d& z) { return green_kernel_lower(p, alpha, k, z, y); };

    const auto du0 = (upper(x + e0) - upper(x - e0)) / (2.0 * step);
    const auto du1 = (upper(x + e1) - upper(x - e1)) / (2.0 * step);
    const auto dl0 = (lower(x + e0) - lower(x - e0)) / (2.0 * step);
    const auto dl1 = (lower(x + e1) - lower(x - e1)) / (2.0 * step);

    // Lower row of D_alpha on the upper kernel, upper row on the lower kernel.
    const auto ku = upper(x), kl = lower(x);
    const auto res_upper = i * (du0 + i * du1) + alpha * (d1 - i * d0) * ku;
    const auto res_lower = i * (dl0 - i * dl1) + alpha * (d1 + i * d0) * kl;
    return std::max(std::abs(res_upper) * separation / std::abs(ku),
                    std::abs(res_lower) * separation / std::abs(kl));
}

GreenCheck green_holomorphy_check(const FluxProfile& p, double alpha, int sample_pairs,
                                  unsigned seed, double step)
{
    if (sample_pairs < 1) throw DomainError("green_holomorphy_check: need at least one pair");
    const double radius = p.radius();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto draw = [&] {
        for (;;) {
            Eigen::Vector2d v(unit(rng), unit(rng));
            if (v.norm() <= 1.0) return Eigen::Vector2d(0.9 * radius * v);
        }
    };
    GreenCheck out{0.0, 0};
    while (out.pairs < sample_pairs) {
        const Eigen::Vector2d x = draw(), y = draw();
        if (x.norm() < 0.1 * radius || y.norm() < 0.1 * radius || (x - y).norm() < 0.1 * radius)
            continue;
        out.max_residual = std::max(out.max_residual, green_residual(p, alpha, x, y, step));
        ++out.pairs;
    }
    return out;
}

BoundaryModes green_boundary_modes(const FluxProfile& p, double alpha, const Eigen::Vector2d& y,
                                   bool upper_row, int samples)
{
    if (samples < 8 || samples % 2) throw DomainError("green_boundary_modes: need an even sample count >= 8");
    const double radius = p.radius();
    if (!(y.norm() < radius)) throw DomainError("green_boundary_modes: y must lie inside the disk");
    const int k = level_k(flux_kappa(p));

    std::vector<std::complex<double>> values(samples), spectrum;
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * pi * j / samples;
        const Eigen::Vector2d x(radius * std::cos(theta), radius * std::sin(theta));
        values[j] = upper_row ? green_kernel_upper(p, alpha, k, x, y) : green_kernel_lower(p, alpha, k, x, y);
    }
    Eigen::FFT<double> fft;
    fft.fwd(spectrum, values);

    BoundaryModes out{0.0, 0.0};
    for (int j = 0; j < samples; ++j) {
        const int mode = j < samples / 2 ? j : j - samples;
        const double magnitude = std::abs(spectrum[j]) / samples;
        const bool allowed = upper_row ? mode <= k : mode >= k + 2;
        (allowed ? out.allowed : out.forbidden) = std::max(allowed ? out.allowed : out.forbidden, magnitude);
    }
    return out;
}

double zeta_partial_sum(double nu, double s, int zeros)
{
    if (!(s > 1.0)) throw DomainError("zeta_partial_sum: requires s > 1");
    if (zeros < 10) throw DomainError("zeta_partial_sum: requires at least 10 zeros");
    const specfun::BesselZeroTable table(nu, zeros);
    double sum = 0.0;
    for (int l = zeros; l >= 1; --l) sum += std::pow(table.zero(l), -s);
    const double b = nu / 2.0 - 0.25;
    const double amp = (4.0 * nu * nu - 1.0) / 8.0;
    const double start = zeros + 1.0 + b;
    return sum + std::pow(pi, -s) * (specfun::hurwitz_zeta(s, start) +
                                     s * amp / (pi * pi) * specfun::hurwitz_zeta(s + 2.0, start));
}

double bessel_ratio_log_sum(double nu, int base)
{
    if (base < 100) throw DomainError("bessel_ratio_log_sum: base must be >= 100");
    constexpr int levels = 5;
    const int total = base << (levels - 1);
    const specfun::BesselZeroTable upper(nu, total), zero_order(0.0, total);

    std::vector<double> partial;
    double sum = 0.0, carry = 0.0; // Kahan
    int checkpoint = base;
    for (int l = 1; l <= total; ++l) {
        const double term = std::log(upper.zero(l) / zero_order.zero(l)) - nu / (2.0 * l);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if (l == checkpoint) {
            partial.push_back(sum);
            checkpoint *= 2;
        }
    }
    for (int j = 1; j < levels; ++j) {
        const double f = std::ldexp(1.0, j);
        for (int i = 0; i + j < levels; ++i) partial[i] = (f * partial[i + 1] - partial[i]) / (f - 1.0);
    }
    return partial[0];
}

} // namespace diskdet::oracle
