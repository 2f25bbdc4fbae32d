#include "diskdet/determinant.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "diskdet/errors.hpp"
#include "diskdet/oracle.hpp"

namespace diskdet {

namespace {

constexpr double pi = std::numbers::pi;

void require_supported(int k)
{
    if (k < -1) {
        std::ostringstream msg;
        msg << "k = " << k << " < -1: negative-chirality zero-mode sector is not supported";
        throw DomainError(msg.str());
    }
}

LogDet assemble(const FluxProfile& p, const LogDetOptions& options, std::complex<double> free_part)
{
    const auto inter = interacting_breakdown(p, options.quadrature_tol);
    LogDet out;
    out.bulk = inter.bulk;
    out.zero_mode_part = inter.zero_mode_part;
    out.free_quotient_part = free_part;
    out.total = out.bulk + out.zero_mode_part + free_part;
    out.kappa = flux_kappa(p);
    out.k = inter.k;
    return out;
}

} // namespace

LogDet log_det(const FluxProfile& p, const LogDetOptions& options)
{
    const int k = level_k(flux_kappa(p));
    require_supported(k);
    return assemble(p, options, free_quotient(k, p.radius(), options.zeta_tail_tol));
}

std::complex<double> free_quotient_bessel_ratio(int k, double radius, int base)
{
    require_supported(k);
    if (!(radius > 0.0)) throw DomainError("free_quotient_bessel_ratio: radius must be positive");
    const double nu = k + 1;
    if (nu == 0.0) return {0.0, 0.0};
    const std::complex<double> bracket(-specfun::euler_gamma - std::log(radius / pi), pi / 2.0);
    return -nu * bracket + 2.0 * oracle::bessel_ratio_log_sum(nu, base);
}

LogDet log_det_bessel_ratio(const FluxProfile& p, const LogDetOptions& options)
{
    const int k = level_k(flux_kappa(p));
    require_supported(k);
    return assemble(p, options, free_quotient_bessel_ratio(k, p.radius()));
}

IndexReport index_report(const FluxProfile& p)
{
    const double kappa = flux_kappa(p);
    const int k = level_k(kappa);
    require_supported(k);

    IndexReport out{};
    out.zero_mode_count = k + 1;

    // gamma5 = sigma3; every mode X^n e^{phi} has positive chirality and no
    // normalizable negative-chirality mode satisfies the condition for k >= -1.
    double trace = 0.0;
    for (int n = 0; n <= k; ++n) {
        const ZeroMode mode(p, n, 1.0);
        auto chiral = [&mode](double x0, double x1) {
            Spinor v = mode(x0, x1);
            v(1) = -v(1);
            return v;
        };
        trace += disk_inner_product(mode, chiral, p.radius()).real();
    }
    const long rounded = std::lround(trace);
    if (std::abs(trace - rounded) > 1e-6) {
        std::ostringstream msg;
        msg << "index_report: chirality trace " << trace << " is not an integer";
        throw ConsistencyError(msg.str());
    }
    out.chirality_trace = static_cast<int>(rounded);
    out.aps_formula = eta_zero(kappa).index;

    if (out.chirality_trace != out.zero_mode_count || out.aps_formula != out.zero_mode_count) {
        std::ostringstream msg;
        msg << "index_report: routes disagree (" << out.zero_mode_count << ", " << out.chirality_trace
            << ", " << out.aps_formula << ") at kappa=" << kappa;
        throw ConsistencyError(msg.str());
    }
    return out;
}

} // namespace diskdet
