#pragma once

#include <complex>

#include "diskdet/flux.hpp"
#include "diskdet/zeta_eta.hpp"

namespace diskdet {

struct LogDetOptions {
    double quadrature_tol = default_quadrature_tolerance;
    double zeta_tail_tol = default_zeta_tail_tolerance;
};

struct LogDet {
    std::complex<double> total;
    double bulk;
    double zero_mode_part;
    std::complex<double> free_quotient_part;
    double kappa;
    int k;
};

/// ln[Det'(D)_kappa / Det(i dslash)_{kappa=0}] for the APS problem on the disk.
///
/// This is the primed determinant: the k+1 zero modes are removed through the
/// D + P_1 construction, so the result is finite for every k >= -1. The
/// imaginary part is -(k+1) pi/2, from the (1 + e^{-i pi s}) continuation.
/// Throws DomainError for k < -1 (negative-chirality zero-mode sector).
LogDet log_det(const FluxProfile& p, const LogDetOptions& options = {});

/// Free quotient from the Bessel-ratio series
///   -nu [i pi/2 - gamma - ln(R/pi)] + 2 sum_l ln[(j_{nu,l}/j_{0,l}) e^{-nu/(2l)}],
/// nu = k + 1, summed by brute force with Richardson extrapolation.
std::complex<double> free_quotient_bessel_ratio(int k, double radius, int base = 1000);

/// log_det with the free part taken from free_quotient_bessel_ratio.
LogDet log_det_bessel_ratio(const FluxProfile& p, const LogDetOptions& options = {});

struct IndexReport {
    int zero_mode_count;  ///< k + 1
    int chirality_trace;  ///< N+ - N-, from tr(gamma5 P_1) over the zero modes
    int aps_formula;      ///< kappa + (1 - h - eta(0))/2
};

/// Index three ways. Throws ConsistencyError if they disagree and
/// DomainError for k < -1.
IndexReport index_report(const FluxProfile& p);

} // namespace diskdet
