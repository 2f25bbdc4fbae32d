#pragma once

#include <complex>

#include "diskdet/specfun.hpp"

namespace diskdet {

inline constexpr double default_zeta_tail_tolerance = 1e-9;

/// Data of f_nu(s) = sum_l j_{nu,l}^{-s} at s = 0.
struct ZetaValues {
    double order;
    double f0;             ///< f_nu(0) = -nu/2 - 1/4
    double fprime0;        ///< f'_nu(0) from the Bessel-zero series
    int terms_used;        ///< zeros summed explicitly
    double tail_estimate;  ///< estimated error of the truncated series
};

double f_zero(double nu);

/// S_nu = sum_{l>=1} ln[ j_{nu,l}/(l pi) exp(-(2nu-1)/(4l)) ], summed over the
/// zeros of `table` plus an asymptotic tail built from McMahon's expansion
/// through order l^{-5}. `tail_estimate` receives |S(L) - S(L/2)| / 31.
double bessel_log_series(const specfun::BesselZeroTable& table, double* tail_estimate = nullptr);

/// f_nu(0) and f'_nu(0). The zero count starts at 200 and doubles until the
/// tail estimate is below `tail_tol`; ConvergenceError past 12800 zeros.
ZetaValues zeta_values(double nu, double tail_tol = default_zeta_tail_tolerance);

/// f'_nu(0) = -ln2/2 + ((2nu-1)/4)(ln pi - gamma) - S_nu.
double f_prime_zero(double nu, double tail_tol = default_zeta_tail_tolerance);

/// Same, using a caller-supplied zero table (no adaptive refinement).
double f_prime_zero(const specfun::BesselZeroTable& table);

/// Analytic continuation of f_nu(s) for real s in (-1, 1) U (1, inf):
///   pi^{-s} zeta_H(s, 1+b) + sum_{l<=L} [j_l^{-s} - (pi(l+b))^{-s}] + tail,
/// b = nu/2 - 1/4, using the first L zeros in `table`.
double zeta_continued(const specfun::BesselZeroTable& table, double s);

struct ContinuationAtZero {
    double f0;
    double fprime0;
};

/// f_nu(0) and f'_nu(0) from zeta_continued sampled at s = +-h, +-2h, +-4h,
/// +-8h and Richardson-extrapolated to s = 0. Independent of the closed form
/// and of the log-series route.
ContinuationAtZero continue_to_zero(const specfun::BesselZeroTable& table, double h = 0.01);

/// ln[Det(i dslash + P_0)_kappa / Det(i dslash)_{kappa=0}]
///   = -2[ f'_nu(0) - f'_0(0) + (ln R - i pi/2)(f_nu(0) - f_0(0)) ],  nu = |k+1|.
std::complex<double> free_quotient(int k, double radius,
                                   double tail_tol = default_zeta_tail_tolerance);

/// a_n = (n - kappa)/R, eigenvalues of the boundary operator.
double boundary_eigenvalue(int n, double kappa, double radius);

struct EtaData {
    double kappa;
    int k;
    int h;        ///< dim ker of the boundary operator
    double eta0;  ///< eta(0) = 2(kappa - k) - 1 - h
    int index;    ///< kappa + (1 - h - eta0)/2, checked equal to k + 1
};

EtaData eta_zero(double kappa);

/// eta(0) by numeric continuation: eigenvalues above and below kappa are
/// paired, the paired partial sums (cutoff terms) plus a Hurwitz tail are
/// evaluated at s in (0, 1/2] and extrapolated to s = 0. Throws
/// ConvergenceError if the result misses the closed form by more than 1e-6.
double eta_zero_numeric(double kappa, int cutoff = 1000);

} // namespace diskdet
