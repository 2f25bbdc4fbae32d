#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "diskdet/flux.hpp"

namespace diskdet::oracle {

/// Which spinor component the APS condition forces to vanish at r = R for
/// angular mode n: the upper one for n >= k+1, the lower one for n <= k.
enum class BoundaryComponent { upper_dirichlet, lower_dirichlet };

BoundaryComponent aps_component(int n, int k);
std::string to_string(BoundaryComponent bc);

/// Bessel order whose zeros give the free spectrum of mode n:
/// |n| for upper-Dirichlet, |n+1| for lower-Dirichlet.
int spectral_order(int n, BoundaryComponent bc);

/// Exact free eigenvalues of mode n, +-j_{nu,l}/R for l = 1..count, sorted
/// ascending (2*count values). At n = k+1 the same values reappear for mode
/// n = k, which is the doubling of the spectrum.
std::vector<double> free_spectrum_exact(int n, int k, double radius, int count);

struct SpectrumReport {
    int n;
    int k;
    BoundaryComponent bc_type;
    int grid_size;
    int zero_modes;                   ///< discrete zero modes excluded from `eigenvalues`
    std::vector<double> eigenvalues;  ///< first `count` nonzero on each side, ascending
    std::vector<double> reference;    ///< exact positive eigenvalues j_{nu,l}/R
    double max_rel_error;             ///< over the positive branch
    double symmetry_error;            ///< max |lambda_i + lambda_{-i}|
};

/// Finite-difference spectrum of the free radial Dirac system of mode n,
///   w' + (n+1) w/r = lambda u,   -u' + n u/r = lambda w,
/// discretized in flux form on staggered grids (u at half-integer, w at
/// integer multiples of h) with the Dirichlet component pinned at r = R. The
/// sqrt(r)-scaled matrix is symmetric tridiagonal with zero diagonal, so its
/// spectrum is symmetric about zero up to rounding. Lower-Dirichlet modes with
/// n >= 0 carry the free zero mode r^n, which is reported in `zero_modes` and
/// left out of `eigenvalues`.
SpectrumReport free_spectrum_fd(int n, int k, double radius, int grid, int count = 5);

/// Same, with the boundary component chosen explicitly (k is recorded as
/// given and otherwise unused).
SpectrumReport free_spectrum_fd(int n, BoundaryComponent bc, int k, double radius, int grid,
                                int count = 5);

/// Off-diagonal blocks of the kernel of the right inverse of D_alpha:
///   upper: exp(alpha[phi(x)-phi(y)]) (X/Y)^{k+1} / (2 pi i (X-Y))
///   lower: exp(-alpha[phi(x)-phi(y)]) (Y*/X*)^{k+1} / (2 pi i (X*-Y*))
std::complex<double> green_kernel_upper(const FluxProfile& p, double alpha, int k,
                                        const Eigen::Vector2d& x, const Eigen::Vector2d& y);
std::complex<double> green_kernel_lower(const FluxProfile& p, double alpha, int k,
                                        const Eigen::Vector2d& x, const Eigen::Vector2d& y);

/// |D_alpha G(., y)| at x off the diagonal, with x-derivatives taken by
/// central differences of the kernel and A_mu evaluated analytically. The
/// residual is relative to |G|/|X - Y|. Throws DomainError if |X - Y| < 1e-3.
double green_residual(const FluxProfile& p, double alpha, const Eigen::Vector2d& x,
                      const Eigen::Vector2d& y, double step = 1e-5);

struct GreenCheck {
    double max_residual;
    int pairs;
};

/// Random pairs inside 0.9 R with |X|, |Y| >= 0.1 R and |X - Y| >= 0.1 R.
GreenCheck green_holomorphy_check(const FluxProfile& p, double alpha, int sample_pairs,
                                  unsigned seed = 1, double step = 1e-5);

struct BoundaryModes {
    double allowed;    ///< largest |c_m| among modes the APS condition allows
    double forbidden;  ///< largest |c_m| among modes it removes
};

/// Fourier content of the kernel for x on the circle |x| = R at fixed y.
/// Upper row: allowed m <= k. Lower row: allowed m >= k + 2.
BoundaryModes green_boundary_modes(const FluxProfile& p, double alpha, const Eigen::Vector2d& y,
                                   bool upper_row, int samples = 256);

/// sum_{l<=L} j_{nu,l}^{-s} plus the McMahon tail sum_{l>L}; s > 1, L >= 10.
double zeta_partial_sum(double nu, double s, int zeros);

/// sum_l ln[ j_{nu,l}/j_{0,l} * exp(-nu/(2l)) ] by brute-force partial sums at
/// L = base, 2 base, ..., 16 base and Richardson extrapolation in 1/L.
double bessel_ratio_log_sum(double nu, int base = 1000);

} // namespace diskdet::oracle
