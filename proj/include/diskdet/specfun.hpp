#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace diskdet::specfun {

inline constexpr double euler_gamma = std::numbers::egamma;
inline constexpr double max_order = 200.0;

struct BesselValue {
    double value;
    double derivative;
};

/// J_nu(x) for real order 0 <= nu <= 200 and x >= 0.
double bessel_j(double nu, double x);

/// J_nu(x) together with dJ_nu/dx.
BesselValue bessel_j_with_derivative(double nu, double x);

/// McMahon's large-l estimate of the l-th positive zero of J_nu.
double mcmahon_zero(double nu, int l);

/// l-th positive zero j_{nu,l} (l >= 1), refined by bracketed Newton.
/// Throws ConvergenceError rather than returning an unrefined guess.
double bessel_zero(double nu, int l);

/// Immutable table of the first `count` positive zeros of J_nu.
class BesselZeroTable {
public:
    BesselZeroTable(double nu, std::size_t count);

    /// Wraps externally supplied zeros; they must be positive and strictly increasing.
    static BesselZeroTable from_values(double nu, std::vector<double> zeros);

    double order() const { return nu_; }
    std::size_t count() const { return zeros_.size(); }
    /// 1-based, matching j_{nu,l}.
    double zero(std::size_t l) const { return zeros_.at(l - 1); }
    const std::vector<double>& zeros() const { return zeros_; }

private:
    BesselZeroTable() = default;
    double nu_ = 0.0;
    std::vector<double> zeros_;
};

/// Hurwitz zeta zeta(s, a) = sum_{n>=0} (n + a)^{-s}, analytically continued
/// to real s != 1 by Euler-Maclaurin summation. Requires a > 0.
double hurwitz_zeta(double s, double a);

} // namespace diskdet::specfun
