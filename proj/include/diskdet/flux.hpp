#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

namespace diskdet {

/// Default relative tolerance for every radial quadrature in this module.
inline constexpr double default_quadrature_tolerance = 1e-10;

/// Axially symmetric gauge potential phi(r) on the disk r <= R.
///
/// The gauge field is A_mu = eps_{mu nu} d_nu phi, so A_r = 0 and
/// A_theta = -phi'(r). Regularity at the origin requires phi'(0) = 0, which
/// every constructor enforces. Profiles are immutable and cheap to copy.
class FluxProfile {
public:
    enum class Kind { polynomial, tabulated, custom };

    /// phi(r) = sum_j c_j r^{2j}.
    static FluxProfile polynomial(double radius, std::vector<double> coefficients);

    /// Cubic spline through (r_i, phi_i), clamped to phi'(0) = 0 at the origin
    /// and not-a-knot at r = R. Nodes must start at 0 and increase strictly;
    /// the last node is the radius.
    static FluxProfile tabulated(std::vector<double> r, std::vector<double> phi);

    /// Arbitrary callable pair; phi_prime must be the exact derivative of phi.
    static FluxProfile custom(double radius, std::function<double(double)> phi,
                              std::function<double(double)> phi_prime);

    Kind kind() const;
    double radius() const;
    double phi(double r) const;
    double phi_prime(double r) const;

    /// phi + c; the field A_mu is unchanged.
    FluxProfile shifted(double c) const;

    /// Polynomial coefficients (polynomial kind only, empty otherwise).
    const std::vector<double>& coefficients() const;
    /// Spline nodes (tabulated kind only, empty otherwise).
    const std::vector<double>& nodes() const;
    const std::vector<double>& node_values() const;
    /// Interior points where the profile is only piecewise smooth.
    std::vector<double> breakpoints() const;

    struct Impl;

private:
    explicit FluxProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct FluxData {
    double kappa;
    int k;
    int zero_mode_count;
};

/// kappa = -R phi'(R), the flux in units of 2 pi.
double flux_kappa(const FluxProfile& p);

/// The unique integer k with k < kappa <= k + 1.
int level_k(double kappa);

FluxData flux_data(const FluxProfile& p);

/// q_n(u; alpha) = int_0^u exp(2 alpha phi(r)) r^{2n+1} dr.
double q_n(const FluxProfile& p, int n, double u, double alpha,
           double rel_tol = default_quadrature_tolerance);

/// Two-component spinor value at a point of the disk.
using Spinor = Eigen::Vector2cd;

/// Normalized positive-chirality zero mode
///   exp(alpha phi(r)) (r e^{i theta})^n / sqrt(2 pi q_n(R; alpha)) * (1, 0)^T.
class ZeroMode {
public:
    ZeroMode(FluxProfile profile, int n, double alpha, double rel_tol = default_quadrature_tolerance);

    int angular_momentum() const { return n_; }
    double alpha() const { return alpha_; }
    double normalization() const { return norm_; }

    Spinor operator()(double x0, double x1) const;

private:
    FluxProfile profile_;
    int n_;
    double alpha_;
    double norm_;
};

/// Zero mode n of D_alpha under the APS condition; requires 0 <= n <= k.
ZeroMode zero_mode(const FluxProfile& p, int n, double alpha);

/// <f, g> = int_disk f(x)^dagger g(x) d^2x, with an adaptive radial rule and a
/// uniform angular rule of `angular_points` nodes (exact for trigonometric
/// polynomials of lower degree).
std::complex<double> disk_inner_product(const std::function<Spinor(double, double)>& f,
                                        const std::function<Spinor(double, double)>& g,
                                        double radius, int angular_points = 64,
                                        double rel_tol = 1e-11);

/// Schwinger term -(1/2 pi) int_disk phi'^2 d^2x = -int_0^R r phi'(r)^2 dr.
double bulk_term(const FluxProfile& p, double rel_tol = default_quadrature_tolerance);

struct InteractingQuotient {
    double bulk;
    /// -2 (k+1) phi(R) + sum_{n=0}^{k} ln[2 (n+1) q_n(R;1) / R^{2(n+1)}]
    double zero_mode_part;
    double total;
    int k;
};

/// ln[Det(D + P_1)_kappa / Det(i dslash + P_0)_kappa]: the determinant ratio
/// accumulated while the field is switched on at fixed boundary condition.
/// Requires k >= -1.
InteractingQuotient interacting_breakdown(const FluxProfile& p,
                                          double rel_tol = default_quadrature_tolerance);

double interacting_quotient(const FluxProfile& p, double rel_tol = default_quadrature_tolerance);

} // namespace diskdet
