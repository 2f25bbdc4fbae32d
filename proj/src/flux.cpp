#include "diskdet/flux.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Sparse>

#include "diskdet/errors.hpp"
#include "diskdet/quadrature.hpp"

namespace diskdet {

namespace {

constexpr double pi = std::numbers::pi;

// Hermite-form cubic spline: values y_i and slopes m_i at nodes x_i.
struct Spline {
    std::vector<double> x, y, m;

    std::size_t interval(double r) const
    {
        auto it = std::upper_bound(x.begin(), x.end(), r);
        std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
        return std::min(i, x.size() - 2);
    }

    double value(double r) const
    {
        const auto i = interval(r);
        const double h = x[i + 1] - x[i];
        const double t = (r - x[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m[i] +
               (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * m[i + 1];
    }

    double derivative(double r) const
    {
        const auto i = interval(r);
        const double h = x[i + 1] - x[i];
        const double t = (r - x[i]) / h;
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) * y[i] + (-6 * t2 + 6 * t) * y[i + 1]) / h +
               (3 * t2 - 4 * t + 1) * m[i] + (3 * t2 - 2 * t) * m[i + 1];
    }
};

// Slopes for phi'(0) = 0 at the left end and not-a-knot at the last interior node.
std::vector<double> spline_slopes(const std::vector<double>& x, const std::vector<double>& y)
{
    const int n = static_cast<int>(x.size()) - 1; // unknowns m_1..m_n
    std::vector<double> h(n), delta(n);
    for (int i = 0; i < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> entries;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    auto add = [&](int row, int node, double value) {
        if (node >= 1) entries.emplace_back(row, node - 1, value); // m_0 = 0 drops out
    };
    for (int i = 1; i <= n - 1; ++i) {
        add(i - 1, i - 1, h[i]);
        add(i - 1, i, 2.0 * (h[i - 1] + h[i]));
        add(i - 1, i + 1, h[i - 1]);
        rhs(i - 1) = 3.0 * (h[i] * delta[i - 1] + h[i - 1] * delta[i]);
    }
    // Continuity of the third derivative at node n-1.
    const double wl = 1.0 / (h[n - 2] * h[n - 2]);
    const double wr = 1.0 / (h[n - 1] * h[n - 1]);
    add(n - 1, n - 2, wl);
    add(n - 1, n - 1, wl - wr);
    add(n - 1, n, -wr);
    rhs(n - 1) = 2.0 * (wl * delta[n - 2] - wr * delta[n - 1]);

    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw DomainError("tabulated profile: singular spline system");
    const Eigen::VectorXd sol = lu.solve(rhs);
    std::vector<double> m(n + 1, 0.0);
    for (int i = 0; i < n; ++i) m[i + 1] = sol(i);
    return m;
}

void check_radius(double radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("flux profile: radius must be positive and finite");
}

} // namespace

struct FluxProfile::Impl {
    Kind kind;
    double radius;
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    std::vector<double> coefficients;
    Spline spline;
};

FluxProfile FluxProfile::polynomial(double radius, std::vector<double> coefficients)
{
    check_radius(radius);
    if (coefficients.empty()) throw DomainError("polynomial profile: no coefficients");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw DomainError("polynomial profile: non-finite coefficient");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::polynomial;
    impl->radius = radius;
    impl->coefficients = coefficients;
    impl->phi = [c = coefficients](double r) {
        const double r2 = r * r;
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r2 + *it;
        return acc;
    };
    impl->phi_prime = [c = coefficients](double r) {
        const double r2 = r * r;
        double acc = 0.0;
        for (std::size_t j = c.size() - 1; j >= 1; --j) acc = acc * r2 + 2.0 * j * c[j];
        return acc * r;
    };
    return FluxProfile(std::move(impl));
}

FluxProfile FluxProfile::tabulated(std::vector<double> r, std::vector<double> phi)
{
    if (r.size() != phi.size()) throw DomainError("tabulated profile: r and phi lengths differ");
    if (r.size() < 3) throw DomainError("tabulated profile: need at least 3 nodes");
    if (r.front() != 0.0) throw DomainError("tabulated profile: first node must be r = 0");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1])) throw DomainError("tabulated profile: nodes must increase strictly");
    for (double v : phi)
        if (!std::isfinite(v)) throw DomainError("tabulated profile: non-finite phi value");
    check_radius(r.back());
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::tabulated;
    impl->radius = r.back();
    impl->spline.m = spline_slopes(r, phi);
    impl->spline.x = std::move(r);
    impl->spline.y = std::move(phi);
    const Spline* s = &impl->spline;
    impl->phi = [s](double x) { return s->value(x); };
    impl->phi_prime = [s](double x) { return s->derivative(x); };
    return FluxProfile(std::move(impl));
}

FluxProfile FluxProfile::custom(double radius, std::function<double(double)> phi,
                                std::function<double(double)> phi_prime)
{
    check_radius(radius);
    if (!phi || !phi_prime) throw DomainError("custom profile: missing callable");
    if (std::abs(phi_prime(0.0)) > 1e-12)
        throw DomainError("custom profile: phi'(0) must vanish for a regular field");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::custom;
    impl->radius = radius;
    impl->phi = std::move(phi);
    impl->phi_prime = std::move(phi_prime);
    return FluxProfile(std::move(impl));
}

FluxProfile::Kind FluxProfile::kind() const { return impl_->kind; }
double FluxProfile::radius() const { return impl_->radius; }
double FluxProfile::phi(double r) const { return impl_->phi(r); }
double FluxProfile::phi_prime(double r) const { return impl_->phi_prime(r); }
const std::vector<double>& FluxProfile::coefficients() const { return impl_->coefficients; }
const std::vector<double>& FluxProfile::nodes() const { return impl_->spline.x; }
const std::vector<double>& FluxProfile::node_values() const { return impl_->spline.y; }

std::vector<double> FluxProfile::breakpoints() const
{
    if (impl_->kind != Kind::tabulated) return {};
    const auto& x = impl_->spline.x;
    return {x.begin() + 1, x.end() - 1};
}

FluxProfile FluxProfile::shifted(double c) const
{
    switch (impl_->kind) {
    case Kind::polynomial: {
        auto coeffs = impl_->coefficients;
        coeffs[0] += c;
        return polynomial(impl_->radius, std::move(coeffs));
    }
    case Kind::tabulated: {
        auto values = impl_->spline.y;
        for (double& v : values) v += c;
        return tabulated(impl_->spline.x, std::move(values));
    }
    case Kind::custom:
    default:
        return custom(
            impl_->radius, [base = impl_, c](double r) { return base->phi(r) + c; },
            [base = impl_](double r) { return base->phi_prime(r); });
    }
}

double flux_kappa(const FluxProfile& p) { return -p.radius() * p.phi_prime(p.radius()); }

int level_k(double kappa)
{
    if (!std::isfinite(kappa)) throw DomainError("level_k: flux must be finite");
    return static_cast<int>(std::ceil(kappa)) - 1;
}

FluxData flux_data(const FluxProfile& p)
{
    const double kappa = flux_kappa(p);
    const int k = level_k(kappa);
    return {kappa, k, std::max(0, k + 1)};
}

double q_n(const FluxProfile& p, int n, double u, double alpha, double rel_tol)
{
    if (n < 0) throw DomainError("q_n: n must be non-negative");
    if (!(u > 0.0) || u > p.radius() * (1.0 + 1e-15))
        throw DomainError("q_n: upper limit must lie in (0, R]");
    const int power = 2 * n + 1;
    auto integrand = [&](double r) { return std::exp(2.0 * alpha * p.phi(r)) * std::pow(r, power); };
    const auto bp = p.breakpoints();
    return quadrature::integrate(integrand, 0.0, u, rel_tol, 1e-300, bp).value;
}

ZeroMode::ZeroMode(FluxProfile profile, int n, double alpha, double rel_tol)
    : profile_(std::move(profile)), n_(n), alpha_(alpha)
{
    norm_ = 1.0 / std::sqrt(2.0 * pi * q_n(profile_, n_, profile_.radius(), alpha_, rel_tol));
}

Spinor ZeroMode::operator()(double x0, double x1) const
{
    const double r = std::hypot(x0, x1);
    const std::complex<double> z(x0, x1);
    const std::complex<double> upper =
        norm_ * std::exp(alpha_ * profile_.phi(r)) * (n_ == 0 ? std::complex<double>(1.0) : std::pow(z, n_));
    return Spinor(upper, 0.0);
}

ZeroMode zero_mode(const FluxProfile& p, int n, double alpha)
{
    const int k = level_k(flux_kappa(p));
    if (k < 0) throw DomainError("zero_mode: no zero modes for k < 0");
    if (n < 0 || n > k)
        throw DomainError("zero_mode: n must lie in [0, k] = [0, " + std::to_string(k) + "]");
    return ZeroMode(p, n, alpha);
}

std::complex<double> disk_inner_product(const std::function<Spinor(double, double)>& f,
                                        const std::function<Spinor(double, double)>& g,
                                        double radius, int angular_points, double rel_tol)
{
    if (angular_points < 1) throw DomainError("disk_inner_product: need angular points");
    auto ring = [&](double r) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < angular_points; ++j) {
            const double theta = 2.0 * pi * j / angular_points;
            const double x0 = r * std::cos(theta), x1 = r * std::sin(theta);
            acc += f(x0, x1).dot(g(x0, x1)); // conjugates f
        }
        return acc * (2.0 * pi / angular_points) * r;
    };
    const double re = quadrature::integrate([&](double r) { return ring(r).real(); }, 0.0, radius,
                                            rel_tol, 1e-15).value;
    const double im = quadrature::integrate([&](double r) { return ring(r).imag(); }, 0.0, radius,
                                            rel_tol, 1e-15).value;
    return {re, im};
}

double bulk_term(const FluxProfile& p, double rel_tol)
{
    auto integrand = [&](double r) {
        const double d = p.phi_prime(r);
        return r * d * d;
    };
    const auto bp = p.breakpoints();
    return -quadrature::integrate(integrand, 0.0, p.radius(), rel_tol, 1e-300, bp).value;
}

InteractingQuotient interacting_breakdown(const FluxProfile& p, double rel_tol)
{
    const int k = level_k(flux_kappa(p));
    if (k < -1)
        throw DomainError("interacting_quotient: k < -1 (negative-chirality zero-mode sector) is not supported");
    const double radius = p.radius();
    InteractingQuotient out{};
    out.k = k;
    out.bulk = bulk_term(p, rel_tol);
    double zero_part = -2.0 * (k + 1) * p.phi(radius);
    for (int n = 0; n <= k; ++n) {
        const double q = q_n(p, n, radius, 1.0, rel_tol);
        zero_part += std::log(2.0 * (n + 1)) + std::log(q) - 2.0 * (n + 1) * std::log(radius);
    }
    out.zero_mode_part = zero_part;
    out.total = out.bulk + out.zero_mode_part;
    return out;
}

double interacting_quotient(const FluxProfile& p, double rel_tol)
{
    return interacting_breakdown(p, rel_tol).total;
}

} // namespace diskdet
