#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "diskdet/cli.hpp"
#include "diskdet/determinant.hpp"
#include "diskdet/errors.hpp"
#include "diskdet/oracle.hpp"
#include "diskdet/specfun.hpp"
#include "diskdet/symbols.hpp"
#include "diskdet/zeta_eta.hpp"

namespace diskdet::cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome within(double err, double tol)
{
    std::ostringstream s;
    s << "max err " << err << " (tol " << tol << ")";
    return {err <= tol, s.str()};
}

CheckResult guarded(const std::string& name, const std::function<Outcome()>& body)
{
    try {
        const auto o = body();
        return {name, o.pass, o.detail};
    } catch (const std::exception& e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

// Free quotient rebuilt from explicit zero tables, optionally corrupted.
std::complex<double> free_quotient_from_tables(int k, double radius, bool corrupt)
{
    const double nu = k + 1;
    if (nu == 0.0) return {0.0, 0.0};
    auto zeros = specfun::BesselZeroTable(nu, 800).zeros();
    if (corrupt) zeros[2] *= 1.0 + 1e-4;
    const auto table = specfun::BesselZeroTable::from_values(nu, zeros);
    const double df = f_prime_zero(table) - f_prime_zero(specfun::BesselZeroTable(0.0, 800));
    const double d0 = f_zero(nu) - f_zero(0.0);
    return -2.0 * (df + std::complex<double>(std::log(radius), -pi / 2.0) * d0);
}

} // namespace

std::vector<CheckResult> selftest(const SelftestOptions& options)
{
    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, const std::function<Outcome()>& body) {
        out.push_back(guarded(name, body));
    };

    add("specfun: J_nu vanishes at computed zeros", [] {
        double worst = 0.0;
        for (double nu : {0.0, 0.5, 1.0, 2.5, 10.0, 50.0})
            for (int l = 1; l <= 50; ++l) {
                const double j = specfun::bessel_zero(nu, l);
                const auto v = specfun::bessel_j_with_derivative(nu, j);
                worst = std::max(worst, std::abs(v.value) / std::max(1.0, std::abs(v.derivative)));
            }
        return within(worst, 1e-10);
    });
    add("specfun: zeros of J_nu and J_nu+1 interlace", [] {
        for (double nu : {0.0, 1.0, 2.0, 3.0, 7.5}) {
            const specfun::BesselZeroTable a(nu, 200), b(nu + 1.0, 200);
            for (std::size_t l = 1; l < 200; ++l)
                if (!(a.zero(l) < b.zero(l) && b.zero(l) < a.zero(l + 1)))
                    return Outcome{false, "interlacing broken"};
        }
        return Outcome{true, "nu in {0,1,2,3,7.5}, 200 zeros"};
    });
    add("specfun: j_{1/2,l} = l pi", [] {
        double worst = 0.0;
        for (int l = 1; l <= 1000; ++l)
            worst = std::max(worst, std::abs(specfun::bessel_zero(0.5, l) - l * pi) / (l * pi));
        return within(worst, 4e-16);
    });
    add("specfun: McMahon estimate within 1 for l > nu (nu <= 5)", [] {
        double worst = 0.0;
        for (double nu : {0.0, 1.0, 2.0, 3.5, 5.0})
            for (int l = static_cast<int>(nu) + 1; l <= 300; ++l)
                worst = std::max(worst, std::abs(specfun::bessel_zero(nu, l) - (l + nu / 2.0 - 0.25) * pi));
        return Outcome{worst < 1.0, "max |j - beta| = " + std::to_string(worst)};
    });

    add("flux: interacting quotient invariant under phi -> phi + c", [] {
        double worst = 0.0;
        for (const auto& p : {FluxProfile::polynomial(1.0, {0.0, -0.5}), FluxProfile::polynomial(1.5, {0.0, 0.0, -0.4})}) {
            const double base = interacting_quotient(p);
            for (double c : {-5.0, -0.5, 0.5, 5.0})
                worst = std::max(worst, std::abs(interacting_quotient(p.shifted(c)) - base));
        }
        return within(worst, 1e-9);
    });
    add("flux: q_n(u; 0) = u^{2n+2}/(2n+2)", [] {
        const auto p = FluxProfile::polynomial(2.0, {0.3, -0.7, 0.1});
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n)
            for (double u : {0.25, 1.0, 2.0}) {
                const double exact = std::pow(u, 2 * n + 2) / (2 * n + 2);
                worst = std::max(worst, std::abs(q_n(p, n, u, 0.0, 1e-13) - exact) / exact);
            }
        return within(worst, 1e-12);
    });
    add("flux: zero modes orthonormal", [] {
        const auto p = FluxProfile::polynomial(1.0, {0.0, -1.25});
        double worst = 0.0;
        for (int a = 0; a <= 2; ++a)
            for (int b = a; b <= 2; ++b) {
                const auto ip = disk_inner_product(zero_mode(p, a, 1.0), zero_mode(p, b, 1.0), 1.0);
                worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
            }
        return within(worst, 1e-8);
    });

    add("zeta_eta: free quotient equals the Bessel-ratio series", [&] {
        double worst = 0.0;
        for (int k = -1; k <= 3; ++k) {
            const auto a = free_quotient_from_tables(k, 1.0, options.inject_bessel_fault);
            const auto b = free_quotient_bessel_ratio(k, 1.0);
            worst = std::max(worst, std::abs(a - b));
        }
        return within(worst, 1e-8);
    });
    add("zeta_eta: numeric eta(0) matches closed form", [] {
        double worst = 0.0;
        for (double kappa : {0.0, 0.25, 0.5, 1.0, 1.5, 2.7})
            worst = std::max(worst, std::abs(eta_zero_numeric(kappa) - eta_zero(kappa).eta0));
        return within(worst, 1e-6);
    });
    add("zeta_eta: APS index = k + 1 for 50 random kappa", [] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 5.0);
        for (int i = 0; i < 50; ++i) {
            double kappa = u(rng);
            if (kappa == -1.0) kappa = 0.0;
            const auto e = eta_zero(kappa);
            if (e.index != e.k + 1) return Outcome{false, "mismatch at kappa " + std::to_string(kappa)};
        }
        return Outcome{true, "50 samples"};
    });

    add("determinant: total invariant under phi -> phi + c", [] {
        double worst = 0.0;
        for (const auto& p : {FluxProfile::polynomial(1.0, {0.0, -0.5}), FluxProfile::polynomial(2.0, {0.0, 0.0, -0.1})}) {
            const auto base = log_det(p).total;
            for (double c : {-5.0, -0.5, 0.5, 5.0}) worst = std::max(worst, std::abs(log_det(p.shifted(c)).total - base));
        }
        return within(worst, 1e-9);
    });
    add("determinant: Im total = -(k+1) pi/2", [] {
        double worst = 0.0;
        for (double kappa : {0.3, 1.0, 1.7, 2.4}) {
            const auto d = log_det(FluxProfile::polynomial(1.0, {0.0, -kappa / 2.0}));
            worst = std::max(worst, std::abs(d.total.imag() + (d.k + 1) * pi / 2.0));
        }
        return within(worst, 1e-10);
    });
    add("determinant: kappa = 0 reduces to the bulk term", [] {
        const auto p = FluxProfile::polynomial(1.0, {0.0, -2.0, 1.0}); // (1 - r^2)^2 - 1
        const auto d = log_det(p);
        return within(std::max(std::abs(d.total.imag()), std::abs(d.total.real() - bulk_term(p))), 1e-9);
    });
    add("determinant: continuous within a sector", [] {
        // phi_t = -t r^2/2 on R = 1, kappa = t in (1, 2).
        double prev = log_det(FluxProfile::polynomial(1.0, {0.0, -0.5 * 1.05})).total.real(), worst = 0.0;
        for (double t = 1.1; t < 1.96; t += 0.05) {
            const double cur = log_det(FluxProfile::polynomial(1.0, {0.0, -0.5 * t})).total.real();
            worst = std::max(worst, std::abs(cur - prev));
            prev = cur;
        }
        return Outcome{worst < 0.1, "max jump over dt = 0.05: " + std::to_string(worst)};
    });
    add("determinant: index three ways", [] {
        for (double kappa : {0.0, 0.5, 1.0, 2.5, 3.9}) {
            const auto r = index_report(FluxProfile::polynomial(1.0, {0.0, -kappa / 2.0}));
            if (r.zero_mode_count != level_k(kappa) + 1) return Outcome{false, "wrong count"};
        }
        return Outcome{true, "kappa in {0,0.5,1,2.5,3.9}"};
    });

    add("symbols: q^2 = q and tr q = dim/2", [] {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const int dim = i % 2 ? 4 : 2;
            symbols::Vector<double> n(dim), xi(dim);
            for (int a = 0; a < dim; ++a) n(a) = g(rng), xi(a) = g(rng);
            n.normalize();
            xi -= xi.dot(n) * n;
            xi.normalize();
            const auto q = symbols::calderon_symbol<double>(dim, xi, n).entries;
            worst = std::max({worst, (q * q - q).norm(), std::abs(q.trace() - std::complex<double>(dim / 2.0))});
        }
        return within(worst, 1e-12);
    });
    add("symbols: 4-D chiral obstruction", [] {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(0.1, 3.0);
        std::bernoulli_distribution sign;
        auto chiral_q = [](const symbols::Vector<double>& x) { return symbols::chiral_symbol_4d(x); };
        for (int i = 0; i < 100; ++i) {
            const double b1 = sign(rng) ? u(rng) : -u(rng), b2 = sign(rng) ? u(rng) : -u(rng);
            symbols::Matrix<double> b(1, 2);
            b << b1, b2;
            const auto w = symbols::chiral_obstruction_witness(b1, b2);
            const symbols::Matrix<double> q = symbols::chiral_symbol_4d(w);
            if (symbols::numeric_rank<double>(q) != 1) return Outcome{false, "rank q_ch != 1"};
            if (symbols::numeric_rank<double>(symbols::Matrix<double>(b * q), 1e-8, b.norm()) != 0)
                return Outcome{false, "witness does not annihilate b q_ch"};
            const auto r = symbols::ellipticity_test<double>(symbols::BoundaryOperatorSymbol<double>::constant(b),
                                                             chiral_q, 3, 500);
            if (r.outcome != symbols::Ellipticity::not_elliptic) return Outcome{false, "local b passed"};
        }
        return Outcome{true, "100 random (beta1, beta2)"};
    });
    add("symbols: APS symbol equals the 2-D chiral symbol", [] {
        for (double xi : {-3.0, -1.0, -1e-3, 1e-3, 1.0, 3.0})
            if (symbols::aps_symbol_2d(xi)(0, 0) != symbols::chiral_symbol_2d(xi)(0, 0))
                return Outcome{false, "mismatch"};
        return Outcome{true, "6 samples"};
    });

    add("oracle: FD spectra match Bessel zeros (grid 2000)", [] {
        double worst = 0.0;
        for (int k = -1; k <= 1; ++k)
            for (int n = 0; n <= 2; ++n) worst = std::max(worst, oracle::free_spectrum_fd(n, k, 1.0, 2000).max_rel_error);
        return within(worst, 1e-3);
    });
    add("oracle: FD order of accuracy", [] {
        const double a = oracle::free_spectrum_fd(1, 0, 1.0, 400).max_rel_error;
        const double b = oracle::free_spectrum_fd(1, 0, 1.0, 800).max_rel_error;
        const double ratio = a / b;
        return Outcome{ratio >= 1.7 && ratio <= 4.3, "error ratio " + std::to_string(ratio)};
    });
    add("oracle: spectrum doubling at n = k + 1", [] {
        double worst = 0.0;
        for (int k = -1; k <= 1; ++k) {
            const auto up = oracle::free_spectrum_fd(k + 1, k, 1.0, 800);
            const auto low = oracle::free_spectrum_fd(k, k, 1.0, 800);
            for (std::size_t i = 0; i < up.eigenvalues.size(); ++i)
                worst = std::max(worst, std::abs(up.eigenvalues[i] - low.eigenvalues[i]) / std::abs(up.eigenvalues[i]));
        }
        return within(worst, 1e-4);
    });
    add("oracle: Rayleigh sum of j_{0,l}^-2 = 1/4", [] {
        return within(std::abs(oracle::zeta_partial_sum(0.0, 2.0, 10000) - 0.25), 1e-8);
    });
    add("oracle: Green kernel annihilated off the diagonal", [] {
        const double a = oracle::green_holomorphy_check(FluxProfile::polynomial(1.0, {0.0}), 0.0, 200).max_residual;
        const double b = oracle::green_holomorphy_check(FluxProfile::polynomial(1.0, {0.0, -0.5}), 1.0, 200).max_residual;
        return within(std::max(a, b), 1e-6);
    });

    add("cli: config round trip", [] {
        const char* text = R"({"radius": 2, "profile": {"type": "tabulated", "r": [0, 1, 2], "phi": [0, -0.5, -2]},
                               "tolerances": {"quadrature": 1e-11}, "output_path": "x.json"})";
        const auto once = serialize_config(parse_config(text));
        return Outcome{serialize_config(parse_config(once)) == once, "parse -> serialize -> parse"};
    });

    return out;
}

} // namespace diskdet::cli
