#include "diskdet/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "diskdet/errors.hpp"

namespace diskdet::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = 1e-16;
constexpr double fpmin = std::numeric_limits<double>::min() / eps;
constexpr int max_iterations = 1000000;

void check_order(double nu, const char* who)
{
    if (!(nu >= 0.0))
        throw DomainError(std::string(who) + ": order must be non-negative");
    if (nu > max_order)
        throw DomainError(std::string(who) + ": order above supported range (200)");
}

// 1/Gamma(z) = sum_{k>=1} c_k z^k, so 1/Gamma(1+x) = sum_{k>=0} c_{k+1} x^k.
constexpr double rgamma_coeffs[] = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
    double gam1;  // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
    double gam2;  // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
    double gampl; // 1/Gamma(1+mu)
    double gammi; // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu)
{
    // Split 1/Gamma(1+x) into even part E and odd part x*O.
    double even = 0.0, odd = 0.0, power = 1.0;
    const double mu2 = mu * mu;
    constexpr int n = sizeof(rgamma_coeffs) / sizeof(rgamma_coeffs[0]);
    for (int k = 0; k < n; k += 2) {
        even += rgamma_coeffs[k] * power;
        if (k + 1 < n) odd += rgamma_coeffs[k + 1] * power;
        power *= mu2;
    }
    return {-odd, even, even + mu * odd, even - mu * odd};
}

// Power series; used only where x^2 <= 4(nu+1) so the terms never grow.
BesselValue series(double nu, double x)
{
    const double half = 0.5 * x;
    const double q = -half * half;
    double lead;
    if (nu < 150.0)
        lead = std::pow(half, nu) / std::tgamma(nu + 1.0);
    else
        lead = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
    // J = lead * sum_k q^k / (k! (nu+1)_k),  x J' = lead * sum_k (nu+2k) q^k / (k! (nu+1)_k)
    double term = 1.0, sum = 1.0, dsum = nu;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        dsum += (nu + 2.0 * k) * term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && std::abs(term) * (nu + 2.0 * k) < 1e-17 * std::abs(dsum))
            break;
    }
    return {lead * sum, x > 0.0 ? lead * dsum / x : 0.0};
}

// Hankel asymptotic expansion of J_nu. Returns false when the series is not
// accurate enough at this (nu, x).
bool hankel(double nu, double x, double& value)
{
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0, term = 1.0, last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        if (term == 0.0) break;
        if (std::abs(term) > std::abs(last) && k > 2) return false;
        last = term;
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        default: p += term; break;
        }
        if (std::abs(term) < 1e-17) break;
    }
    if (std::abs(last) > 1e-15) return false;
    const double chi = x - (0.5 * nu + 0.25) * pi;
    value = std::sqrt(2.0 / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    return true;
}

// Temme's series (x < 2) or Steed's method (x >= 2) for J_mu, |mu| <= 1/2,
// combined with the CF1 ratio and downward recurrence to reach order nu.
BesselValue steed(double nu, double x)
{
    constexpr double xmin = 2.0;
    const int nl = (x < xmin) ? static_cast<int>(nu + 0.5)
                              : std::max(0, static_cast<int>(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    // CF1: J'_nu / J_nu.
    int isign = 1;
    double h = std::max(nu * xi, fpmin);
    double b = xi2 * nu, d = 0.0, c = h;
    int i = 0;
    for (; i < max_iterations; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b - 1.0 / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < eps) break;
    }
    if (i >= max_iterations)
        throw ConvergenceError("bessel_j: continued fraction CF1 did not converge");

    double rjl = isign * fpmin;
    double rjpl = h * rjl;
    double rjl1 = rjl, rjp1 = rjpl;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::abs(rjl) > 1e250) {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            rjl1 *= 1e-250;
            rjp1 *= 1e-250;
        }
    }
    if (rjl == 0.0) rjl = eps;
    const double f = rjpl / rjl;

    double rjmu;
    if (x < xmin) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        const double fact1 = (std::abs(pimu) < eps) ? 1.0 : pimu / std::sin(pimu);
        const double dd = -std::log(x2);
        double e = xmu * dd;
        const double fact2 = (std::abs(e) < eps) ? 1.0 : std::sinh(e) / e;
        const auto g = temme_gammas(xmu);
        double ff = 2.0 / pi * fact1 * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
        e = std::exp(e);
        double p = e / (g.gampl * pi);
        double q = 1.0 / (e * pi * g.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = (std::abs(pimu2) < eps) ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = pi * pimu2 * fact3 * fact3;
        double cc = 1.0;
        const double dq = -x2 * x2;
        double sum = ff + r * q, sum1 = p;
        int k = 1;
        for (; k < max_iterations; ++k) {
            ff = (k * ff + p + q) / (k * k - xmu2);
            cc *= dq / k;
            p /= (k - xmu);
            q /= (k + xmu);
            const double del = cc * (ff + r * q);
            sum += del;
            const double del1 = cc * p - k * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * eps) break;
        }
        if (k >= max_iterations)
            throw ConvergenceError("bessel_j: Temme series did not converge");
        const double rymu = -sum;
        const double ry1 = -sum1 * xi2;
        const double rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        double a = 0.25 - xmu2;
        double p = -0.5 * xi, q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct, ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int k = 1;
        for (; k < max_iterations; ++k) {
            a += 2 * k;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < fpmin) dr = fpmin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < fpmin) cr = fpmin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < eps) break;
        }
        if (k >= max_iterations)
            throw ConvergenceError("bessel_j: continued fraction CF2 did not converge");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
    }
    const double scale = rjmu / rjl;
    return {rjl1 * scale, rjp1 * scale};
}

double hankel_threshold(double nu) { return std::max(25.0, 0.5 * nu * nu + 25.0); }

struct Bracket {
    double lo, hi;
};

// Safeguarded Newton on J_nu inside a sign-change bracket.
double refine_zero(double nu, Bracket br)
{
    double flo = bessel_j(nu, br.lo);
    const double fhi = bessel_j(nu, br.hi);
    if (flo == 0.0) return br.lo;
    if (fhi == 0.0) return br.hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw ConvergenceError("bessel_zero: bracket does not contain a sign change");
    double x = 0.5 * (br.lo + br.hi);
    for (int it = 0; it < 200; ++it) {
        const auto jv = bessel_j_with_derivative(nu, x);
        if (jv.value == 0.0) return x;
        if ((jv.value > 0.0) == (flo > 0.0)) {
            br.lo = x;
            flo = jv.value;
        } else {
            br.hi = x;
        }
        double next = x - jv.value / jv.derivative;
        if (!(next > br.lo && next < br.hi)) next = 0.5 * (br.lo + br.hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * x ||
            br.hi - br.lo <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
            const auto check = bessel_j_with_derivative(nu, x);
            if (std::abs(check.value) > 1e-10 * std::max(1.0, std::abs(check.derivative)))
                break;
            return x;
        }
    }
    std::ostringstream msg;
    msg << "bessel_zero: Newton refinement failed for nu=" << nu << " near x=" << x;
    throw ConvergenceError(msg.str());
}

// McMahon guesses are trusted (bracket of half-width pi/2) once l > 2 nu + 5.
bool mcmahon_regime(double nu, int l) { return l > 2.0 * nu + 5.0; }

// First `count` zeros found by scanning sign changes upward from nu.
std::vector<double> scan_zeros(double nu, int count)
{
    std::vector<double> zeros;
    zeros.reserve(count);
    constexpr double step = 0.5;
    double x = nu > 0.0 ? nu : step;
    double fx = bessel_j(nu, x);
    while (static_cast<int>(zeros.size()) < count) {
        const double next = x + step;
        const double fn = bessel_j(nu, next);
        if (fx == 0.0 && x > 0.0) {
            zeros.push_back(x);
        } else if ((fx > 0.0) != (fn > 0.0) && fn != 0.0) {
            zeros.push_back(refine_zero(nu, {x, next}));
        }
        x = next;
        fx = fn;
        if (x > 1e7) throw ConvergenceError("bessel_zero: scan ran past search range");
    }
    return zeros;
}

double mcmahon_refined(double nu, int l)
{
    const double guess = mcmahon_zero(nu, l);
    const Bracket br{guess - 0.5 * pi, guess + 0.5 * pi};
    return refine_zero(nu, br);
}

} // namespace

BesselValue bessel_j_with_derivative(double nu, double x)
{
    check_order(nu, "bessel_j");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("bessel_j: argument must be finite and non-negative");
    if (x == 0.0) {
        const double value = nu == 0.0 ? 1.0 : 0.0;
        double derivative = 0.0;
        if (nu == 1.0) derivative = 0.5;
        else if (nu > 0.0 && nu < 1.0) derivative = std::numeric_limits<double>::infinity();
        return {value, derivative};
    }
    if (x * x <= 4.0 * (nu + 1.0)) return series(nu, x);
    if (x >= hankel_threshold(nu)) {
        double j0 = 0.0, j1 = 0.0;
        if (hankel(nu, x, j0) && hankel(nu + 1.0, x, j1))
            return {j0, nu / x * j0 - j1};
    }
    return steed(nu, x);
}

double bessel_j(double nu, double x) { return bessel_j_with_derivative(nu, x).value; }

double mcmahon_zero(double nu, int l)
{
    const double beta = (l + 0.5 * nu - 0.25) * pi;
    const double mu = 4.0 * nu * nu;
    const double b8 = 8.0 * beta;
    const double b8_3 = b8 * b8 * b8;
    return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8_3) -
           32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8_3 * b8 * b8);
}

double bessel_zero(double nu, int l)
{
    check_order(nu, "bessel_zero");
    if (l < 1) throw DomainError("bessel_zero: zero index must be >= 1");
    if (nu == 0.5) return l * pi;
    if (mcmahon_regime(nu, l)) return mcmahon_refined(nu, l);
    return scan_zeros(nu, l).back();
}

BesselZeroTable::BesselZeroTable(double nu, std::size_t count) : nu_(nu)
{
    check_order(nu, "BesselZeroTable");
    if (count == 0) throw DomainError("BesselZeroTable: count must be positive");
    zeros_.reserve(count);
    if (nu == 0.5) {
        for (std::size_t l = 1; l <= count; ++l) zeros_.push_back(l * pi);
        return;
    }
    const int n_scan = static_cast<int>(std::min<double>(count, std::floor(2.0 * nu + 5.0)));
    if (n_scan > 0) zeros_ = scan_zeros(nu, n_scan);
    for (std::size_t l = zeros_.size() + 1; l <= count; ++l)
        zeros_.push_back(mcmahon_refined(nu, static_cast<int>(l)));
    for (std::size_t i = 1; i < zeros_.size(); ++i)
        if (!(zeros_[i] > zeros_[i - 1]))
            throw ConvergenceError("BesselZeroTable: zeros not strictly increasing");
}

BesselZeroTable BesselZeroTable::from_values(double nu, std::vector<double> zeros)
{
    check_order(nu, "BesselZeroTable");
    if (zeros.empty()) throw DomainError("BesselZeroTable: empty zero list");
    if (!(zeros.front() > 0.0)) throw DomainError("BesselZeroTable: zeros must be positive");
    for (std::size_t i = 1; i < zeros.size(); ++i)
        if (!(zeros[i] > zeros[i - 1]))
            throw DomainError("BesselZeroTable: zeros must be strictly increasing");
    BesselZeroTable table;
    table.nu_ = nu;
    table.zeros_ = std::move(zeros);
    return table;
}

double hurwitz_zeta(double s, double a)
{
    if (s == 1.0) throw DomainError("hurwitz_zeta: pole at s = 1");
    if (!(a > 0.0)) throw DomainError("hurwitz_zeta: shift a must be positive");

    // B_{2k} / (2k)!
    static constexpr double bernoulli_over_factorial[] = {
        8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,
        -8.26719576719576754e-07, 2.08767569878681002e-08,  -5.28419013868749322e-10,
        1.33825365306846789e-11,  -3.38968029632258272e-13, 8.58606205627784517e-15,
        -2.17486869855806192e-16, 5.50900282836022953e-18,  -1.39544646858125223e-19,
    };
    const int shift = std::max(0, static_cast<int>(std::ceil(30.0 - a)));
    double sum = 0.0;
    for (int n = shift - 1; n >= 0; --n) sum += std::pow(n + a, -s);
    const double w = shift + a;
    sum += std::pow(w, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(w, -s);
    double poch = s;
    double wpow = std::pow(w, -s - 1.0);
    const double inv_w2 = 1.0 / (w * w);
    for (int k = 1; k <= 12; ++k) {
        sum += bernoulli_over_factorial[k - 1] * poch * wpow;
        poch *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        wpow *= inv_w2;
    }
    return sum;
}

} // namespace diskdet::specfun
