#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "diskdet/errors.hpp"

namespace diskdet::symbols {

template <class Scalar>
using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Euclidean gamma matrices, {g_a, g_b} = 2 delta_ab.
///   dim 2: g_0 = sigma_1, g_1 = sigma_2.
///   dim 4: g_j = [[0, sigma_j], [sigma_j, 0]] (j = 1..3), g_4 = i [[0, I], [-I, 0]].
template <class Scalar = double>
std::vector<Matrix<Scalar>> gamma_matrices(int dim)
{
    using C = std::complex<Scalar>;
    const C i(0, 1);
    Matrix<Scalar> s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << C(0), C(1), C(1), C(0);
    s2 << C(0), -i, i, C(0);
    s3 << C(1), C(0), C(0), C(-1);
    if (dim == 2) return {s1, s2};
    if (dim != 4) throw DomainError("gamma_matrices: dimension must be 2 or 4");

    std::vector<Matrix<Scalar>> g;
    for (const auto* s : {&s1, &s2, &s3}) {
        Matrix<Scalar> m = Matrix<Scalar>::Zero(4, 4);
        m.topRightCorner(2, 2) = *s;
        m.bottomLeftCorner(2, 2) = *s;
        g.push_back(m);
    }
    Matrix<Scalar> g4 = Matrix<Scalar>::Zero(4, 4);
    g4.topRightCorner(2, 2) = i * Matrix<Scalar>::Identity(2, 2);
    g4.bottomLeftCorner(2, 2) = -i * Matrix<Scalar>::Identity(2, 2);
    g.push_back(g4);
    return g;
}

/// v_a g_a.
template <class Scalar>
Matrix<Scalar> slash(const std::vector<Matrix<Scalar>>& gammas, const Vector<Scalar>& v)
{
    if (static_cast<std::size_t>(v.size()) != gammas.size())
        throw DomainError("slash: vector length does not match the gamma matrices");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(gammas[0].rows(), gammas[0].cols());
    for (Eigen::Index a = 0; a < v.size(); ++a) out += std::complex<Scalar>(v(a)) * gammas[a];
    return out;
}

template <class Scalar = double>
struct SymbolMatrix {
    int dim;
    Matrix<Scalar> entries;
    Vector<Scalar> xi;
    Vector<Scalar> normal;
};

/// q(x; xi) = (1/2)(Id + i xislash nslash / |xi|), principal symbol of the
/// Calderon projector. xi and n must be unit vectors with xi . n = 0.
template <class Scalar = double>
SymbolMatrix<Scalar> calderon_symbol(int dim, const Vector<Scalar>& xi, const Vector<Scalar>& n,
                                     Scalar tol = Scalar(1e-10))
{
    if (dim != 2 && dim != 4) throw DomainError("calderon_symbol: dimension must be 2 or 4");
    if (xi.size() != dim || n.size() != dim) throw DomainError("calderon_symbol: xi and n need dim components");
    using std::abs;
    if (abs(xi.norm() - Scalar(1)) > tol) throw DomainError("calderon_symbol: xi must be a unit vector");
    if (abs(n.norm() - Scalar(1)) > tol) throw DomainError("calderon_symbol: n must be a unit vector");
    if (abs(xi.dot(n)) > tol) throw DomainError("calderon_symbol: xi must be orthogonal to n");

    const auto g = gamma_matrices<Scalar>(dim);
    const std::complex<Scalar> i(0, 1);
    const Eigen::Index size = g[0].rows();
    Matrix<Scalar> q = (Matrix<Scalar>::Identity(size, size) + i * slash(g, xi) * slash(g, n)) *
                       std::complex<Scalar>(Scalar(0.5));
    return {dim, q, xi, n};
}

template <class Scalar>
Scalar heaviside(Scalar x)
{
    return x > Scalar(0) ? Scalar(1) : Scalar(0);
}

/// 2-D full operator, normal e_0, boundary frequency xi along e_1:
/// diag(H(xi), H(-xi)). xi = 0 is rejected.
template <class Scalar = double>
Matrix<Scalar> calderon_symbol_2d(Scalar xi)
{
    if (xi == Scalar(0)) throw DomainError("calderon_symbol_2d: xi must be nonzero");
    Vector<Scalar> e(2), n(2);
    e << Scalar(0), xi > Scalar(0) ? Scalar(1) : Scalar(-1);
    n << Scalar(1), Scalar(0);
    return calderon_symbol<Scalar>(2, e, n).entries;
}

/// 2-D chiral operator: the upper block of calderon_symbol_2d, H(xi) (1x1).
template <class Scalar = double>
Matrix<Scalar> chiral_symbol_2d(Scalar xi)
{
    if (xi == Scalar(0)) throw DomainError("chiral_symbol_2d: xi must be nonzero");
    Matrix<Scalar> q(1, 1);
    q(0, 0) = heaviside(xi);
    return q;
}

/// The APS boundary operator symbol b = (H(xi), H(-xi)).
template <class Scalar = double>
Matrix<Scalar> aps_symbol_2d(Scalar xi)
{
    Matrix<Scalar> b(1, 2);
    b << heaviside(xi), heaviside(-xi);
    return b;
}

/// 4-D full operator with normal e_4; xi in R^3 unit:
/// diag((1/2)(I + xi.sigma), (1/2)(I - xi.sigma)).
template <class Scalar = double>
Matrix<Scalar> calderon_symbol_4d(const Vector<Scalar>& xi)
{
    if (xi.size() != 3) throw DomainError("calderon_symbol_4d: xi must have 3 components");
    Vector<Scalar> e(4), n(4);
    e << xi(0), xi(1), xi(2), Scalar(0);
    n << Scalar(0), Scalar(0), Scalar(0), Scalar(1);
    return calderon_symbol<Scalar>(4, e, n).entries;
}

/// 4-D chiral block (1/2)(I + xi.sigma), rank 1 for every unit xi.
template <class Scalar = double>
Matrix<Scalar> chiral_symbol_4d(const Vector<Scalar>& xi)
{
    return calderon_symbol_4d<Scalar>(xi).topLeftCorner(2, 2);
}

/// Rank from singular values above rel_threshold * max(sigma_max, scale).
/// For a product b q pass scale = |b| |q| so that a product that vanishes up to
/// rounding has rank 0.
template <class Scalar>
int numeric_rank(const Matrix<Scalar>& m, Scalar rel_threshold = Scalar(1e-8), Scalar scale = Scalar(0))
{
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix<Scalar>> svd(m);
    const auto& s = svd.singularValues();
    const Scalar cut = rel_threshold * std::max(s(0), scale);
    if (cut == Scalar(0)) return 0;
    int rank = 0;
    for (Eigen::Index j = 0; j < s.size(); ++j)
        if (s(j) > cut) ++rank;
    return rank;
}

/// b(x; xi): r x k matrix on the boundary cosphere.
template <class Scalar = double>
struct BoundaryOperatorSymbol {
    int rows;
    std::function<Matrix<Scalar>(const Vector<Scalar>&)> entries;
    bool local;  ///< entries independent of xi

    static BoundaryOperatorSymbol constant(const Matrix<Scalar>& b)
    {
        return {static_cast<int>(b.rows()), [b](const Vector<Scalar>&) { return b; }, true};
    }
};

template <class Scalar = double>
using SymbolSampler = std::function<Matrix<Scalar>(const Vector<Scalar>&)>;

enum class Ellipticity { elliptic, not_elliptic, nonconstant_rank };

inline std::string to_string(Ellipticity e)
{
    switch (e) {
    case Ellipticity::elliptic: return "elliptic";
    case Ellipticity::not_elliptic: return "not_elliptic";
    default: return "nonconstant_rank";
    }
}

template <class Scalar = double>
struct EllipticityResult {
    Ellipticity outcome;
    std::optional<Vector<Scalar>> witness;
    int rank_q;     ///< rank of q at the first sample
    int samples;    ///< cotangent vectors examined
};

/// n points spread over the unit 2-sphere.
template <class Scalar = double>
std::vector<Vector<Scalar>> fibonacci_sphere(int n)
{
    std::vector<Vector<Scalar>> out;
    const Scalar golden = std::numbers::pi_v<Scalar> * (Scalar(3) - std::sqrt(Scalar(5)));
    for (int j = 0; j < n; ++j) {
        const Scalar z = Scalar(1) - Scalar(2) * (j + Scalar(0.5)) / n;
        const Scalar rho = std::sqrt(Scalar(1) - z * z);
        Vector<Scalar> v(3);
        v << rho * std::cos(golden * j), rho * std::sin(golden * j), z;
        out.push_back(v);
    }
    return out;
}

/// Bloch vector v^dagger sigma v / |v|^2 of a two-component vector, the unique
/// unit xi for which (1/2)(I + xi.sigma) projects onto v.
template <class Scalar>
Vector<Scalar> bloch_vector(const Eigen::Matrix<std::complex<Scalar>, 2, 1>& v)
{
    const Scalar norm2 = v.squaredNorm();
    const auto c = std::conj(v(0)) * v(1);
    Vector<Scalar> xi(3);
    xi << Scalar(2) * c.real() / norm2, Scalar(2) * c.imag() / norm2,
        (std::norm(v(0)) - std::norm(v(1))) / norm2;
    return xi;
}

/// xi = (-2 b1 b2, 0, b2^2 - b1^2) / (b1^2 + b2^2): with b = (b1, b2) and the
/// 4-D chiral symbol, rank(b q_ch(xi)) = 0.
template <class Scalar = double>
Vector<Scalar> chiral_obstruction_witness(Scalar beta1, Scalar beta2)
{
    const Scalar d = beta1 * beta1 + beta2 * beta2;
    if (!(d > Scalar(0))) throw DomainError("chiral_obstruction_witness: beta1 and beta2 both vanish");
    Vector<Scalar> xi(3);
    xi << Scalar(-2) * beta1 * beta2 / d, Scalar(0), (beta2 * beta2 - beta1 * beta1) / d;
    return xi;
}

/// Cotangent samples for a boundary of dimension `cotangent_dim` (1 or 3).
/// In 3 dimensions: Fibonacci grid, coordinate axes, and for a local 1x2 b
/// the Bloch vectors of its kernel.
template <class Scalar = double>
std::vector<Vector<Scalar>> cosphere_samples(int cotangent_dim, int samples,
                                             const BoundaryOperatorSymbol<Scalar>* b = nullptr)
{
    std::vector<Vector<Scalar>> out;
    if (cotangent_dim == 1) {
        Vector<Scalar> v(1);
        v << Scalar(1);
        out.push_back(v);
        out.push_back(-v);
        return out;
    }
    if (cotangent_dim != 3) throw DomainError("cosphere_samples: cotangent dimension must be 1 or 3");
    out = fibonacci_sphere<Scalar>(samples);
    for (int a = 0; a < 3; ++a) {
        Vector<Scalar> e = Vector<Scalar>::Zero(3);
        e(a) = Scalar(1);
        out.push_back(e);
        out.push_back(-e);
    }
    if (b && b->local) {
        const Matrix<Scalar> m = b->entries(out.front());
        if (m.cols() == 2) {
            Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeFullV);
            const int rank = numeric_rank<Scalar>(m);
            for (int j = rank; j < 2; ++j) {
                const Eigen::Matrix<std::complex<Scalar>, 2, 1> v = svd.matrixV().col(j);
                out.push_back(bloch_vector<Scalar>(v));
                out.push_back(-bloch_vector<Scalar>(v));
            }
        }
    }
    return out;
}

/// Definition-1 test: rank(b q) = rank(q) at every sampled xi. A rank of q
/// that changes across the samples is reported as nonconstant_rank; a failing
/// xi is returned as the witness.
template <class Scalar = double>
EllipticityResult<Scalar> ellipticity_test(const BoundaryOperatorSymbol<Scalar>& b,
                                           const SymbolSampler<Scalar>& q, int cotangent_dim,
                                           int samples = 2000)
{
    const auto points = cosphere_samples<Scalar>(cotangent_dim, samples, &b);
    EllipticityResult<Scalar> result{Ellipticity::elliptic, std::nullopt, -1, 0};
    for (const auto& xi : points) {
        const Matrix<Scalar> qm = q(xi);
        const int rank_q = numeric_rank<Scalar>(qm);
        if (result.rank_q < 0) result.rank_q = rank_q;
        ++result.samples;
        if (rank_q != result.rank_q) return {Ellipticity::nonconstant_rank, xi, result.rank_q, result.samples};
        const Matrix<Scalar> bm = b.entries(xi);
        if (bm.cols() != qm.rows()) throw DomainError("ellipticity_test: b and q sizes do not match");
        const Scalar scale = bm.norm() * qm.norm();
        if (numeric_rank<Scalar>(Matrix<Scalar>(bm * qm), Scalar(1e-8), scale) != rank_q) {
            result.outcome = Ellipticity::not_elliptic;
            result.witness = xi;
            return result;
        }
    }
    return result;
}

} // namespace diskdet::symbols
