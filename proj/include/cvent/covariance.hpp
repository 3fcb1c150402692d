#pragma once

// Single- and two-mode Gaussian covariance matrices.
//
// The public representation is the complex-amplitude one: for a mode with
// characteristic-function variables x = (alpha, alpha*)^T the covariance is
//
//     V1 = [[a, b], [b*, a]],   chi(alpha) = exp(-x^dag V1 x / 2),
//
// with vacuum a = 1/2, b = 0, and b = -<(da)^2>. Two-mode matrices use the
// ordering (alpha1, alpha1*, alpha2, alpha2*). The quadrature twin is the real
// covariance of R = (x1, p1, x2, p2) with [x, p] = i and vacuum (1/2) I.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "cvent/errors.hpp"

namespace cvent {

/// Matrices within this distance of the physical boundary are accepted.
template <typename Scalar>
inline constexpr Scalar kPhysicalityTol = Scalar(1e-9);

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

/// Real quadrature covariance, one mode.
template <typename Scalar>
using QuadCov1M = Eigen::Matrix<Scalar, 2, 2>;
/// Real quadrature covariance, two modes.
template <typename Scalar>
using QuadCov2M = Eigen::Matrix<Scalar, 4, 4>;

namespace detail {

template <typename Scalar>
[[noreturn]] void domain_fail(const std::string& op, const std::string& what, Scalar value) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": " << what << " (got " << value << ")";
    throw DomainError(os.str());
}

}  // namespace detail

/// Symplectic form sigma with [R_i, R_j] = i sigma_ij for R = (x1, p1, ..., xn, pn).
template <typename Scalar, int Modes>
Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> symplectic_form() {
    Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> sigma;
    sigma.setZero();
    for (int k = 0; k < Modes; ++k) {
        sigma(2 * k, 2 * k + 1) = Scalar(1);
        sigma(2 * k + 1, 2 * k) = Scalar(-1);
    }
    return sigma;
}

/// Unitary Q with V_quad = Q^dag V_complex Q, block-diagonal over modes.
template <typename Scalar, int Modes>
Eigen::Matrix<std::complex<Scalar>, 2 * Modes, 2 * Modes> amplitude_to_quadrature_basis() {
    using C = std::complex<Scalar>;
    const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
    // alpha = (s1 + i s2)/sqrt(2) with s = (-p, x).
    Matrix2c<Scalar> q;
    q << C(0, h), C(-h, 0),
         C(0, -h), C(-h, 0);
    Eigen::Matrix<C, 2 * Modes, 2 * Modes> out;
    out.setZero();
    for (int k = 0; k < Modes; ++k) out.template block<2, 2>(2 * k, 2 * k) = q;
    return out;
}

/// Smallest eigenvalue of V_quad + (i/2) sigma; nonnegative iff the covariance is physical.
template <typename Scalar, int N>
Scalar uncertainty_margin(const Eigen::Matrix<Scalar, N, N>& quad) {
    using C = std::complex<Scalar>;
    constexpr int modes = N / 2;
    Eigen::Matrix<C, N, N> h = quad.template cast<C>() +
                               C(0, Scalar(0.5)) * symplectic_form<Scalar, modes>().template cast<C>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<C, N, N>> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// A single-mode Gaussian state in (nonclassical depth, purity, squeezing phase) form.
template <typename Scalar = double>
struct GaussianSpec1M {
    Scalar tau{0};
    Scalar u{1};
    Scalar phi_b{0};
};

template <typename Scalar>
void validate(const GaussianSpec1M<Scalar>& spec, const std::string& op = "GaussianSpec1M") {
    if (!(spec.tau >= Scalar(0))) detail::domain_fail(op, "tau must satisfy tau >= 0", spec.tau);
    if (!(spec.tau < Scalar(0.5))) detail::domain_fail(op, "tau must satisfy tau < 1/2", spec.tau);
    if (!(spec.u > Scalar(0))) detail::domain_fail(op, "u must satisfy u > 0", spec.u);
    if (!(spec.u <= Scalar(1))) detail::domain_fail(op, "u must satisfy u <= 1", spec.u);
    if (!std::isfinite(spec.phi_b)) detail::domain_fail(op, "phi_b must be finite", spec.phi_b);
}

/// One-mode covariance [[a, b], [b*, a]].
template <typename Scalar = double>
class CovMat1M {
public:
    using Complex = std::complex<Scalar>;

    CovMat1M() : a_(Scalar(0.5)), b_(0) {}

    /// Validates physicality; states within kPhysicalityTol of det = 1/4 are clamped onto it.
    CovMat1M(Scalar a, Complex b) : a_(a), b_(b) {
        if (!std::isfinite(a) || !std::isfinite(b.real()) || !std::isfinite(b.imag()))
            detail::domain_fail("CovMat1M", "entries must be finite", a);
        if (!(a > Scalar(0))) detail::domain_fail("CovMat1M", "a must be positive", a);
        const Scalar det = a * a - std::norm(b);
        if (det < Scalar(0.25) - kPhysicalityTol<Scalar>)
            detail::domain_fail("CovMat1M", "uncertainty bound a^2 - |b|^2 >= 1/4 violated; det", det);
        if (det < Scalar(0.25)) a_ = std::sqrt(Scalar(0.25) + std::norm(b));
    }

    Scalar a() const { return a_; }
    Complex b() const { return b_; }
    Scalar determinant() const { return a_ * a_ - std::norm(b_); }

    Matrix2c<Scalar> matrix() const {
        Matrix2c<Scalar> m;
        m << Complex(a_), b_, std::conj(b_), Complex(a_);
        return m;
    }

    static CovMat1M vacuum() { return {}; }

private:
    Scalar a_;
    Complex b_;
};

/// Two-mode covariance [[A, C], [C^dag, B]] in complex-amplitude ordering.
template <typename Scalar = double>
class CovMat2M {
public:
    using Complex = std::complex<Scalar>;

    CovMat2M() : m_(Matrix4c<Scalar>::Identity() * Complex(Scalar(0.5))) {}

    /// Validates Hermiticity, the real-quadrature structure, and the uncertainty bound.
    explicit CovMat2M(const Matrix4c<Scalar>& m) : m_(m) {
        const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
        const Scalar herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (!(herm <= Scalar(1e-12) * scale))
            detail::domain_fail("CovMat2M", "matrix is not Hermitian; max deviation", herm);
        const auto q = amplitude_to_quadrature_basis<Scalar, 2>();
        const Matrix4c<Scalar> quad = q.adjoint() * m * q;
        const Scalar imag = quad.imag().cwiseAbs().maxCoeff();
        if (!(imag <= Scalar(1e-12) * scale))
            detail::domain_fail("CovMat2M", "matrix lacks (alpha, alpha*) structure; imaginary quadrature part", imag);
        m_ = Scalar(0.5) * (m + m.adjoint()).eval();
        const Scalar margin = uncertainty_margin<Scalar, 4>(quadrature());
        if (margin < -kPhysicalityTol<Scalar>)
            detail::domain_fail("CovMat2M", "uncertainty bound V + i sigma/2 >= 0 violated; min eigenvalue", margin);
    }

    const Matrix4c<Scalar>& matrix() const { return m_; }
    Matrix2c<Scalar> blockA() const { return m_.template block<2, 2>(0, 0); }
    Matrix2c<Scalar> blockB() const { return m_.template block<2, 2>(2, 2); }
    Matrix2c<Scalar> blockC() const { return m_.template block<2, 2>(0, 2); }

    /// det V; real for a Hermitian matrix.
    Scalar determinant() const { return m_.determinant().real(); }

    QuadCov2M<Scalar> quadrature() const {
        const auto q = amplitude_to_quadrature_basis<Scalar, 2>();
        const Matrix4c<Scalar> quad = q.adjoint() * m_ * q;
        QuadCov2M<Scalar> r = quad.real();
        return Scalar(0.5) * (r + r.transpose());
    }

    static CovMat2M vacuum() { return {}; }

private:
    Matrix4c<Scalar> m_;
};

template <typename Scalar = double>
struct ThermalParams {
    Scalar nbar{0};
};

/// V1 for the state of nonclassical depth tau, purity u, and squeezing phase phi_b.
template <typename Scalar>
CovMat1M<Scalar> covariance_from_spec(const GaussianSpec1M<Scalar>& spec) {
    validate(spec, "covariance_from_spec");
    const Scalar q = Scalar(1) - Scalar(2) * spec.tau;
    const Scalar big = Scalar(1) / (Scalar(4) * spec.u * spec.u * q);
    const Scalar small = q / Scalar(4);
    return {big + small, std::polar(big - small, spec.phi_b)};
}

/// tau = max{0, -a + |b| + 1/2}.
template <typename Scalar>
Scalar nonclassical_depth(const CovMat1M<Scalar>& v) {
    return std::max(Scalar(0), -v.a() + std::abs(v.b()) + Scalar(0.5));
}

/// u = 1 / (2 sqrt(det V1)).
template <typename Scalar>
Scalar purity(const CovMat1M<Scalar>& v) {
    const Scalar det = v.determinant();
    if (!(det > Scalar(0))) detail::domain_fail("purity", "determinant must be positive", det);
    return std::min(Scalar(1), Scalar(1) / (Scalar(2) * std::sqrt(det)));
}

template <typename Scalar>
CovMat1M<Scalar> thermal_covariance(const ThermalParams<Scalar>& t) {
    if (!(t.nbar >= Scalar(0))) detail::domain_fail("thermal_covariance", "nbar must be >= 0", t.nbar);
    return {t.nbar + Scalar(0.5), std::complex<Scalar>(0)};
}

inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s
inline constexpr double kBoltzmann = 1.380649e-23;         // J / K

/// Bose-Einstein occupation at temperature [K] and angular frequency [rad/s].
template <typename Scalar = double>
ThermalParams<Scalar> thermal_occupation(Scalar temperature, Scalar frequency) {
    if (!(temperature >= Scalar(0)))
        detail::domain_fail("thermal_occupation", "temperature must be >= 0", temperature);
    if (!(frequency > Scalar(0)))
        detail::domain_fail("thermal_occupation", "frequency must be > 0", frequency);
    if (temperature == Scalar(0)) return {Scalar(0)};
    const Scalar x = Scalar(kReducedPlanck) * frequency / (Scalar(kBoltzmann) * temperature);
    return {Scalar(1) / std::expm1(x)};
}

template <typename Scalar>
QuadCov1M<Scalar> to_quadrature(const CovMat1M<Scalar>& v) {
    QuadCov1M<Scalar> r;
    const Scalar re = v.b().real();
    const Scalar im = v.b().imag();
    r << v.a() - re, -im,
         -im, v.a() + re;
    return r;
}

template <typename Scalar>
QuadCov2M<Scalar> to_quadrature(const CovMat2M<Scalar>& v) {
    return v.quadrature();
}

template <typename Scalar>
CovMat1M<Scalar> from_quadrature(const QuadCov1M<Scalar>& r) {
    if (std::abs(r(0, 1) - r(1, 0)) > Scalar(1e-12) * std::max(Scalar(1), r.cwiseAbs().maxCoeff()))
        detail::domain_fail("from_quadrature", "matrix must be symmetric; asymmetry", r(0, 1) - r(1, 0));
    const Scalar xp = Scalar(0.5) * (r(0, 1) + r(1, 0));
    return {Scalar(0.5) * (r(0, 0) + r(1, 1)),
            std::complex<Scalar>(Scalar(0.5) * (r(1, 1) - r(0, 0)), -xp)};
}

template <typename Scalar>
CovMat2M<Scalar> from_quadrature(const QuadCov2M<Scalar>& r) {
    const Scalar asym = (r - r.transpose()).cwiseAbs().maxCoeff();
    if (asym > Scalar(1e-12) * std::max(Scalar(1), r.cwiseAbs().maxCoeff()))
        detail::domain_fail("from_quadrature", "matrix must be symmetric; asymmetry", asym);
    using C = std::complex<Scalar>;
    const auto q = amplitude_to_quadrature_basis<Scalar, 2>();
    const QuadCov2M<Scalar> sym = Scalar(0.5) * (r + r.transpose());
    Matrix4c<Scalar> m = q * sym.template cast<C>() * q.adjoint();
    return CovMat2M<Scalar>(m);
}

/// V1 (+) V2 for uncorrelated inputs.
template <typename Scalar>
CovMat2M<Scalar> direct_sum(const CovMat1M<Scalar>& v1, const CovMat1M<Scalar>& v2) {
    Matrix4c<Scalar> m;
    m.setZero();
    m.template block<2, 2>(0, 0) = v1.matrix();
    m.template block<2, 2>(2, 2) = v2.matrix();
    return CovMat2M<Scalar>(m);
}

/// Ordinary (non-transposed) symplectic eigenvalues of a quadrature covariance, ascending.
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N / 2, 1> symplectic_eigenvalues(const Eigen::Matrix<Scalar, N, N>& quad) {
    using C = std::complex<Scalar>;
    // The spectrum of sqrt(V) (i sigma) sqrt(V) is {+-nu_k}.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, N, N>> es(quad);
    if (es.eigenvalues().minCoeff() <= Scalar(0))
        detail::domain_fail("symplectic_eigenvalues", "covariance must be positive definite; min eigenvalue",
                            es.eigenvalues().minCoeff());
    const Eigen::Matrix<Scalar, N, N> root = es.operatorSqrt();
    const Eigen::Matrix<C, N, N> h =
        root.template cast<C>() * (C(0, 1) * symplectic_form<Scalar, N / 2>().template cast<C>()) *
        root.template cast<C>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<C, N, N>> hs(h, Eigen::EigenvaluesOnly);
    Eigen::Matrix<Scalar, N / 2, 1> nu;
    for (int k = 0; k < N / 2; ++k) nu(k) = hs.eigenvalues()(N / 2 + k);
    return nu;
}

/// det V as the squared product of symplectic eigenvalues; tracks eps * ||V|| rather than eps * cond(V).
template <typename Scalar, int N>
Scalar symplectic_determinant(const Eigen::Matrix<Scalar, N, N>& quad) {
    const auto nu = symplectic_eigenvalues<Scalar, N>(quad);
    Scalar d(1);
    for (int k = 0; k < N / 2; ++k) d *= nu(k) * nu(k);
    return d;
}

}  // namespace cvent
