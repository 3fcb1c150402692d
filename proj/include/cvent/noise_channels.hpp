#pragma once

// Single-mode Gaussian noise at covariance level.
//
// A Gaussian channel (X, Y) maps a quadrature covariance V to X V X^T + Y and
// is completely positive iff Y + (i/2)(sigma - X sigma X^T) >= 0.
//
// The preparation channel builds a state of depth tau and purity u from the
// vacuum by squeezing first (e^{-2r} = 1 - 2 tau along the state's narrow
// axis) and then adding classical noise only along the wide axis. Feeding a
// thermal state instead of the vacuum scales the narrow-axis variance to
// (2 nbar + 1)(1 - 2 tau)/2, which reaches 1/2 at nbar = tau/(1 - 2 tau) for
// every u. Adding the noise before squeezing instead gives a u-dependent
// threshold tau/(u (1 - 2 tau)), so that ordering is not used.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "cvent/covariance.hpp"

namespace cvent {

/// Isotropic additive noise V -> V + sigma I.
template <typename Scalar = double>
struct GaussianNoiseParams {
    Scalar sigma{0};
};

template <typename Scalar = double>
struct GaussianChannel1M {
    QuadCov1M<Scalar> x = QuadCov1M<Scalar>::Identity();
    QuadCov1M<Scalar> y = QuadCov1M<Scalar>::Zero();
};

template <typename Scalar>
QuadCov1M<Scalar> apply_channel(const GaussianChannel1M<Scalar>& ch, const QuadCov1M<Scalar>& v) {
    const QuadCov1M<Scalar> out = ch.x * v * ch.x.transpose() + ch.y;
    return Scalar(0.5) * (out + out.transpose());
}

template <typename Scalar>
CovMat1M<Scalar> apply_channel(const GaussianChannel1M<Scalar>& ch, const CovMat1M<Scalar>& v) {
    return from_quadrature(apply_channel(ch, to_quadrature(v)));
}

/// Smallest eigenvalue of Y + (i/2)(sigma - X sigma X^T).
template <typename Scalar>
Scalar complete_positivity_margin(const GaussianChannel1M<Scalar>& ch) {
    using C = std::complex<Scalar>;
    const QuadCov1M<Scalar> sigma = symplectic_form<Scalar, 1>();
    const Matrix2c<Scalar> m = ch.y.template cast<C>() +
                               C(0, Scalar(0.5)) * (sigma - ch.x * sigma * ch.x.transpose()).template cast<C>();
    Eigen::SelfAdjointEigenSolver<Matrix2c<Scalar>> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// a -> a + sigma, b unchanged.
template <typename Scalar>
CovMat1M<Scalar> add_gaussian_noise(const CovMat1M<Scalar>& v, const GaussianNoiseParams<Scalar>& g) {
    if (!(g.sigma >= Scalar(0)) || !std::isfinite(g.sigma))
        detail::domain_fail("add_gaussian_noise", "sigma must be finite and >= 0", g.sigma);
    return {v.a() + g.sigma, v.b()};
}

/// Vacuum-to-target channel: squeeze along the narrow axis, then add noise along the wide axis.
template <typename Scalar>
GaussianChannel1M<Scalar> preparation_channel(const GaussianSpec1M<Scalar>& spec) {
    validate(spec, "preparation_channel");
    // V_quad = a I - |b| [[cos phi_b, sin phi_b], [sin phi_b, -cos phi_b]].
    const Scalar half = Scalar(0.5) * spec.phi_b;
    const Eigen::Matrix<Scalar, 2, 1> narrow(std::cos(half), std::sin(half));
    const Eigen::Matrix<Scalar, 2, 1> wide(-std::sin(half), std::cos(half));
    QuadCov1M<Scalar> rot;
    rot.col(0) = narrow;
    rot.col(1) = wide;

    const Scalar q = Scalar(1) - Scalar(2) * spec.tau;
    const Scalar wide_var = Scalar(1) / (Scalar(2) * spec.u * spec.u * q);
    const Scalar added = wide_var - Scalar(1) / (Scalar(2) * q);

    GaussianChannel1M<Scalar> ch;
    ch.x = rot * Eigen::Matrix<Scalar, 2, 1>(std::sqrt(q), Scalar(1) / std::sqrt(q)).asDiagonal() *
           rot.transpose();
    ch.y = added * wide * wide.transpose();
    return ch;
}

/// The preparation channel applied to a thermal input of nbar_th photons.
template <typename Scalar>
CovMat1M<Scalar> thermal_substitution(const GaussianSpec1M<Scalar>& spec, Scalar nbar_th) {
    const auto ch = preparation_channel(spec);
    return apply_channel(ch, thermal_covariance(ThermalParams<Scalar>{nbar_th}));
}

/// Thermal occupation at which thermal_substitution turns classical: tau / (1 - 2 tau).
template <typename Scalar>
Scalar classicality_threshold(const GaussianSpec1M<Scalar>& spec) {
    validate(spec, "classicality_threshold");
    return spec.tau / (Scalar(1) - Scalar(2) * spec.tau);
}

}  // namespace cvent
