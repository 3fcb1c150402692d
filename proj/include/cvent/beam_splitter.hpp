#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "cvent/covariance.hpp"

namespace cvent {

/// Lossless beam splitter with transmittance cos^2(theta) and phase difference phi.
template <typename Scalar = double>
struct BeamSplitter {
    Scalar theta{0};
    Scalar phi{0};
};

/// M_B = [[cos t, sin t e^{i phi}], [-sin t e^{-i phi}, cos t]].
template <typename Scalar>
Matrix2c<Scalar> transformation_matrix(const BeamSplitter<Scalar>& bs) {
    using C = std::complex<Scalar>;
    const Scalar c = std::cos(bs.theta);
    const Scalar s = std::sin(bs.theta);
    Matrix2c<Scalar> m;
    m << C(c), s * std::polar(Scalar(1), bs.phi),
         -s * std::polar(Scalar(1), -bs.phi), C(c);
    return m;
}

/// Substitution matrix T on (alpha1, alpha1*, alpha2, alpha2*) induced by alpha = M_B beta;
/// the output covariance is T^dag V_in T.
template <typename Scalar>
Matrix4c<Scalar> amplitude_substitution(const BeamSplitter<Scalar>& bs) {
    const Matrix2c<Scalar> m = transformation_matrix(bs);
    Matrix4c<Scalar> t;
    t.setZero();
    for (int k = 0; k < 2; ++k) {
        for (int j = 0; j < 2; ++j) {
            t(2 * k, 2 * j) = m(k, j);
            t(2 * k + 1, 2 * j + 1) = std::conj(m(k, j));
        }
    }
    return t;
}

/// Real symplectic S acting on quadratures as V_out = S V_in S^T.
template <typename Scalar>
QuadCov2M<Scalar> symplectic_matrix(const BeamSplitter<Scalar>& bs) {
    const auto q = amplitude_to_quadrature_basis<Scalar, 2>();
    const Matrix4c<Scalar> s = q.adjoint() * amplitude_substitution(bs) * q;
    return s.real().transpose();
}

/// Output covariance of two uncorrelated inputs through the beam splitter.
template <typename Scalar>
CovMat2M<Scalar> apply_beam_splitter(const CovMat1M<Scalar>& v1, const CovMat1M<Scalar>& v2,
                                     const BeamSplitter<Scalar>& bs) {
    const QuadCov2M<Scalar> in = to_quadrature(direct_sum(v1, v2));
    const QuadCov2M<Scalar> s = symplectic_matrix(bs);
    const QuadCov2M<Scalar> out = s * in * s.transpose();
    return from_quadrature(QuadCov2M<Scalar>(Scalar(0.5) * (out + out.transpose())));
}

/// Explicit A, B, C blocks for a thermal second input of mean photon number nbar.
template <typename Scalar>
CovMat2M<Scalar> beam_splitter_blocks_thermal(const CovMat1M<Scalar>& v1, Scalar nbar,
                                              const BeamSplitter<Scalar>& bs) {
    using C = std::complex<Scalar>;
    const Scalar c = std::cos(bs.theta);
    const Scalar s = std::sin(bs.theta);
    const Scalar m = nbar + Scalar(0.5);
    const Scalar a = v1.a();
    const C b = v1.b();
    const C e1 = std::polar(Scalar(1), bs.phi);
    const C e2 = std::polar(Scalar(1), Scalar(2) * bs.phi);

    Matrix4c<Scalar> v;
    const Scalar diag_a = a * c * c + m * s * s;
    const Scalar diag_b = a * s * s + m * c * c;
    v(0, 0) = diag_a;
    v(0, 1) = b * c * c;
    v(1, 0) = std::conj(b) * c * c;
    v(1, 1) = diag_a;

    v(2, 2) = diag_b;
    v(2, 3) = b * std::conj(e2) * s * s;
    v(3, 2) = std::conj(b) * e2 * s * s;
    v(3, 3) = diag_b;

    const Scalar sc = s * c;
    v(0, 2) = sc * (a - m) * e1;
    v(0, 3) = sc * b * std::conj(e1);
    v(1, 2) = sc * std::conj(b) * e1;
    v(1, 3) = sc * (a - m) * std::conj(e1);
    v.template block<2, 2>(2, 0) = v.template block<2, 2>(0, 2).adjoint();
    return CovMat2M<Scalar>(v);
}

}  // namespace cvent
