#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvent/beam_splitter.hpp"

using namespace cvent;
using Spec = GaussianSpec1M<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("transformation matrix is unitary and reduces to identity at theta = 0") {
    for (double theta : {0.0, 0.3, kPi / 4, 1.2}) {
        for (double phi : {0.0, 0.7, -2.0}) {
            const Matrix2c<double> m = transformation_matrix(BeamSplitter<double>{theta, phi});
            CHECK((m * m.adjoint() - Matrix2c<double>::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
        }
    }
    CHECK(transformation_matrix(BeamSplitter<double>{0.0, 1.3}).isApprox(Matrix2c<double>::Identity()));
}

TEST_CASE("quadrature map of the beam splitter is real symplectic") {
    const QuadCov2M<double> sigma = symplectic_form<double, 2>();
    for (double theta : {0.1, kPi / 4, 1.0}) {
        for (double phi : {0.0, 0.4, 2.9}) {
            const QuadCov2M<double> s = symplectic_matrix(BeamSplitter<double>{theta, phi});
            CHECK((s * sigma * s.transpose() - sigma).cwiseAbs().maxCoeff() <= 1e-14);
            CHECK((s * s.transpose() - QuadCov2M<double>::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
}

TEST_CASE("theta = 0 leaves the input untouched") {
    const auto v1 = covariance_from_spec(Spec{0.3, 0.5, 0.8});
    const auto v2 = thermal_covariance(ThermalParams<double>{0.6});
    const auto out = apply_beam_splitter(v1, v2, BeamSplitter<double>{0.0, 0.5});
    CHECK((out.matrix() - direct_sum(v1, v2).matrix()).cwiseAbs().maxCoeff() <= 1e-15 * v1.a() * 4);
}

TEST_CASE("explicit thermal blocks agree with the quadrature congruence") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau_d(0, 0.49), u_d(0.05, 1), n_d(0, 5), ang(0, kPi / 2),
        ph(-kPi, kPi);
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
        const double tau = tau_d(rng), u = u_d(rng), n = n_d(rng);
        const BeamSplitter<double> bs{ang(rng), ph(rng)};
        const auto v1 = covariance_from_spec(Spec{tau, u, ph(rng)});
        const auto a = apply_beam_splitter(v1, thermal_covariance(ThermalParams<double>{n}), bs);
        const auto b = beam_splitter_blocks_thermal(v1, n, bs);
        worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff() / v1.a());
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("determinant is preserved: (2 nbar + 1)^2 / (16 u^2)") {
    for (double tau : {0.0, 0.2, 0.45}) {
        for (double u : {0.1, 0.5, 1.0}) {
            for (double n : {0.0, 0.75, 3.0}) {
                const double expected = (2 * n + 1) * (2 * n + 1) / (16 * u * u);
                const auto v1 = covariance_from_spec(Spec{tau, u, 0.3});
                const auto out =
                    apply_beam_splitter(v1, thermal_covariance(ThermalParams<double>{n}), BeamSplitter<double>{0.4, 1.1});
                // LU in double carries eps * cond(V).
                CHECK(std::abs(out.determinant() - expected) <= 1e-9 * expected);
                CHECK(std::abs(symplectic_determinant<double, 4>(out.quadrature()) - expected) <= 1e-10 * expected);

                using L = long double;
                const auto w = apply_beam_splitter(covariance_from_spec(GaussianSpec1M<L>{tau, u, 0.3}),
                                                   thermal_covariance(ThermalParams<L>{n}), BeamSplitter<L>{0.4, 1.1});
                const L exact = (2 * L(n) + 1) * (2 * L(n) + 1) / (16 * L(u) * L(u));
                CHECK(static_cast<double>(std::abs(symplectic_determinant<L, 4>(w.quadrature()) - exact) / exact) <= 1e-12);
            }
        }
    }
}

TEST_CASE("vacuum in both ports stays vacuum") {
    const auto out = apply_beam_splitter(CovMat1M<double>::vacuum(), CovMat1M<double>::vacuum(),
                                         BeamSplitter<double>{0.7, 0.2});
    CHECK((out.matrix() - CovMat2M<double>::vacuum().matrix()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("block structure at 50:50 with vacuum second input") {
    const auto v1 = covariance_from_spec(Spec{0.2, 1.0, 0.0});
    const auto out = beam_splitter_blocks_thermal(v1, 0.0, BeamSplitter<double>{kPi / 4, 0.0});
    const double a = v1.a();
    CHECK(out.blockA()(0, 0).real() == doctest::Approx((a + 0.5) / 2).epsilon(1e-14));
    CHECK(out.blockB()(0, 0).real() == doctest::Approx((a + 0.5) / 2).epsilon(1e-14));
    CHECK(out.blockC()(0, 0).real() == doctest::Approx((a - 0.5) / 2).epsilon(1e-14));
}
