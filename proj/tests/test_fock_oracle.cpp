#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cvent/errors.hpp"
#include "cvent/fock_oracle.hpp"

using namespace cvent;
using Spec = GaussianSpec1M<double>;
constexpr double kPi = std::numbers::pi;

namespace {

OracleConfig loose(int dim) {
    OracleConfig cfg;
    cfg.dim = dim;
    cfg.max_dim = dim;
    cfg.tol_trace = 1e-4;
    return cfg;
}

double mean_photons(const FockDensityMatrix& rho, int mode) {
    return mode == 0 ? normal_moment(rho, 1, 1, 0, 0).real() : normal_moment(rho, 0, 0, 1, 1).real();
}

}  // namespace

TEST_CASE("single-mode builders") {
    SUBCASE("vacuum") {
        const auto rho = fock_squeezed_thermal(Spec{0.0, 1.0, 0.0}, loose(10));
        CHECK(std::abs(rho.entries(0, 0) - 1.0) <= 1e-14);
        CHECK((rho.entries.array().abs().sum() - 1.0) <= 1e-14);
    }
    SUBCASE("tau = 0, u = 1/3: thermal seed nbar = 1 squeezed to a vacuum-width narrow axis") {
        const Spec spec{0.0, 1.0 / 3.0, 0.0};
        const auto params = squeezed_thermal_params(spec);
        CHECK(params.seed_nbar == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(params.r == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
        const auto seed = fock_squeezed_thermal(spec, loose(100));
        const auto v = fock_covariance_1m(seed);
        CHECK(std::abs(v.a() - 2.5) <= 1e-6);
        CHECK(std::abs(v.b() - 2.0) <= 1e-6);
        CHECK((seed.entries * seed.entries).trace().real() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
        const auto thermal = fock_thermal(1.0, 60);
        for (int n = 0; n < 10; ++n) CHECK(thermal.entries(n, n).real() == doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-14));
    }
    SUBCASE("moments reproduce the Gaussian covariance") {
        OracleConfig cfg = loose(40);
        const Spec spec{0.2, 0.8, 0.7};
        const auto rho = fock_squeezed_thermal(spec, cfg);
        const auto v = fock_covariance_1m(rho);
        const auto g = covariance_from_spec(spec);
        CHECK(std::abs(v.a() - g.a()) <= 1e-6);
        CHECK(std::abs(v.b() - g.b()) <= 1e-6);
        CHECK(std::abs(mean_amplitudes(rho)(0)) <= 1e-12);
    }
    SUBCASE("thermal, number and coherent states") {
        CHECK(mean_photons(fock_thermal(0.7, 80), 0) == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(mean_photons(fock_number(3, 8), 0) == doctest::Approx(3.0));
        const auto coh = fock_coherent({0.6, -0.3}, 30);
        CHECK(std::abs(mean_amplitudes(coh)(0) - std::complex<double>(0.6, -0.3)) <= 1e-12);
        CHECK(fock_covariance_1m(coh).a() == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("truncation error reports the leakage") {
        OracleConfig cfg;
        cfg.dim = 4;
        try {
            fock_squeezed_thermal(Spec{0.3, 0.5, 0.0}, cfg);
            FAIL("expected a truncation error");
        } catch (const TruncationError& e) {
            CHECK(e.leakage() > cfg.tol_trace);
            CHECK(e.dim() == 4);
        }
    }
    CHECK_THROWS_AS(fock_squeezed_thermal(Spec{0.2, 1.0, 0.0}, loose(3)), DomainError);
}

TEST_CASE("Fock beam splitter") {
    const BeamSplitter<double> mix{kPi / 4, 0.0};
    SUBCASE("theta = 0 leaves a product untouched") {
        const int d = 6;
        const auto r1 = fock_coherent({0.3, 0.1}, 2 * d - 1);
        const auto r2 = fock_thermal(0.2, 2 * d - 1);
        const auto out = fock_beam_splitter(r1, r2, BeamSplitter<double>{0.0, 0.4}, loose(d));
        Eigen::MatrixXcd expected(d * d, d * d);
        const Eigen::MatrixXcd a = r1.entries.topLeftCorner(d, d), b = r2.entries.topLeftCorner(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) expected.block(i * d, j * d, d, d) = a(i, j) * b;
        CHECK((out.entries - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("coherent x coherent stays a product of pure states") {
        const int d = 16;
        OracleConfig cfg = loose(d);
        cfg.tol_trace = 1e-6;
        const auto out = fock_beam_splitter(fock_coherent({0.5, 0.0}, 2 * d - 1), fock_coherent({0.0, 0.4}, 2 * d - 1),
                                            BeamSplitter<double>{0.6, 0.3}, cfg);
        for (int mode : {0, 1}) {
            const auto r = reduced_state(out, mode);
            CHECK((r.entries * r.entries).trace().real() == doctest::Approx(1.0).epsilon(1e-6));
        }
        CHECK(fock_log_negativity(out).value <= 1e-6);
    }
    SUBCASE("a single photon splits evenly") {
        const int d = 4;
        const auto out = fock_beam_splitter(fock_number(0, 2 * d - 1), fock_number(1, 2 * d - 1), mix, loose(d));
        CHECK(mean_photons(out, 0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(mean_photons(out, 1) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("sector unitaries are unitary") {
        for (int n : {0, 1, 5, 12}) {
            const Eigen::MatrixXcd u = beam_splitter_sector(BeamSplitter<double>{0.7, 1.1}, n);
            CHECK((u * u.adjoint() - Eigen::MatrixXcd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SUBCASE("Heisenberg action matches the Gaussian map with theta -> -theta") {
        const int d = 30;
        const Spec spec{0.2, 0.9, 0.5};
        const double nbar = 0.3;
        OracleConfig in = loose(2 * d - 1);
        const auto r1 = fock_squeezed_thermal(spec, in);
        const auto r2 = fock_thermal(nbar, 2 * d - 1);
        const BeamSplitter<double> bs{0.5, 0.8};
        const auto out = fock_beam_splitter(r1, r2, bs, loose(d));
        const auto fock_v = fock_covariance_2m(out);
        const auto gauss = apply_beam_splitter(covariance_from_spec(spec), thermal_covariance(ThermalParams<double>{nbar}),
                                               BeamSplitter<double>{-bs.theta, bs.phi});
        CHECK((fock_v.matrix() - gauss.matrix()).cwiseAbs().maxCoeff() <= 1e-5);
        // The negativity does not see the sign of theta.
        const auto forward = apply_beam_splitter(covariance_from_spec(spec),
                                                 thermal_covariance(ThermalParams<double>{nbar}), bs);
        CHECK(std::abs(log_negativity(forward) - log_negativity(gauss)) <= 1e-12);
    }
    SUBCASE("mismatched inputs are rejected") {
        CHECK_THROWS_AS(fock_beam_splitter(fock_number(0, 8), fock_number(0, 9), mix, loose(8)), DomainError);
        CHECK_THROWS_AS(fock_beam_splitter(fock_number(0, 6), fock_number(0, 6), mix, loose(8)), DomainError);
    }
}

TEST_CASE("partial transpose and negativity") {
    const int d = 12;
    const auto out = fock_beam_splitter(fock_squeezed_thermal(Spec{0.2, 1.0, 0.0}, loose(2 * d - 1)),
                                        fock_thermal(0.0, 2 * d - 1), BeamSplitter<double>{kPi / 4, 0.0}, loose(d));
    const auto pt = partial_transpose(out);
    CHECK(pt.trace() == doctest::Approx(out.trace()).epsilon(1e-14));
    CHECK((pt.entries - pt.entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((partial_transpose(pt).entries - out.entries).cwiseAbs().maxCoeff() == 0.0);

    const auto prod = fock_beam_splitter(fock_thermal(0.4, 2 * d - 1), fock_number(1, 2 * d - 1),
                                         BeamSplitter<double>{0.0, 0.0}, loose(d));
    CHECK(fock_log_negativity(prod).value <= 1e-10);

    FockDensityMatrix bad = out;
    bad.entries(0, 1) += 0.1;
    CHECK_THROWS_AS(fock_log_negativity(bad), DomainError);
}

TEST_CASE("oracle agrees with the Gaussian negativity") {
    SUBCASE("tau = 0.25 at 50:50 gives 0.5") {
        OracleConfig cfg;
        cfg.dim = 30;
        cfg.max_dim = 30;
        cfg.tol_trace = 1e-5;
        const auto c = oracle_compare(ScenarioParams<double>{0.25, 1.0, 0.0, 0.0, kPi / 4, 0.0}, cfg);
        REQUIRE(c.status == OracleStatus::pass);
        CHECK(std::abs(c.n_fock - 0.5) <= 1e-3);
        CHECK(std::abs(c.n_gaussian - 0.5) <= 1e-12);
    }
    SUBCASE("critical point tau = 0.3, nbar = 0.75") {
        OracleConfig cfg;
        cfg.dim = 40;
        cfg.max_dim = 40;
        cfg.tol_trace = 1e-4;
        const auto c = oracle_compare(ScenarioParams<double>{0.3, 1.0, 0.0, 0.75, kPi / 12, 0.0}, cfg);
        REQUIRE(c.status == OracleStatus::pass);
        CHECK(c.n_fock <= 1e-3);
        CHECK(c.n_gaussian == 0.0);
    }
    SUBCASE("classical input gives zero on both sides") {
        OracleConfig cfg;
        cfg.dim = 20;
        cfg.max_dim = 20;
        cfg.tol_trace = 1e-4;
        const auto c = oracle_compare(ScenarioParams<double>{0.0, 1.0, 0.0, 0.3, kPi / 4, 0.0}, cfg);
        REQUIRE(c.status == OracleStatus::pass);
        CHECK(c.n_fock <= 1e-8);
        CHECK(c.n_gaussian == 0.0);
    }
    SUBCASE("tiny dim without room to escalate is skipped") {
        OracleConfig cfg;
        cfg.dim = 4;
        cfg.max_dim = 4;
        const auto c = oracle_compare(ScenarioParams<double>{0.3, 1.0, 0.0, 0.0, kPi / 4, 0.0}, cfg);
        CHECK(c.status == OracleStatus::skip);
        CHECK_FALSE(c.reason.empty());
    }
    SUBCASE("escalation beyond the dense limit is skipped with a reason") {
        OracleConfig cfg;
        cfg.dim = 10;
        cfg.max_dim = 200;
        cfg.dim_step = 90;
        cfg.tol_trace = 1e-12;
        const auto c = oracle_compare(ScenarioParams<double>{0.0, 1.0, 0.0, 2.0, kPi / 4, 0.0}, cfg);
        CHECK(c.status == OracleStatus::skip);
        CHECK(c.reason.find("dense") != std::string::npos);
    }
    CHECK(leakage_bound(0.0) == 0.0);
    CHECK(leakage_bound(1e-8) > 0.0);
}
