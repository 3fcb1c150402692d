#pragma once

// Logarithmic negativity of the two-mode state produced by mixing a
// single-mode Gaussian state (tau, u, phi_b) with a thermal state (nbar) on a
// beam splitter (theta, phi), together with its critical thermal noise.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "cvent/beam_splitter.hpp"
#include "cvent/covariance.hpp"
#include "cvent/errors.hpp"

namespace cvent {

/// Positive roots of xi^4 - (detA + detB - 2 detC) xi^2 + det V = 0.
template <typename Scalar = double>
struct SymplecticPTSpectrum {
    Scalar xi_minus{0.5};
    Scalar xi_plus{0.5};
};

/// 2 xi_- at or above 1 - kSeparabilityTol counts as separable.
template <typename Scalar>
inline constexpr Scalar kSeparabilityTol = Scalar(1e-12);

/// Quartic route: xi_pm^2 = (Delta +- sqrt(Delta^2 - 4 det V)) / 2.
template <typename Scalar>
SymplecticPTSpectrum<Scalar> pt_symplectic_spectrum(const CovMat2M<Scalar>& v) {
    const Scalar det_a = v.blockA().determinant().real();
    const Scalar det_b = v.blockB().determinant().real();
    const Scalar det_c = v.blockC().determinant().real();
    const Scalar det_v = v.determinant();
    const Scalar delta = det_a + det_b - Scalar(2) * det_c;
    Scalar disc = delta * delta - Scalar(4) * det_v;
    if (disc < Scalar(0)) {
        if (disc < -Scalar(1e-9) * delta * delta)
            detail::domain_fail("pt_symplectic_spectrum", "complex roots; Delta^2 - 4 det V", disc);
        disc = Scalar(0);
    }
    if (!(det_v > Scalar(0)) || !(delta > Scalar(0)))
        detail::domain_fail("pt_symplectic_spectrum", "det V must be positive", det_v);
    const Scalar plus_sq = Scalar(0.5) * (delta + std::sqrt(disc));
    const Scalar minus_sq = det_v / plus_sq;
    return {std::sqrt(minus_sq), std::sqrt(plus_sq)};
}

/// Eigen route: symplectic spectrum of the quadrature covariance with p2 -> -p2.
template <typename Scalar>
SymplecticPTSpectrum<Scalar> pt_symplectic_spectrum_eigen(const CovMat2M<Scalar>& v) {
    QuadCov2M<Scalar> quad = v.quadrature();
    quad.row(3) *= Scalar(-1);
    quad.col(3) *= Scalar(-1);
    const Eigen::Matrix<Scalar, 2, 1> nu = symplectic_eigenvalues<Scalar, 4>(quad);
    return {nu(0), nu(1)};
}

/// N = max{0, -log2(2 xi_-)}.
template <typename Scalar>
Scalar log_negativity(const SymplecticPTSpectrum<Scalar>& spectrum) {
    const Scalar two_xi = Scalar(2) * spectrum.xi_minus;
    if (two_xi >= Scalar(1) - kSeparabilityTol<Scalar>) return Scalar(0);
    return -std::log2(two_xi);
}

/// Uses the eigen route; the quartic loses digits to the block determinants when squeezing is strong.
template <typename Scalar>
Scalar log_negativity(const CovMat2M<Scalar>& v) {
    return log_negativity(pt_symplectic_spectrum_eigen(v));
}

/// Full parameter set of the squeezed-plus-thermal beam-splitter scenario.
template <typename Scalar = double>
struct ScenarioParams {
    Scalar tau{0};
    Scalar u{1};
    Scalar phi_b{0};
    Scalar nbar{0};
    Scalar theta{0};
    Scalar phi{0};
};

namespace detail {

template <typename Scalar>
void check_tau_u(Scalar tau, Scalar u, const std::string& op) {
    validate(GaussianSpec1M<Scalar>{tau, u, Scalar(0)}, op);
}

template <typename Scalar>
void check_nbar(Scalar nbar, const std::string& op) {
    if (!(nbar >= Scalar(0)) || !std::isfinite(nbar)) domain_fail(op, "nbar must be finite and >= 0", nbar);
}

template <typename Scalar>
void check_angle(Scalar angle, const std::string& op, const std::string& name) {
    if (!std::isfinite(angle)) domain_fail(op, name + " must be finite", angle);
}

}  // namespace detail

template <typename Scalar>
void validate(const ScenarioParams<Scalar>& p, const std::string& op = "ScenarioParams") {
    validate(GaussianSpec1M<Scalar>{p.tau, p.u, p.phi_b}, op);
    detail::check_nbar(p.nbar, op);
    detail::check_angle(p.theta, op, "theta");
    detail::check_angle(p.phi, op, "phi");
}

/// V_out through the generic covariance pipeline.
template <typename Scalar>
CovMat2M<Scalar> output_covariance(const ScenarioParams<Scalar>& p) {
    validate(p, "output_covariance");
    return apply_beam_splitter(covariance_from_spec(GaussianSpec1M<Scalar>{p.tau, p.u, p.phi_b}),
                               thermal_covariance(ThermalParams<Scalar>{p.nbar}),
                               BeamSplitter<Scalar>{p.theta, p.phi});
}

/// Quantities entering the closed-form negativity.
template <typename Scalar = double>
struct ClosedFormTerms {
    Scalar s;              ///< S
    Scalar s_plus;         ///< S_+ = 1/(u^2 (1-2 tau)) + (2 nbar + 1)
    Scalar s_minus;        ///< S_- = 1/(u^2 (1-2 tau)) - (2 nbar + 1)
    Scalar det_scaled;     ///< (2 nbar + 1)^2 / u^2 = 16 det V_out
};

template <typename Scalar>
ClosedFormTerms<Scalar> closed_form_terms(Scalar tau, Scalar u, Scalar nbar, Scalar theta) {
    const Scalar k = Scalar(1) / (u * u * (Scalar(1) - Scalar(2) * tau));
    const Scalar m = Scalar(2) * nbar + Scalar(1);
    const Scalar sp = k + m;
    const Scalar sm = k - m;
    // With cos 4 theta = 1 - 2 sin^2 2 theta: S = (1/u^2 + m^2)/2 + (nbar + tau) S_- sin^2 2 theta.
    const Scalar sin2 = std::sin(Scalar(2) * theta);
    const Scalar s = Scalar(0.5) * (Scalar(1) / (u * u) + m * m) + (nbar + tau) * sm * sin2 * sin2;
    return {s, sp, sm, m * m / (u * u)};
}

/// 2S - 1 - (2 nbar + 1)^2 / u^2 in factored form; the output is entangled iff this is positive.
///
/// With m = 2 nbar + 1 and q = 1 - 2 tau:
///   sin^2(2 theta) (1/q - m)(m/u^2 - q) - cos^2(2 theta) (m^2 - 1)(1/u^2 - 1).
/// Both products have fixed signs for classical inputs (q = 1), so the
/// separable verdict is exact there.
template <typename Scalar>
Scalar entanglement_margin(Scalar tau, Scalar u, Scalar nbar, Scalar theta) {
    const Scalar q = Scalar(1) - Scalar(2) * tau;
    const Scalar m = Scalar(2) * nbar + Scalar(1);
    const Scalar sin2 = std::sin(Scalar(2) * theta);
    const Scalar cos2 = std::cos(Scalar(2) * theta);
    const Scalar inv_u2 = Scalar(1) / (u * u);
    return sin2 * sin2 * (Scalar(1) / q - m) * (m * inv_u2 - q) -
           cos2 * cos2 * (m * m - Scalar(1)) * (inv_u2 - Scalar(1));
}

/// N = max{0, -(1/2) log2(S - sqrt(S^2 - (2 nbar + 1)^2 / u^2))}; independent of phi and phi_b.
template <typename Scalar>
Scalar negativity_closed_form(const ScenarioParams<Scalar>& p) {
    validate(p, "negativity_closed_form");
    if (entanglement_margin(p.tau, p.u, p.nbar, p.theta) <= Scalar(0)) return Scalar(0);
    const auto t = closed_form_terms(p.tau, p.u, p.nbar, p.theta);
    // S^2 - D = (S - m/u)(S + m/u), and S - m/u = (1/u - m)^2/2 + (nbar + tau) S_- sin^2 2 theta.
    const Scalar m = Scalar(2) * p.nbar + Scalar(1);
    const Scalar sin2 = std::sin(Scalar(2) * p.theta);
    const Scalar pure = Scalar(1) / p.u - m;
    const Scalar gap = Scalar(0.5) * pure * pure + (p.nbar + p.tau) * t.s_minus * sin2 * sin2;
    const Scalar root = std::sqrt(std::max(Scalar(0), gap * (t.s + m / p.u)));
    // S - sqrt(S^2 - D) written without cancellation.
    const Scalar smaller = t.det_scaled / (t.s + root);
    return std::max(Scalar(0), Scalar(-0.5) * std::log2(smaller));
}

/// N at a 50:50 beam splitter: max{0, -log2 sqrt((2 nbar + 1)(1 - 2 tau))}.
template <typename Scalar>
Scalar negativity_5050(Scalar tau, Scalar nbar) {
    detail::check_tau_u(tau, Scalar(1), "negativity_5050");
    detail::check_nbar(nbar, "negativity_5050");
    const Scalar x = (Scalar(2) * nbar + Scalar(1)) * (Scalar(1) - Scalar(2) * tau);
    if (x >= Scalar(1)) return Scalar(0);
    return Scalar(-0.5) * std::log2(x);
}

/// n_c = tau / (1 - 2 tau).
template <typename Scalar>
Scalar critical_noise_5050(Scalar tau) {
    detail::check_tau_u(tau, Scalar(1), "critical_noise_5050");
    return tau / (Scalar(1) - Scalar(2) * tau);
}

enum class ThresholdKind {
    finite,                   ///< entangled for nbar < value
    never_entangled_classical,  ///< tau = 0
    never_entangled_angle,      ///< theta with sin(2 theta) = 0: no mixing
    infinite,                 ///< threshold beyond the solver bracket
};

inline const char* to_string(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::finite: return "finite";
        case ThresholdKind::never_entangled_classical: return "never-entangled-classical";
        case ThresholdKind::never_entangled_angle: return "never-entangled-angle";
        case ThresholdKind::infinite: return "infinite-threshold";
    }
    return "unknown";
}

template <typename Scalar = double>
struct CriticalNoise {
    Scalar value{0};
    ThresholdKind kind{ThresholdKind::finite};

    bool never_entangled() const {
        return kind == ThresholdKind::never_entangled_classical || kind == ThresholdKind::never_entangled_angle;
    }
};

template <typename Scalar>
inline constexpr Scalar kCriticalNoiseBracket = Scalar(1e3);

/// Bisection on the entanglement margin over nbar in [lo, hi].
template <typename Scalar>
Scalar critical_noise_bisection(Scalar tau, Scalar u, Scalar theta, Scalar lo = Scalar(0),
                                Scalar hi = kCriticalNoiseBracket<Scalar>, Scalar tol = Scalar(1e-10)) {
    const auto f = [&](Scalar n) { return entanglement_margin(tau, u, n, theta); };
    if (!(f(lo) > Scalar(0)) || !(f(hi) <= Scalar(0)))
        throw NumericalError("critical_noise_bisection: no sign change of the entanglement margin in bracket");
    while (hi - lo > tol) {
        const Scalar mid = Scalar(0.5) * (lo + hi);
        if (f(mid) > Scalar(0))
            lo = mid;
        else
            hi = mid;
    }
    return Scalar(0.5) * (lo + hi);
}

/// Thermal photon number at which the output entanglement vanishes.
///
/// Solves 2S = 1 + (2 nbar + 1)^2 / u^2, a quadratic in m = 2 nbar + 1 whose
/// leading coefficient is negative whenever the beam splitter mixes; the
/// threshold is its larger root. The root is accepted only if the margin is
/// positive just below and nonpositive just above it; otherwise bisection.
template <typename Scalar>
CriticalNoise<Scalar> critical_noise(Scalar tau, Scalar u, Scalar theta) {
    detail::check_tau_u(tau, u, "critical_noise");
    detail::check_angle(theta, "critical_noise", "theta");
    if (tau == Scalar(0)) return {Scalar(0), ThresholdKind::never_entangled_classical};

    const Scalar sin2 = std::sin(Scalar(2) * theta);
    const Scalar mix = sin2 * sin2;
    if (mix < Scalar(1e-24)) return {Scalar(0), ThresholdKind::never_entangled_angle};
    const Scalar cos2 = std::cos(Scalar(2) * theta);
    const Scalar keep = cos2 * cos2;

    const Scalar q = Scalar(1) - Scalar(2) * tau;
    const Scalar inv_u2 = Scalar(1) / (u * u);
    const Scalar c2 = -mix * inv_u2 - keep * (inv_u2 - Scalar(1));
    const Scalar c1 = mix * (q + inv_u2 / q);
    const Scalar c0 = -mix + keep * (inv_u2 - Scalar(1));
    const Scalar disc = std::max(Scalar(0), c1 * c1 - Scalar(4) * c2 * c0);
    const Scalar m_root = (-c1 - std::sqrt(disc)) / (Scalar(2) * c2);
    Scalar nbar_c = Scalar(0.5) * (m_root - Scalar(1));

    const Scalar eps = Scalar(1e-9) * std::max(Scalar(1), nbar_c);
    const bool accepted = std::isfinite(nbar_c) && nbar_c > Scalar(0) &&
                          entanglement_margin(tau, u, nbar_c - eps, theta) > Scalar(0) &&
                          entanglement_margin(tau, u, nbar_c + eps, theta) <= Scalar(0);
    if (accepted && nbar_c > kCriticalNoiseBracket<Scalar>)
        return {std::numeric_limits<Scalar>::infinity(), ThresholdKind::infinite};
    if (!accepted) {
        if (entanglement_margin(tau, u, kCriticalNoiseBracket<Scalar>, theta) > Scalar(0))
            return {std::numeric_limits<Scalar>::infinity(), ThresholdKind::infinite};
        nbar_c = critical_noise_bisection(tau, u, theta);
    }
    return {nbar_c, ThresholdKind::finite};
}

/// Second-order expansion of n_c around the 50:50 setting theta = pi/4 + e/2.
template <typename Scalar>
Scalar critical_noise_near_optimal(Scalar tau, Scalar u, Scalar e) {
    detail::check_tau_u(tau, u, "critical_noise_near_optimal");
    const Scalar q = Scalar(1) - Scalar(2) * tau;
    const Scalar base = tau / q;
    if (u == Scalar(1) || tau == Scalar(0)) return base;
    const Scalar frac = (Scalar(1) - tau) * (Scalar(1) - u * u) / (Scalar(1) - u * u * q * q);
    return base * (Scalar(1) - Scalar(2) * e * e * frac);
}

/// |e| up to which the near-optimal expansion stays within a few percent of the exact threshold.
template <typename Scalar>
inline constexpr Scalar kNearOptimalValidity = Scalar(0.2);

/// Angle of the beam splitter for the thermal-noise regime of (tau, u, nbar).
template <typename Scalar = double>
struct OptimalAngle {
    Scalar theta{0};
    bool entangling{false};  ///< N > 0 at theta
    Scalar negativity{0};
    Scalar s_zero{0};        ///< S at theta = 0
    Scalar s_quarter{0};     ///< S at theta = pi/4
    Scalar s_minus{0};
};

/// S is extremal at 0 and pi/4; the 50:50 choice maximizes N exactly when S_- > 0.
template <typename Scalar>
OptimalAngle<Scalar> optimal_angle(Scalar tau, Scalar u, Scalar nbar) {
    detail::check_tau_u(tau, u, "optimal_angle");
    detail::check_nbar(nbar, "optimal_angle");
    const Scalar q = Scalar(1) - Scalar(2) * tau;
    const Scalar k = Scalar(1) / (u * u * q);
    const Scalar m = Scalar(2) * nbar + Scalar(1);
    OptimalAngle<Scalar> out;
    out.s_minus = k - m;
    out.s_zero = Scalar(1) / (Scalar(2) * u * u) + m * m / Scalar(2);
    out.s_quarter = Scalar(0.5) * m * (k + q);
    out.theta = out.s_minus > Scalar(0) ? std::numbers::pi_v<Scalar> / Scalar(4) : Scalar(0);
    out.negativity = negativity_closed_form(ScenarioParams<Scalar>{tau, u, Scalar(0), nbar, out.theta, Scalar(0)});
    out.entangling = out.negativity > Scalar(0);
    return out;
}

}  // namespace cvent
