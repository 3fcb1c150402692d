#pragma once

// Truncated Fock-space model of the beam-splitter scenario, used to check the
// Gaussian formulas independently of any covariance algebra.
//
// Two-mode matrices are indexed by n1 * dim + n2.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvent/beam_splitter.hpp"
#include "cvent/covariance.hpp"
#include "cvent/entanglement.hpp"

namespace cvent {

struct OracleConfig {
    int dim = 40;              ///< photon cutoff + 1, per mode
    double tol_trace = 1e-8;   ///< acceptable probability lost to truncation
    double tol_compare = 1e-3; ///< Gaussian vs. Fock agreement on N
    int max_dim = 120;         ///< escalation ceiling
    int dim_step = 10;
};

void validate(const OracleConfig& cfg);

/// Largest per-mode cutoff for which the dense two-mode matrix is built.
inline constexpr int kMaxDenseTwoModeDim = 80;

struct FockDensityMatrix {
    int dim = 0;
    int modes = 1;
    Eigen::MatrixXcd entries;

    double trace() const { return entries.trace().real(); }
    double leakage() const { return 1.0 - trace(); }
};

Eigen::MatrixXcd annihilation_operator(int dim);

/// exp((conj(zeta) a^2 - zeta a^dag^2) / 2) with the generator truncated at dim.
Eigen::MatrixXcd squeezing_operator(std::complex<double> zeta, int dim);

FockDensityMatrix fock_thermal(double nbar, int dim);
FockDensityMatrix fock_number(int n, int dim);
FockDensityMatrix fock_coherent(std::complex<double> alpha, int dim);

/// Thermal seed and squeezing that reproduce covariance_from_spec.
struct SqueezedThermalParams {
    double seed_nbar;  ///< (1 - u) / (2 u)
    double r;          ///< e^{-2 r} = u (1 - 2 tau)
};
SqueezedThermalParams squeezed_thermal_params(const GaussianSpec1M<double>& spec);

/// S(r e^{i phi_b}) rho_th(seed) S^dag truncated to cfg.dim.
/// Throws TruncationError when the lost probability exceeds cfg.tol_trace.
FockDensityMatrix fock_squeezed_thermal(const GaussianSpec1M<double>& spec, const OracleConfig& cfg);

/// Beam-splitter unitary restricted to the sector of total photon number n_total,
/// basis |k, n_total - k>. Its Heisenberg action is a -> M_B a.
Eigen::MatrixXcd beam_splitter_sector(const BeamSplitter<double>& bs, int n_total);

/// U (rho1 (x) rho2) U^dag truncated to cfg.dim per mode; rho dims must match and be >= cfg.dim.
FockDensityMatrix fock_beam_splitter(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2,
                                     const BeamSplitter<double>& bs, const OracleConfig& cfg);

/// Probability the output leaves the box n1, n2 < out_dim, from diagonal sectors only.
double beam_splitter_leakage(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2,
                             const BeamSplitter<double>& bs, int out_dim);

/// Transpose on the second mode's index pair.
FockDensityMatrix partial_transpose(const FockDensityMatrix& rho);

FockDensityMatrix reduced_state(const FockDensityMatrix& rho, int mode);

struct FockNegativity {
    double value;       ///< max{0, raw}
    double raw;         ///< log2 of the trace norm of the normalized partial transpose
    double trace_norm;  ///< unnormalized
    double trace;
};

FockNegativity fock_log_negativity(const FockDensityMatrix& rho);

/// <a^dag^p1 a^q1 (x) a^dag^p2 a^q2>; p2 = q2 = 0 for single-mode matrices.
std::complex<double> normal_moment(const FockDensityMatrix& rho, int p1, int q1, int p2 = 0, int q2 = 0);

/// Mean amplitudes <a_j>.
Eigen::VectorXcd mean_amplitudes(const FockDensityMatrix& rho);

/// Symmetrized quadrature covariance of (x1, p1[, x2, p2]).
Eigen::MatrixXd quadrature_covariance(const FockDensityMatrix& rho);

CovMat1M<double> fock_covariance_1m(const FockDensityMatrix& rho);
CovMat2M<double> fock_covariance_2m(const FockDensityMatrix& rho);

enum class OracleStatus { pass, fail, skip };

inline const char* to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::pass: return "pass";
        case OracleStatus::fail: return "fail";
        case OracleStatus::skip: return "skip";
    }
    return "unknown";
}

struct OracleComparison {
    ScenarioParams<double> params;
    double n_gaussian = 0;
    double n_fock = 0;
    double difference = 0;
    double leakage = 0;
    double tolerance = 0;
    int dim = 0;
    OracleStatus status = OracleStatus::skip;
    std::string reason;
};

/// Agreement bound implied by truncation leakage alone.
double leakage_bound(double leakage);

/// Gaussian vs. Fock negativity at one scenario point, escalating dim until
/// the output leakage is within cfg.tol_trace.
OracleComparison oracle_compare(const ScenarioParams<double>& p, const OracleConfig& cfg);

}  // namespace cvent
