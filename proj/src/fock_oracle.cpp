#include "cvent/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

using Complex = std::complex<double>;

void check_dim(int dim, const char* op) {
    if (dim < 1) {
        std::ostringstream os;
        os << op << ": dim must be >= 1 (got " << dim << ")";
        throw DomainError(os.str());
    }
}

void check_two_mode(const FockDensityMatrix& rho, const char* op) {
    const long n = static_cast<long>(rho.dim) * rho.dim;
    if (rho.modes != 2 || rho.entries.rows() != n || rho.entries.cols() != n)
        throw DomainError(std::string(op) + ": expected a two-mode density matrix");
}

void check_hermitian(const FockDensityMatrix& rho, const char* op) {
    const double dev = (rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= 1e-10)) {
        std::ostringstream os;
        os << op << ": density matrix is not Hermitian (max deviation " << dev << ")";
        throw DomainError(os.str());
    }
}

// sqrt(m! / (m - q)!) for the action of a^q on |m>.
double falling_root(int m, int q) {
    double c = 1.0;
    for (int j = 0; j < q; ++j) c *= std::sqrt(static_cast<double>(m - j));
    return c;
}

FockDensityMatrix truncate(const Eigen::MatrixXcd& rho, int dim) {
    return {dim, 1, rho.topLeftCorner(dim, dim)};
}

}  // namespace

void validate(const OracleConfig& cfg) {
    if (cfg.dim < 4) throw DomainError("OracleConfig: dim must be >= 4 (got " + std::to_string(cfg.dim) + ")");
    if (!(cfg.tol_trace > 0)) throw DomainError("OracleConfig: tol_trace must be > 0");
    if (!(cfg.tol_compare > 0)) throw DomainError("OracleConfig: tol_compare must be > 0");
    if (cfg.dim_step < 1) throw DomainError("OracleConfig: dim_step must be >= 1");
}

Eigen::MatrixXcd annihilation_operator(int dim) {
    check_dim(dim, "annihilation_operator");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd squeezing_operator(Complex zeta, int dim) {
    const Eigen::MatrixXcd a = annihilation_operator(dim);
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd gen = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
    return gen.exp();
}

FockDensityMatrix fock_thermal(double nbar, int dim) {
    check_dim(dim, "fock_thermal");
    if (!(nbar >= 0)) throw DomainError("fock_thermal: nbar must be >= 0");
    FockDensityMatrix rho{dim, 1, Eigen::MatrixXcd::Zero(dim, dim)};
    const double ratio = nbar / (1.0 + nbar);
    double w = 1.0 / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) {
        rho.entries(n, n) = w;
        w *= ratio;
    }
    return rho;
}

FockDensityMatrix fock_number(int n, int dim) {
    check_dim(dim, "fock_number");
    if (n < 0 || n >= dim) throw DomainError("fock_number: n outside the truncated basis");
    FockDensityMatrix rho{dim, 1, Eigen::MatrixXcd::Zero(dim, dim)};
    rho.entries(n, n) = 1.0;
    return rho;
}

FockDensityMatrix fock_coherent(Complex alpha, int dim) {
    check_dim(dim, "fock_coherent");
    Eigen::VectorXcd psi(dim);
    Complex c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < dim; ++n) {
        psi(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return {dim, 1, psi * psi.adjoint()};
}

SqueezedThermalParams squeezed_thermal_params(const GaussianSpec1M<double>& spec) {
    validate(spec, "squeezed_thermal_params");
    // Symplectic eigenvalue 1/(2u) fixes the seed; the narrow variance
    // (1 - 2 tau)/2 = e^{-2r}/(2u) fixes the squeezing.
    return {(1.0 - spec.u) / (2.0 * spec.u), -0.5 * std::log(spec.u * (1.0 - 2.0 * spec.tau))};
}

FockDensityMatrix fock_squeezed_thermal(const GaussianSpec1M<double>& spec, const OracleConfig& cfg) {
    validate(cfg);
    const auto params = squeezed_thermal_params(spec);
    const int work = 2 * cfg.dim + 20;
    const Eigen::MatrixXcd s = squeezing_operator(std::polar(params.r, spec.phi_b), work);
    const Eigen::MatrixXcd seed = fock_thermal(params.seed_nbar, work).entries;
    Eigen::MatrixXcd rho = s * seed * s.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    FockDensityMatrix out = truncate(rho, cfg.dim);
    const double leak = out.leakage();
    if (leak > cfg.tol_trace) {
        std::ostringstream os;
        os << "fock_squeezed_thermal: truncation leakage " << leak << " exceeds tol_trace " << cfg.tol_trace
           << " at dim " << cfg.dim << "; increase dim";
        throw TruncationError(os.str(), leak, cfg.dim);
    }
    return out;
}

Eigen::MatrixXcd beam_splitter_sector(const BeamSplitter<double>& bs, int n_total) {
    if (n_total < 0) throw DomainError("beam_splitter_sector: negative photon number");
    const int size = n_total + 1;
    // theta (e^{i phi} a1^dag a2 - e^{-i phi} a1 a2^dag) on |k, N - k>.
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(size, size);
    const Complex up = std::polar(1.0, bs.phi);
    for (int k = 0; k < n_total; ++k) {
        const double amp = std::sqrt(static_cast<double>((k + 1) * (n_total - k)));
        gen(k + 1, k) = up * amp;
        gen(k, k + 1) = -std::conj(up) * amp;
    }
    return (bs.theta * gen).exp();
}

namespace {

// Sector block of rho1 (x) rho2 between total photon numbers n and n2, basis index = photons in mode 1.
Eigen::MatrixXcd input_sector_block(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2, int n, int m) {
    const int d = rho1.dim;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n + 1, m + 1);
    for (int i = std::max(0, n - d + 1); i <= std::min(n, d - 1); ++i) {
        for (int j = std::max(0, m - d + 1); j <= std::min(m, d - 1); ++j) {
            block(i, j) = rho1.entries(i, j) * rho2.entries(n - i, m - j);
        }
    }
    return block;
}

void check_pair(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2, int out_dim, const char* op) {
    if (rho1.modes != 1 || rho2.modes != 1) throw DomainError(std::string(op) + ": inputs must be single-mode");
    if (rho1.dim != rho2.dim) throw DomainError(std::string(op) + ": input dims must match");
    if (out_dim < 1 || out_dim > rho1.dim)
        throw DomainError(std::string(op) + ": output cutoff must lie in [1, input dim]");
}

}  // namespace

double beam_splitter_leakage(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2,
                             const BeamSplitter<double>& bs, int out_dim) {
    check_pair(rho1, rho2, out_dim, "beam_splitter_leakage");
    double kept = 0;
    for (int n = 0; n <= 2 * (out_dim - 1); ++n) {
        const Eigen::MatrixXcd u = beam_splitter_sector(bs, n);
        const Eigen::MatrixXcd out = u * input_sector_block(rho1, rho2, n, n) * u.adjoint();
        for (int k = std::max(0, n - out_dim + 1); k <= std::min(n, out_dim - 1); ++k) kept += out(k, k).real();
    }
    return 1.0 - kept;
}

FockDensityMatrix fock_beam_splitter(const FockDensityMatrix& rho1, const FockDensityMatrix& rho2,
                                     const BeamSplitter<double>& bs, const OracleConfig& cfg) {
    validate(cfg);
    const int d = cfg.dim;
    check_pair(rho1, rho2, d, "fock_beam_splitter");
    if (d > kMaxDenseTwoModeDim)
        throw DomainError("fock_beam_splitter: dim " + std::to_string(d) + " exceeds the dense two-mode limit " +
                          std::to_string(kMaxDenseTwoModeDim));

    const int sectors = 2 * (d - 1) + 1;
    std::vector<Eigen::MatrixXcd> unitaries;
    unitaries.reserve(sectors);
    for (int n = 0; n < sectors; ++n) unitaries.push_back(beam_splitter_sector(bs, n));

    FockDensityMatrix out{d, 2, Eigen::MatrixXcd::Zero(d * d, d * d)};
    for (int n = 0; n < sectors; ++n) {
        const int lo_n = std::max(0, n - d + 1);
        const int len_n = std::min(n, d - 1) - lo_n + 1;
        for (int m = 0; m < sectors; ++m) {
            const Eigen::MatrixXcd in = input_sector_block(rho1, rho2, n, m);
            if (in.cwiseAbs().maxCoeff() == 0.0) continue;
            const int lo_m = std::max(0, m - d + 1);
            const int len_m = std::min(m, d - 1) - lo_m + 1;
            const Eigen::MatrixXcd block = unitaries[n].middleRows(lo_n, len_n) * in *
                                           unitaries[m].middleRows(lo_m, len_m).adjoint();
            for (int i = 0; i < len_n; ++i) {
                const int k = lo_n + i;
                const int row = k * d + (n - k);
                for (int j = 0; j < len_m; ++j) {
                    const int l = lo_m + j;
                    out.entries(row, l * d + (m - l)) = block(i, j);
                }
            }
        }
    }
    out.entries = 0.5 * (out.entries + out.entries.adjoint()).eval();

    const double leak = out.leakage();
    if (leak > cfg.tol_trace) {
        std::ostringstream os;
        os << "fock_beam_splitter: truncation leakage " << leak << " exceeds tol_trace " << cfg.tol_trace
           << " at dim " << d;
        throw TruncationError(os.str(), leak, d);
    }
    return out;
}

FockDensityMatrix partial_transpose(const FockDensityMatrix& rho) {
    check_two_mode(rho, "partial_transpose");
    const int d = rho.dim;
    FockDensityMatrix out{d, 2, Eigen::MatrixXcd(d * d, d * d)};
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            for (int m1 = 0; m1 < d; ++m1)
                for (int m2 = 0; m2 < d; ++m2)
                    out.entries(n1 * d + n2, m1 * d + m2) = rho.entries(n1 * d + m2, m1 * d + n2);
    return out;
}

FockDensityMatrix reduced_state(const FockDensityMatrix& rho, int mode) {
    check_two_mode(rho, "reduced_state");
    if (mode != 0 && mode != 1) throw DomainError("reduced_state: mode must be 0 or 1");
    const int d = rho.dim;
    FockDensityMatrix out{d, 1, Eigen::MatrixXcd::Zero(d, d)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                out.entries(i, j) += mode == 0 ? rho.entries(i * d + k, j * d + k) : rho.entries(k * d + i, k * d + j);
    return out;
}

FockNegativity fock_log_negativity(const FockDensityMatrix& rho) {
    check_two_mode(rho, "fock_log_negativity");
    check_hermitian(rho, "fock_log_negativity");
    const FockDensityMatrix pt = partial_transpose(rho);
    const int d = rho.dim;
    const int n = d * d;

    // Split by total photon-number parity when the state respects it.
    std::vector<int> even, odd;
    for (int i = 0; i < n; ++i) ((i / d + i % d) % 2 == 0 ? even : odd).push_back(i);
    double cross = 0;
    for (int i : even)
        for (int j : odd) cross = std::max(cross, std::abs(pt.entries(i, j)));
    std::vector<std::vector<int>> groups;
    if (cross <= 1e-14) {
        groups = {even, odd};
    } else {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        groups = {all};
    }

    double norm = 0, trace = 0;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        const int size = static_cast<int>(g.size());
        Eigen::MatrixXcd block(size, size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) block(i, j) = pt.entries(g[i], g[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
        norm += es.eigenvalues().cwiseAbs().sum();
        trace += es.eigenvalues().sum();
    }
    const double raw = std::log2(norm / trace);
    return {std::max(0.0, raw), raw, norm, trace};
}

std::complex<double> normal_moment(const FockDensityMatrix& rho, int p1, int q1, int p2, int q2) {
    const int d = rho.dim;
    Complex sum = 0;
    if (rho.modes == 1) {
        if (p2 != 0 || q2 != 0) throw DomainError("normal_moment: single-mode matrix has no second mode");
        for (int m = q1; m < d; ++m) {
            const int n = m - q1 + p1;
            if (n < 0 || n >= d) continue;
            sum += falling_root(m, q1) * falling_root(n, p1) * rho.entries(m, n);
        }
        return sum;
    }
    check_two_mode(rho, "normal_moment");
    for (int m1 = q1; m1 < d; ++m1) {
        const int n1 = m1 - q1 + p1;
        if (n1 >= d) continue;
        const double c1 = falling_root(m1, q1) * falling_root(n1, p1);
        for (int m2 = q2; m2 < d; ++m2) {
            const int n2 = m2 - q2 + p2;
            if (n2 >= d) continue;
            sum += c1 * falling_root(m2, q2) * falling_root(n2, p2) * rho.entries(m1 * d + m2, n1 * d + n2);
        }
    }
    return sum;
}

Eigen::VectorXcd mean_amplitudes(const FockDensityMatrix& rho) {
    Eigen::VectorXcd out(rho.modes);
    out(0) = normal_moment(rho, 0, 1);
    if (rho.modes == 2) out(1) = normal_moment(rho, 0, 0, 0, 1);
    return out;
}

Eigen::MatrixXd quadrature_covariance(const FockDensityMatrix& rho) {
    const int modes = rho.modes;
    const int n = 2 * modes;
    const double tr = rho.trace();

    // Ladder vector c = (a1, a1^dag[, a2, a2^dag]); moment(i, j) = <{c_i, c_j}> / 2.
    const auto ladder_moment = [&](int i, int j) -> Complex {
        int p[2] = {0, 0}, q[2] = {0, 0};
        const int mi = i / 2, mj = j / 2;
        const bool di = i % 2 == 1, dj = j % 2 == 1;
        (di ? p : q)[mi] += 1;
        (dj ? p : q)[mj] += 1;
        Complex v = normal_moment(rho, p[0], q[0], p[1], q[1]) / tr;
        if (mi == mj && di != dj) v += 0.5;  // {a, a^dag}/2 = a^dag a + 1/2
        return v;
    };
    Eigen::VectorXcd mean(n);
    for (int i = 0; i < n; ++i) {
        const int mode = i / 2;
        int p[2] = {0, 0}, q[2] = {0, 0};
        (i % 2 == 1 ? p : q)[mode] = 1;
        mean(i) = normal_moment(rho, p[0], q[0], p[1], q[1]) / tr;
    }
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = ladder_moment(i, j) - mean(i) * mean(j);

    // x = (a + a^dag)/sqrt2, p = (-i a + i a^dag)/sqrt2.
    const double h = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < modes; ++k) {
        l(2 * k, 2 * k) = h;
        l(2 * k, 2 * k + 1) = h;
        l(2 * k + 1, 2 * k) = Complex(0, -h);
        l(2 * k + 1, 2 * k + 1) = Complex(0, h);
    }
    const Eigen::MatrixXd v = (l * m * l.transpose()).real();
    return 0.5 * (v + v.transpose());
}

CovMat1M<double> fock_covariance_1m(const FockDensityMatrix& rho) {
    if (rho.modes != 1) throw DomainError("fock_covariance_1m: expected a single-mode density matrix");
    return from_quadrature(QuadCov1M<double>(quadrature_covariance(rho)));
}

CovMat2M<double> fock_covariance_2m(const FockDensityMatrix& rho) {
    check_two_mode(rho, "fock_covariance_2m");
    return from_quadrature(QuadCov2M<double>(quadrature_covariance(rho)));
}

double leakage_bound(double leakage) {
    // Heuristic: gentle-measurement scale 2 sqrt(leakage) on the trace norm.
    return 2.0 * std::sqrt(std::max(0.0, leakage)) / std::log(2.0);
}

OracleComparison oracle_compare(const ScenarioParams<double>& p, const OracleConfig& cfg) {
    validate(cfg);
    validate(p, "oracle_compare");
    OracleComparison cmp;
    cmp.params = p;
    cmp.n_gaussian = log_negativity(output_covariance(p));

    const GaussianSpec1M<double> spec{p.tau, p.u, p.phi_b};
    const BeamSplitter<double> bs{p.theta, p.phi};
    const int ceiling = std::max(cfg.dim, cfg.max_dim);

    for (int d = cfg.dim; d <= ceiling; d += cfg.dim_step) {
        // Every input component that can reach the output box n1, n2 < d.
        OracleConfig in_cfg = cfg;
        in_cfg.dim = 2 * d - 1;
        FockDensityMatrix rho1, rho2;
        try {
            rho1 = fock_squeezed_thermal(spec, in_cfg);
        } catch (const TruncationError&) {
            continue;
        }
        rho2 = fock_thermal(p.nbar, in_cfg.dim);
        if (rho2.leakage() > cfg.tol_trace) continue;

        const double leak = beam_splitter_leakage(rho1, rho2, bs, d);
        if (leak > cfg.tol_trace) continue;
        if (d > kMaxDenseTwoModeDim) {
            cmp.dim = d;
            cmp.leakage = leak;
            cmp.status = OracleStatus::skip;
            cmp.reason = "leakage passes only at dim " + std::to_string(d) + ", beyond the dense two-mode limit " +
                         std::to_string(kMaxDenseTwoModeDim);
            return cmp;
        }

        OracleConfig out_cfg = cfg;
        out_cfg.dim = d;
        const FockDensityMatrix out = fock_beam_splitter(rho1, rho2, bs, out_cfg);
        cmp.dim = d;
        cmp.leakage = out.leakage();
        cmp.n_fock = fock_log_negativity(out).value;
        cmp.difference = std::abs(cmp.n_fock - cmp.n_gaussian);
        cmp.tolerance = std::max(cfg.tol_compare, leakage_bound(cmp.leakage));
        cmp.status = cmp.difference <= cmp.tolerance ? OracleStatus::pass : OracleStatus::fail;
        if (cmp.status == OracleStatus::fail) {
            std::ostringstream os;
            os << "|N_gaussian - N_fock| = " << cmp.difference << " exceeds " << cmp.tolerance;
            cmp.reason = os.str();
        }
        return cmp;
    }

    cmp.status = OracleStatus::skip;
    std::ostringstream os;
    os << "truncation leakage above tol_trace " << cfg.tol_trace << " up to dim " << ceiling;
    cmp.reason = os.str();
    return cmp;
}

}  // namespace cvent
