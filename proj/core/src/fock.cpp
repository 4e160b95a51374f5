#include "alphacoh/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace alphacoh {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

CoherentLabel::CoherentLabel(Complex a) : alpha(a) {
    require(std::isfinite(a.real()) && std::isfinite(a.imag()),
            "coherent label must have finite real and imaginary parts");
}

FockVector::FockVector(CVector amplitudes, double truncation_deficit)
    : amp_(std::move(amplitudes)), deficit_(truncation_deficit) {
    require(amp_.size() >= 2, "FockVector needs n_max >= 1");
    const double n2 = amp_.squaredNorm();
    require(std::isfinite(n2) && n2 > 0.0, "FockVector amplitudes must be finite and nonzero");
    amp_ /= std::sqrt(n2);
}

FockDensity::FockDensity(CMatrix matrix, double tol_herm, double tol_norm, double tol_psd)
    : mat_(std::move(matrix)) {
    require(mat_.rows() == mat_.cols() && mat_.rows() >= 2, "density matrix must be square, n_max >= 1");
    const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    require(herm_dev <= tol_herm, "density matrix not Hermitian within tolerance");
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
    const double tr = mat_.trace().real();
    require(std::abs(tr - 1.0) <= tol_norm, "density matrix trace must be 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -tol_psd, "density matrix must be positive semidefinite");
}

FockDensity FockDensity::pure(const FockVector& psi) {
    return FockDensity(psi.amplitudes() * psi.amplitudes().adjoint());
}

FockDensity FockDensity::classical_mixture(
    const std::vector<std::pair<double, CoherentLabel>>& mixture, int n_max) {
    require(!mixture.empty(), "classical mixture needs at least one component");
    double wsum = 0.0;
    for (const auto& [w, label] : mixture) {
        require(w > 0.0, "mixture weights must be positive");
        wsum += w;
    }
    require(std::abs(wsum - 1.0) <= 1e-10, "mixture weights must sum to 1");
    CMatrix rho = CMatrix::Zero(n_max + 1, n_max + 1);
    for (const auto& [w, label] : mixture) {
        const CVector a = coherent_vector(label, n_max).amplitudes();
        rho += w * (a * a.adjoint());
    }
    return FockDensity(std::move(rho));
}

CVector coherent_amplitudes_raw(Complex alpha, int n_max) {
    CVector a(n_max + 1);
    a(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < n_max; ++n) {
        a(n + 1) = a(n) * alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return a;
}

FockVector coherent_vector(const CoherentLabel& label, int n_max, bool strict) {
    require(n_max >= 1, "coherent_vector needs n_max >= 1");
    if (strict && std::norm(label.alpha) > 0.5 * n_max) {
        throw std::invalid_argument("coherent label too large for truncation order (|alpha|^2 > n_max/2)");
    }
    CVector a = coherent_amplitudes_raw(label.alpha, n_max);
    const double kept = a.squaredNorm();
    return FockVector(std::move(a), 1.0 - kept);
}

Complex overlap(const FockVector& a, const FockVector& b) {
    require(a.dim() == b.dim(), "overlap: dimension mismatch");
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const FockVector& a, const FockVector& b) {
    return std::norm(overlap(a, b));
}

FockVector cat_state(const CoherentLabel& label, Parity parity, int n_max) {
    require(n_max >= 1, "cat_state needs n_max >= 1");
    if (parity == Parity::odd && std::norm(label.alpha) == 0.0) {
        throw std::invalid_argument("odd cat state undefined at alpha = 0");
    }
    // |a> +- |-a> keeps only one parity sector; build it with exact zeros in
    // the forbidden sector instead of summing two nearly-cancelling vectors.
    CVector a = coherent_amplitudes_raw(label.alpha, n_max);
    const int keep = (parity == Parity::even) ? 0 : 1;
    for (int n = 0; n <= n_max; ++n) {
        if (n % 2 != keep) a(n) = Complex{0.0, 0.0};
    }
    const double x = std::norm(label.alpha);
    const double analytic_norm_sq =
        (parity == Parity::even) ? 0.5 * (1.0 + std::exp(-2.0 * x)) : 0.5 * (1.0 - std::exp(-2.0 * x));
    const double deficit = 1.0 - a.squaredNorm() / analytic_norm_sq;
    return FockVector(std::move(a), deficit);
}

FockVector fock_state(int n, int n_max) {
    require(n_max >= 1, "fock_state needs n_max >= 1");
    if (n < 0 || n > n_max) throw std::out_of_range("fock_state: photon number out of range");
    CVector a = CVector::Zero(n_max + 1);
    a(n) = Complex{1.0, 0.0};
    return FockVector(std::move(a), 0.0);
}

FockVector squeezed_vacuum(double r, double theta, int n_max, bool strict) {
    require(r >= 0.0, "squeezed_vacuum needs r >= 0");
    require(n_max >= 2, "squeezed_vacuum needs n_max >= 2");
    CVector a = CVector::Zero(n_max + 1);
    a(0) = Complex{std::sqrt(1.0 / std::cosh(r)), 0.0};
    const Complex ratio = -std::exp(Complex{0.0, theta}) * std::tanh(r);
    for (int m = 0; 2 * m + 2 <= n_max; ++m) {
        a(2 * m + 2) = a(2 * m) * ratio * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
    }
    const double tail = 1.0 - a.squaredNorm();
    if (strict && tail > kStrictTailTol) {
        throw std::invalid_argument("squeezed_vacuum: truncation tail weight above threshold; raise n_max");
    }
    return FockVector(std::move(a), tail);
}

FockVector apply_displacement(const FockVector& state, const CoherentLabel& gamma, bool strict) {
    const int d = state.dim();
    // H = i (gamma a^dag - gamma^* a) is Hermitian; D = exp(-i H) = V e^{-i L} V^dag.
    CMatrix h = CMatrix::Zero(d, d);
    const Complex i_unit{0.0, 1.0};
    for (int n = 1; n < d; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        h(n, n - 1) = i_unit * gamma.alpha * s;           // a^dag part
        h(n - 1, n) = -i_unit * std::conj(gamma.alpha) * s;  // -a part
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const CVector phases =
        (-i_unit * es.eigenvalues().cast<Complex>().array()).exp().matrix();
    CVector out = es.eigenvectors() * phases.asDiagonal() *
                  (es.eigenvectors().adjoint() * state.amplitudes());
    if (std::abs(out.norm() - 1.0) > 1e-8) {
        throw std::runtime_error("apply_displacement: truncated exponential lost unitarity");
    }
    FockVector result(std::move(out), state.truncation_deficit());
    if (strict && mean_photon(result) > 0.5 * state.n_max()) {
        throw std::invalid_argument("apply_displacement: output exceeds truncation headroom");
    }
    return result;
}

FockVector apply_phase_rotation(const FockVector& state, double theta) {
    CVector out = state.amplitudes();
    for (int n = 0; n < out.size(); ++n) {
        out(n) *= std::exp(Complex{0.0, theta * n});
    }
    return FockVector(std::move(out), state.truncation_deficit());
}

double mean_photon(const FockVector& state) {
    double m = 0.0;
    for (int n = 1; n < state.dim(); ++n) m += n * std::norm(state.amplitude(n));
    return m;
}

double mean_photon_raw(const CVector& raw) {
    const double n2 = raw.squaredNorm();
    if (n2 <= 0.0) return 0.0;
    double m = 0.0;
    for (int n = 1; n < raw.size(); ++n) m += n * std::norm(raw(n));
    return m / n2;
}

}  // namespace alphacoh
