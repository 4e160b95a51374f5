#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace alphacoh {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Default truncation order and tolerances used throughout the library.
inline constexpr int kDefaultNmax = 60;
inline constexpr double kTolNorm = 1e-10;
inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolPsd = 1e-9;
// Strict truncation: analytic tail weight of a constructed state must stay
// below this, otherwise the truncated representation is rejected.
inline constexpr double kStrictTailTol = 1e-6;

/// A complex phase-space label for a coherent state. Finite by construction.
struct CoherentLabel {
    Complex alpha{0.0, 0.0};

    CoherentLabel() = default;
    explicit CoherentLabel(Complex a);
    CoherentLabel(double re, double im) : CoherentLabel(Complex{re, im}) {}
};

/// Pure single-mode state on the truncated Fock space {|0>, ..., |n_max>}.
/// Unit norm after construction; the constructor renormalizes and rejects
/// zero or non-finite input.
class FockVector {
public:
    explicit FockVector(CVector amplitudes, double truncation_deficit = 0.0);

    int n_max() const { return static_cast<int>(amp_.size()) - 1; }
    int dim() const { return static_cast<int>(amp_.size()); }
    const CVector& amplitudes() const { return amp_; }
    Complex amplitude(int n) const { return amp_(n); }

    /// Analytic weight lost to truncation, as reported by the factory that
    /// built this state (0 for exact finite constructions such as Fock states).
    double truncation_deficit() const { return deficit_; }

private:
    CVector amp_;
    double deficit_ = 0.0;
};

/// Hermitian, positive, unit-trace matrix on the truncated Fock space.
class FockDensity {
public:
    explicit FockDensity(CMatrix matrix, double tol_herm = kTolHerm,
                         double tol_norm = kTolNorm, double tol_psd = kTolPsd);

    static FockDensity pure(const FockVector& psi);
    /// sum_j w_j |alpha_j><alpha_j| with positive weights summing to 1.
    static FockDensity classical_mixture(
        const std::vector<std::pair<double, CoherentLabel>>& mixture, int n_max);

    int n_max() const { return static_cast<int>(mat_.rows()) - 1; }
    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }

private:
    CMatrix mat_;
};

/// Unnormalized truncated coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!),
/// n = 0..n_max. Building block for the normalized factory and the Husimi
/// objective; no strictness check here.
CVector coherent_amplitudes_raw(Complex alpha, int n_max);

/// Normalized truncated coherent state. In strict mode rejects labels with
/// |alpha|^2 > n_max/2, where the truncation deficit would exceed tolerance.
FockVector coherent_vector(const CoherentLabel& label, int n_max, bool strict = true);

/// Hermitian inner product <a|b>. Dimensions must match.
Complex overlap(const FockVector& a, const FockVector& b);

/// |<a|b>|^2; quotients the global phase.
double fidelity(const FockVector& a, const FockVector& b);

enum class Parity { even, odd };

/// Normalized (|alpha> + |-alpha>)/sqrt(2 + 2e^{-2|a|^2}) (even) or the
/// minus combination (odd). Parity-forbidden amplitudes are exactly zero.
FockVector cat_state(const CoherentLabel& label, Parity parity, int n_max);

FockVector fock_state(int n, int n_max);

/// Squeezed vacuum S(xi)|0>, xi = r e^{i theta}:
/// c_{2m} = sqrt(sech r) (-e^{i theta} tanh r)^m sqrt((2m)!) / (2^m m!).
FockVector squeezed_vacuum(double r, double theta, int n_max, bool strict = true);

/// D(gamma) = exp(gamma a^dag - gamma^* a) applied in the truncated space via
/// eigendecomposition of the (Hermitian) i * generator. In strict mode the
/// output must keep mean photon number <= n_max/2.
FockVector apply_displacement(const FockVector& state, const CoherentLabel& gamma,
                              bool strict = true);

/// Phase rotation e^{i theta n}. Linear-optical, exactly norm preserving.
FockVector apply_phase_rotation(const FockVector& state, double theta);

/// <n> = sum_n n |c_n|^2.
double mean_photon(const FockVector& state);

/// Mean photon number of a possibly sub-normalized raw amplitude vector,
/// computed on the normalized direction.
double mean_photon_raw(const CVector& raw);

}  // namespace alphacoh
