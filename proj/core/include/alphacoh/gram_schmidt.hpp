#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alphacoh/fock.hpp"
#include "alphacoh/husimi.hpp"

namespace alphacoh {

struct GreedyTerm {
    CoherentLabel label;
    Complex coeff;  // c_i = <alpha_i|psi_i> at the step the label was picked
};

/// Result of the greedy coherent-state recursion
///   psi_{i+1} = psi_i - |alpha_i><alpha_i|psi_i>,  alpha_i = argmax |<alpha|psi_i>|
/// along one deterministic choice branch. Coefficients satisfy
/// sum_i |c_i|^2 + residual_norm_sq = 1 for unit-norm input.
struct GreedyDecomposition {
    std::vector<GreedyTerm> terms;
    std::vector<double> residual_steps;  // squared residual norm after each term
    double residual_norm_sq = 1.0;
    double captured_weight = 0.0;
    std::string branch_id;  // dot-joined maximizer choice indices, "0.0...0" = canonical
    bool orbit_sampled = false;   // some step drew from a sampled orbit continuum
    bool budget_limited = false;  // a degenerate fork was skipped for lack of budget

    /// Number of terms available at recursion depth N (branches may stop early).
    int prefix_len(int N) const;
    /// Squared residual norm after the first prefix_len(N) terms.
    double residual_at(int N) const;
    /// Normalized probability vector p_i = |c_i|^2 / captured over the prefix.
    std::vector<double> probabilities_at(int N) const;
};

/// Runs the recursion on every explored degenerate-choice branch
/// (breadth-first, at most branch_budget branches, canonical branch always
/// kept). Branches are returned sorted by branch_id.
std::vector<GreedyDecomposition> greedy_decompose(const FockVector& state, int max_terms,
                                                  double tol_tail, int branch_budget,
                                                  const SearchConfig& search = {});

/// Signal mode tensor an (N+1)-level ancilla register, ancilla-major:
/// column j of `amplitudes` is the mode amplitude vector in ancilla sector j.
/// Sector 0 is the untagged |0>_B sector, sector i >= 1 carries tag |beta_i>.
struct JointState {
    CMatrix amplitudes;  // (n_max+1) x (N+1)

    std::vector<double> sector_weights() const;
};

/// The CNOT-type tagging unitary
///   U = |a><a| (x) (|b_i><0| + |0><b_i|) + 1(x)1 - |a><a| (x) (|0><0| + |b_i><b_i|)
/// as a dense matrix on the joint space, ancilla-major flattening
/// (joint index = j*(n_max+1) + n). Unitary up to truncation roundoff.
CMatrix build_cnot_unitary(const CoherentLabel& label, int tag_index, int n_max, int N);

/// Applies the tagging unitaries in recursion order to state (x) |0>_B by
/// explicit matrix products; the independent cross-check for the greedy
/// recursion. Throws if any tagged sector is not parallel to its coherent
/// vector within tol_consistency (n_max too small).
JointState gs_unitary_simulate(const FockVector& state, const std::vector<CoherentLabel>& labels,
                               double tol_consistency = 1e-6);

/// Probability vector after projecting onto the tagged subspace and
/// renormalizing: p_i = |c_i|^2 / captured_weight.
std::vector<double> gs_project(const GreedyDecomposition& decomp);

/// Output of the mixed-state Gram-Schmidt map on the trivial extension
/// rho (x) |0><0|. Always an upper bound: the infimum over nontrivial
/// extensions is not searched.
struct GsDensityMap {
    CMatrix projected_joint;  // renormalized, ancilla-major joint density
    std::vector<CoherentLabel> labels;
    CMatrix tagged;  // density in the orthonormal tagged basis {|alpha_i>|beta_i>}
    bool upper_bound = true;
};

GsDensityMap gs_map_density(const FockDensity& rho, int N, const SearchConfig& search = {});

/// Zero-coherence certificate for an explicit classical mixture
/// sum_j w_j |alpha_j><alpha_j|: tags each component with an orthonormal
/// ancilla vector and verifies the extension is diagonal in the tagged basis.
struct ClassicalCertificate {
    double value = 0.0;  // certified alpha-coherence
    CMatrix extension;   // joint density of the tagged extension
    CMatrix tagged;      // its matrix in the tagged basis (diagonal)
    double max_offdiag = 0.0;
};

ClassicalCertificate classical_certificate(
    const std::vector<std::pair<double, CoherentLabel>>& mixture, int n_max);

}  // namespace alphacoh
