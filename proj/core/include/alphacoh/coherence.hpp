#pragma once

#include <string>
#include <vector>

#include "alphacoh/fock.hpp"
#include "alphacoh/gram_schmidt.hpp"

namespace alphacoh {

enum class Measure { rel_entropy, l1 };

/// Depth schedule for the N -> infinity limit of the Gram-Schmidt recursion.
struct ConvergenceSchedule {
    std::vector<int> n_schedule{2, 4, 8, 16, 32};
    double tol_tail = 1e-4;  // residual weight that counts as converged
    double tol_conv = 1e-3;  // |value(N) - value(N/2)| threshold
    int branch_budget = 8;

    void validate() const;
};

enum class ReportStatus { converged, not_converged };

struct BranchValue {
    std::string branch_id;
    double value;
};

struct CoherenceReport {
    double value = 0.0;  // nats for rel_entropy
    Measure measure = Measure::rel_entropy;
    int N_used = 0;
    double residual_tail = 1.0;  // realized epsilon of the winning branch
    std::vector<BranchValue> branch_values;
    std::vector<double> probabilities;  // winning branch, tagged basis
    bool upper_bound = false;
    ReportStatus status = ReportStatus::converged;
    GreedyDecomposition winning_branch;
};

/// S(rho_diag) - S(rho) in nats, clamped at 0 from below.
double rel_entropy_coherence(const CMatrix& rho);
/// Pure-state shortcut: Shannon entropy of the tagged probability vector.
double rel_entropy_coherence(const std::vector<double>& p);

/// sum_{i != j} |rho_ij|.
double l1_coherence(const CMatrix& rho);
/// Pure-state shortcut from probabilities: (sum_i sqrt(p_i))^2 - 1.
double l1_coherence_pure(const std::vector<double>& p);

/// The alpha-coherence of a pure state: greedy decomposition over the depth
/// schedule, minimum over explored degenerate branches, convergence declared
/// when the residual tail and the value increment are both below tolerance.
/// Non-convergence is reported in the status field, never silently.
CoherenceReport alpha_coherence(const FockVector& state, Measure measure,
                                const ConvergenceSchedule& schedule = {},
                                const SearchConfig& search = {});

/// Both measures from a single decomposition run; convergence is tracked on
/// the primary measure's value sequence.
struct DualReport {
    CoherenceReport rel;
    CoherenceReport l1;
};
DualReport alpha_coherence_dual(const FockVector& state, const ConvergenceSchedule& schedule = {},
                                const SearchConfig& search = {},
                                Measure primary = Measure::rel_entropy);

enum class StateFamily { cat_even, cat_odd, fock, squeezed };

struct CurveRow {
    double param = 0.0;
    double mean_photon = 0.0;
    DualReport report;
};

/// One row per parameter over a uniform grid; fock parameters are rounded to
/// the nearest photon number.
std::vector<CurveRow> coherence_curve(StateFamily family, double param_min, double param_max,
                                      int steps, int n_max, const ConvergenceSchedule& schedule = {},
                                      const SearchConfig& search = {});

FockVector make_family_state(StateFamily family, double param, int n_max);

}  // namespace alphacoh
