#pragma once

#include <vector>

#include "alphacoh/fock.hpp"

namespace alphacoh {

/// Knobs for the deterministic global maximization of the coherent-state
/// overlap. Defaults match the library-wide contract; all stages (coarse
/// grid, simplex refinement, clustering) are seedless and order-fixed.
struct SearchConfig {
    int grid_points = 121;      // per axis of the coarse grid
    double margin = 3.0;        // search radius = sqrt(<n>) + margin
    int refine_iters = 200;     // Nelder-Mead iteration cap per candidate
    double refine_tol = 1e-10;  // objective spread for simplex convergence
    double tol_deg = 1e-6;      // relative window for degenerate maximizers
    double tol_cluster = 1e-4;  // cluster radius in the complex plane
    int k_orbit = 8;            // cluster count that flags a circular orbit
    double floor_value = 1e-15;
    double tol_residual = 1e-12;  // minimum squared norm worth optimizing

    void validate() const;
};

enum class DegeneracyKind { unique, discrete, orbit };

/// All grid-distinct global maximizers of the Husimi objective, sorted
/// lexicographically by (Re alpha, Im alpha). For orbit-type degeneracy the
/// list holds k_orbit deterministic representatives of the circle.
struct MaximizerSet {
    std::vector<CoherentLabel> maximizers;
    double value = 0.0;
    DegeneracyKind kind = DegeneracyKind::unique;
    double search_radius = 0.0;
};

/// |<alpha|psi>|^2 through the renormalized truncated coherent vector.
double husimi(const FockVector& state, const CoherentLabel& alpha);

/// Same objective on a raw, possibly sub-normalized residual vector.
double husimi_raw(const CVector& raw, Complex alpha);

/// <alpha|rho|alpha> for a (possibly sub-normalized) Hermitian block.
double husimi_density(const CMatrix& rho, Complex alpha);

MaximizerSet maximize_overlap(const FockVector& state, const SearchConfig& config = {});

/// Greedy-recursion entry point: residual vectors lose norm as terms are
/// subtracted, so this variant checks the vanished-residual precondition.
MaximizerSet maximize_overlap_raw(const CVector& residual, const SearchConfig& config = {});

/// Maximizes Tr(|alpha><alpha| rho) over the disk; used on the sector-0
/// block of joint densities.
MaximizerSet maximize_husimi_density(const CMatrix& rho, const SearchConfig& config = {});

}  // namespace alphacoh
