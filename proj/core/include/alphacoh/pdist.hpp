#pragma once

#include <iosfwd>
#include <string>

#include "alphacoh/fock.hpp"

namespace alphacoh {

/// Square quadrature window [-L, L]^2 with spacing h; grid points sit at cell
/// centers, so the midpoint rule is sum * h^2.
struct Quadrature {
    double L = 6.0;
    double h = 0.05;

    int points_per_axis() const;
    double coord(int index) const;  // center of cell `index`

    void validate() const;
};

enum class PKind { thermal, displaced_thermal, photon_added_thermal, grid };

/// A regular Glauber-Sudarshan P density. Only kinds with a regular,
/// finite-valued P are representable; singular P functions (Fock, squeezed)
/// have no constructor here by design. Analytic kinds keep their closed form
/// and are sampled to the grid where quadrature is needed.
class PDensity {
public:
    static PDensity thermal(double nbar, const Quadrature& quad = {});
    static PDensity displaced_thermal(double nbar, Complex gamma, const Quadrature& quad = {});
    /// a^dag rho_th a / (nbar + 1); the canonical regular density with a
    /// genuine negative region (disk |alpha|^2 < nbar/(nbar+1)).
    static PDensity photon_added_thermal(double nbar, const Quadrature& quad = {});
    static PDensity from_grid(Eigen::MatrixXd values, const Quadrature& quad);

    PKind kind() const { return kind_; }
    const Quadrature& quadrature() const { return quad_; }
    double normalization_deficit() const { return deficit_; }

    /// Pointwise value; analytic closed form, or bilinear interpolation for
    /// grid kind (zero outside the window).
    double value(Complex alpha) const;

    /// Midpoint-quadrature integral over the window.
    double integral() const;

    /// The density sampled on the quadrature lattice, (iy, ix) indexing.
    Eigen::MatrixXd sampled() const;

    /// Same density on a different window (used by refinement checks).
    PDensity resampled(const Quadrature& quad) const;

private:
    PDensity(PKind kind, const Quadrature& quad) : kind_(kind), quad_(quad) {}
    void finalize_normalization(double tol_quad);

    PKind kind_;
    Quadrature quad_;
    double nbar_ = 0.0;
    Complex gamma_{0.0, 0.0};
    Eigen::MatrixXd grid_;
    double deficit_ = 0.0;
};

struct NegativityReport {
    double value = 0.0;                // - integral of p over {p < 0}
    double negative_region_area = 0.0;
    Quadrature quadrature;
};

/// Definition of the negativity: integral of -p over the pointwise-negative
/// region. Returns exactly 0 when no grid point drops below -tol_neg.
NegativityReport negativity(const PDensity& p, double tol_neg = 1e-12);

bool is_classical(const PDensity& p, double tol_neg = 1e-12);

/// p'(alpha) = p(alpha - gamma), resampled; throws if mass leaves the window.
PDensity transform_displace(const PDensity& p, Complex gamma);

/// p'(alpha) = p(e^{-i theta} alpha).
PDensity transform_phase(const PDensity& p, double theta);

/// Output-mode P density of a beam splitter with transmissivity t:
/// the distribution of sqrt(t) a + sqrt(1-t) a', a ~ p1, a' ~ p2, computed by
/// grid convolution of the scaled densities. p2 must be classical.
PDensity transform_beamsplitter(const PDensity& p1, const PDensity& p2, double t);

/// Pointwise convex mixture r p + (1-r) q on the common grid.
PDensity mix(const PDensity& p, const PDensity& q, double r);

/// Grid file format: one header line "L,h,rows" then row-major CSV values.
void write_grid_csv(const PDensity& p, std::ostream& os);
PDensity read_grid_csv(std::istream& is);
void write_grid_csv_file(const PDensity& p, const std::string& path);
PDensity read_grid_csv_file(const std::string& path);

}  // namespace alphacoh
