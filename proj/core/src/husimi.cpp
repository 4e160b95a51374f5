#include "alphacoh/husimi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace alphacoh {

namespace {

// Fraction of the coarse-grid maximum a grid local maximum must reach to be
// refined. Wide enough to catch degenerate peaks, tight enough to skip noise.
constexpr double kCandidateBand = 0.15;
constexpr int kMaxCandidates = 256;

struct Candidate {
    Complex z;
    double value;
};

// <alpha|psi> via the truncated renormalized coherent vector, one pass.
double husimi_raw_impl(const CVector& raw, Complex alpha) {
    const int n_max = static_cast<int>(raw.size()) - 1;
    Complex amp{1.0, 0.0};  // alpha^n / sqrt(n!) running term, exp factor at the end
    Complex acc = std::conj(amp) * raw(0);
    double norm_sq = 1.0;
    for (int n = 0; n < n_max; ++n) {
        amp *= alpha / std::sqrt(static_cast<double>(n + 1));
        acc += std::conj(amp) * raw(n + 1);
        norm_sq += std::norm(amp);
    }
    // e^{-|a|^2} cancels between |acc|^2 and the renormalization of |alpha>.
    return std::norm(acc) / norm_sq;
}

double husimi_density_impl(const CMatrix& rho, Complex alpha) {
    const int n_max = static_cast<int>(rho.rows()) - 1;
    CVector a(n_max + 1);
    a(0) = Complex{1.0, 0.0};
    double norm_sq = 1.0;
    for (int n = 0; n < n_max; ++n) {
        a(n + 1) = a(n) * alpha / std::sqrt(static_cast<double>(n + 1));
        norm_sq += std::norm(a(n + 1));
    }
    const Complex q = a.dot(rho * a);  // <a|rho|a>, unnormalized coherent vector
    return std::max(0.0, q.real() / norm_sq);
}

// Deterministic Nelder-Mead on -objective over (Re z, Im z). Returns the best
// point ever evaluated, so refinement can never lose against its start.
template <typename F>
Candidate nelder_mead(const F& objective, Complex start, double step, const SearchConfig& cfg) {
    struct Vertex {
        double x, y, f;
    };
    auto eval = [&](double x, double y) { return -objective(Complex{x, y}); };
    std::array<Vertex, 3> s{Vertex{start.real(), start.imag(), eval(start.real(), start.imag())},
                            Vertex{start.real() + step, start.imag(), 0.0},
                            Vertex{start.real(), start.imag() + step, 0.0}};
    s[1].f = eval(s[1].x, s[1].y);
    s[2].f = eval(s[2].x, s[2].y);
    Vertex best = *std::min_element(s.begin(), s.end(),
                                    [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    for (int it = 0; it < cfg.refine_iters; ++it) {
        std::stable_sort(s.begin(), s.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        if (s[0].f < best.f) best = s[0];
        if (s[2].f - s[0].f <= cfg.refine_tol) break;

        const double cx = 0.5 * (s[0].x + s[1].x);
        const double cy = 0.5 * (s[0].y + s[1].y);
        auto make = [&](double coef) {
            Vertex v{cx + coef * (cx - s[2].x), cy + coef * (cy - s[2].y), 0.0};
            v.f = eval(v.x, v.y);
            return v;
        };
        Vertex refl = make(1.0);
        if (refl.f < s[0].f) {
            Vertex expanded = make(2.0);
            s[2] = (expanded.f < refl.f) ? expanded : refl;
        } else if (refl.f < s[1].f) {
            s[2] = refl;
        } else {
            Vertex contr = (refl.f < s[2].f) ? make(0.5) : make(-0.5);
            if (contr.f < std::min(refl.f, s[2].f)) {
                s[2] = contr;
            } else {
                for (int k = 1; k < 3; ++k) {
                    s[k].x = s[0].x + 0.5 * (s[k].x - s[0].x);
                    s[k].y = s[0].y + 0.5 * (s[k].y - s[0].y);
                    s[k].f = eval(s[k].x, s[k].y);
                }
            }
        }
    }
    for (const Vertex& v : s) {
        if (v.f < best.f) best = v;
    }
    return Candidate{Complex{best.x, best.y}, -best.f};
}

// Coordinate-wise parabolic polish around a converged simplex point. The
// simplex stops on objective spread, which leaves O(sqrt(tol)) position
// error; two parabola fits per axis at shrinking steps pull the position
// down to the curvature-limited optimum. Never accepts a worse point.
template <typename F>
Candidate polish(const F& objective, Candidate c) {
    for (const double delta : {1e-3, 3e-5, 1e-6}) {
        for (int axis = 0; axis < 2; ++axis) {
            const Complex step = (axis == 0) ? Complex{delta, 0.0} : Complex{0.0, delta};
            const double f0 = c.value;
            const double fp = objective(c.z + step);
            const double fm = objective(c.z - step);
            const double denom = fm - 2.0 * f0 + fp;
            if (!(denom < 0.0)) continue;  // not curved like a maximum here
            double offset = 0.5 * (fm - fp) / denom;
            offset = std::clamp(offset, -1.0, 1.0);
            const Complex trial = c.z + offset * step;
            const double ft = objective(trial);
            if (ft > c.value) c = {trial, ft};
            if (fp > c.value) c = {c.z + step, fp};
            if (fm > c.value) c = {c.z - step, fm};
        }
    }
    return c;
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

template <typename F>
MaximizerSet maximize_objective(const F& objective, double radius, const SearchConfig& cfg) {
    cfg.validate();
    const int g = cfg.grid_points;
    Eigen::MatrixXd values(g, g);
    std::vector<double> axis(g);
    for (int i = 0; i < g; ++i) axis[i] = -radius + 2.0 * radius * i / (g - 1);

    double vmax = -1.0;
    for (int iy = 0; iy < g; ++iy) {
        for (int ix = 0; ix < g; ++ix) {
            const double v = objective(Complex{axis[ix], axis[iy]});
            values(iy, ix) = v;
            if (v > vmax) vmax = v;
        }
    }
    if (vmax < cfg.floor_value) {
        throw std::runtime_error("maximize: no objective value above floor; internal error");
    }

    // Grid local maxima within the candidate band, refined independently.
    std::vector<Candidate> candidates;
    const double band_floor = vmax * (1.0 - kCandidateBand);
    for (int iy = 0; iy < g; ++iy) {
        for (int ix = 0; ix < g; ++ix) {
            const double v = values(iy, ix);
            if (v < band_floor) continue;
            bool is_peak = true;
            for (int dy = -1; dy <= 1 && is_peak; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jy < 0 || jx >= g || jy >= g) continue;
                    if (values(jy, jx) > v) {
                        is_peak = false;
                        break;
                    }
                }
            }
            if (is_peak) candidates.push_back({Complex{axis[ix], axis[iy]}, v});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    if (candidates.size() > kMaxCandidates) candidates.resize(kMaxCandidates);

    const double step = 0.5 * (axis[1] - axis[0]);
    std::vector<Candidate> refined;
    refined.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        refined.push_back(polish(objective, nelder_mead(objective, c.z, step, cfg)));
    }

    double best = vmax;  // refinement never loses against the coarse grid
    for (const Candidate& c : refined) best = std::max(best, c.value);

    // Keep degenerate winners, cluster them, pick per-cluster representatives.
    const double keep_floor = best * (1.0 - cfg.tol_deg);
    std::vector<Candidate> winners;
    for (const Candidate& c : refined) {
        if (c.value >= keep_floor) winners.push_back(c);
    }
    std::vector<int> cluster_of(winners.size(), -1);
    std::vector<Candidate> reps;
    for (size_t i = 0; i < winners.size(); ++i) {
        for (size_t r = 0; r < reps.size(); ++r) {
            if (std::abs(winners[i].z - reps[r].z) <= cfg.tol_cluster) {
                cluster_of[i] = static_cast<int>(r);
                if (winners[i].value > reps[r].value ||
                    (winners[i].value == reps[r].value && lex_less(winners[i].z, reps[r].z))) {
                    reps[r] = winners[i];
                }
                break;
            }
        }
        if (cluster_of[i] < 0) {
            cluster_of[i] = static_cast<int>(reps.size());
            reps.push_back(winners[i]);
        }
    }

    MaximizerSet out;
    out.search_radius = radius;
    out.value = best;

    // Orbit detection: many equal-value clusters on a common circle means the
    // maximizer set is a continuum; represent it by k_orbit canonical phases.
    bool orbit = false;
    if (static_cast<int>(reps.size()) >= cfg.k_orbit) {
        double rmin = std::abs(reps[0].z), rmax = rmin;
        for (const Candidate& c : reps) {
            rmin = std::min(rmin, std::abs(c.z));
            rmax = std::max(rmax, std::abs(c.z));
        }
        if (rmax - rmin <= 1e-3 * (1.0 + rmax)) orbit = true;
    }
    if (orbit) {
        double rho = 0.0;
        for (const Candidate& c : reps) rho += std::abs(c.z);
        rho /= static_cast<double>(reps.size());
        out.kind = DegeneracyKind::orbit;
        std::vector<Complex> pts;
        for (int j = 0; j < cfg.k_orbit; ++j) {
            const double phi = 2.0 * M_PI * j / cfg.k_orbit;
            pts.push_back(rho * Complex{std::cos(phi), std::sin(phi)});
        }
        std::sort(pts.begin(), pts.end(), lex_less);
        for (Complex z : pts) out.maximizers.push_back(CoherentLabel{z});
    } else {
        out.kind = (reps.size() == 1) ? DegeneracyKind::unique : DegeneracyKind::discrete;
        std::vector<Complex> pts;
        for (const Candidate& c : reps) pts.push_back(c.z);
        std::sort(pts.begin(), pts.end(), lex_less);
        for (Complex z : pts) out.maximizers.push_back(CoherentLabel{z});
    }
    return out;
}

double search_radius_for(double nbar, int n_max, const SearchConfig& cfg) {
    // Cap: past |alpha|^2 ~ n_max most of the coherent state is truncated and
    // the renormalized objective loses meaning.
    return std::min(std::sqrt(std::max(nbar, 0.0)) + cfg.margin,
                    0.8 * std::sqrt(static_cast<double>(n_max)));
}

}  // namespace

void SearchConfig::validate() const {
    if (grid_points < 3 || margin <= 0.0 || refine_iters < 1 || refine_tol <= 0.0 ||
        tol_deg <= 0.0 || tol_cluster <= 0.0 || k_orbit < 2 || floor_value <= 0.0 ||
        tol_residual <= 0.0) {
        throw std::invalid_argument("SearchConfig: all tolerances and counts must be positive");
    }
}

double husimi(const FockVector& state, const CoherentLabel& alpha) {
    return husimi_raw_impl(state.amplitudes(), alpha.alpha);
}

double husimi_raw(const CVector& raw, Complex alpha) {
    return husimi_raw_impl(raw, alpha);
}

double husimi_density(const CMatrix& rho, Complex alpha) {
    return husimi_density_impl(rho, alpha);
}

MaximizerSet maximize_overlap(const FockVector& state, const SearchConfig& config) {
    const double radius = search_radius_for(mean_photon(state), state.n_max(), config);
    return maximize_objective(
        [&](Complex z) { return husimi_raw_impl(state.amplitudes(), z); }, radius, config);
}

MaximizerSet maximize_overlap_raw(const CVector& residual, const SearchConfig& config) {
    if (residual.squaredNorm() <= config.tol_residual) {
        throw std::invalid_argument("maximize_overlap_raw: residual norm below tol_residual");
    }
    const int n_max = static_cast<int>(residual.size()) - 1;
    const double radius = search_radius_for(mean_photon_raw(residual), n_max, config);
    return maximize_objective([&](Complex z) { return husimi_raw_impl(residual, z); }, radius,
                              config);
}

MaximizerSet maximize_husimi_density(const CMatrix& rho, const SearchConfig& config) {
    const double tr = rho.trace().real();
    if (tr <= config.tol_residual) {
        throw std::invalid_argument("maximize_husimi_density: trace below tol_residual");
    }
    const int n_max = static_cast<int>(rho.rows()) - 1;
    double nbar = 0.0;
    for (int n = 1; n <= n_max; ++n) nbar += n * rho(n, n).real();
    const double radius = search_radius_for(nbar / tr, n_max, config);
    return maximize_objective([&](Complex z) { return husimi_density_impl(rho, z); }, radius,
                              config);
}

}  // namespace alphacoh
