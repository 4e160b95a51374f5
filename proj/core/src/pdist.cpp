#include "alphacoh/pdist.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace alphacoh {

namespace {

constexpr double kTolQuad = 1e-4;

double sq(double x) { return x * x; }

}  // namespace

int Quadrature::points_per_axis() const {
    return static_cast<int>(std::lround(2.0 * L / h));
}

double Quadrature::coord(int index) const {
    return -L + (index + 0.5) * h;
}

void Quadrature::validate() const {
    if (!(L > 0.0) || !(h > 0.0) || h > L) {
        throw std::invalid_argument("Quadrature: need 0 < h <= L");
    }
    const int m = points_per_axis();
    if (m < 4 || m > 4096) {
        throw std::invalid_argument("Quadrature: points per axis out of range [4, 4096]");
    }
}

void PDensity::finalize_normalization(double tol_quad) {
    deficit_ = 1.0 - integral();
    if (std::abs(deficit_) > tol_quad) {
        throw std::invalid_argument(
            "PDensity: quadrature integral deviates from 1 beyond tolerance "
            "(support outside window or grid too coarse)");
    }
}

PDensity PDensity::thermal(double nbar, const Quadrature& quad) {
    quad.validate();
    if (!(nbar > 0.0)) throw std::invalid_argument("thermal P density needs nbar > 0");
    PDensity p(PKind::thermal, quad);
    p.nbar_ = nbar;
    p.finalize_normalization(kTolQuad);
    return p;
}

PDensity PDensity::displaced_thermal(double nbar, Complex gamma, const Quadrature& quad) {
    quad.validate();
    if (!(nbar > 0.0)) throw std::invalid_argument("displaced thermal P density needs nbar > 0");
    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
        throw std::invalid_argument("displacement must be finite");
    }
    PDensity p(PKind::displaced_thermal, quad);
    p.nbar_ = nbar;
    p.gamma_ = gamma;
    p.finalize_normalization(kTolQuad);
    return p;
}

PDensity PDensity::photon_added_thermal(double nbar, const Quadrature& quad) {
    quad.validate();
    if (!(nbar > 0.0)) throw std::invalid_argument("photon-added thermal P density needs nbar > 0");
    PDensity p(PKind::photon_added_thermal, quad);
    p.nbar_ = nbar;
    p.finalize_normalization(kTolQuad);
    return p;
}

PDensity PDensity::from_grid(Eigen::MatrixXd values, const Quadrature& quad) {
    quad.validate();
    const int m = quad.points_per_axis();
    if (values.rows() != m || values.cols() != m) {
        throw std::invalid_argument("PDensity::from_grid: value matrix does not match quadrature");
    }
    if (!values.allFinite()) throw std::invalid_argument("PDensity::from_grid: non-finite values");
    PDensity p(PKind::grid, quad);
    p.grid_ = std::move(values);
    p.finalize_normalization(kTolQuad);
    return p;
}

double PDensity::value(Complex alpha) const {
    const double x = alpha.real(), y = alpha.imag();
    switch (kind_) {
        case PKind::thermal:
            return std::exp(-(sq(x) + sq(y)) / nbar_) / (M_PI * nbar_);
        case PKind::displaced_thermal:
            return std::exp(-(sq(x - gamma_.real()) + sq(y - gamma_.imag())) / nbar_) /
                   (M_PI * nbar_);
        case PKind::photon_added_thermal: {
            // a^dag rho_th a, normal-ordered: two d/dalpha d/dalpha* passes on
            // the thermal Gaussian give ((nbar+1)|a|^2 - nbar) e^{-|a|^2/nbar} / (pi nbar^3).
            const double u = sq(x) + sq(y);
            return ((nbar_ + 1.0) * u - nbar_) * std::exp(-u / nbar_) /
                   (M_PI * nbar_ * nbar_ * nbar_);
        }
        case PKind::grid: {
            const double fx = (x + quad_.L) / quad_.h - 0.5;
            const double fy = (y + quad_.L) / quad_.h - 0.5;
            const int m = quad_.points_per_axis();
            const int ix = static_cast<int>(std::floor(fx));
            const int iy = static_cast<int>(std::floor(fy));
            const double tx = fx - ix, ty = fy - iy;
            auto at = [&](int jy, int jx) -> double {
                if (jx < 0 || jy < 0 || jx >= m || jy >= m) return 0.0;
                return grid_(jy, jx);
            };
            return (1 - ty) * ((1 - tx) * at(iy, ix) + tx * at(iy, ix + 1)) +
                   ty * ((1 - tx) * at(iy + 1, ix) + tx * at(iy + 1, ix + 1));
        }
    }
    return 0.0;
}

Eigen::MatrixXd PDensity::sampled() const {
    if (kind_ == PKind::grid) return grid_;
    const int m = quad_.points_per_axis();
    Eigen::MatrixXd out(m, m);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            out(iy, ix) = value(Complex{quad_.coord(ix), quad_.coord(iy)});
        }
    }
    return out;
}

double PDensity::integral() const {
    return sampled().sum() * quad_.h * quad_.h;
}

PDensity PDensity::resampled(const Quadrature& quad) const {
    quad.validate();
    if (kind_ != PKind::grid) {
        PDensity p(kind_, quad);
        p.nbar_ = nbar_;
        p.gamma_ = gamma_;
        p.finalize_normalization(kTolQuad);
        return p;
    }
    const int m = quad.points_per_axis();
    Eigen::MatrixXd out(m, m);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            out(iy, ix) = value(Complex{quad.coord(ix), quad.coord(iy)});
        }
    }
    return from_grid(std::move(out), quad);
}

NegativityReport negativity(const PDensity& p, double tol_neg) {
    NegativityReport report;
    report.quadrature = p.quadrature();
    const Eigen::MatrixXd grid = p.sampled();
    if (grid.minCoeff() >= -tol_neg) return report;  // value exactly 0

    const double cell = p.quadrature().h * p.quadrature().h;
    double neg_sum = 0.0;
    long neg_count = 0;
    for (int iy = 0; iy < grid.rows(); ++iy) {
        for (int ix = 0; ix < grid.cols(); ++ix) {
            const double v = grid(iy, ix);
            if (v < 0.0) {
                neg_sum -= v;
                ++neg_count;
            }
        }
    }
    report.value = neg_sum * cell;
    report.negative_region_area = static_cast<double>(neg_count) * cell;
    return report;
}

bool is_classical(const PDensity& p, double tol_neg) {
    return negativity(p, tol_neg).value == 0.0;
}

namespace {

PDensity sample_transform(const PDensity& p, const std::function<Complex(Complex)>& pre_image) {
    const Quadrature& quad = p.quadrature();
    const int m = quad.points_per_axis();
    Eigen::MatrixXd out(m, m);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            out(iy, ix) = p.value(pre_image(Complex{quad.coord(ix), quad.coord(iy)}));
        }
    }
    const double integral = out.sum() * quad.h * quad.h;
    if (std::abs(integral - 1.0) > kTolQuad) {
        throw std::invalid_argument("transform: support no longer fits the quadrature window");
    }
    return PDensity::from_grid(std::move(out), quad);
}

}  // namespace

PDensity transform_displace(const PDensity& p, Complex gamma) {
    return sample_transform(p, [gamma](Complex a) { return a - gamma; });
}

PDensity transform_phase(const PDensity& p, double theta) {
    const Complex rot = std::exp(Complex{0.0, -theta});
    return sample_transform(p, [rot](Complex a) { return rot * a; });
}

PDensity transform_beamsplitter(const PDensity& p1, const PDensity& p2, double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("beam splitter: t must be in [0, 1]");
    if (!is_classical(p2)) {
        throw std::invalid_argument("beam splitter: ancilla density must be classical");
    }
    const Quadrature& quad = p1.quadrature();
    if (t == 1.0) return p1.resampled(quad);
    if (t == 0.0) return p2.resampled(quad);

    const double st = std::sqrt(t), sr = std::sqrt(1.0 - t);
    const int m = quad.points_per_axis();
    const double h = quad.h;

    // Scaled input on the lattice: f1(b) = p1(b/sqrt(t)) / t.
    Eigen::MatrixXd f1(m, m);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            f1(iy, ix) = p1.value(Complex{quad.coord(ix) / st, quad.coord(iy) / st}) / t;
        }
    }

    // Scaled ancilla kernel on lattice offsets, pruned to significant entries.
    const int w = std::min(m, static_cast<int>(std::ceil(sr * p2.quadrature().L / h)) + 2);
    Eigen::MatrixXd kernel(2 * w + 1, 2 * w + 1);
    double kmax = 0.0;
    for (int dy = -w; dy <= w; ++dy) {
        for (int dx = -w; dx <= w; ++dx) {
            const double v = p2.value(Complex{dx * h / sr, dy * h / sr}) / (1.0 - t);
            kernel(dy + w, dx + w) = v;
            kmax = std::max(kmax, std::abs(v));
        }
    }
    struct Tap {
        int dx, dy;
        double weight;
    };
    std::vector<Tap> taps;
    const double prune = kmax * 1e-17;
    for (int dy = -w; dy <= w; ++dy) {
        for (int dx = -w; dx <= w; ++dx) {
            const double v = kernel(dy + w, dx + w);
            if (std::abs(v) > prune) taps.push_back({dx, dy, v * h * h});
        }
    }

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (const Tap& tap : taps) {
        const int x0 = std::max(0, tap.dx), x1 = std::min(m, m + tap.dx);
        const int y0 = std::max(0, tap.dy), y1 = std::min(m, m + tap.dy);
        if (x0 >= x1 || y0 >= y1) continue;
        out.block(y0, x0, y1 - y0, x1 - x0) +=
            tap.weight * f1.block(y0 - tap.dy, x0 - tap.dx, y1 - y0, x1 - x0);
    }

    const double integral = out.sum() * h * h;
    if (std::abs(integral - 1.0) > kTolQuad) {
        throw std::invalid_argument(
            "beam splitter: output not normalized (window headroom or kernel resolution)");
    }
    return PDensity::from_grid(std::move(out), quad);
}

PDensity mix(const PDensity& p, const PDensity& q, double r) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("mix: r must be in [0, 1]");
    const Quadrature& qa = p.quadrature();
    const Quadrature& qb = q.quadrature();
    if (qa.L != qb.L || qa.h != qb.h) throw std::invalid_argument("mix: quadrature mismatch");
    Eigen::MatrixXd values = r * p.sampled() + (1.0 - r) * q.sampled();
    return PDensity::from_grid(std::move(values), qa);
}

void write_grid_csv(const PDensity& p, std::ostream& os) {
    const Quadrature& quad = p.quadrature();
    const Eigen::MatrixXd grid = p.sampled();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d\n", quad.L, quad.h,
                  static_cast<int>(grid.rows()));
    os << buf;
    for (int iy = 0; iy < grid.rows(); ++iy) {
        for (int ix = 0; ix < grid.cols(); ++ix) {
            std::snprintf(buf, sizeof(buf), "%.12g", grid(iy, ix));
            os << buf << (ix + 1 == grid.cols() ? "\n" : ",");
        }
    }
}

PDensity read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("grid csv: missing header");
    Quadrature quad;
    int rows = 0;
    {
        std::stringstream ss(line);
        std::string tok;
        if (!std::getline(ss, tok, ',')) throw std::invalid_argument("grid csv: bad header");
        quad.L = std::stod(tok);
        if (!std::getline(ss, tok, ',')) throw std::invalid_argument("grid csv: bad header");
        quad.h = std::stod(tok);
        if (!std::getline(ss, tok, ',')) throw std::invalid_argument("grid csv: bad header");
        rows = std::stoi(tok);
    }
    quad.validate();
    if (rows != quad.points_per_axis()) {
        throw std::invalid_argument("grid csv: row count does not match window");
    }
    Eigen::MatrixXd values(rows, rows);
    for (int iy = 0; iy < rows; ++iy) {
        if (!std::getline(is, line)) throw std::invalid_argument("grid csv: truncated file");
        std::stringstream ss(line);
        std::string tok;
        for (int ix = 0; ix < rows; ++ix) {
            if (!std::getline(ss, tok, ',')) throw std::invalid_argument("grid csv: short row");
            values(iy, ix) = std::stod(tok);
        }
    }
    return PDensity::from_grid(std::move(values), quad);
}

void write_grid_csv_file(const PDensity& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_grid_csv(p, os);
}

PDensity read_grid_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open grid file: " + path);
    return read_grid_csv(is);
}

}  // namespace alphacoh
