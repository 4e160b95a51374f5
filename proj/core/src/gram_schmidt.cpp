#include "alphacoh/gram_schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alphacoh {

namespace {

// Recursion stops once the best remaining overlap is numerically zero.
constexpr double kCoeffFloor = 1e-12;

std::vector<int> split_branch_id(const std::string& id) {
    std::vector<int> parts;
    std::stringstream ss(id);
    std::string tok;
    while (std::getline(ss, tok, '.')) parts.push_back(std::stoi(tok));
    return parts;
}

bool branch_id_less(const std::string& a, const std::string& b) {
    const auto pa = split_branch_id(a), pb = split_branch_id(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

struct Branch {
    CVector residual;
    GreedyDecomposition d;
    bool done = false;
};

void apply_choice(Branch& b, const CoherentLabel& label, int n_max) {
    const CVector atom = coherent_vector(label, n_max, /*strict=*/false).amplitudes();
    const Complex c = atom.dot(b.residual);
    b.residual -= c * atom;
    b.d.terms.push_back({label, c});
    b.d.captured_weight += std::norm(c);
    b.d.residual_norm_sq = b.residual.squaredNorm();
    b.d.residual_steps.push_back(b.d.residual_norm_sq);
}

}  // namespace

int GreedyDecomposition::prefix_len(int N) const {
    return std::min<int>(N, static_cast<int>(terms.size()));
}

double GreedyDecomposition::residual_at(int N) const {
    const int k = prefix_len(N);
    return k == 0 ? 1.0 : residual_steps[k - 1];
}

std::vector<double> GreedyDecomposition::probabilities_at(int N) const {
    const int k = prefix_len(N);
    if (k == 0) throw std::invalid_argument("probabilities_at: empty prefix");
    double captured = 0.0;
    for (int i = 0; i < k; ++i) captured += std::norm(terms[i].coeff);
    if (captured <= 0.0) throw std::runtime_error("probabilities_at: zero captured weight");
    std::vector<double> p(k);
    for (int i = 0; i < k; ++i) p[i] = std::norm(terms[i].coeff) / captured;
    return p;
}

std::vector<GreedyDecomposition> greedy_decompose(const FockVector& state, int max_terms,
                                                  double tol_tail, int branch_budget,
                                                  const SearchConfig& search) {
    if (max_terms < 1) throw std::invalid_argument("greedy_decompose: max_terms must be >= 1");
    if (tol_tail <= 0.0) throw std::invalid_argument("greedy_decompose: tol_tail must be > 0");
    if (branch_budget < 1) throw std::invalid_argument("greedy_decompose: branch budget must be >= 1");
    const int n_max = state.n_max();

    std::vector<Branch> branches;
    branches.push_back({state.amplitudes(), GreedyDecomposition{}, false});

    for (int step = 0; step < max_terms; ++step) {
        bool any_active = false;
        std::vector<Branch> next;
        next.reserve(branches.size());
        int alive = static_cast<int>(branches.size());

        for (Branch& b : branches) {
            if (!b.done && (b.d.residual_norm_sq <= tol_tail ||
                            b.d.residual_norm_sq <= search.tol_residual)) {
                b.done = true;
            }
            if (b.done) {
                next.push_back(std::move(b));
                continue;
            }
            const MaximizerSet m = maximize_overlap_raw(b.residual, search);
            if (std::sqrt(m.value) < kCoeffFloor) {
                b.done = true;
                next.push_back(std::move(b));
                continue;
            }
            any_active = true;
            if (m.kind == DegeneracyKind::orbit) b.d.orbit_sampled = true;

            const int n_choices = static_cast<int>(m.maximizers.size());
            const std::string base_id = b.d.branch_id;
            // Degenerate forks, breadth-first within the budget; choice 0
            // continues this branch so the canonical all-zeros id survives.
            for (int k = 1; k < n_choices; ++k) {
                if (alive >= branch_budget) {
                    b.d.budget_limited = true;
                    break;
                }
                Branch fork;
                fork.residual = b.residual;
                fork.d = b.d;
                fork.d.branch_id = base_id.empty() ? std::to_string(k) : base_id + "." + std::to_string(k);
                apply_choice(fork, m.maximizers[k], n_max);
                next.push_back(std::move(fork));
                ++alive;
            }
            b.d.branch_id = base_id.empty() ? "0" : base_id + ".0";
            apply_choice(b, m.maximizers[0], n_max);
            next.push_back(std::move(b));
        }
        branches = std::move(next);
        if (!any_active) break;
    }

    std::vector<GreedyDecomposition> out;
    out.reserve(branches.size());
    for (Branch& b : branches) out.push_back(std::move(b.d));
    std::sort(out.begin(), out.end(), [](const GreedyDecomposition& a, const GreedyDecomposition& b) {
        return branch_id_less(a.branch_id, b.branch_id);
    });
    return out;
}

std::vector<double> JointState::sector_weights() const {
    std::vector<double> w(amplitudes.cols());
    for (int j = 0; j < amplitudes.cols(); ++j) w[j] = amplitudes.col(j).squaredNorm();
    return w;
}

CMatrix build_cnot_unitary(const CoherentLabel& label, int tag_index, int n_max, int N) {
    if (tag_index < 1 || tag_index > N) {
        throw std::out_of_range("build_cnot_unitary: tag_index must be in [1, N]");
    }
    const int d = n_max + 1;
    const int dim = d * (N + 1);
    const CVector a = coherent_vector(label, n_max, /*strict=*/false).amplitudes();
    const CMatrix proj = a * a.adjoint();

    CMatrix u = CMatrix::Identity(dim, dim);
    const int off = tag_index * d;
    u.block(0, 0, d, d) -= proj;
    u.block(off, off, d, d) -= proj;
    u.block(0, off, d, d) = proj;
    u.block(off, 0, d, d) = proj;
    return u;
}

JointState gs_unitary_simulate(const FockVector& state, const std::vector<CoherentLabel>& labels,
                               double tol_consistency) {
    const int n_max = state.n_max();
    const int d = n_max + 1;
    const int N = static_cast<int>(labels.size());
    if (N < 1) throw std::invalid_argument("gs_unitary_simulate: need at least one label");

    CVector v = CVector::Zero(d * (N + 1));
    v.segment(0, d) = state.amplitudes();
    for (int i = 1; i <= N; ++i) {
        const CMatrix u = build_cnot_unitary(labels[i - 1], i, n_max, N);
        v = u * v;
    }

    JointState joint;
    joint.amplitudes = CMatrix(d, N + 1);
    for (int j = 0; j <= N; ++j) joint.amplitudes.col(j) = v.segment(j * d, d);

    const double fnorm = joint.amplitudes.norm();
    if (std::abs(fnorm - 1.0) > 1e-8) {
        throw std::runtime_error("gs_unitary_simulate: joint state lost normalization");
    }
    // Each tagged sector must be parallel to its coherent vector; a stray
    // orthogonal component means the truncation order is too small.
    for (int i = 1; i <= N; ++i) {
        const CVector atom = coherent_vector(labels[i - 1], n_max, /*strict=*/false).amplitudes();
        const CVector sector = joint.amplitudes.col(i);
        const double orth = (sector - atom * atom.dot(sector)).norm();
        if (orth > tol_consistency) {
            throw std::runtime_error("gs_unitary_simulate: truncation-consistency failure; raise n_max");
        }
    }
    return joint;
}

std::vector<double> gs_project(const GreedyDecomposition& decomp) {
    if (decomp.captured_weight <= 0.0) {
        throw std::invalid_argument("gs_project: zero captured weight");
    }
    std::vector<double> p(decomp.terms.size());
    double sum = 0.0;
    for (size_t i = 0; i < decomp.terms.size(); ++i) {
        p[i] = std::norm(decomp.terms[i].coeff) / decomp.captured_weight;
        sum += p[i];
    }
    for (double& x : p) x /= sum;  // kill last-digit drift so p sums to 1 exactly
    return p;
}

GsDensityMap gs_map_density(const FockDensity& rho, int N, const SearchConfig& search) {
    if (N < 1) throw std::invalid_argument("gs_map_density: N must be >= 1");
    const int n_max = rho.n_max();
    const int d = n_max + 1;
    const int dim = d * (N + 1);

    CMatrix joint = CMatrix::Zero(dim, dim);
    joint.block(0, 0, d, d) = rho.matrix();

    std::vector<CoherentLabel> labels;
    for (int i = 1; i <= N; ++i) {
        const CMatrix block00 = joint.block(0, 0, d, d);
        if (block00.trace().real() <= search.tol_residual) break;  // fully captured
        const MaximizerSet m = maximize_husimi_density(block00, search);
        labels.push_back(m.maximizers.front());
        const CMatrix u = build_cnot_unitary(labels.back(), i, n_max, N);
        joint = u * joint * u.adjoint();
    }
    if (labels.empty()) throw std::runtime_error("gs_map_density: no label could be extracted");

    // Pi_GS = sum_i |alpha_i><alpha_i| (x) |beta_i><beta_i|
    CMatrix pi = CMatrix::Zero(dim, dim);
    for (size_t i = 0; i < labels.size(); ++i) {
        const CVector a = coherent_vector(labels[i], n_max, /*strict=*/false).amplitudes();
        const int off = static_cast<int>(i + 1) * d;
        pi.block(off, off, d, d) = a * a.adjoint();
    }
    CMatrix projected = pi * joint * pi;
    const double tr = projected.trace().real();
    if (tr < 1e-12) throw std::runtime_error("gs_map_density: projected trace collapsed");
    projected /= tr;

    GsDensityMap out;
    out.labels = labels;
    out.upper_bound = true;
    const int k = static_cast<int>(labels.size());
    out.tagged = CMatrix(k, k);
    std::vector<CVector> atoms;
    for (int i = 0; i < k; ++i) {
        atoms.push_back(coherent_vector(labels[i], n_max, /*strict=*/false).amplitudes());
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            out.tagged(i, j) =
                atoms[i].dot(projected.block((i + 1) * d, (j + 1) * d, d, d) * atoms[j]);
        }
    }
    out.projected_joint = std::move(projected);
    return out;
}

ClassicalCertificate classical_certificate(
    const std::vector<std::pair<double, CoherentLabel>>& mixture, int n_max) {
    if (mixture.empty()) throw std::invalid_argument("classical_certificate: empty mixture");
    double wsum = 0.0;
    for (const auto& [w, label] : mixture) {
        if (w <= 0.0) throw std::invalid_argument("classical_certificate: weights must be positive");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-10) {
        throw std::invalid_argument("classical_certificate: weights must sum to 1");
    }

    const int d = n_max + 1;
    const int m = static_cast<int>(mixture.size());
    std::vector<CVector> atoms;
    for (const auto& [w, label] : mixture) {
        atoms.push_back(coherent_vector(label, n_max).amplitudes());
    }

    ClassicalCertificate cert;
    cert.extension = CMatrix::Zero(d * m, d * m);
    for (int j = 0; j < m; ++j) {
        cert.extension.block(j * d, j * d, d, d) = mixture[j].first * (atoms[j] * atoms[j].adjoint());
    }
    cert.tagged = CMatrix(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            cert.tagged(i, j) = atoms[i].dot(cert.extension.block(i * d, j * d, d, d) * atoms[j]);
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j) cert.max_offdiag = std::max(cert.max_offdiag, std::abs(cert.tagged(i, j)));
        }
    }
    if (cert.max_offdiag > 1e-10) {
        throw std::runtime_error("classical_certificate: tagged extension is not diagonal");
    }
    cert.value = 0.0;
    return cert;
}

}  // namespace alphacoh
