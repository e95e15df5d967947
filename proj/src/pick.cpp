#include "bergman/pick.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "bergman/sampling.hpp"

namespace bergman {

// ---- HermitianMatrix ------------------------------------------------------

namespace {

void require_square(Eigen::Index rows, Eigen::Index cols) {
    if (rows != cols) {
        throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square, got " +
                                                      std::to_string(rows) + "x" + std::to_string(cols));
    }
}

}  // namespace

template <>
HermitianMatrix<ComplexF>::HermitianMatrix(DenseMatrix<ComplexF> entries) : entries_(std::move(entries)) {
    require_square(entries_.rows(), entries_.cols());
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const ComplexF upper = entries_(i, j);
            const ComplexF lower = entries_(j, i);
            const double scale = std::max({1.0, std::abs(upper), std::abs(lower)});
            if (std::abs(upper - std::conj(lower)) > 1e-12 * scale) {
                throw Error(ErrorKind::DomainViolation, "matrix is not Hermitian at (" + std::to_string(i) +
                                                            ", " + std::to_string(j) + ")");
            }
            if (i == j) {
                entries_(i, i) = upper.real();
            } else {
                entries_(j, i) = std::conj(upper);
            }
        }
    }
}

template <>
HermitianMatrix<QComplex>::HermitianMatrix(DenseMatrix<QComplex> entries) : entries_(std::move(entries)) {
    require_square(entries_.rows(), entries_.cols());
    const Eigen::Index n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if (entries_(i, j) != conj(entries_(j, i))) {
                throw Error(ErrorKind::DomainViolation, "matrix is not Hermitian at (" + std::to_string(i) +
                                                            ", " + std::to_string(j) + ")");
            }
        }
    }
}

HermitianMatrixF to_float(const HermitianMatrixQ& A) {
    DenseMatrix<ComplexF> out(A.size(), A.size());
    for (Eigen::Index i = 0; i < A.size(); ++i) {
        for (Eigen::Index j = 0; j < A.size(); ++j) out(i, j) = to_float(A(i, j));
    }
    return HermitianMatrixF(std::move(out));
}

// ---- Pick matrices --------------------------------------------------------

namespace {

bool same_node(const ComplexF& a, const ComplexF& b) { return std::abs(a - b) <= 1e-10; }
bool same_node(const QComplex& a, const QComplex& b) { return a == b; }

template <class Scalar>
void check_interpolation_data(std::span<const DiskPoint<Scalar>> nodes,
                              std::span<const DiskPoint<Scalar>> targets) {
    if (nodes.size() != targets.size() || nodes.empty()) {
        throw Error(ErrorKind::LengthMismatch, "need equally many nodes and targets (at least one), got " +
                                                   std::to_string(nodes.size()) + " and " +
                                                   std::to_string(targets.size()));
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (same_node(nodes[i].value(), nodes[j].value())) {
                throw Error(ErrorKind::DuplicateNodes, "nodes " + std::to_string(i) + " and " +
                                                           std::to_string(j) + " coincide");
            }
        }
    }
}

}  // namespace

template <class Scalar>
HermitianMatrix<Scalar> pick_matrix(std::span<const DiskPoint<Scalar>> nodes,
                                    std::span<const DiskPoint<Scalar>> targets) {
    check_interpolation_data(nodes, targets);
    const auto n = static_cast<Eigen::Index>(nodes.size());
    DenseMatrix<Scalar> P(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const Scalar& li = nodes[i].value();
            const Scalar& lj = nodes[j].value();
            const Scalar& wi = targets[i].value();
            const Scalar& wj = targets[j].value();
            P(i, j) = (Scalar(1) - wi * conj(wj)) / (Scalar(1) - li * conj(lj));
            P(j, i) = conj(P(i, j));
        }
    }
    return HermitianMatrix<Scalar>(std::move(P));
}

template <class Scalar>
HermitianMatrix<Scalar> hadamard(const HermitianMatrix<Scalar>& A, const HermitianMatrix<Scalar>& B) {
    if (A.size() != B.size()) {
        throw Error(ErrorKind::DimensionMismatch, "Schur product of " + std::to_string(A.size()) + "x" +
                                                      std::to_string(A.size()) + " and " +
                                                      std::to_string(B.size()) + "x" +
                                                      std::to_string(B.size()) + " matrices");
    }
    return HermitianMatrix<Scalar>(A.entries().cwiseProduct(B.entries()));
}

template <class Scalar>
HermitianMatrix<Scalar> pick_matrix_squared(std::span<const DiskPoint<Scalar>> nodes,
                                            std::span<const DiskPoint<Scalar>> targets) {
    const HermitianMatrix<Scalar> P = pick_matrix(nodes, targets);
    return hadamard(P, P);
}

template HermitianMatrixF pick_matrix(std::span<const DiskPointF>, std::span<const DiskPointF>);
template HermitianMatrixQ pick_matrix(std::span<const DiskPointQ>, std::span<const DiskPointQ>);
template HermitianMatrixF pick_matrix_squared(std::span<const DiskPointF>, std::span<const DiskPointF>);
template HermitianMatrixQ pick_matrix_squared(std::span<const DiskPointQ>, std::span<const DiskPointQ>);
template HermitianMatrixF hadamard(const HermitianMatrixF&, const HermitianMatrixF&);
template HermitianMatrixQ hadamard(const HermitianMatrixQ&, const HermitianMatrixQ&);

// ---- positivity -----------------------------------------------------------

std::vector<double> jacobi_eigenvalues(const DenseMatrix<ComplexF>& input, double off_tol, int max_sweeps) {
    DenseMatrix<ComplexF> A = input;
    const Eigen::Index n = A.rows();
    const double scale = std::max(1.0, A.norm());

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i != j) s += std::norm(A(i, j));
            }
        }
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && off_norm() >= off_tol * scale; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(A(p, q));
                if (apq_abs == 0.0) continue;
                // Phase-rotate so the (p,q) entry is real, then apply a real
                // Jacobi rotation: U = diag(1, e^{-i phase}) * [[c, s], [-s, c]].
                const ComplexF phase = A(p, q) / apq_abs;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq_abs);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const ComplexF u_qp = -s * std::conj(phase);
                const ComplexF u_qq = c * std::conj(phase);
                // A <- A U  (columns p, q)
                for (Eigen::Index k = 0; k < n; ++k) {
                    const ComplexF akp = A(k, p);
                    const ComplexF akq = A(k, q);
                    A(k, p) = akp * c + akq * u_qp;
                    A(k, q) = akp * s + akq * u_qq;
                }
                // A <- U^H A  (rows p, q)
                for (Eigen::Index k = 0; k < n; ++k) {
                    const ComplexF apk = A(p, k);
                    const ComplexF aqk = A(q, k);
                    A(p, k) = c * apk + std::conj(u_qp) * aqk;
                    A(q, k) = s * apk + std::conj(u_qq) * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = A(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

PsdVerdict psd_float(const HermitianMatrixF& A, double tol) {
    PsdVerdict v;
    v.mode = PsdMode::Float;
    if (A.size() == 0) {
        v.is_psd = true;
        return v;
    }
    v.eigenvalues = jacobi_eigenvalues(A.entries());
    v.min_eigenvalue = v.eigenvalues.front();
    const double scale = std::max(1.0, A.entries().cwiseAbs().maxCoeff());
    v.is_psd = v.min_eigenvalue >= -tol * scale;
    return v;
}

QComplex det_exact(const DenseMatrix<QComplex>& input) {
    require_square(input.rows(), input.cols());
    DenseMatrix<QComplex> A = input;
    const Eigen::Index n = A.rows();
    QComplex det(1);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        while (pivot < n && A(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return QComplex(0);
        if (pivot != col) {
            A.row(pivot).swap(A.row(col));
            det = -det;
        }
        det *= A(col, col);
        const QComplex inv = QComplex(1) / A(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (A(r, col).is_zero()) continue;
            const QComplex factor = A(r, col) * inv;
            for (Eigen::Index k = col; k < n; ++k) A(r, k) -= factor * A(col, k);
        }
    }
    return det;
}

Rational det_exact(const HermitianMatrixQ& A) {
    if (A.size() > kMaxExactDimension) {
        throw Error(ErrorKind::DimensionTooLarge, "exact determinant limited to n <= 4, got n = " +
                                                      std::to_string(A.size()));
    }
    const QComplex d = det_exact(A.entries());
    // Hermitian input has a real determinant.
    return d.real();
}

PsdVerdict psd_exact(const HermitianMatrixQ& A) {
    const Eigen::Index n = A.size();
    if (n > kMaxExactDimension) {
        throw Error(ErrorKind::DimensionTooLarge, "exact PSD test limited to n <= 4, got n = " +
                                                      std::to_string(n));
    }
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int k = 0; k < n; ++k) {
            if (mask & (1u << k)) idx.push_back(k);
        }
        subsets.push_back(std::move(idx));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    PsdVerdict v;
    v.mode = PsdMode::Exact;
    v.is_psd = true;
    for (const auto& idx : subsets) {
        const auto k = static_cast<Eigen::Index>(idx.size());
        DenseMatrix<QComplex> sub(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = A(idx[i], idx[j]);
        }
        Rational minor = det_exact(sub).real();
        if (sgn(minor) < 0) {
            v.is_psd = false;
            v.minor_indices = idx;
            v.minor_value = std::move(minor);
            break;
        }
    }
    return v;
}

// ---- two-point problems ---------------------------------------------------

TwoPointProblem::TwoPointProblem(DiskPointF l1, DiskPointF l2, DiskPointF w1, DiskPointF w2)
    : lambda1(l1), lambda2(l2), omega1(w1), omega2(w2) {
    if (same_node(l1.value(), l2.value())) {
        throw Error(ErrorKind::DuplicateNodes, "interpolation nodes must be distinct");
    }
}

ComplexF SchurInterpolant::operator()(ComplexF z) const {
    return disk_mobius(omega1, c * disk_mobius(lambda1, z));
}

SchurInterpolant solve_schur_two_point(const TwoPointProblem& p) {
    const ComplexF w1 = p.omega1.value();
    const ComplexF l1 = p.lambda1.value();
    ComplexF c{0.0, 0.0};
    if (w1 != p.omega2.value()) {
        c = disk_mobius(w1, p.omega2.value()) / disk_mobius(l1, p.lambda2.value());
    }
    if (std::abs(c) > 1.0 + kSchurSlack) {
        throw InfeasibleError("no Schur function interpolates the data: |c| = " + format(std::abs(c)),
                              p.rho_nodes(), p.rho_targets(), std::abs(c));
    }
    return {c, l1, w1};
}

KVectorF negative_unit_orthogonal(const KVectorF& x) {
    if (is_zero(x)) return KVectorF(0.0, 1.0);
    const double q = k_norm_sq(x);
    if (!(q > 0.0)) {
        throw Error(ErrorKind::NonPositiveSelfInner, "<x,x>_K = " + format(q) + " is not positive");
    }
    return KVectorF(std::conj(x(1)), std::conj(x(0))) / std::sqrt(q);
}

TwoPointContraction build_contraction_T(const TwoPointProblem& p, double slack) {
    const double rho_l = p.rho_nodes();
    const double rho_w = p.rho_targets();
    if (rho_w > rho_l + slack) {
        throw InfeasibleError("rho(w1,w2) = " + format(rho_w) + " exceeds rho(l1,l2) = " + format(rho_l),
                              rho_l, rho_w);
    }
    TwoPointContraction out;
    out.lambda_vec = moebius(phi(p.lambda2), phi(p.lambda1));
    // phi_a(a) = 0; set it exactly so the orthogonal complement is (0, 1).
    out.omega_vec = p.omega1.value() == p.omega2.value() ? KVectorF::Zero()
                                                         : moebius(phi(p.omega2), phi(p.omega1));
    out.mu = negative_unit_orthogonal(out.lambda_vec);
    out.nu = negative_unit_orthogonal(out.omega_vec);

    // <z, a>_K = a^H J z
    const KMatrixF J = signature_matrix<ComplexF>();
    const Eigen::RowVector2cd lam_functional = out.lambda_vec.adjoint() * J / k_norm_sq(out.lambda_vec);
    const Eigen::RowVector2cd mu_functional = out.mu.adjoint() * J;
    out.T = out.omega_vec * lam_functional - out.nu * mu_functional;
    return out;
}

// ---- rational map chains --------------------------------------------------

RationalMapChain::RationalMapChain(std::vector<ChainStep> steps) : steps_(std::move(steps)) {
    for (const auto& step : steps_) {
        if (const auto* m = std::get_if<MoebiusStep>(&step)) require_moebius_base(m->base);
    }
}

KVectorF eval_chain(const RationalMapChain& F, const KVectorF& z) {
    KVectorF value = z;
    const auto& steps = F.steps();
    for (std::size_t k = steps.size(); k-- > 0;) {
        if (const auto* lin = std::get_if<LinearStep>(&steps[k])) {
            value = lin->matrix * value;
            continue;
        }
        const KVectorF& base = std::get<MoebiusStep>(steps[k]).base;
        if (std::abs(moebius_denominator(base, value)) <= KreinTolerances{}.singular) {
            throw ChainStepError("singular denominator at chain step " + std::to_string(k), k);
        }
        value = moebius(base, value);
    }
    return value;
}

RationalMapChain solve_indefinite_two_point(const TwoPointProblem& p, double slack) {
    const TwoPointContraction tc = build_contraction_T(p, slack);
    return RationalMapChain({MoebiusStep{phi(p.omega2)}, LinearStep{tc.T}, MoebiusStep{phi(p.lambda2)}});
}

// ---- ratio-kernel Grams -----------------------------------------------------

namespace {

void require_distinct(std::span<const DiskPointF> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (same_node(points[i].value(), points[j].value())) {
                throw Error(ErrorKind::DuplicateNodes, "Gram points " + std::to_string(i) + " and " +
                                                           std::to_string(j) + " coincide");
            }
        }
    }
}

HermitianMatrixF ratio_gram_from_images(std::span<const KVectorF> sources, std::span<const KVectorF> images) {
    const auto n = static_cast<Eigen::Index>(sources.size());
    DenseMatrix<ComplexF> G(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            G(i, j) = (1.0 - k_inner(images[i], images[j])) / (1.0 - k_inner(sources[i], sources[j]));
            G(j, i) = std::conj(G(i, j));
        }
        G(i, i) = G(i, i).real();
    }
    return HermitianMatrixF(std::move(G));
}

}  // namespace

HermitianMatrixF ratio_kernel_gram(const KMap& evaluate, std::span<const DiskPointF> points) {
    require_distinct(points);
    std::vector<KVectorF> sources, images;
    for (const auto& z : points) {
        sources.push_back(phi(z));
        images.push_back(evaluate(sources.back()));
    }
    return ratio_gram_from_images(sources, images);
}

HermitianMatrixF ratio_kernel_gram_disk(const std::function<ComplexF(ComplexF)>& f,
                                        std::span<const DiskPointF> points) {
    require_distinct(points);
    std::vector<KVectorF> sources, images;
    for (const auto& z : points) {
        sources.push_back(phi(z));
        images.push_back(phi(f(z.value())));
    }
    return ratio_gram_from_images(sources, images);
}

GramCertificate certify_ratio_gram(const KMap& evaluate, std::uint64_t seed, const GramOptions& opts) {
    constexpr int kMaxRedrawsPerGrid = 100;
    Rng rng(seed);
    GramCertificate cert;
    cert.passed = true;
    cert.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int t = 0; t < opts.trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            const auto grid = sample_grid(rng, opts.grid_size, opts.cap);
            try {
                const PsdVerdict v = psd_float(ratio_kernel_gram(evaluate, grid), opts.tol);
                cert.min_eigenvalue = std::min(cert.min_eigenvalue, v.min_eigenvalue);
                cert.passed = cert.passed && v.is_psd && v.min_eigenvalue >= -opts.tol;
                ++cert.grids;
                break;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SingularDenominator) throw;
                ++cert.redraws;
                if (attempt + 1 >= kMaxRedrawsPerGrid) {
                    cert.passed = false;
                    break;
                }
            }
        }
    }
    return cert;
}

WitnessSearch search_nonpsd_witness(const std::function<ComplexF(ComplexF)>& f, std::uint64_t seed,
                                    int max_grids, std::size_t grid_size, double tol) {
    Rng rng(seed);
    WitnessSearch out;
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int g = 0; g < max_grids; ++g) {
        auto grid = sample_grid(rng, grid_size);
        ++out.grids_tried;
        const PsdVerdict v = psd_float(ratio_kernel_gram_disk(f, grid), tol);
        out.min_eigenvalue = std::min(out.min_eigenvalue, v.min_eigenvalue);
        if (!v.is_psd) {
            out.found = true;
            out.points = std::move(grid);
            out.min_eigenvalue = v.min_eigenvalue;
            return out;
        }
    }
    return out;
}

// ---- equivalences -----------------------------------------------------------

EquivalenceReport check_equivalences(const TwoPointProblem& p, int trials, std::uint64_t seed,
                                     const EquivalenceOptions& opts) {
    EquivalenceReport r;
    const std::vector<DiskPointF> nodes{p.lambda1, p.lambda2};
    const std::vector<DiskPointF> targets{p.omega1, p.omega2};

    const PsdVerdict m_phi = psd_float(pick_matrix_squared<ComplexF>(nodes, targets), 1e-10);
    const PsdVerdict pick = psd_float(pick_matrix<ComplexF>(nodes, targets), 1e-10);
    r.m_phi_psd = m_phi.is_psd;
    r.m_phi_min_eig = m_phi.min_eigenvalue;
    r.pick_psd = pick.is_psd;
    r.pick_min_eig = pick.min_eigenvalue;
    r.rho_nodes = p.rho_nodes();
    r.rho_targets = p.rho_targets();
    r.rho_ordered = r.rho_targets <= r.rho_nodes + opts.tie_slack;

    try {
        const RationalMapChain F = solve_indefinite_two_point(p, opts.tie_slack);
        const KMap evaluate = [&F](const KVectorF& z) { return eval_chain(F, z); };
        const double res1 = (eval_chain(F, phi(p.lambda1)) - phi(p.omega1)).norm();
        const double res2 = (eval_chain(F, phi(p.lambda2)) - phi(p.omega2)).norm();
        GramOptions gram = opts.gram;
        gram.trials = trials;
        r.certificate = certify_ratio_gram(evaluate, seed, gram);
        r.solver_ok = res1 < 1e-9 && res2 < 1e-9 && r.certificate.passed;
    } catch (const InfeasibleError&) {
        r.solver_ok = false;
    }
    return r;
}

}  // namespace bergman
