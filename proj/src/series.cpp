#include "bergman/series.hpp"

#include <cmath>
#include <numbers>

namespace bergman {

ComplexF k_indef(const KVectorF& z, const KVectorF& lambda) {
    const ComplexF den = 1.0 - k_inner(z, lambda);
    if (std::abs(den) <= KreinTolerances{}.singular) {
        throw Error(ErrorKind::SingularDenominator, "K(z, l) is singular: <z,l>_K = 1");
    }
    return 1.0 / den;
}

QComplex k_indef(const KVectorQ& z, const KVectorQ& lambda) {
    const QComplex den = QComplex(1) - k_inner(z, lambda);
    if (den.is_zero()) throw Error(ErrorKind::SingularDenominator, "K(z, l) is singular: <z,l>_K = 1");
    return QComplex(1) / den;
}

namespace {

// Row n of Pascal's triangle in the scalar backend.
std::vector<ComplexF> binomial_row(int n, const ComplexF*) {
    std::vector<ComplexF> row(static_cast<std::size_t>(n) + 1);
    double c = 1.0;
    for (int k = 0; k <= n; ++k) {
        row[static_cast<std::size_t>(k)] = c;
        c = c * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return row;
}

std::vector<QComplex> binomial_row(int n, const QComplex*) {
    std::vector<QComplex> row;
    row.reserve(static_cast<std::size_t>(n) + 1);
    mpz_class c;
    for (int k = 0; k <= n; ++k) {
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        row.emplace_back(Rational(c));
    }
    return row;
}

template <class Scalar>
Scalar series_part(const KVector<Scalar>& z, const KVector<Scalar>& lambda, int N, bool odd) {
    if (N < 0) throw Error(ErrorKind::DomainViolation, "truncation order must be nonnegative");
    const Scalar x = z(0) * conj(lambda(0));
    const Scalar y = z(1) * conj(lambda(1));
    std::vector<Scalar> xp(static_cast<std::size_t>(N) + 1, Scalar(1));
    std::vector<Scalar> yp(static_cast<std::size_t>(N) + 1, Scalar(1));
    for (std::size_t k = 1; k < xp.size(); ++k) {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
    Scalar sum(0);
    for (int n = 0; n <= N; ++n) {
        const auto row = binomial_row(n, static_cast<const Scalar*>(nullptr));
        for (int k = odd ? 1 : 0; k <= n; k += 2) {
            sum += row[static_cast<std::size_t>(k)] * xp[static_cast<std::size_t>(n - k)] *
                   yp[static_cast<std::size_t>(k)];
        }
    }
    return sum;
}

}  // namespace

template <class Scalar>
Scalar k_plus(const BallPoint<Scalar>& z, const BallPoint<Scalar>& lambda, int N) {
    return series_part(z.value(), lambda.value(), N, false);
}

template <class Scalar>
Scalar k_minus(const BallPoint<Scalar>& z, const BallPoint<Scalar>& lambda, int N) {
    return series_part(z.value(), lambda.value(), N, true);
}

template ComplexF k_plus(const BallPointF&, const BallPointF&, int);
template QComplex k_plus(const BallPointQ&, const BallPointQ&, int);
template ComplexF k_minus(const BallPointF&, const BallPointF&, int);
template QComplex k_minus(const BallPointQ&, const BallPointQ&, int);

QComplex geometric_partial_sum(const KVectorQ& z, const KVectorQ& lambda, int N) {
    const QComplex q = k_inner(z, lambda);
    QComplex power(1);
    QComplex sum(0);
    for (int n = 0; n <= N; ++n) {
        sum += power;
        power *= q;
    }
    return sum;
}

SeriesDegree series_degree(int n) {
    SeriesDegree out;
    mpz_class c;
    for (int k = 0; k <= n; ++k) {
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        SeriesTerm term{n - k, k, c};
        (k % 2 == 0 ? out.plus : out.minus).push_back(std::move(term));
    }
    return out;
}

double truncation_bound(const BallPointF& z, const BallPointF& lambda, int N) {
    const double r = std::sqrt(euclid_norm_sq(z.value())) * std::sqrt(euclid_norm_sq(lambda.value()));
    if (r == 0.0) return 0.0;
    return std::pow(r, N + 1) / (1.0 - r);
}

int default_truncation(const BallPointF& z, const BallPointF& lambda, double target) {
    for (int N = 0; N < kMaxTruncation; ++N) {
        if (truncation_bound(z, lambda, N) < target) return N;
    }
    return kMaxTruncation;
}

int default_truncation(std::span<const BallPointF> points, double target) {
    int N = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i; j < points.size(); ++j) {
            N = std::max(N, default_truncation(points[i], points[j], target));
        }
    }
    return N;
}

double embedding_radius() { return std::sqrt(std::numbers::sqrt2 - 1.0); }

EmbeddingReport gram_embedding_check(std::span<const DiskPointF> points, std::optional<int> N, double psd_tol) {
    const double radius = embedding_radius();
    std::vector<BallPointF> images;
    images.reserve(points.size());
    for (const auto& p : points) {
        if (std::abs(p.value()) >= radius) {
            throw Error(ErrorKind::RadiusViolation, "point " + format(p.value()) +
                                                        " is outside the embedding radius " + format(radius));
        }
        images.emplace_back(phi(p));
    }

    EmbeddingReport report;
    report.truncation = N.value_or(default_truncation(images));
    const auto n = static_cast<Eigen::Index>(points.size());
    DenseMatrix<ComplexF> plus(n, n), minus(n, n);
    double max_excess = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const auto& zi = images[static_cast<std::size_t>(i)];
            const auto& zj = images[static_cast<std::size_t>(j)];
            plus(i, j) = k_plus(zi, zj, report.truncation);
            minus(i, j) = k_minus(zi, zj, report.truncation);
            plus(j, i) = std::conj(plus(i, j));
            minus(j, i) = std::conj(minus(i, j));

            const double bound = truncation_bound(zi, zj, report.truncation);
            report.max_bound = std::max(report.max_bound, bound);
            const ComplexF exact = bergman_kernel(points[static_cast<std::size_t>(i)],
                                                  points[static_cast<std::size_t>(j)]);
            const double residual = std::abs(plus(i, j) - minus(i, j) - exact);
            report.max_difference_residual = std::max(report.max_difference_residual, residual);
            max_excess = std::max(max_excess, residual - bound - 1e-12 * std::max(1.0, std::abs(exact)));
        }
    }
    report.gram_plus = HermitianMatrixF(std::move(plus));
    report.gram_minus = HermitianMatrixF(std::move(minus));
    report.max_difference_excess = n == 0 ? 0.0 : max_excess;
    report.difference_ok = report.max_difference_excess <= 0.0;

    const double slack = static_cast<double>(n) * report.max_bound;
    const PsdVerdict vp = psd_float(report.gram_plus, psd_tol);
    const PsdVerdict vm = psd_float(report.gram_minus, psd_tol);
    report.min_eig_plus = vp.min_eigenvalue;
    report.min_eig_minus = vm.min_eigenvalue;
    const auto threshold = [&](const HermitianMatrixF& G) {
        const double scale = G.size() == 0 ? 1.0 : std::max(1.0, G.entries().cwiseAbs().maxCoeff());
        return -(psd_tol * scale + slack);
    };
    report.plus_psd = n == 0 || vp.min_eigenvalue >= threshold(report.gram_plus);
    report.minus_psd = n == 0 || vm.min_eigenvalue >= threshold(report.gram_minus);
    return report;
}

}  // namespace bergman
