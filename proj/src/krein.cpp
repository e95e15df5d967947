#include "bergman/krein.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

namespace bergman {

std::pair<double, double> hermitian2_eigenvalues(const KMatrixF& M) {
    const double a = M(0, 0).real();
    const double d = M(1, 1).real();
    const double half_trace = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(M(0, 1)));
    return {half_trace - radius, half_trace + radius};
}

bool is_sharp_unitary(const KMatrixF& T, double tol) {
    const KMatrixF residual = sharp_adjoint(T) * T - KMatrixF::Identity();
    return residual.cwiseAbs().maxCoeff() <= tol;
}

bool is_sharp_unitary(const KMatrixQ& T) {
    const KMatrixQ product = sharp_adjoint(T) * T;
    return product(0, 0) == QComplex(1) && product(1, 1) == QComplex(1) &&
           product(0, 1).is_zero() && product(1, 0).is_zero();
}

bool is_k_contraction(const KMatrixF& T, double tol) {
    const KMatrixF defect = contraction_defect(T);
    const double scale = std::max(1.0, defect.cwiseAbs().maxCoeff());
    return hermitian2_eigenvalues(defect).first >= -tol * scale;
}

bool is_k_contraction(const KMatrixQ& T) {
    // A 2x2 Hermitian matrix is PSD iff both diagonal entries and the
    // determinant are nonnegative.
    const KMatrixQ defect = contraction_defect(T);
    const Rational det = Rational(defect(0, 0).real() * defect(1, 1).real()) - modulus_sq(defect(0, 1));
    return sgn(defect(0, 0).real()) >= 0 && sgn(defect(1, 1).real()) >= 0 && sgn(det) >= 0;
}

ComplexF moebius_denominator(const KVectorF& a, const KVectorF& z) {
    if (is_zero(a)) return {1.0, 0.0};
    return 1.0 - k_inner(z, a);
}

void require_moebius_base(const KVectorF& a, const KreinTolerances& tol) {
    if (is_zero(a)) return;
    if (is_neutral(a, tol.neutral)) {
        throw Error(ErrorKind::NeutralBasePoint, "Moebius base point " + format(a) + " is neutral");
    }
    if (!in_unit_ball(a)) {
        throw Error(ErrorKind::OutsideBall, "Moebius base point " + format(a) + " is outside Omega");
    }
}

KVectorF moebius(const KVectorF& a, const KVectorF& z, const KreinTolerances& tol) {
    if (is_zero(a)) return -z;
    require_moebius_base(a, tol);
    const ComplexF den = 1.0 - k_inner(z, a);
    if (std::abs(den) <= tol.singular) {
        throw Error(ErrorKind::SingularDenominator,
                    "<z,a>_K = 1 for z = " + format(z) + ", a = " + format(a));
    }
    const double s = std::sqrt(1.0 - k_norm_sq(a));
    const KVectorF along = a * (k_inner(z, a) / k_norm_sq(a));
    // a - P z - s (z - P z)
    return (a - (1.0 - s) * along - s * z) / den;
}

CompositionFactor composition_factor(const KVectorF& a, const KVectorF& b,
                                     const KreinTolerances& tol) {
    require_moebius_base(a, tol);
    require_moebius_base(b, tol);
    if (!in_domain_omega_a(b, a, tol.singular)) {
        throw Error(ErrorKind::DomainViolation, "b = " + format(b) + " is not in Omega_a");
    }
    const KVectorF c = moebius(a, b, tol);
    if (!is_zero(c) && is_neutral(c, tol.neutral)) {
        throw Error(ErrorKind::NeutralBasePoint, "phi_a(b) = " + format(c) + " is neutral");
    }

    constexpr double kMinDenominator = 1e-8;
    for (const double t : {0.25, 0.125}) {
        KMatrixF T;
        bool singular = false;
        for (int k = 0; k < 2 && !singular; ++k) {
            KVectorF probe = KVectorF::Zero();
            probe(k) = t;
            // psi = phi_b o phi_a o phi_c is linear, so psi(t e_k) / t is column k.
            if (std::abs(moebius_denominator(c, probe)) < kMinDenominator) {
                singular = true;
                break;
            }
            const KVectorF x = moebius(c, probe, tol);
            if (std::abs(moebius_denominator(a, x)) < kMinDenominator) {
                singular = true;
                break;
            }
            const KVectorF y = moebius(a, x, tol);
            if (std::abs(moebius_denominator(b, y)) < kMinDenominator) {
                singular = true;
                break;
            }
            T.col(k) = moebius(b, y, tol) / t;
        }
        if (!singular) return {T, c, t};
    }
    throw Error(ErrorKind::ProbeSingular,
                "both probe scales hit a singular denominator for a = " + format(a) +
                    ", b = " + format(b));
}

KMatrixF make_su11(double theta, ComplexF alpha, ComplexF beta) {
    if (std::abs(std::norm(alpha) - std::norm(beta) - 1.0) > 1e-12 * std::max(1.0, std::norm(alpha))) {
        throw Error(ErrorKind::DomainViolation, "|alpha|^2 - |beta|^2 must equal 1");
    }
    KMatrixF U;
    U << alpha, beta, std::conj(beta), std::conj(alpha);
    return std::polar(1.0, theta) * U;
}

KMatrixF sample_su11(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.0, 2.0);
    const double theta = angle(rng);
    const double r = radius(rng);
    const double psi = angle(rng);
    const double chi = angle(rng);
    const ComplexF beta = std::polar(r, psi);
    const ComplexF alpha = std::polar(std::sqrt(1.0 + r * r), chi);
    KMatrixF U;
    U << alpha, beta, std::conj(beta), std::conj(alpha);
    return std::polar(1.0, theta) * U;
}

KMatrixF make_k_contraction(const KMatrixF& U1, ComplexF h1, ComplexF h2, const KMatrixF& U2) {
    if (std::abs(h1) > 1.0 || std::abs(h2) < 1.0) {
        throw Error(ErrorKind::DomainViolation, "need |h1| <= 1 <= |h2|");
    }
    return U1 * KMatrixF(Eigen::Vector2cd(h1, h2).asDiagonal()) * U2;
}

KMatrixF sample_k_contraction(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint64_t seed1 = rng();
    const std::uint64_t seed2 = rng();
    const ComplexF h1 = std::polar(unit(rng), angle(rng));
    const ComplexF h2 = std::polar(1.0 + 2.0 * unit(rng), angle(rng));
    return make_k_contraction(sample_su11(seed1), h1, h2, sample_su11(seed2));
}

namespace {

std::vector<std::string_view> split_tuple(std::string_view text, std::size_t expected) {
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    if (trimmed.size() < 2 || trimmed.front() != '(' || trimmed.back() != ')') {
        throw Error(ErrorKind::ParseError, "expected a parenthesised tuple: '" + std::string(text) + "'");
    }
    trimmed = trimmed.substr(1, trimmed.size() - 2);
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= trimmed.size(); ++k) {
        if (k == trimmed.size() || trimmed[k] == ',') {
            parts.push_back(trimmed.substr(start, k - start));
            start = k + 1;
        }
    }
    if (parts.size() != expected) {
        throw Error(ErrorKind::ParseError, "expected " + std::to_string(expected) +
                                               " components: '" + std::string(text) + "'");
    }
    return parts;
}

}  // namespace

KVectorF parse_kvector(std::string_view text) {
    const auto parts = split_tuple(text, 2);
    return KVectorF(parse_complex(parts[0]), parse_complex(parts[1]));
}

KVectorQ parse_kvector_exact(std::string_view text) {
    const auto parts = split_tuple(text, 2);
    KVectorQ z;
    z << parse_qcomplex(parts[0]), parse_qcomplex(parts[1]);
    return z;
}

KMatrixF parse_kmatrix(std::string_view text) {
    const auto parts = split_tuple(text, 4);
    KMatrixF T;
    T << parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]),
        parse_complex(parts[3]);
    return T;
}

}  // namespace bergman
