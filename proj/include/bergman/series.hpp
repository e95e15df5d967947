#pragma once

// The indefinite kernel K(z, l) = 1 / (1 - <z,l>_K) on Omega and its split on
// the Euclidean ball B2 into two positive kernels, K = K+ - K-, with
// x = z1 conj(l1), y = z2 conj(l2):
//
//   K+ = sum_n sum_{l}   C(n, 2l)   x^{n-2l}   y^{2l}
//   K- = sum_n sum_{l>=1} C(n, 2l-1) x^{n-2l+1} y^{2l-1}
//
// Partial sums are evaluated term by term in a fixed order.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "bergman/disk.hpp"
#include "bergman/krein.hpp"
#include "bergman/pick.hpp"

namespace bergman {

/// Point of the open Euclidean unit ball B2 (a subset of Omega).
template <class Scalar>
class BallPoint {
public:
    explicit BallPoint(KVector<Scalar> value) : value_(std::move(value)) {
        if (!(euclid_norm_sq(value_) < RealOf<Scalar>(1))) {
            throw Error(ErrorKind::RadiusViolation, "point " + format(value_) + " is not in the unit ball B2");
        }
    }
    const KVector<Scalar>& value() const { return value_; }

private:
    KVector<Scalar> value_;
};

using BallPointF = BallPoint<ComplexF>;
using BallPointQ = BallPoint<QComplex>;

/// K(z, l) = 1 / (1 - <z,l>_K). Throws SingularDenominator when <z,l>_K = 1.
ComplexF k_indef(const KVectorF& z, const KVectorF& lambda);
QComplex k_indef(const KVectorQ& z, const KVectorQ& lambda);

/// Partial sum over n = 0..N of the even-power terms.
template <class Scalar>
Scalar k_plus(const BallPoint<Scalar>& z, const BallPoint<Scalar>& lambda, int N);
/// Partial sum over n = 1..N of the odd-power terms (zero for N = 0).
template <class Scalar>
Scalar k_minus(const BallPoint<Scalar>& z, const BallPoint<Scalar>& lambda, int N);

/// Exact geometric partial sum sum_{n<=N} <z,l>_K^n.
QComplex geometric_partial_sum(const KVectorQ& z, const KVectorQ& lambda, int N);

/// One monomial c * x^{px} * y^{py} of the degree-n part of K+ or K-.
struct SeriesTerm {
    int x_power;
    int y_power;
    mpz_class coefficient;
};

struct SeriesDegree {
    std::vector<SeriesTerm> plus;
    std::vector<SeriesTerm> minus;
};

/// The degree-n monomials of K+ and K-, coefficients as exact binomials.
SeriesDegree series_degree(int n);

/// r^{N+1} / (1 - r) with r = |z| |l| (Euclidean norms). Bounds the tail of
/// K+ and K- separately and of K - (K+ - K-).
double truncation_bound(const BallPointF& z, const BallPointF& lambda, int N);

inline constexpr double kDefaultTruncationTarget = 1e-10;
inline constexpr int kMaxTruncation = 200;

/// Least N with truncation_bound(z, l, N) < target, capped at kMaxTruncation.
int default_truncation(const BallPointF& z, const BallPointF& lambda,
                       double target = kDefaultTruncationTarget);
/// Same, taken over every pair of a point set.
int default_truncation(std::span<const BallPointF> points, double target = kDefaultTruncationTarget);

/// sqrt(sqrt(2) - 1): the positive root of 2 r^2 + r^4 = 1, the supremum of
/// radii r with Phi(r D) inside B2.
double embedding_radius();
inline constexpr double kDefaultWorkingRadius = 0.64;

struct EmbeddingReport {
    int truncation = 0;
    double max_bound = 0.0;
    double min_eig_plus = 0.0;
    double min_eig_minus = 0.0;
    double max_difference_residual = 0.0;  // max |(G+ - G-)_ij - k(l_i, l_j)|
    double max_difference_excess = 0.0;    // max over ij of residual - bound_ij, <= 0 when ok
    bool plus_psd = false;
    bool minus_psd = false;
    bool difference_ok = false;
    HermitianMatrixF gram_plus{DenseMatrix<ComplexF>(0, 0)};
    HermitianMatrixF gram_minus{DenseMatrix<ComplexF>(0, 0)};

    bool passed() const { return plus_psd && minus_psd && difference_ok; }
};

/// Finite-sample check of the embedding l -> Phi(l): the truncated Grams of
/// K+ and K- at Phi(l_i) are PSD, and their difference reproduces the Bergman
/// Gram [k(l_i, l_j)] within the truncation bound. Throws RadiusViolation for
/// points at or beyond embedding_radius(). N defaults to the bound rule.
EmbeddingReport gram_embedding_check(std::span<const DiskPointF> points, std::optional<int> N = std::nullopt,
                                     double psd_tol = 1e-8);

}  // namespace bergman
