#pragma once

// The signature-(1,1) space K = (C^2, <.,.>_K) with
//
//     <z, w>_K = z1 conj(w1) - z2 conj(w2) = w^H J z,    J = diag(1, -1).
//
// Inner products, projections, sharp adjoints and the contraction predicates
// are generic over the scalar backend. The indefinite Moebius maps need a real
// square root and are therefore float-only.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "bergman/errors.hpp"
#include "bergman/scalars.hpp"

namespace bergman {

template <class Scalar>
using KVector = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using KMatrix = Eigen::Matrix<Scalar, 2, 2>;

using KVectorF = KVector<ComplexF>;
using KMatrixF = KMatrix<ComplexF>;
using KVectorQ = KVector<QComplex>;
using KMatrixQ = KMatrix<QComplex>;

/// Default tolerances for float predicates.
struct KreinTolerances {
    double neutral = 1e-12;
    double singular = 1e-12;
    double unitary = 1e-10;
    double contraction = 1e-10;
};

template <class Scalar>
KMatrix<Scalar> signature_matrix() {
    KMatrix<Scalar> J;
    J << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
    return J;
}

template <class Scalar>
Scalar k_inner(const KVector<Scalar>& z, const KVector<Scalar>& w) {
    return z(0) * conj(w(0)) - z(1) * conj(w(1));
}

/// <z,z>_K, which is always real.
template <class Scalar>
RealOf<Scalar> k_norm_sq(const KVector<Scalar>& z) {
    return RealOf<Scalar>(modulus_sq(z(0)) - modulus_sq(z(1)));
}

template <class Scalar>
RealOf<Scalar> euclid_norm_sq(const KVector<Scalar>& z) {
    return RealOf<Scalar>(modulus_sq(z(0)) + modulus_sq(z(1)));
}

inline bool is_neutral(const KVectorQ& z) { return sgn(k_norm_sq(z)) == 0; }
/// Scale-invariant: |<z,z>_K| <= tol * |z|^2, so t z is neutral iff z is.
inline bool is_neutral(const KVectorF& z, double tol = KreinTolerances{}.neutral) {
    return std::abs(k_norm_sq(z)) <= tol * euclid_norm_sq(z);
}

template <class Scalar>
bool is_zero(const KVector<Scalar>& z) {
    return z(0) == Scalar(0) && z(1) == Scalar(0);
}

/// Omega = { z : <z,z>_K < 1 }. Unbounded in the z2 direction.
template <class Scalar>
bool in_unit_ball(const KVector<Scalar>& z) {
    return k_norm_sq(z) < RealOf<Scalar>(1);
}

inline bool in_domain_omega_a(const KVectorQ& z, const KVectorQ& a) {
    return in_unit_ball(z) && k_inner(z, a) != QComplex(1);
}
inline bool in_domain_omega_a(const KVectorF& z, const KVectorF& a,
                              double tol = KreinTolerances{}.singular) {
    return in_unit_ball(z) && std::abs(1.0 - k_inner(z, a)) > tol;
}

template <class Scalar>
struct Projection {
    KVector<Scalar> along;       // P_a z
    KVector<Scalar> complement;  // Q_a z = z - P_a z
};

namespace detail {
inline bool neutral_for_proj(const KVectorQ& a) { return is_neutral(a); }
inline bool neutral_for_proj(const KVectorF& a) { return is_neutral(a); }
}  // namespace detail

/// P_a z = (<z,a>/<a,a>) a and its complement. The a = 0 convention belongs
/// to the Moebius map, not here: a must be nonneutral.
template <class Scalar>
Projection<Scalar> proj(const KVector<Scalar>& a, const KVector<Scalar>& z) {
    if (detail::neutral_for_proj(a)) {
        throw Error(ErrorKind::NeutralBasePoint, "projection onto a neutral vector");
    }
    const Scalar coeff = k_inner(z, a) / Scalar(k_norm_sq(a));
    KVector<Scalar> along = a * coeff;
    KVector<Scalar> complement = z - along;
    return {along, complement};
}

/// T^# = J T^H J, the adjoint for <.,.>_K.
template <class Scalar>
KMatrix<Scalar> sharp_adjoint(const KMatrix<Scalar>& T) {
    const KMatrix<Scalar> J = signature_matrix<Scalar>();
    return J * T.adjoint() * J;
}

/// Eigenvalues (min, max) of a 2x2 Hermitian matrix from trace and determinant.
std::pair<double, double> hermitian2_eigenvalues(const KMatrixF& M);

bool is_sharp_unitary(const KMatrixF& T, double tol = KreinTolerances{}.unitary);
bool is_sharp_unitary(const KMatrixQ& T);

/// J - T^H J T, PSD exactly when T is a K-contraction.
template <class Scalar>
KMatrix<Scalar> contraction_defect(const KMatrix<Scalar>& T) {
    const KMatrix<Scalar> J = signature_matrix<Scalar>();
    return J - T.adjoint() * J * T;
}

bool is_k_contraction(const KMatrixF& T, double tol = KreinTolerances{}.contraction);
bool is_k_contraction(const KMatrixQ& T);

// ---- indefinite Moebius maps (float) --------------------------------------

/// 1 - <z,a>_K, or 1 for the a = 0 convention.
ComplexF moebius_denominator(const KVectorF& a, const KVectorF& z);

/// phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>_K),  s_a = sqrt(1 - <a,a>_K),
/// with phi_0(z) = -z.
KVectorF moebius(const KVectorF& a, const KVectorF& z,
                 const KreinTolerances& tol = KreinTolerances{});

/// Validates a as a base point: zero, or nonneutral inside Omega.
void require_moebius_base(const KVectorF& a, const KreinTolerances& tol = KreinTolerances{});

struct CompositionFactor {
    KMatrixF T;
    KVectorF c;         // phi_a(b)
    double probe_scale;  // the scale that produced T
};

/// phi_b o phi_a = T phi_c with c = phi_a(b) and T sharp-unitary. T is read off
/// the linear map phi_b o phi_a o phi_c at the probes t e1, t e2.
CompositionFactor composition_factor(const KVectorF& a, const KVectorF& b,
                                     const KreinTolerances& tol = KreinTolerances{});

// ---- random generators ----------------------------------------------------

/// e^{i theta} [[alpha, beta], [conj beta, conj alpha]] with |alpha|^2 - |beta|^2 = 1.
/// Throws DomainViolation when the determinant condition fails by more than 1e-12.
KMatrixF make_su11(double theta, ComplexF alpha, ComplexF beta);
KMatrixF sample_su11(std::uint64_t seed);

/// U1 diag(h1, h2) U2 with |h1| <= 1 <= |h2| and U1, U2 sharp-unitary.
KMatrixF make_k_contraction(const KMatrixF& U1, ComplexF h1, ComplexF h2, const KMatrixF& U2);
KMatrixF sample_k_contraction(std::uint64_t seed);

// ---- text form ------------------------------------------------------------
//   KVector: "(z1, z2)";  KMatrix: "(t11, t12, t21, t22)" row-major.

template <class Scalar>
std::string format(const KVector<Scalar>& z) {
    return "(" + format(z(0)) + ", " + format(z(1)) + ")";
}

template <class Scalar>
std::string format(const KMatrix<Scalar>& T) {
    return "(" + format(T(0, 0)) + ", " + format(T(0, 1)) + ", " + format(T(1, 0)) + ", " +
           format(T(1, 1)) + ")";
}

KVectorF parse_kvector(std::string_view text);
KVectorQ parse_kvector_exact(std::string_view text);
KMatrixF parse_kmatrix(std::string_view text);

}  // namespace bergman
