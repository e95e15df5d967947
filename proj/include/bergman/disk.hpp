#pragma once

// Geometry of the open unit disk: the embedding Phi into K, the Bergman kernel,
// the pseudo-hyperbolic distance d and the invariant distance
//
//     rho(l, m) = sqrt(2 d^2 - d^4) = sqrt(1 - |k(l,m)|^2 / (k(l,l) k(m,m))).

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/krein.hpp"
#include "bergman/scalars.hpp"

namespace bergman {

/// Float points must satisfy |value| < 1 - kDiskMargin.
inline constexpr double kDiskMargin = 1e-12;

template <class Scalar>
class DiskPoint {
public:
    explicit DiskPoint(Scalar value) : value_(std::move(value)) {
        if (!contains(value_)) {
            throw Error(ErrorKind::NotInDisk, "point " + format(value_) + " is not in the open unit disk");
        }
    }

    static bool contains(const ComplexF& v) { return std::abs(v) < 1.0 - kDiskMargin; }
    static bool contains(const QComplex& v) { return modulus_sq(v) < 1; }

    const Scalar& value() const { return value_; }
    operator const Scalar&() const { return value_; }

private:
    Scalar value_;
};

using DiskPointF = DiskPoint<ComplexF>;
using DiskPointQ = DiskPoint<QComplex>;

/// Phi(l) = (sqrt(2) l, l^2). Accepts any complex number so that maps leaving
/// the disk can still be pulled back.
KVectorF phi(ComplexF lambda);
inline KVectorF phi(const DiskPointF& lambda) { return phi(lambda.value()); }

/// k(z, l) = 1 / (1 - conj(l) z)^2
ComplexF bergman_kernel(const DiskPointF& z, const DiskPointF& lambda);

/// d(l, m) = |(l - m) / (1 - conj(m) l)|
double pseudo_hyperbolic(const DiskPointF& lambda, const DiskPointF& mu);

double rho(const DiskPointF& lambda, const DiskPointF& mu);
double rho_from_kernel(const DiskPointF& lambda, const DiskPointF& mu);

/// m_a(z) = (a - z) / (1 - conj(a) z); an involution swapping 0 and a.
ComplexF disk_mobius(ComplexF a, ComplexF z);
inline DiskPointF disk_mobius(const DiskPointF& a, const DiskPointF& z) {
    return DiskPointF(disk_mobius(a.value(), z.value()));
}

}  // namespace bergman
