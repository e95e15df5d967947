#pragma once

// Scalar backends shared by the whole library.
//
//   ComplexF  -- std::complex<double>
//   QComplex  -- Gaussian rational: exact rational real and imaginary parts
//
// Both satisfy Eigen's NumTraits contract so that KVector<S>, KMatrix<S> and
// dense Hermitian matrices can be written once and instantiated for either.
// No square root exists for QComplex; anything needing one is float-only.

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <Eigen/Core>

#include "bergman/errors.hpp"

namespace bergman {

using ComplexF = std::complex<double>;
using Rational = mpq_class;

/// Gaussian rational. Parts are kept in GMP canonical form (reduced, positive
/// denominator, zero as 0/1), so operator== is structural equality.
class QComplex {
public:
    QComplex() = default;
    QComplex(int re) : re_(re) {}
    QComplex(long re) : re_(re) {}
    QComplex(Rational re) : re_(std::move(re)) {}
    QComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

    QComplex& operator+=(const QComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    QComplex& operator/=(const QComplex& o);

    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
    friend QComplex operator-(const QComplex& a) { return QComplex(-a.re_, -a.im_); }
    friend QComplex operator+(const QComplex& a) { return a; }

    friend bool operator==(const QComplex& a, const QComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

private:
    Rational re_{0};
    Rational im_{0};
};

// Found by ADL from Eigen's numext::conj / real / imag.
inline QComplex conj(const QComplex& x) { return QComplex(x.real(), -x.imag()); }
inline Rational real(const QComplex& x) { return x.real(); }
inline Rational imag(const QComplex& x) { return x.imag(); }

inline ComplexF conj(const ComplexF& x) { return std::conj(x); }

inline double modulus_sq(const ComplexF& x) { return std::norm(x); }
inline Rational modulus_sq(const QComplex& x) {
    return Rational(x.real() * x.real() + x.imag() * x.imag());
}

inline double to_double(double x) { return x; }
/// Nearest-double rounding; throws RangeError when |q| exceeds the double range.
double to_double(const Rational& q);
ComplexF to_float(const QComplex& q);

/// Exact rational from p/q. Throws DivisionByZero when q == 0.
Rational make_rational(long p, long q = 1);

// ---- text format -------------------------------------------------------
//   rational: "p/q" (q omitted when 1)
//   complex:  "re", "re+imi", "re-imi" (a lone "imi" is also accepted)

std::string format(const Rational& q);
std::string format(const QComplex& z);
/// Shortest round-trip decimal representation.
std::string format(double x);
std::string format(const ComplexF& z);

/// Rejects decimal points and exponents: exact input only.
Rational parse_rational(std::string_view text);
QComplex parse_qcomplex(std::string_view text);
double parse_real(std::string_view text);
ComplexF parse_complex(std::string_view text);

template <class Scalar>
Scalar parse_scalar(std::string_view text);
template <>
inline ComplexF parse_scalar<ComplexF>(std::string_view text) { return parse_complex(text); }
template <>
inline QComplex parse_scalar<QComplex>(std::string_view text) { return parse_qcomplex(text); }

template <class Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

std::ostream& operator<<(std::ostream& os, const QComplex& z);

}  // namespace bergman

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    using Literal = mpq_class;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 40,
        MulCost = 80
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<bergman::QComplex> : GenericNumTraits<bergman::QComplex> {
    using Real = mpq_class;
    using NonInteger = bergman::QComplex;
    using Nested = bergman::QComplex;
    using Literal = bergman::QComplex;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 80,
        MulCost = 320
    };
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
