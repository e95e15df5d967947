#include "bergman/scalars.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

#include <mpfr.h>

namespace bergman {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NeutralBasePoint: return "NeutralBasePoint";
        case ErrorKind::SingularDenominator: return "SingularDenominator";
        case ErrorKind::OutsideBall: return "OutsideBall";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::ProbeSingular: return "ProbeSingular";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::DuplicateNodes: return "DuplicateNodes";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::NonPositiveSelfInner: return "NonPositiveSelfInner";
        case ErrorKind::RadiusViolation: return "RadiusViolation";
        case ErrorKind::NotInDisk: return "NotInDisk";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
    }
    return "Unknown";
}

QComplex& QComplex::operator/=(const QComplex& o) {
    Rational den = modulus_sq(o);
    if (sgn(den) == 0) throw Error(ErrorKind::DivisionByZero, "QComplex division by zero");
    Rational re = (re_ * o.re_ + im_ * o.im_) / den;
    Rational im = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

double to_double(const Rational& q) {
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    if (!std::isfinite(d)) {
        throw Error(ErrorKind::RangeError, "rational magnitude exceeds double range: " + format(q));
    }
    return d;
}

ComplexF to_float(const QComplex& q) { return {to_double(q.real()), to_double(q.imag())}; }

Rational make_rational(long p, long q) {
    if (q == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string format(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format(const QComplex& z) {
    if (z.is_real()) return format(z.real());
    std::string out = format(z.real());
    if (sgn(z.imag()) < 0) {
        out += "-" + format(Rational(-z.imag()));
    } else {
        out += "+" + format(z.imag());
    }
    return out + "i";
}

std::string format(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format(const ComplexF& z) {
    if (z.imag() == 0.0) return format(z.real());
    std::string out = format(z.real());
    if (std::signbit(z.imag())) {
        out += "-" + format(-z.imag());
    } else {
        out += "+" + format(z.imag());
    }
    return out + "i";
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) { return os << format(z); }

namespace {

[[noreturn]] void parse_fail(std::string_view what, std::string_view text) {
    throw Error(ErrorKind::ParseError, std::string(what) + ": '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// Splits "re+imi" at the sign that starts the imaginary part. Signs that
// belong to an exponent ("1e-3") or lead the string are skipped.
struct ComplexParts {
    std::string_view re;
    std::string_view im;  // without trailing 'i'; empty when absent
    bool has_im = false;
};

ComplexParts split_complex(std::string_view text) {
    ComplexParts parts;
    if (text.empty()) parse_fail("empty complex number", text);
    if (text.back() != 'i') {
        parts.re = text;
        return parts;
    }
    parts.has_im = true;
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        parts.re = {};
        parts.im = body;
    } else {
        parts.re = body.substr(0, split);
        parts.im = body.substr(split);
    }
    // "i", "+i", "-i"
    if (parts.im.empty() || parts.im == "+" || parts.im == "-") {
        parts.im = parts.im == "-" ? "-1" : "1";
    }
    if (parts.im.front() == '+') parts.im.remove_prefix(1);
    return parts;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (num.size() > 1 && num.front() == '+') num.remove_prefix(1);
    if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+') {
        parse_fail("not an exact rational (expected p or p/q)", text);
    }
    Rational r;
    r.get_num().set_str(std::string(num), 10);
    r.get_den().set_str(std::string(den), 10);
    if (sgn(r.get_den()) == 0) parse_fail("zero denominator", text);
    r.canonicalize();
    return r;
}

QComplex parse_qcomplex(std::string_view text) {
    text = trim(text);
    const ComplexParts parts = split_complex(text);
    Rational re = parts.re.empty() ? Rational(0) : parse_rational(parts.re);
    Rational im = parts.has_im ? parse_rational(parts.im) : Rational(0);
    return {std::move(re), std::move(im)};
}

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        parse_fail("not a real number", text);
    }
    if (!std::isfinite(value)) parse_fail("non-finite value", text);
    return value;
}

ComplexF parse_complex(std::string_view text) {
    text = trim(text);
    const ComplexParts parts = split_complex(text);
    const double re = parts.re.empty() ? 0.0 : parse_real(parts.re);
    const double im = parts.has_im ? parse_real(parts.im) : 0.0;
    return {re, im};
}

}  // namespace bergman
