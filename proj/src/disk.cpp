#include "bergman/disk.hpp"

#include <algorithm>
#include <numbers>

namespace bergman {

KVectorF phi(ComplexF lambda) { return KVectorF(std::numbers::sqrt2 * lambda, lambda * lambda); }

ComplexF bergman_kernel(const DiskPointF& z, const DiskPointF& lambda) {
    const ComplexF base = 1.0 - std::conj(lambda.value()) * z.value();
    return 1.0 / (base * base);
}

double pseudo_hyperbolic(const DiskPointF& lambda, const DiskPointF& mu) {
    const ComplexF l = lambda.value();
    const ComplexF m = mu.value();
    return std::abs(l - m) / std::abs(1.0 - std::conj(m) * l);
}

double rho(const DiskPointF& lambda, const DiskPointF& mu) {
    const double d = pseudo_hyperbolic(lambda, mu);
    const double d2 = d * d;
    return std::sqrt(d2 * (2.0 - d2));
}

double rho_from_kernel(const DiskPointF& lambda, const DiskPointF& mu) {
    const double cross = std::norm(bergman_kernel(lambda, mu));
    const double diag = bergman_kernel(lambda, lambda).real() * bergman_kernel(mu, mu).real();
    return std::sqrt(std::max(0.0, 1.0 - cross / diag));
}

ComplexF disk_mobius(ComplexF a, ComplexF z) { return (a - z) / (1.0 - std::conj(a) * z); }

}  // namespace bergman
