#include "bergman/sampling.hpp"

#include <numbers>

namespace bergman {

DiskPointF sample_disk(Rng& rng, double cap) {
    std::uniform_real_distribution<double> mod_sq(0.0, cap * cap);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(mod_sq(rng));
    return DiskPointF(std::polar(r, angle(rng)));
}

std::vector<DiskPointF> sample_grid(Rng& rng, std::size_t n, double cap, double min_separation) {
    std::vector<DiskPointF> points;
    points.reserve(n);
    while (points.size() < n) {
        DiskPointF candidate = sample_disk(rng, cap);
        bool separated = true;
        for (const auto& p : points) {
            if (std::abs(p.value() - candidate.value()) < min_separation) {
                separated = false;
                break;
            }
        }
        if (separated) points.push_back(candidate);
    }
    return points;
}

namespace {

ComplexF sample_bounded_complex(Rng& rng, double bound) {
    std::uniform_real_distribution<double> mod_sq(0.0, bound * bound);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    return std::polar(std::sqrt(mod_sq(rng)), angle(rng));
}

}  // namespace

KVectorF sample_omega(Rng& rng, const OmegaSampling& opts) {
    for (;;) {
        const KVectorF a(sample_bounded_complex(rng, opts.component_bound),
                         sample_bounded_complex(rng, opts.component_bound));
        const double q = k_norm_sq(a);
        if (std::abs(q) >= opts.neutral_margin && q <= 1.0 - opts.ball_margin) return a;
    }
}

KVectorF sample_omega_a(Rng& rng, const KVectorF& a, double margin, const OmegaSampling& opts) {
    for (;;) {
        const KVectorF z(sample_bounded_complex(rng, opts.component_bound),
                         sample_bounded_complex(rng, opts.component_bound));
        if (k_norm_sq(z) <= 1.0 - opts.ball_margin && std::abs(moebius_denominator(a, z)) >= margin) {
            return z;
        }
    }
}

ComplexF BlaschkeProduct::operator()(ComplexF z) const {
    ComplexF value = scale * unimodular;
    for (const ComplexF& a : zeros) value *= (z - a) / (1.0 - std::conj(a) * z);
    return value;
}

BlaschkeProduct sample_blaschke(Rng& rng, bool force_automorphism) {
    std::uniform_int_distribution<int> degree(1, 3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> scale(0.5, 1.0);
    BlaschkeProduct f;
    const int n = force_automorphism ? 1 : degree(rng);
    for (int k = 0; k < n; ++k) f.zeros.push_back(sample_disk(rng).value());
    f.unimodular = std::polar(1.0, angle(rng));
    f.scale = force_automorphism ? 1.0 : scale(rng);
    return f;
}

}  // namespace bergman
