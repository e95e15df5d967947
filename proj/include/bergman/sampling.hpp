#pragma once

// Seeded generators for property suites. Every draw goes through a
// std::mt19937_64 so a failing case can be replayed from its seed.

#include <cstdint>
#include <random>
#include <vector>

#include "bergman/disk.hpp"
#include "bergman/krein.hpp"

namespace bergman {

using Rng = std::mt19937_64;

/// Uniform in |l|^2 on [0, cap^2] and uniform in angle.
DiskPointF sample_disk(Rng& rng, double cap = 0.95);

/// n points, pairwise at least min_separation apart.
std::vector<DiskPointF> sample_grid(Rng& rng, std::size_t n, double cap = 0.95,
                                    double min_separation = 1e-3);

struct OmegaSampling {
    double component_bound = 1.5;  // |z1|, |z2| <= bound
    double neutral_margin = 0.05;  // |<a,a>_K| >= margin
    double ball_margin = 0.05;     // <a,a>_K <= 1 - margin
};

/// A nonneutral point of Omega drawn by rejection.
KVectorF sample_omega(Rng& rng, const OmegaSampling& opts = OmegaSampling{});

/// A point of Omega (neutral allowed) with |1 - <z,a>_K| >= margin.
KVectorF sample_omega_a(Rng& rng, const KVectorF& a, double margin = 0.05,
                        const OmegaSampling& opts = OmegaSampling{});

/// scale * u * prod_k (z - a_k) / (1 - conj(a_k) z), |u| = 1.
struct BlaschkeProduct {
    std::vector<ComplexF> zeros;
    ComplexF unimodular{1.0, 0.0};
    double scale = 1.0;

    ComplexF operator()(ComplexF z) const;
    /// Degree one with unit scale: a disk automorphism.
    bool is_automorphism() const { return zeros.size() == 1 && scale == 1.0; }
};

/// Degree in {1,2,3}, zeros from sample_disk, unimodular front factor, scale in
/// [0.5, 1]. When force_automorphism is set: degree one and scale one.
BlaschkeProduct sample_blaschke(Rng& rng, bool force_automorphism = false);

}  // namespace bergman
