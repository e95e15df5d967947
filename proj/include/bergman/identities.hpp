#pragma once

// Seeded residual sweeps over the algebraic identities of the Moebius maps,
// the distance rho and the squared Pick matrix. Used by `verify-identities`.

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/scalars.hpp"

namespace bergman {

struct IdentityCheck {
    std::string name;
    double max_residual = 0.0;
    double threshold = 0.0;
    int samples = 0;
    int failures = 0;  // boolean checks (membership, verdict agreement)
    bool passed() const { return max_residual <= threshold && failures == 0; }
};

/// |a - b| / max(1, |a|, |b|)
double relative_residual(ComplexF a, ComplexF b);

std::vector<IdentityCheck> verify_identities(std::uint64_t seed, int trials);

}  // namespace bergman
