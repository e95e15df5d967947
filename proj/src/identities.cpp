#include "bergman/identities.hpp"

#include <algorithm>

#include "bergman/disk.hpp"
#include "bergman/krein.hpp"
#include "bergman/pick.hpp"
#include "bergman/sampling.hpp"

namespace bergman {

double relative_residual(ComplexF a, ComplexF b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

double vector_residual(const KVectorF& a, const KVectorF& b) {
    return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

struct Tracker {
    IdentityCheck check;
    Tracker(std::string name, double threshold) {
        check.name = std::move(name);
        check.threshold = threshold;
    }
    void add(double residual) {
        check.max_residual = std::max(check.max_residual, residual);
        ++check.samples;
    }
    void add_bool(bool ok) {
        if (!ok) ++check.failures;
        ++check.samples;
    }
};

}  // namespace

std::vector<IdentityCheck> verify_identities(std::uint64_t seed, int trials) {
    Rng rng(seed);
    Tracker conj_sym("k_inner conjugate symmetry", 0.0);
    Tracker fixed("moebius swaps 0 and a", 1e-12);
    Tracker two_sided("moebius kernel identity (two points)", 1e-10);
    Tracker mixed("moebius mixed identity", 1e-10);
    Tracker involution("moebius involution", 1e-9);
    Tracker stays("moebius preserves Omega_a", 0.0);
    Tracker covariance("sharp-unitary covariance", 1e-9);
    Tracker bridge("rho^2 = <phi_Phi(w) Phi(z), same>_K", 1e-10);
    Tracker factor_unitary("composition factor sharp-unitary", 1e-8);
    Tracker factor_point("composition factor pointwise", 1e-8);
    Tracker rho_kernel("rho = rho_from_kernel", 1e-12);
    Tracker rho_invariant("rho Moebius invariance", 1e-12);
    Tracker schwarz_pick("rho Schwarz-Pick", 1e-12);
    Tracker automorphism("rho isometry under automorphisms", 1e-10);
    Tracker phi_identity("Phi pullback identity 1 - rho^2", 1e-10);
    Tracker prop_psd("M_Phi PSD iff rho ordered", 0.0);
    Tracker det_identity("M_Phi determinant identity", 1e-9);

    for (int t = 0; t < trials; ++t) {
        // ---- Moebius maps on Omega
        const KVectorF a = sample_omega(rng);
        const KVectorF z = sample_omega_a(rng, a);
        const KVectorF w = sample_omega_a(rng, a);
        conj_sym.add(std::abs(k_inner(z, w) - std::conj(k_inner(w, z))));

        fixed.add(vector_residual(moebius(a, KVectorF::Zero()), a));
        fixed.add(vector_residual(moebius(a, a), KVectorF::Zero()));

        const KVectorF pz = moebius(a, z);
        const KVectorF pw = moebius(a, w);
        const double one_minus_aa = 1.0 - k_norm_sq(a);
        two_sided.add(relative_residual(
            1.0 - k_inner(pz, pw),
            one_minus_aa * (1.0 - k_inner(z, w)) / ((1.0 - k_inner(z, a)) * (1.0 - k_inner(a, w)))));
        mixed.add(relative_residual(1.0 - k_inner(pz, w),
                                    (1.0 - k_inner(a, w)) / (1.0 - k_inner(z, a)) * (1.0 - k_inner(z, pw))));
        involution.add(vector_residual(moebius(a, pz), z));
        stays.add_bool(in_domain_omega_a(pz, a));

        const KMatrixF U = sample_su11(rng());
        const KVectorF Ua = U * a;
        const KVectorF zu = sample_omega_a(rng, Ua);
        covariance.add(vector_residual(U * moebius(a, sharp_adjoint(U) * zu), moebius(Ua, zu)));

        // ---- composition factorisation
        for (;;) {
            const KVectorF b = sample_omega(rng);
            if (std::abs(1.0 - k_inner(b, a)) < 0.05) continue;
            const KVectorF c = moebius(a, b);
            if (std::abs(k_norm_sq(c)) < 1e-3 * euclid_norm_sq(c)) continue;
            const CompositionFactor cf = composition_factor(a, b);
            factor_unitary.add((sharp_adjoint(cf.T) * cf.T - KMatrixF::Identity()).cwiseAbs().maxCoeff());
            for (int k = 0; k < 10;) {
                const KVectorF x = sample_omega_a(rng, cf.c);
                if (std::abs(moebius_denominator(a, x)) < 0.05) continue;
                const KVectorF y = moebius(a, x);
                if (std::abs(moebius_denominator(b, y)) < 0.05) continue;
                factor_point.add(vector_residual(moebius(b, y), cf.T * moebius(cf.c, x)));
                ++k;
            }
            break;
        }

        // ---- disk geometry
        const DiskPointF l = sample_disk(rng);
        const DiskPointF m = sample_disk(rng);
        const DiskPointF n = sample_disk(rng);
        const double r_lm = rho(l, m);
        rho_kernel.add(std::abs(r_lm - rho_from_kernel(l, m)));
        const DiskPointF shift = sample_disk(rng);
        rho_invariant.add(std::abs(rho(disk_mobius(shift, l), disk_mobius(shift, m)) - r_lm));

        const BlaschkeProduct f = sample_blaschke(rng);
        schwarz_pick.add(std::max(0.0, rho(DiskPointF(f(l.value())), DiskPointF(f(m.value()))) - r_lm));
        const BlaschkeProduct g = sample_blaschke(rng, true);
        automorphism.add(std::abs(rho(DiskPointF(g(l.value())), DiskPointF(g(m.value()))) - r_lm));

        const KVectorF phl = phi(l), phm = phi(m);
        phi_identity.add(relative_residual(
            (1.0 - k_norm_sq(phl)) * (1.0 - k_norm_sq(phm)) / std::norm(1.0 - k_inner(phl, phm)),
            1.0 - r_lm * r_lm));
        const KVectorF moved = moebius(phm, phl);
        bridge.add(std::abs(r_lm * r_lm - k_norm_sq(moved)));

        // ---- squared Pick matrix
        const DiskPointF mu1 = sample_disk(rng);
        const DiskPointF mu2 = sample_disk(rng);
        const std::vector<DiskPointF> nodes{l, n};
        const std::vector<DiskPointF> targets{mu1, mu2};
        if (std::abs(l.value() - n.value()) > 1e-10) {
            const HermitianMatrixF M = pick_matrix_squared<ComplexF>(nodes, targets);
            const double rho_nodes = rho(l, n);
            const double rho_targets = rho(mu1, mu2);
            prop_psd.add_bool(psd_float(M).is_psd == (rho_targets <= rho_nodes + 1e-10));
            const double det = (M(0, 0) * M(1, 1)).real() - std::norm(M(0, 1));
            const KVectorF p1 = phi(l), p2 = phi(n), q1 = phi(mu1), q2 = phi(mu2);
            const double lhs = det * (1.0 - k_norm_sq(p1)) * (1.0 - k_norm_sq(p2));
            const double rhs = std::norm(1.0 - k_inner(q1, q2)) *
                               (rho_nodes * rho_nodes - rho_targets * rho_targets);
            det_identity.add(relative_residual(lhs, rhs));
        }
    }

    // Triangle inequality over a larger sample.
    Tracker triangle("rho triangle inequality", 1e-12);
    for (int t = 0; t < 10 * trials; ++t) {
        const DiskPointF x = sample_disk(rng), y = sample_disk(rng), u = sample_disk(rng);
        triangle.add(std::max(0.0, rho(x, u) - rho(x, y) - rho(y, u)));
    }

    std::vector<IdentityCheck> out;
    for (const Tracker* tr : {&conj_sym, &fixed, &two_sided, &mixed, &involution, &stays, &covariance, &bridge,
                              &factor_unitary, &factor_point, &rho_kernel, &rho_invariant, &schwarz_pick,
                              &automorphism, &phi_identity, &prop_psd, &det_identity, &triangle}) {
        out.push_back(tr->check);
    }
    return out;
}

}  // namespace bergman
