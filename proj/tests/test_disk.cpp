#include <doctest.h>

#include <cmath>

#include "bergman/disk.hpp"
#include "bergman/sampling.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

double rel(ComplexF a, ComplexF b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("DiskPoint rejects the boundary") {
    CHECK_NOTHROW(DiskPointF(0.999));
    CHECK(error_kind([] { (void)DiskPointF(1.0); }) == ErrorKind::NotInDisk);
    CHECK(error_kind([] { (void)DiskPointF(ComplexF(0.8, 0.6)); }) == ErrorKind::NotInDisk);
    CHECK(error_kind([] { (void)DiskPointF(1.0 - 1e-13); }) == ErrorKind::NotInDisk);
    CHECK_NOTHROW(DiskPointQ(QComplex(make_rational(3, 5), make_rational(3, 5))));
    CHECK(error_kind([] { (void)DiskPointQ(QComplex(make_rational(3, 5), make_rational(4, 5))); }) ==
          ErrorKind::NotInDisk);
}

TEST_CASE("phi") {
    CHECK(phi(DiskPointF(0.0)) == KVectorF(0, 0));
    const KVectorF h = phi(DiskPointF(0.5));
    CHECK(std::abs(h(0) - std::sqrt(2.0) / 2.0) < 1e-16);
    CHECK(h(1) == ComplexF(0.25));

    Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        const DiskPointF z = sample_disk(rng), l = sample_disk(rng);
        const ComplexF t = 1.0 - z.value() * std::conj(l.value());
        CHECK(std::abs((1.0 - k_inner(phi(z), phi(l))) - t * t) < 1e-12);
    }
}

TEST_CASE("bergman_kernel") {
    CHECK(bergman_kernel(DiskPointF(0.0), DiskPointF(0.0)) == ComplexF(1));
    CHECK(std::abs(bergman_kernel(DiskPointF(0.5), DiskPointF(0.5)) - 16.0 / 9.0) < 1e-15);
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const DiskPointF z = sample_disk(rng), l = sample_disk(rng);
        CHECK(rel(bergman_kernel(z, l), std::conj(bergman_kernel(l, z))) < 1e-15);
        CHECK(std::abs(bergman_kernel(z, l)) > 0.0);
    }
}

TEST_CASE("pseudo_hyperbolic") {
    const DiskPointF l(ComplexF(0.3, -0.2)), m(ComplexF(-0.1, 0.6));
    CHECK(pseudo_hyperbolic(l, l) == 0.0);
    CHECK(std::abs(pseudo_hyperbolic(DiskPointF(0.0), m) - std::abs(m.value())) < 1e-16);
    CHECK(std::abs(pseudo_hyperbolic(l, m) - pseudo_hyperbolic(m, l)) < 1e-16);

    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        const DiskPointF x = sample_disk(rng), y = sample_disk(rng), a = sample_disk(rng);
        const double before = pseudo_hyperbolic(x, y);
        const double after = pseudo_hyperbolic(disk_mobius(a, x), disk_mobius(a, y));
        CHECK(std::abs(before - after) < 1e-12);
    }
}

TEST_CASE("rho") {
    const DiskPointF l(ComplexF(0.3, -0.2));
    CHECK(rho(l, l) == 0.0);
    CHECK(std::abs(rho(DiskPointF(0.0), DiskPointF(0.5)) - std::sqrt(7.0) / 4.0) < 1e-15);
    CHECK(std::abs(rho_from_kernel(DiskPointF(0.0), DiskPointF(0.5)) - std::sqrt(7.0) / 4.0) < 1e-15);
    CHECK(rho_from_kernel(l, l) < 1e-7);  // clamped root of a rounded zero

    Rng rng(24);
    for (int i = 0; i < 1000; ++i) {
        const DiskPointF x = sample_disk(rng), y = sample_disk(rng), a = sample_disk(rng);
        const double r = rho(x, y);
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
        CHECK(std::abs(r - rho(y, x)) < 1e-15);
        CHECK(std::abs(r - rho_from_kernel(x, y)) < 1e-12);
        CHECK(std::abs(r - rho(disk_mobius(a, x), disk_mobius(a, y))) < 1e-12);
        const double d = pseudo_hyperbolic(x, y);
        CHECK(std::abs(r * r - (2 * d * d - d * d * d * d)) < 1e-14);
    }
}

TEST_CASE("rho triangle inequality") {
    Rng rng(25);
    for (int i = 0; i < 10000; ++i) {
        const DiskPointF x = sample_disk(rng), y = sample_disk(rng), z = sample_disk(rng);
        REQUIRE(rho(x, z) <= rho(x, y) + rho(y, z) + 1e-12);
    }
}

TEST_CASE("Schwarz-Pick for rho") {
    Rng rng(26);
    for (int i = 0; i < 1000; ++i) {
        const BlaschkeProduct f = sample_blaschke(rng);
        const DiskPointF z = sample_disk(rng), w = sample_disk(rng);
        CHECK(rho(DiskPointF(f(z)), DiskPointF(f(w))) <= rho(z, w) + 1e-12);

        const BlaschkeProduct g = sample_blaschke(rng, true);
        CHECK(g.is_automorphism());
        CHECK(std::abs(rho(DiskPointF(g(z)), DiskPointF(g(w))) - rho(z, w)) < 1e-10);
    }
}

TEST_CASE("Phi pullback of the distance") {
    Rng rng(27);
    for (int i = 0; i < 500; ++i) {
        const DiskPointF l = sample_disk(rng), m = sample_disk(rng);
        const KVectorF pl = phi(l), pm = phi(m);
        const double r = rho(l, m);
        const double lhs = (1.0 - k_norm_sq(pl)) * (1.0 - k_norm_sq(pm)) / std::norm(1.0 - k_inner(pl, pm));
        CHECK(rel(lhs, 1.0 - r * r) < 1e-10);
        // rho^2 is the self-inner product of phi_{Phi(m)}(Phi(l))
        CHECK(std::abs(r * r - k_norm_sq(moebius(pm, pl))) < 1e-10);
    }
}

TEST_CASE("disk_mobius") {
    const ComplexF a(0.4, -0.3), z(-0.2, 0.5);
    CHECK(std::abs(disk_mobius(a, 0.0) - a) < 1e-16);
    CHECK(std::abs(disk_mobius(a, a)) < 1e-16);
    CHECK(disk_mobius(0.0, z) == -z);
    Rng rng(28);
    for (int i = 0; i < 500; ++i) {
        const DiskPointF b = sample_disk(rng), x = sample_disk(rng);
        const DiskPointF y = disk_mobius(b, x);
        CHECK(std::abs(y.value()) < 1.0);
        CHECK(std::abs(disk_mobius(b, y).value() - x.value()) < 1e-12);
    }
}

TEST_CASE("sampling is seeded") {
    Rng r1(5), r2(5);
    for (int i = 0; i < 20; ++i) CHECK(sample_disk(r1).value() == sample_disk(r2).value());
    Rng rng(6);
    for (int i = 0; i < 200; ++i) CHECK(std::abs(sample_disk(rng).value()) <= 0.95);
    const auto grid = sample_grid(rng, 8);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            CHECK(std::abs(grid[i].value() - grid[j].value()) >= 1e-3);
        }
    }
}
