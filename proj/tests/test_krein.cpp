#include <doctest.h>

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "bergman/disk.hpp"
#include "bergman/krein.hpp"
#include "bergman/sampling.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

KVectorF kv(ComplexF a, ComplexF b) { return KVectorF(a, b); }

KMatrixF km(ComplexF a, ComplexF b, ComplexF c, ComplexF d) {
    KMatrixF T;
    T << a, b, c, d;
    return T;
}

double rel(ComplexF a, ComplexF b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }
double vres(const KVectorF& a, const KVectorF& b) { return (a - b).norm() / std::max({1.0, a.norm(), b.norm()}); }

KMatrixF random_matrix(Rng& rng) {
    std::normal_distribution<double> g;
    return km({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
}

}  // namespace

TEST_CASE("k_inner") {
    CHECK(k_inner(kv(1, 0), kv(0, 1)) == ComplexF(0));
    CHECK(k_inner(kv(1, 1), kv(1, 1)) == ComplexF(0));
    CHECK(k_inner(KVectorQ(QComplex(1), QComplex(1)), KVectorQ(QComplex(1), QComplex(1))) == QComplex(0));
    // Phi(1/2) against itself: 2 (1/4) - 1/16 = 7/16
    CHECK(std::abs(k_inner(phi(0.5), phi(0.5)) - 7.0 / 16.0) < 1e-15);
}

TEST_CASE("k_inner conjugate symmetry and real self-inner") {
    Rng rng(11);
    std::uniform_int_distribution<long> n(-50, 50), d(1, 50);
    const auto q = [&] { return QComplex(make_rational(n(rng), d(rng)), make_rational(n(rng), d(rng))); };
    for (int i = 0; i < 200; ++i) {
        const KVectorQ z(q(), q()), w(q(), q());
        CHECK(k_inner(z, w) == conj(k_inner(w, z)));
        CHECK(k_inner(z, z).is_real());
        const KVectorF zf = sample_omega(rng), wf = sample_omega(rng);
        CHECK(k_inner(zf, wf) == std::conj(k_inner(wf, zf)));
        CHECK(k_inner(zf, zf).imag() == 0.0);
    }
}

TEST_CASE("is_neutral") {
    CHECK(is_neutral(kv(1, 1)));
    CHECK(is_neutral(kv(0, 0)));
    CHECK_FALSE(is_neutral(kv(1, 0)));
    CHECK(is_neutral(KVectorQ(QComplex(1), QComplex(0, 1))));
    CHECK_FALSE(is_neutral(KVectorQ(QComplex(1), QComplex(0))));
    // neutrality is a property of the line, not of the scale
    CHECK_FALSE(is_neutral(phi(1e-9)));
    CHECK(is_neutral(kv(1e-9, ComplexF(0, 1e-9))));
    CHECK(is_neutral(kv(1e6, 1e6)));
}

TEST_CASE("in_unit_ball and in_domain_omega_a") {
    CHECK(in_unit_ball(kv(0, 5)));
    CHECK_FALSE(in_unit_ball(kv(2, 0)));
    Rng rng(12);
    for (int i = 0; i < 100; ++i) CHECK(in_unit_ball(phi(sample_disk(rng, 0.999))));

    const KVectorF a = kv(0.5, 0.2);
    CHECK(in_domain_omega_a(kv(0, 0), a));
    CHECK(in_domain_omega_a(a, a));
    CHECK_FALSE(in_domain_omega_a(kv(2, 0), a));  // <z,a> = 1
    const KVectorQ aq(QComplex(make_rational(1, 2)), QComplex(0));
    CHECK_FALSE(in_domain_omega_a(KVectorQ(QComplex(2), QComplex(3)), aq));
    CHECK(in_domain_omega_a(KVectorQ(QComplex(0), QComplex(3)), aq));
}

TEST_CASE("proj") {
    const KVectorF z = kv({0.3, 0.1}, {-0.7, 2.0});
    const auto p = proj(kv(1, 0), z);
    CHECK(vres(p.along, kv(z(0), 0)) < 1e-15);
    CHECK(vres(p.along + p.complement, z) < 1e-15);

    const KVectorF a = kv({0.2, 0.4}, {1.1, -0.3});
    CHECK(vres(proj(a, a).along, a) < 1e-14);
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const KVectorF b = sample_omega(rng), w = sample_omega(rng);
        const auto pw = proj(b, w);
        CHECK(vres(proj(b, pw.along).along, pw.along) < 1e-12);
        CHECK(std::abs(k_inner(pw.complement, b)) < 1e-12 * std::max(1.0, w.squaredNorm() * b.squaredNorm()));
    }

    // exact backend: idempotent on the nose
    const KVectorQ aq(QComplex(2), QComplex(make_rational(1, 3)));
    const KVectorQ zq(QComplex(make_rational(1, 5), 1), QComplex(-3));
    const auto pq = proj(aq, zq);
    CHECK(proj(aq, pq.along).along == pq.along);
    CHECK(pq.along + pq.complement == zq);

    CHECK(error_kind([] { (void)proj(KVectorF(kv(1, 1)), KVectorF(kv(0.2, 0.1))); }) ==
          ErrorKind::NeutralBasePoint);
    CHECK(error_kind([] { (void)proj(KVectorQ(QComplex(1), QComplex(-1)), KVectorQ(QComplex(1), QComplex(0))); }) ==
          ErrorKind::NeutralBasePoint);
}

TEST_CASE("moebius fixed points and conventions") {
    const KVectorF z = kv({0.2, -0.1}, {0.6, 0.3});
    CHECK(vres(moebius(kv(0, 0), z), -z) == 0.0);

    Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const KVectorF a = sample_omega(rng);
        CHECK(vres(moebius(a, KVectorF::Zero()), a) < 1e-12);
        CHECK(vres(moebius(a, a), KVectorF::Zero()) < 1e-12);
    }
}

TEST_CASE("moebius errors") {
    CHECK(error_kind([] { (void)moebius(kv(1, 1), kv(0.1, 0)); }) == ErrorKind::NeutralBasePoint);
    CHECK(error_kind([] { (void)moebius(kv(2, 0), kv(0.1, 0)); }) == ErrorKind::OutsideBall);
    // <z,a> = 1 with a = (1/2, 0): z1 = 2
    CHECK(error_kind([] { (void)moebius(kv(0.5, 0), kv(2, 0)); }) == ErrorKind::SingularDenominator);
}

TEST_CASE("moebius identities") {
    Rng rng(15);
    for (int i = 0; i < 500; ++i) {
        const KVectorF a = sample_omega(rng);
        const KVectorF z = sample_omega_a(rng, a), w = sample_omega_a(rng, a);
        const KVectorF pz = moebius(a, z), pw = moebius(a, w);
        const double s = 1.0 - k_norm_sq(a);
        // self version of the two-point identity
        CHECK(rel(1.0 - k_norm_sq(pz), s * (1.0 - k_norm_sq(z)) / std::norm(1.0 - k_inner(z, a))) < 1e-10);
        CHECK(rel(1.0 - k_inner(pz, pw),
                  s * (1.0 - k_inner(z, w)) / ((1.0 - k_inner(z, a)) * (1.0 - k_inner(a, w)))) < 1e-10);
        CHECK(rel(1.0 - k_inner(pz, w),
                  (1.0 - k_inner(a, w)) / (1.0 - k_inner(z, a)) * (1.0 - k_inner(z, pw))) < 1e-10);
        CHECK(vres(moebius(a, pz), z) < 1e-9);
        CHECK(in_domain_omega_a(pz, a));

        const KMatrixF U = sample_su11(rng());
        const KVectorF x = sample_omega_a(rng, U * a);
        CHECK(vres(U * moebius(a, sharp_adjoint(U) * x), moebius(U * a, x)) < 1e-9);
    }
}

TEST_CASE("sharp_adjoint") {
    const KMatrixF J = signature_matrix<ComplexF>();
    CHECK(sharp_adjoint(J) == J);
    CHECK(sharp_adjoint(km({1, 2}, 0, 0, {3, -4})) == km({1, -2}, 0, 0, {3, 4}));

    Rng rng(16);
    for (int i = 0; i < 100; ++i) {
        const KMatrixF S = random_matrix(rng), T = random_matrix(rng);
        CHECK((sharp_adjoint(sharp_adjoint(T)) - T).cwiseAbs().maxCoeff() == 0.0);
        CHECK((sharp_adjoint(KMatrixF(S * T)) - sharp_adjoint(T) * sharp_adjoint(S)).cwiseAbs().maxCoeff() < 1e-12);
        const KVectorF z = sample_omega(rng), w = sample_omega(rng);
        CHECK(rel(k_inner(KVectorF(T * z), w), k_inner(z, KVectorF(sharp_adjoint(T) * w))) < 1e-12);
    }
    // exact backend
    KMatrixQ Tq;
    Tq << QComplex(1, 2), QComplex(make_rational(1, 3)), QComplex(0, -1), QComplex(5);
    CHECK(sharp_adjoint(sharp_adjoint(Tq)) == Tq);
}

TEST_CASE("is_sharp_unitary") {
    CHECK(is_sharp_unitary(signature_matrix<ComplexF>()));
    CHECK_FALSE(is_sharp_unitary(KMatrixF(2.0 * KMatrixF::Identity())));
    for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(is_sharp_unitary(sample_su11(seed)));
    CHECK(sample_su11(42) == sample_su11(42));
    CHECK(sample_su11(42) != sample_su11(43));

    const KMatrixF D = make_su11(0.0, std::polar(1.0, 0.7), 0.0);
    CHECK(D(0, 1) == ComplexF(0));
    CHECK(std::abs(std::abs(D(0, 0)) - 1.0) < 1e-15);
    CHECK(D(1, 1) == std::conj(D(0, 0)));
    CHECK(error_kind([] { (void)make_su11(0.0, 2.0, 0.0); }) == ErrorKind::DomainViolation);

    KMatrixQ Jq = signature_matrix<QComplex>();
    CHECK(is_sharp_unitary(Jq));
    KMatrixQ Aq;  // alpha = 5/4, beta = 3/4: 25/16 - 9/16 = 1
    Aq << QComplex(make_rational(5, 4)), QComplex(make_rational(3, 4)), QComplex(make_rational(3, 4)),
        QComplex(make_rational(5, 4));
    CHECK(is_sharp_unitary(Aq));
    Aq(0, 0) = QComplex(2);
    CHECK_FALSE(is_sharp_unitary(Aq));
}

TEST_CASE("is_k_contraction") {
    CHECK(is_k_contraction(signature_matrix<ComplexF>()));
    CHECK(is_k_contraction(km(0.5, 0, 0, 2)));
    CHECK_FALSE(is_k_contraction(km(2, 0, 0, 1)));

    KMatrixQ Dq = KMatrixQ::Zero();
    Dq(0, 0) = QComplex(make_rational(1, 2));
    Dq(1, 1) = QComplex(2);
    CHECK(is_k_contraction(Dq));
    Dq(0, 0) = QComplex(2);
    Dq(1, 1) = QComplex(1);
    CHECK_FALSE(is_k_contraction(Dq));

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const KMatrixF T = sample_k_contraction(seed);
        CHECK(is_k_contraction(T));
        // Gram difference over four random vectors: <l_i,l_j> - <T l_i, T l_j> is PSD
        Rng rng(seed);
        Eigen::Matrix<ComplexF, 4, 4> G;
        std::array<KVectorF, 4> l;
        for (auto& v : l) v = sample_omega(rng);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                G(i, j) = k_inner(l[static_cast<std::size_t>(j)], l[static_cast<std::size_t>(i)]) -
                          k_inner(KVectorF(T * l[static_cast<std::size_t>(j)]),
                                  KVectorF(T * l[static_cast<std::size_t>(i)]));
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<ComplexF, 4, 4>> es(G);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8 * std::max(1.0, G.cwiseAbs().maxCoeff()));
    }
    CHECK(sample_k_contraction(9) == sample_k_contraction(9));

    // h1 = h2 = 1 gives a sharp-unitary product
    CHECK(is_sharp_unitary(make_k_contraction(sample_su11(1), 1.0, 1.0, sample_su11(2))));
    CHECK(error_kind([] { (void)make_k_contraction(KMatrixF::Identity(), 2.0, 2.0, KMatrixF::Identity()); }) ==
          ErrorKind::DomainViolation);
}

TEST_CASE("hermitian2_eigenvalues") {
    const auto [lo, hi] = hermitian2_eigenvalues(km(2, {0, 1}, {0, -1}, 2));
    CHECK(std::abs(lo - 1.0) < 1e-15);
    CHECK(std::abs(hi - 3.0) < 1e-15);
}

TEST_CASE("composition_factor") {
    const KVectorF a = kv({0.3, 0.2}, {0.9, -0.4});
    {
        const auto cf = composition_factor(a, a);
        CHECK(cf.c.norm() < 1e-12);
        CHECK((cf.T + KMatrixF::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    }
    {
        const auto cf = composition_factor(a, KVectorF::Zero());
        CHECK(vres(cf.c, a) < 1e-12);
        CHECK((cf.T + KMatrixF::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    }

    Rng rng(17);
    int pairs = 0;
    while (pairs < 200) {
        const KVectorF x = sample_omega(rng), b = sample_omega(rng);
        if (std::abs(1.0 - k_inner(b, x)) < 0.05) continue;
        const KVectorF c = moebius(x, b);
        if (std::abs(k_norm_sq(c)) < 1e-3 * c.squaredNorm()) continue;
        const auto cf = composition_factor(x, b);
        CHECK((sharp_adjoint(cf.T) * cf.T - KMatrixF::Identity()).cwiseAbs().maxCoeff() < 1e-8);
        for (int k = 0; k < 20;) {
            const KVectorF z = sample_omega_a(rng, cf.c);
            if (std::abs(moebius_denominator(x, z)) < 0.05) continue;
            const KVectorF y = moebius(x, z);
            if (std::abs(moebius_denominator(b, y)) < 0.05) continue;
            CHECK(vres(moebius(b, y), cf.T * moebius(cf.c, z)) < 1e-8);
            ++k;
        }
        ++pairs;
    }

    // b in Omega with <b,a> = 1 is outside Omega_a
    CHECK(error_kind([] { (void)composition_factor(kv(0.5, 0), kv(2, 1.8)); }) == ErrorKind::DomainViolation);
    CHECK(error_kind([] { (void)composition_factor(kv(1, 1), kv(0.1, 0)); }) == ErrorKind::NeutralBasePoint);
}

TEST_CASE("text form") {
    const KVectorF z = kv({0.5, -1}, 2);
    CHECK(format(z) == "(0.5-1i, 2)");
    CHECK(parse_kvector(format(z)) == z);
    CHECK(parse_kvector("(0.3,0.1i)") == kv(0.3, {0, 0.1}));
    const KMatrixF T = km(1, {0, 2}, -3, {0.25, -0.5});
    CHECK(parse_kmatrix(format(T)) == T);
    const KVectorQ q = parse_kvector_exact("(1/2, 3/4-1/3i)");
    CHECK(format(q) == "(1/2, 3/4-1/3i)");
    CHECK(error_kind([] { (void)parse_kvector("(1, 2, 3)"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { (void)parse_kvector("1, 2"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { (void)parse_kvector_exact("(0.5, 0)"); }) == ErrorKind::ParseError);
}
