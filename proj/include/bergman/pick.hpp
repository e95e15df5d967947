#pragma once

// Pick matrices, positivity tests and the two-point interpolation solvers.
//
//   P(l; w)     = [ (1 - w_i conj w_j) / (1 - l_i conj l_j) ]
//   M_Phi(l; w) = P(l; w) (.) P(l; w)        (Schur/Hadamard square)
//
// The indefinite solver builds F = phi_{Phi(w2)} o T o phi_{Phi(l2)} where T
// is a K-contraction sending phi_{Phi(l2)}(Phi(l1)) to phi_{Phi(w2)}(Phi(w1)).

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "bergman/disk.hpp"
#include "bergman/errors.hpp"
#include "bergman/krein.hpp"
#include "bergman/scalars.hpp"

namespace bergman {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Square matrix with entries(i,j) == conj(entries(j,i)). Float input is
/// accepted within 1e-12 (relative) and then symmetrised from the upper
/// triangle; exact input must be Hermitian on the nose.
template <class Scalar>
class HermitianMatrix {
public:
    explicit HermitianMatrix(DenseMatrix<Scalar> entries);

    Eigen::Index size() const { return entries_.rows(); }
    const DenseMatrix<Scalar>& entries() const { return entries_; }
    const Scalar& operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    DenseMatrix<Scalar> entries_;
};

using HermitianMatrixF = HermitianMatrix<ComplexF>;
using HermitianMatrixQ = HermitianMatrix<QComplex>;

enum class PsdMode { Float, Exact };

struct PsdVerdict {
    PsdMode mode = PsdMode::Float;
    bool is_psd = false;
    // float mode
    double min_eigenvalue = 0.0;
    std::vector<double> eigenvalues;
    // exact mode: first negative principal minor, empty when PSD
    std::vector<int> minor_indices;
    Rational minor_value{0};
};

// ---- Pick matrices --------------------------------------------------------

template <class Scalar>
HermitianMatrix<Scalar> pick_matrix(std::span<const DiskPoint<Scalar>> nodes,
                                    std::span<const DiskPoint<Scalar>> targets);

template <class Scalar>
HermitianMatrix<Scalar> pick_matrix_squared(std::span<const DiskPoint<Scalar>> nodes,
                                            std::span<const DiskPoint<Scalar>> targets);

template <class Scalar>
HermitianMatrix<Scalar> hadamard(const HermitianMatrix<Scalar>& A, const HermitianMatrix<Scalar>& B);

// ---- positivity -----------------------------------------------------------

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(const DenseMatrix<ComplexF>& A, double off_tol = 1e-14,
                                       int max_sweeps = 100);

/// PSD iff min eigenvalue >= -tol * max(1, ||A||_max).
PsdVerdict psd_float(const HermitianMatrixF& A, double tol = 1e-10);

/// PSD iff every principal minor is >= 0. n <= 4.
PsdVerdict psd_exact(const HermitianMatrixQ& A);

inline constexpr Eigen::Index kMaxExactDimension = 4;

/// Exact determinant by Gaussian elimination over Q(i). n <= 4.
Rational det_exact(const HermitianMatrixQ& A);
/// Determinant of an arbitrary square QComplex matrix (no size cap).
QComplex det_exact(const DenseMatrix<QComplex>& A);

HermitianMatrixF to_float(const HermitianMatrixQ& A);

// ---- two-point problems ---------------------------------------------------

struct TwoPointProblem {
    DiskPointF lambda1, lambda2;
    DiskPointF omega1, omega2;

    /// Throws DuplicateNodes when |lambda1 - lambda2| <= 1e-10.
    TwoPointProblem(DiskPointF l1, DiskPointF l2, DiskPointF w1, DiskPointF w2);

    double rho_nodes() const { return rho(lambda1, lambda2); }
    double rho_targets() const { return rho(omega1, omega2); }
};

/// f = m_{w1} o (c m_{l1}),  c = m_{w1}(w2) / m_{l1}(l2).
struct SchurInterpolant {
    ComplexF c;
    ComplexF lambda1;
    ComplexF omega1;

    ComplexF operator()(ComplexF z) const;
};

inline constexpr double kSchurSlack = 1e-12;

SchurInterpolant solve_schur_two_point(const TwoPointProblem& p);

/// mu with <mu,x>_K = 0 and <mu,mu>_K = -1: (conj x2, conj x1)/sqrt(<x,x>_K),
/// or (0, 1) for x = 0.
KVectorF negative_unit_orthogonal(const KVectorF& x);

struct TwoPointContraction {
    KMatrixF T;
    KVectorF lambda_vec;  // phi_{Phi(l2)}(Phi(l1))
    KVectorF omega_vec;   // phi_{Phi(w2)}(Phi(w1))
    KVectorF mu;
    KVectorF nu;
};

/// T z = (<z,lam>/<lam,lam>) om - <z,mu> nu. Infeasible when
/// rho(w1,w2) > rho(l1,l2) + slack.
TwoPointContraction build_contraction_T(const TwoPointProblem& p, double slack = kSchurSlack);

// ---- rational map chains --------------------------------------------------

struct LinearStep {
    KMatrixF matrix;
};
struct MoebiusStep {
    KVectorF base;
};
using ChainStep = std::variant<LinearStep, MoebiusStep>;

/// Composition s_0 o s_1 o ... o s_{n-1}; evaluation runs right-to-left.
class RationalMapChain {
public:
    RationalMapChain() = default;
    explicit RationalMapChain(std::vector<ChainStep> steps);

    const std::vector<ChainStep>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }

private:
    std::vector<ChainStep> steps_;
};

/// Throws ChainStepError naming the failing step index.
KVectorF eval_chain(const RationalMapChain& F, const KVectorF& z);

RationalMapChain solve_indefinite_two_point(const TwoPointProblem& p, double slack = kSchurSlack);

// ---- ratio-kernel Grams -----------------------------------------------------

using KMap = std::function<KVectorF(const KVectorF&)>;

/// [(1 - <F(Phi z_i), F(Phi z_j)>_K) / (1 - <Phi z_i, Phi z_j>_K)]
HermitianMatrixF ratio_kernel_gram(const KMap& evaluate, std::span<const DiskPointF> points);

/// The same Gram for a scalar map f pulled back through Phi o f.
HermitianMatrixF ratio_kernel_gram_disk(const std::function<ComplexF(ComplexF)>& f,
                                        std::span<const DiskPointF> points);

struct GramCertificate {
    bool passed = false;
    double min_eigenvalue = 0.0;  // worst over all grids
    int grids = 0;
    int redraws = 0;              // grids discarded for a singular evaluation
};

struct GramOptions {
    std::size_t grid_size = 8;
    int trials = 16;
    double tol = 1e-8;  // absolute floor on the minimum eigenvalue
    double cap = 0.95;
};

/// Evidence, not proof: PSD on `trials` seeded random grids.
GramCertificate certify_ratio_gram(const KMap& evaluate, std::uint64_t seed,
                                   const GramOptions& opts = GramOptions{});

struct WitnessSearch {
    bool found = false;
    std::vector<DiskPointF> points;
    double min_eigenvalue = 0.0;
    int grids_tried = 0;
};

/// Looks for a grid on which the Phi o f ratio Gram fails to be PSD.
WitnessSearch search_nonpsd_witness(const std::function<ComplexF(ComplexF)>& f, std::uint64_t seed,
                                    int max_grids = 200, std::size_t grid_size = 2,
                                    double tol = 1e-8);

// ---- the four-way equivalence -----------------------------------------------

struct EquivalenceReport {
    bool m_phi_psd = false;   // (i)
    bool pick_psd = false;    // (ii)
    bool rho_ordered = false; // (iii)
    bool solver_ok = false;   // (iv) success + Gram certificate
    double rho_nodes = 0.0;
    double rho_targets = 0.0;
    double m_phi_min_eig = 0.0;
    double pick_min_eig = 0.0;
    GramCertificate certificate;
    bool agree() const {
        return m_phi_psd == pick_psd && pick_psd == rho_ordered && rho_ordered == solver_ok;
    }
};

struct EquivalenceOptions {
    double tie_slack = 1e-10;
    GramOptions gram{};
};

EquivalenceReport check_equivalences(const TwoPointProblem& p, int trials, std::uint64_t seed,
                                     const EquivalenceOptions& opts = EquivalenceOptions{});

}  // namespace bergman
