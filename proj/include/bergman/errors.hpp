#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bergman {

enum class ErrorKind {
    NeutralBasePoint,
    SingularDenominator,
    OutsideBall,
    DomainViolation,
    ProbeSingular,
    LengthMismatch,
    DuplicateNodes,
    DimensionMismatch,
    DimensionTooLarge,
    Infeasible,
    NonPositiveSelfInner,
    RadiusViolation,
    NotInDisk,
    RangeError,
    ParseError,
    DivisionByZero,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by the interpolation solvers; carries the two distances so callers
// can report why the data cannot be interpolated.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double rho_nodes, double rho_targets,
                    double schur_ratio = -1.0)
        : Error(ErrorKind::Infeasible, what),
          rho_nodes_(rho_nodes),
          rho_targets_(rho_targets),
          schur_ratio_(schur_ratio) {}

    double rho_nodes() const noexcept { return rho_nodes_; }
    double rho_targets() const noexcept { return rho_targets_; }
    /// |c| of the two-point Schur construction, or -1 when not applicable.
    double schur_ratio() const noexcept { return schur_ratio_; }

private:
    double rho_nodes_;
    double rho_targets_;
    double schur_ratio_;
};

// SingularDenominator raised while evaluating a map chain.
class ChainStepError : public Error {
public:
    ChainStepError(const std::string& what, std::size_t step)
        : Error(ErrorKind::SingularDenominator, what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace bergman
