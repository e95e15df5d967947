#pragma once

// Command-line front end. parse() validates the arguments into a Command,
// execute() runs it and produces a JSON report. run() is the whole program
// minus process plumbing, so tests can drive it with string streams.
//
// Exit codes: 0 verified, 1 verification failure or infeasible data,
// 2 usage or input error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bergman/krein.hpp"
#include "bergman/scalars.hpp"

namespace bergman::cli {

inline constexpr const char* kSchema = "bergman-report/1";
inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    UsageError(std::string flag, const std::string& what)
        : std::runtime_error(flag.empty() ? what : flag + ": " + what), flag_(std::move(flag)) {}

    const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

/// -h/--help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Rho {
    ComplexF a, b;
};

enum class PickKernel { Classical, Squared };

struct PickCheck {
    PickKernel kernel = PickKernel::Squared;
    bool exact = false;
    std::vector<ComplexF> nodes, targets;          // float mode
    std::vector<QComplex> nodes_q, targets_q;      // exact mode
};

struct Interpolate {
    ComplexF lambda1, lambda2, omega1, omega2;
    std::uint64_t seed = 0;
    int trials = 16;
};

struct SchurInterpolate {
    ComplexF lambda1, lambda2, omega1, omega2;
};

struct VerifyIdentities {
    std::uint64_t seed = 0;
    int trials = 500;
};

struct KernelEval {
    KVectorF z, lambda;
    std::optional<int> truncation;
    double tol = 1e-10;
};

struct VerifyPaperExample {};

using Command = std::variant<Rho, PickCheck, Interpolate, SchurInterpolate, VerifyIdentities, KernelEval,
                             VerifyPaperExample>;

struct Report {
    nlohmann::ordered_json doc;
    int exit_code = kExitOk;
    std::string summary;
};

/// args excludes the program name. Throws UsageError.
Command parse(const std::vector<std::string>& args);

Report execute(const Command& command);

/// The three-node example: nodes (2/3, 3/4, 0), targets (1/3, 1/4, 0).
Report verify_paper_example();

/// parse + execute; JSON to out (with a "timestamp" field), summary to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Drops the fields that legitimately differ between identical runs.
nlohmann::ordered_json strip_volatile(nlohmann::ordered_json doc);

}  // namespace bergman::cli
