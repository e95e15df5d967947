#include "bergman/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bergman/disk.hpp"
#include "bergman/identities.hpp"
#include "bergman/pick.hpp"
#include "bergman/series.hpp"

namespace bergman::cli {

using nlohmann::ordered_json;

namespace {

// ---- argument conversion ----------------------------------------------------

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(item);
    if (!text.empty() && text.back() == ',') out.emplace_back();
    return out;
}

ComplexF complex_arg(const std::string& flag, const std::string& text) {
    try {
        return parse_complex(text);
    } catch (const Error& e) {
        throw UsageError(flag, e.what());
    }
}

QComplex qcomplex_arg(const std::string& flag, const std::string& text) {
    try {
        return parse_qcomplex(text);
    } catch (const Error& e) {
        throw UsageError(flag, e.what());
    }
}

ComplexF disk_arg(const std::string& flag, const std::string& text) {
    const ComplexF v = complex_arg(flag, text);
    if (!DiskPointF::contains(v)) throw UsageError(flag, "'" + text + "' is not in the open unit disk");
    return v;
}

std::vector<ComplexF> disk_list(const std::string& flag, const std::string& text) {
    std::vector<ComplexF> out;
    for (const auto& item : split_list(text)) out.push_back(disk_arg(flag, item));
    if (out.empty()) throw UsageError(flag, "expected at least one point");
    return out;
}

std::vector<QComplex> disk_list_exact(const std::string& flag, const std::string& text) {
    std::vector<QComplex> out;
    for (const auto& item : split_list(text)) {
        QComplex v = qcomplex_arg(flag, item);
        if (!DiskPointQ::contains(v)) throw UsageError(flag, "'" + item + "' is not in the open unit disk");
        out.push_back(std::move(v));
    }
    if (out.empty()) throw UsageError(flag, "expected at least one point");
    return out;
}

void require_distinct(const std::vector<ComplexF>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (std::abs(nodes[i] - nodes[j]) <= 1e-10) {
                throw UsageError("--nodes", "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                                " coincide");
            }
        }
    }
}

void require_distinct(const std::vector<QComplex>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (nodes[i] == nodes[j]) {
                throw UsageError("--nodes", "nodes " + std::to_string(i) + " and " + std::to_string(j) +
                                                " coincide");
            }
        }
    }
}

struct TwoPointArgs {
    ComplexF l1, l2, w1, w2;
};

TwoPointArgs two_point_args(const std::string& nodes, const std::string& targets) {
    const auto n = disk_list("--nodes", nodes);
    const auto t = disk_list("--targets", targets);
    if (n.size() != 2) throw UsageError("--nodes", "expected exactly two nodes");
    if (t.size() != 2) throw UsageError("--targets", "expected exactly two targets");
    require_distinct(n);
    return {n[0], n[1], t[0], t[1]};
}

KVectorF ball_arg(const std::string& name, const std::string& text) {
    KVectorF v;
    try {
        v = parse_kvector(text);
    } catch (const Error& e) {
        throw UsageError(name, e.what());
    }
    if (!(euclid_norm_sq(v) < 1.0)) throw UsageError(name, "'" + text + "' is not in the unit ball B2");
    return v;
}

// ---- report helpers -----------------------------------------------------------

double sig15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

ordered_json points_json(const std::vector<ComplexF>& pts) {
    ordered_json out = ordered_json::array();
    for (const auto& p : pts) out.push_back(format(p));
    return out;
}

template <class Scalar>
ordered_json matrix_json(const DenseMatrix<Scalar>& A) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(format(A(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Report start(const std::string& command) {
    Report r;
    r.doc["schema"] = kSchema;
    r.doc["version"] = kVersion;
    r.doc["command"] = command;
    r.doc["seed"] = nullptr;
    r.doc["inputs"] = ordered_json::object();
    r.doc["outputs"] = ordered_json::object();
    r.doc["checks"] = ordered_json::array();
    r.doc["status"] = nullptr;
    return r;
}

void check(Report& r, const std::string& name, bool passed, std::optional<double> residual = std::nullopt) {
    ordered_json c;
    c["name"] = name;
    c["passed"] = passed;
    if (residual) c["residual"] = *residual;
    r.doc["checks"].push_back(std::move(c));
}

// Exit code and summary from the check list.
void finish(Report& r, const std::string& headline) {
    int failed = 0;
    for (const auto& c : r.doc["checks"]) failed += c["passed"].get<bool>() ? 0 : 1;
    const auto total = r.doc["checks"].size();
    r.exit_code = failed == 0 ? kExitOk : kExitFailed;
    r.doc["status"] = failed == 0 ? "verified" : "failed";
    std::ostringstream s;
    s << r.doc["command"].get<std::string>() << ": " << headline;
    if (total > 0) s << " (" << total - static_cast<std::size_t>(failed) << "/" << total << " checks passed)";
    r.summary = s.str();
}

void fail_with(Report& r, const Error& e) {
    r.doc["status"] = "error";
    r.doc["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.exit_code = kExitFailed;
    r.summary = r.doc["command"].get<std::string>() + ": error: " + e.what();
}

void infeasible(Report& r, const InfeasibleError& e) {
    r.doc["status"] = "infeasible";
    auto& out = r.doc["outputs"];
    out["rho_nodes"] = sig15(e.rho_nodes());
    out["rho_targets"] = sig15(e.rho_targets());
    if (e.schur_ratio() >= 0.0) out["schur_ratio"] = sig15(e.schur_ratio());
    r.doc["error"] = {{"kind", "Infeasible"}, {"message", e.what()}};
    r.exit_code = kExitFailed;
    std::ostringstream s;
    s << r.doc["command"].get<std::string>() << ": infeasible, rho(targets) = " << sig15(e.rho_targets())
      << " > rho(nodes) = " << sig15(e.rho_nodes());
    r.summary = s.str();
}

// ---- commands ---------------------------------------------------------------

Report run_rho(const Rho& c) {
    Report r = start("rho");
    r.doc["inputs"] = {{"a", format(c.a)}, {"b", format(c.b)}};
    const DiskPointF a(c.a), b(c.b);
    const double value = rho(a, b);
    const double via_kernel = rho_from_kernel(a, b);
    r.doc["outputs"] = {{"rho", sig15(value)},
                        {"pseudo_hyperbolic", sig15(pseudo_hyperbolic(a, b))},
                        {"rho_from_kernel", sig15(via_kernel)}};
    check(r, "rho = rho_from_kernel", std::abs(value - via_kernel) <= 1e-12, std::abs(value - via_kernel));
    char buf[64];
    std::snprintf(buf, sizeof buf, "rho = %.15g", value);
    finish(r, buf);
    return r;
}

Report run_pick_check(const PickCheck& c) {
    Report r = start("pick-check");
    const bool squared = c.kernel == PickKernel::Squared;
    r.doc["inputs"]["kernel"] = squared ? "squared" : "classical";
    r.doc["inputs"]["exact"] = c.exact;
    auto& out = r.doc["outputs"];
    PsdVerdict v;
    if (c.exact) {
        ordered_json nodes = ordered_json::array(), targets = ordered_json::array();
        std::vector<DiskPointQ> n, t;
        for (const auto& x : c.nodes_q) {
            nodes.push_back(format(x));
            n.emplace_back(x);
        }
        for (const auto& x : c.targets_q) {
            targets.push_back(format(x));
            t.emplace_back(x);
        }
        r.doc["inputs"]["nodes"] = nodes;
        r.doc["inputs"]["targets"] = targets;
        const HermitianMatrixQ A = squared ? pick_matrix_squared<QComplex>(n, t) : pick_matrix<QComplex>(n, t);
        out["matrix"] = matrix_json(A.entries());
        out["determinant"] = format(det_exact(A));
        v = psd_exact(A);
        out["is_psd"] = v.is_psd;
        if (!v.is_psd) {
            out["witness"] = {{"minor_indices", v.minor_indices}, {"minor_value", format(v.minor_value)}};
        }
    } else {
        r.doc["inputs"]["nodes"] = points_json(c.nodes);
        r.doc["inputs"]["targets"] = points_json(c.targets);
        std::vector<DiskPointF> n(c.nodes.begin(), c.nodes.end()), t(c.targets.begin(), c.targets.end());
        const HermitianMatrixF A = squared ? pick_matrix_squared<ComplexF>(n, t) : pick_matrix<ComplexF>(n, t);
        out["matrix"] = matrix_json(A.entries());
        v = psd_float(A);
        out["is_psd"] = v.is_psd;
        out["min_eigenvalue"] = v.min_eigenvalue;
        out["eigenvalues"] = v.eigenvalues;
    }
    // The verdict is the answer, not a verification, so either value exits 0.
    finish(r, std::string(squared ? "M_Phi" : "P") + (v.is_psd ? " is PSD" : " is not PSD"));
    return r;
}

ordered_json chain_json(const RationalMapChain& F) {
    ordered_json steps = ordered_json::array();
    for (const auto& s : F.steps()) {
        if (const auto* lin = std::get_if<LinearStep>(&s)) {
            steps.push_back({{"type", "linear"}, {"matrix", format(lin->matrix)}});
        } else {
            steps.push_back({{"type", "moebius"}, {"base", format(std::get<MoebiusStep>(s).base)}});
        }
    }
    return steps;
}

Report run_interpolate(const Interpolate& c) {
    Report r = start("interpolate");
    r.doc["seed"] = c.seed;
    r.doc["inputs"] = {{"nodes", points_json({c.lambda1, c.lambda2})},
                       {"targets", points_json({c.omega1, c.omega2})},
                       {"trials", c.trials}};
    const TwoPointProblem p(DiskPointF(c.lambda1), DiskPointF(c.lambda2), DiskPointF(c.omega1),
                            DiskPointF(c.omega2));
    auto& out = r.doc["outputs"];
    EquivalenceOptions eo;
    eo.gram.trials = c.trials;
    const EquivalenceReport eq = check_equivalences(p, c.trials, c.seed, eo);
    const ordered_json conditions = {{"m_phi_psd", eq.m_phi_psd},
                                     {"pick_psd", eq.pick_psd},
                                     {"rho_ordered", eq.rho_ordered},
                                     {"solver_ok", eq.solver_ok}};
    RationalMapChain F;
    try {
        F = solve_indefinite_two_point(p);
    } catch (const InfeasibleError& e) {
        infeasible(r, e);  // adds top-level keys, so `out` is stale here
        r.doc["outputs"]["conditions"] = conditions;
        r.doc["outputs"]["conditions_agree"] = eq.agree();
        return r;
    }
    const TwoPointContraction tc = build_contraction_T(p);
    out["rho_nodes"] = sig15(p.rho_nodes());
    out["rho_targets"] = sig15(p.rho_targets());
    out["chain"] = chain_json(F);
    out["T"] = format(tc.T);

    const double res1 = (eval_chain(F, phi(p.lambda1)) - phi(p.omega1)).norm();
    const double res2 = (eval_chain(F, phi(p.lambda2)) - phi(p.omega2)).norm();
    out["residuals"] = {res1, res2};
    out["certificate"] = {{"passed", eq.certificate.passed},
                          {"min_eigenvalue", eq.certificate.min_eigenvalue},
                          {"grids", eq.certificate.grids},
                          {"redraws", eq.certificate.redraws}};
    out["conditions"] = conditions;
    check(r, "F(Phi(l1)) = Phi(w1)", res1 < 1e-9, res1);
    check(r, "F(Phi(l2)) = Phi(w2)", res2 < 1e-9, res2);
    check(r, "T is a K-contraction", is_k_contraction(tc.T));
    check(r, "ratio-kernel Gram PSD on seeded grids", eq.certificate.passed, eq.certificate.min_eigenvalue);
    check(r, "equivalent conditions agree", eq.agree());
    finish(r, "interpolant found");
    return r;
}

Report run_schur(const SchurInterpolate& c) {
    Report r = start("schur-interpolate");
    r.doc["inputs"] = {{"nodes", points_json({c.lambda1, c.lambda2})},
                       {"targets", points_json({c.omega1, c.omega2})}};
    const TwoPointProblem p(DiskPointF(c.lambda1), DiskPointF(c.lambda2), DiskPointF(c.omega1),
                            DiskPointF(c.omega2));
    SchurInterpolant f;
    try {
        f = solve_schur_two_point(p);
    } catch (const InfeasibleError& e) {
        infeasible(r, e);
        return r;
    }
    const double res1 = std::abs(f(c.lambda1) - c.omega1);
    const double res2 = std::abs(f(c.lambda2) - c.omega2);
    r.doc["outputs"] = {{"c", format(f.c)},
                        {"abs_c", sig15(std::abs(f.c))},
                        {"form", "m_w1(c * m_l1(z)), m_a(z) = (a - z) / (1 - conj(a) z)"},
                        {"residuals", {res1, res2}}};
    check(r, "f(l1) = w1", res1 < 1e-9, res1);
    check(r, "f(l2) = w2", res2 < 1e-9, res2);
    check(r, "|c| <= 1", std::abs(f.c) <= 1.0 + kSchurSlack);
    finish(r, "interpolant found");
    return r;
}

Report run_identities(const VerifyIdentities& c) {
    Report r = start("verify-identities");
    r.doc["seed"] = c.seed;
    r.doc["inputs"] = {{"trials", c.trials}};
    ordered_json rows = ordered_json::array();
    for (const auto& id : verify_identities(c.seed, c.trials)) {
        rows.push_back({{"name", id.name},
                        {"max_residual", id.max_residual},
                        {"threshold", id.threshold},
                        {"samples", id.samples},
                        {"failures", id.failures}});
        check(r, id.name, id.passed(), id.max_residual);
    }
    r.doc["outputs"]["identities"] = rows;
    finish(r, "identity sweep done");
    return r;
}

Report run_kernel_eval(const KernelEval& c) {
    Report r = start("kernel-eval");
    r.doc["inputs"] = {{"z", format(c.z)}, {"lambda", format(c.lambda)}, {"tol", c.tol}};
    if (c.truncation) r.doc["inputs"]["truncation"] = *c.truncation;
    const BallPointF z(c.z), l(c.lambda);
    const int N = c.truncation.value_or(default_truncation(z, l, c.tol));
    const ComplexF closed = k_indef(c.z, c.lambda);
    const ComplexF plus = k_plus(z, l, N);
    const ComplexF minus = k_minus(z, l, N);
    const double bound = truncation_bound(z, l, N);
    const double residual = std::abs(closed - (plus - minus));
    r.doc["outputs"] = {{"K_closed", format(closed)}, {"K_plus", format(plus)}, {"K_minus", format(minus)},
                        {"N", N},                     {"bound", bound},         {"residual", residual}};
    check(r, "|K - (K+ - K-)| <= bound", residual <= bound + 1e-12 * std::max(1.0, std::abs(closed)), residual);
    if (!c.truncation) check(r, "bound < tol", bound < c.tol, bound);
    finish(r, "K = " + format(closed) + " at N = " + std::to_string(N));
    return r;
}

}  // namespace

// ---- parse ------------------------------------------------------------------

Command parse(const std::vector<std::string>& args) {
    CLI::App app{"Bergman kernel / indefinite Pick interpolation toolkit", "bergman"};
    app.require_subcommand(1);

    std::string a_text, b_text;
    auto* rho_cmd = app.add_subcommand("rho", "invariant distance rho(a, b) on the disk");
    rho_cmd->add_option("a", a_text, "first point")->required();
    rho_cmd->add_option("b", b_text, "second point")->required();

    std::string nodes, targets, kernel = "squared";
    bool exact = false;
    auto* pick = app.add_subcommand("pick-check", "PSD test of a Pick matrix");
    pick->add_option("--nodes", nodes, "comma-separated nodes")->required();
    pick->add_option("--targets", targets, "comma-separated targets")->required();
    pick->add_option("--kernel", kernel, "classical | squared")->check(CLI::IsMember({"classical", "squared"}));
    pick->add_flag("--exact", exact, "exact rational arithmetic (p/q inputs)");

    std::uint64_t seed = 0;
    int trials = 0;
    auto* interp = app.add_subcommand("interpolate", "two-point indefinite interpolation");
    interp->add_option("--nodes", nodes, "two nodes l1,l2")->required();
    interp->add_option("--targets", targets, "two targets w1,w2")->required();
    interp->add_option("--seed", seed, "seed for the Gram certificate");
    interp->add_option("--trials", trials, "number of random grids");

    auto* schur = app.add_subcommand("schur-interpolate", "two-point Schur interpolation on the disk");
    schur->add_option("--nodes", nodes, "two nodes l1,l2")->required();
    schur->add_option("--targets", targets, "two targets w1,w2")->required();

    auto* ident = app.add_subcommand("verify-identities", "seeded residual sweep over the identities");
    ident->add_option("--seed", seed, "random seed");
    ident->add_option("--trials", trials, "number of draws");

    std::string z_text, l_text;
    std::optional<int> truncation;
    double tol = kDefaultTruncationTarget;
    auto* keval = app.add_subcommand("kernel-eval", "K(z, l) in closed form and by the K+/K- series");
    keval->add_option("z", z_text, "point of B2 as \"(z1, z2)\"")->required();
    keval->add_option("lambda", l_text, "point of B2 as \"(l1, l2)\"")->required();
    keval->add_option("--truncation", truncation, "series order N");
    keval->add_option("--tol", tol, "target truncation bound when N is not given");

    auto* example = app.add_subcommand("verify-paper-example", "exact three-node counterexample");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto used = app.get_subcommands();
        throw HelpRequested(used.empty() ? app.help() : used.front()->help());
    } catch (const CLI::ParseError& e) {
        throw UsageError("", e.what());
    }

    if (rho_cmd->parsed()) return Rho{disk_arg("a", a_text), disk_arg("b", b_text)};

    if (pick->parsed()) {
        PickCheck c;
        c.kernel = kernel == "classical" ? PickKernel::Classical : PickKernel::Squared;
        c.exact = exact;
        if (exact) {
            c.nodes_q = disk_list_exact("--nodes", nodes);
            c.targets_q = disk_list_exact("--targets", targets);
            if (c.nodes_q.size() != c.targets_q.size()) {
                throw UsageError("--targets", "expected as many targets as nodes");
            }
            if (static_cast<Eigen::Index>(c.nodes_q.size()) > kMaxExactDimension) {
                throw UsageError("--nodes", "exact mode supports at most " + std::to_string(kMaxExactDimension) +
                                                " nodes");
            }
            require_distinct(c.nodes_q);
        } else {
            c.nodes = disk_list("--nodes", nodes);
            c.targets = disk_list("--targets", targets);
            if (c.nodes.size() != c.targets.size()) {
                throw UsageError("--targets", "expected as many targets as nodes");
            }
            require_distinct(c.nodes);
        }
        return c;
    }

    const auto positive_trials = [&](int fallback) {
        if (trials == 0) return fallback;
        if (trials < 0) throw UsageError("--trials", "must be positive");
        return trials;
    };

    if (interp->parsed()) {
        const auto tp = two_point_args(nodes, targets);
        return Interpolate{tp.l1, tp.l2, tp.w1, tp.w2, seed, positive_trials(16)};
    }
    if (schur->parsed()) {
        const auto tp = two_point_args(nodes, targets);
        return SchurInterpolate{tp.l1, tp.l2, tp.w1, tp.w2};
    }
    if (ident->parsed()) return VerifyIdentities{seed, positive_trials(500)};

    if (keval->parsed()) {
        KernelEval c;
        c.z = ball_arg("z", z_text);
        c.lambda = ball_arg("lambda", l_text);
        if (truncation && (*truncation < 0 || *truncation > kMaxTruncation)) {
            throw UsageError("--truncation", "must lie in [0, " + std::to_string(kMaxTruncation) + "]");
        }
        if (!(tol > 0.0)) throw UsageError("--tol", "must be positive");
        if (std::abs(1.0 - k_inner(c.z, c.lambda)) <= KreinTolerances{}.singular) {
            throw UsageError("z", "<z, lambda>_K = 1, the kernel is singular");
        }
        c.truncation = truncation;
        c.tol = tol;
        return c;
    }

    (void)example;
    return VerifyPaperExample{};
}

// ---- execute ----------------------------------------------------------------

Report verify_paper_example() {
    Report r = start("verify-paper-example");
    const std::vector<DiskPointQ> nodes{DiskPointQ(make_rational(2, 3)), DiskPointQ(make_rational(3, 4)),
                                        DiskPointQ(QComplex(0))};
    const std::vector<DiskPointQ> targets{DiskPointQ(make_rational(1, 3)), DiskPointQ(make_rational(1, 4)),
                                          DiskPointQ(QComplex(0))};
    r.doc["inputs"] = {{"nodes", {"2/3", "3/4", "0"}}, {"targets", {"1/3", "1/4", "0"}}};

    const HermitianMatrixQ P = pick_matrix<QComplex>(nodes, targets);
    const HermitianMatrixQ M = pick_matrix_squared<QComplex>(nodes, targets);
    DenseMatrix<QComplex> block = M.entries().topLeftCorner(2, 2);

    const Rational det_p = det_exact(P);
    const Rational det_block = det_exact(HermitianMatrixQ(block));
    const Rational det_m = det_exact(M);
    const PsdVerdict vp = psd_exact(P);
    const PsdVerdict vm = psd_exact(M);

    auto& out = r.doc["outputs"];
    out["P"] = matrix_json(P.entries());
    out["M_Phi"] = matrix_json(M.entries());
    out["det_P"] = format(det_p);
    out["det_M_Phi_leading_2x2"] = format(det_block);
    out["det_M_Phi"] = format(det_m);
    out["P_is_psd"] = vp.is_psd;
    out["P_witness"] = {{"minor_indices", vp.minor_indices}, {"minor_value", format(vp.minor_value)}};
    out["M_Phi_is_psd"] = vm.is_psd;

    const auto entries_match = [](const HermitianMatrixQ& A, const Rational& d0, const Rational& off,
                                  const Rational& d1) {
        return A(0, 0) == QComplex(d0) && A(0, 1) == QComplex(off) && A(1, 0) == QComplex(off) &&
               A(1, 1) == QComplex(d1);
    };
    const auto border_ones = [](const HermitianMatrixQ& A) {
        for (Eigen::Index k = 0; k < 3; ++k) {
            if (!(A(k, 2) == QComplex(1)) || !(A(2, k) == QComplex(1))) return false;
        }
        return true;
    };
    const auto exact_check = [&](const std::string& name, bool ok, const std::string& expected,
                                 const std::string& actual) {
        r.doc["checks"].push_back({{"name", name}, {"passed", ok}, {"expected", expected}, {"actual", actual}});
    };
    const auto entries_of = [](const HermitianMatrixQ& A) {
        return format(A(0, 0)) + ", " + format(A(0, 1)) + ", " + format(A(1, 1));
    };

    exact_check("P entries", entries_match(P, make_rational(8, 5), make_rational(11, 6), make_rational(15, 7)),
                "8/5, 11/6, 15/7", entries_of(P));
    exact_check("P border of ones", border_ones(P), "1", format(P(0, 2)) + ", " + format(P(1, 2)) + ", " +
                                                             format(P(2, 2)));
    exact_check("M_Phi entries",
                entries_match(M, make_rational(64, 25), make_rational(121, 36), make_rational(225, 49)) &&
                    border_ones(M),
                "64/25, 121/36, 225/49", entries_of(M));
    exact_check("det P", det_p == make_rational(-11, 1260), "-11/1260", format(det_p));
    exact_check("det of leading 2x2 block of M_Phi", det_block == make_rational(29087, 63504), "29087/63504",
                format(det_block));
    exact_check("det M_Phi", det_m == make_rational(45119, 1587600), "45119/1587600", format(det_m));
    exact_check("P is not PSD", !vp.is_psd && vp.minor_value < 0, "false",
                vp.is_psd ? "true" : "false (minor " + format(vp.minor_value) + ")");
    exact_check("M_Phi is PSD", vm.is_psd, "true", vm.is_psd ? "true" : "false");

    finish(r, "exact example");
    return r;
}

Report execute(const Command& command) {
    const auto name = std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Rho>) return "rho";
            else if constexpr (std::is_same_v<T, PickCheck>) return "pick-check";
            else if constexpr (std::is_same_v<T, Interpolate>) return "interpolate";
            else if constexpr (std::is_same_v<T, SchurInterpolate>) return "schur-interpolate";
            else if constexpr (std::is_same_v<T, VerifyIdentities>) return "verify-identities";
            else if constexpr (std::is_same_v<T, KernelEval>) return "kernel-eval";
            else return "verify-paper-example";
        },
        command);
    try {
        return std::visit(
            [](const auto& c) -> Report {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, Rho>) return run_rho(c);
                else if constexpr (std::is_same_v<T, PickCheck>) return run_pick_check(c);
                else if constexpr (std::is_same_v<T, Interpolate>) return run_interpolate(c);
                else if constexpr (std::is_same_v<T, SchurInterpolate>) return run_schur(c);
                else if constexpr (std::is_same_v<T, VerifyIdentities>) return run_identities(c);
                else if constexpr (std::is_same_v<T, KernelEval>) return run_kernel_eval(c);
                else return verify_paper_example();
            },
            command);
    } catch (const Error& e) {
        Report r = start(name);
        fail_with(r, e);
        return r;
    }
}

// ---- run ----------------------------------------------------------------------

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

nlohmann::ordered_json strip_volatile(nlohmann::ordered_json doc) {
    doc.erase("timestamp");
    return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Report r;
    try {
        r = execute(parse(args));
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        r = start("");
        r.doc["command"] = args.empty() ? ordered_json(nullptr) : ordered_json(args.front());
        r.doc["status"] = "usage-error";
        r.doc["error"] = {{"kind", "UsageError"}, {"flag", e.flag()}, {"message", e.what()}};
        r.exit_code = kExitUsage;
        r.summary = std::string("usage error: ") + e.what();
    }
    r.doc["argv"] = args;
    r.doc["timestamp"] = utc_timestamp();
    out << r.doc.dump(2) << "\n";
    err << r.summary << "\n";
    return r.exit_code;
}

}  // namespace bergman::cli
