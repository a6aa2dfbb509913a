#include "tpc/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "tpc/attacks.hpp"
#include "tpc/funcspec.hpp"
#include "tpc/povm_io.hpp"
#include "tpc/report.hpp"
#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

// Thrown for anything the user got wrong; maps to exit code 1.
struct InputFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFailure("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FunctionSpec load_function(const std::string& source) {
    try {
        if (!source.empty() && source.front() == '@') return builtin_function(source.substr(1));
        return parse_function_file(read_file(source));
    } catch (const ParseError& e) {
        throw InputFailure(source + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputFailure(source + ": " + e.what());
    }
}

std::vector<double> parse_number_list(const std::string& flag, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(to_double(parse_rational(item)));
            continue;
        } catch (const std::invalid_argument&) {
        }
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0') throw InputFailure(flag + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw InputFailure(flag + " needs at least one value");
    return out;
}

void write_document(const std::string& path, const std::vector<AttackReport>& reports) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputFailure("cannot write '" + path + "'");
    out << serialize(ReportDocument::with_current_environment(reports));
}

struct AnalyzeArgs {
    std::string source;
    std::string prior, superposition, q0_sweep, q0, role, out;
    bool optimize = false;
};

Role parse_role(const std::string& s) {
    if (s == "alice") return Role::alice;
    if (s == "bob") return Role::bob;
    throw InputFailure("--role must be alice or bob");
}

bool is_binary_2x2(const FunctionSpec& f) {
    return f.alice_arity() == 2 && f.bob_arity() == 2 && f.outcome_count() == 2;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    const auto f = load_function(args.source);
    const std::optional<std::vector<double>> prior =
        args.prior.empty() ? std::nullopt : std::optional(parse_number_list("--prior", args.prior));
    const std::optional<std::vector<double>> sup =
        args.superposition.empty() ? std::nullopt : std::optional(parse_number_list("--superposition", args.superposition));
    std::vector<double> sweep;
    if (!args.q0.empty()) sweep = parse_number_list("--q0", args.q0);
    if (!args.q0_sweep.empty()) {
        const auto more = parse_number_list("--q0-sweep", args.q0_sweep);
        sweep.insert(sweep.end(), more.begin(), more.end());
    }
    if (sweep.empty() && prior && prior->size() == 2) sweep = {(*prior)[0]};

    // The receiver of a one-sided box is the party that can cheat; a box where
    // Bob has a single input only makes sense with Bob receiving.
    Role role = Role::alice;
    if (!args.role.empty()) role = parse_role(args.role);
    else if (f.sidedness() == Sidedness::one && f.bob_arity() == 1 && f.alice_arity() > 1) role = Role::bob;
    const auto g = role == Role::bob ? f.transposed() : f;

    AttackReport report;
    try {
        const auto ot = builtin_function("ot");
        if ((f == ot || f == ot.transposed()) && !prior && !sup && sweep.empty() && g.bob_arity() == 2) {
            report = attack_oblivious_transfer();
        } else if (f.kind() == Kind::deterministic) {
            if (f.sidedness() == Sidedness::one) {
                err << "out of scope: deterministic one-sided functions are not analysed here "
                       "(two-input one-sided deterministic computation is already known to be insecure)\n";
                return kExitOutOfScope;
            }
            if (g.alice_arity() != 3 || g.bob_arity() != 3) {
                err << "out of scope: " << g.alice_arity() << "x" << g.bob_arity()
                    << " deterministic function; larger alphabets: conjectured insecure, not verified\n";
                return kExitOutOfScope;
            }
            const auto flags = validate_conditions(g);
            if (!flags.valid()) {
                err << "error: function is " << (flags.potentially_concealing ? "" : "not potentially concealing")
                    << (flags.potentially_concealing || flags.non_degenerate ? "" : " and ")
                    << (flags.non_degenerate ? "" : "degenerate") << '\n';
                return kExitInputError;
            }
            report = attack_deterministic_3x3(g, {.optimize = args.optimize, .prior = prior, .superposition = sup});
        } else if (is_binary_2x2(g) && g.sidedness() == Sidedness::two && !sup) {
            if (sweep.empty()) sweep = default_q0_sweep();
            report = attack_nondet_two_sided(g, sweep);
            if (args.optimize) report.p_attack_optimized = scan_real_superpositions(g, report.prior[0]).p_attack;
        } else if (is_binary_2x2(g) && g.sidedness() == Sidedness::one && !sup) {
            report = attack_nondet_one_sided(g, sweep.empty() ? 0.5 : sweep.front());
        } else {
            std::optional<std::vector<double>> p = prior;
            if (!p && sweep.size() == 1 && g.bob_arity() == 2) p = std::vector<double>{sweep[0], 1.0 - sweep[0]};
            report = attack_general(f, {.role = role, .prior = p, .superposition = sup});
        }
    } catch (const std::invalid_argument& e) {
        throw InputFailure(e.what());
    }
    out << render_report(report);
    write_document(args.out, {report});
    return kExitOk;
}

int cmd_sweep3x3(int workers, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto reports = sweep_all_3x3(workers);
    const auto s = summarize_sweep(reports);
    out << "functions=" << s.count << " min_adv=" << format_number(s.min_advantage)
        << " median_adv=" << format_number(s.median_advantage) << " max_adv=" << format_number(s.max_advantage) << '\n';
    out << "weakest: " << s.min_function_id << '\n';
    write_document(out_path, reports);
    if (!s.failures.empty()) {
        err << "sweep failure: " << s.failures.size() << " function(s) without a strict advantage\n";
        for (const auto& r : s.failures) err << "  " << r.function_id << " advantage=" << format_number(r.advantage) << '\n';
        return kExitSweepFailure;
    }
    return kExitOk;
}

int cmd_ot_demo(const std::string& out_path, std::ostream& out) {
    const auto demo = oblivious_transfer_demo();
    out << "oblivious transfer: Bob inputs honestly, then measures |psi_b> = (|b> + |?>)/sqrt2\n";
    out << "explicit E0 (basis 0, 1, ?):\n";
    for (Eigen::Index r = 0; r < 3; ++r) {
        out << "  ";
        for (Eigen::Index c = 0; c < 3; ++c) out << (c ? "  " : "") << format_number(demo.explicit_e0(r, c).real());
        out << '\n';
    }
    const auto& pc = demo.explicit_certificate;
    out << "explicit E0 success: " << format_number(demo.explicit_success) << '\n'
        << "explicit E0 certificate: " << (pc.optimal ? "optimal" : "not optimal") << " (stationarity "
        << format_number(pc.residuals.stationarity) << ", min eigenvalue " << format_number(pc.residuals.min_eigenvalue)
        << ", anti-Hermitian " << format_number(pc.residuals.antihermitian) << ")\n"
        << "Helstrom success: " << format_number(demo.helstrom_result.success_probability) << '\n'
        << "honest baseline: " << format_number(demo.report.p_honest) << '\n';
    out << render_report(demo.report);
    write_document(out_path, {demo.report});
    return kExitOk;
}

struct CertifyArgs {
    std::string source, povm, prior, superposition, role;
    std::size_t honest_input = 0;
};

int cmd_certify(const CertifyArgs& args, std::ostream& out) {
    const auto f = load_function(args.source);
    Role role = Role::alice;
    if (!args.role.empty()) role = parse_role(args.role);
    else if (f.sidedness() == Sidedness::one && f.bob_arity() == 1 && f.alice_arity() > 1) role = Role::bob;
    const auto g = role == Role::bob ? f.transposed() : f;

    std::optional<Povm> povm;
    OutputStateFamily fam;
    std::optional<Prior> prior;
    try {
        prior = args.prior.empty() ? Prior::uniform(g.bob_arity()) : Prior::make(parse_number_list("--prior", args.prior));
        if (g.sidedness() == Sidedness::two) {
            const auto a = args.superposition.empty()
                               ? InputSuperposition::uniform(g.alice_arity())
                               : InputSuperposition::normalized(parse_number_list("--superposition", args.superposition));
            fam = output_family(g, a);
        } else {
            fam = output_family(g, HonestInput{args.honest_input});
        }
        povm = parse_povm_file(read_file(args.povm));
        if (povm->dim() != fam.dim()) throw std::invalid_argument("POVM dimension " + std::to_string(povm->dim()) +
                                                                 " does not match state dimension " + std::to_string(fam.dim()));
        povm->grouped(fam.size());
    } catch (const ParseError& e) {
        throw InputFailure(args.povm + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputFailure(e.what());
    }

    const auto cert = certify_optimal(fam, *prior, *povm);
    out << "success: " << format_number(povm_success(fam, *prior, *povm)) << '\n'
        << "stationarity residual: " << format_number(cert.residuals.stationarity) << '\n'
        << "min eigenvalue: " << format_number(cert.residuals.min_eigenvalue) << '\n'
        << "anti-Hermitian residual: " << format_number(cert.residuals.antihermitian) << '\n'
        << "certified: " << (cert.optimal ? "optimal" : "not optimal") << " (tolerance "
        << format_number(tolerances().cert) << ")\n";
    return cert.optimal ? kExitOk : kExitNotOptimal;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Superposition-input cheating attacks on ideal two-party computation boxes", "tpc"};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Attack a function given as a file or @ot, @counterexample, @neq3");
    an->add_option("function", analyze.source, "Function file or @name")->required();
    an->add_option("--prior", analyze.prior, "Prior over the honest party's inputs, comma separated");
    an->add_option("--superposition", analyze.superposition, "Cheater's input amplitudes, comma separated");
    an->add_option("--q0-sweep", analyze.q0_sweep, "q0 values to probe, comma separated");
    an->add_option("--q0", analyze.q0, "Single q0 value");
    an->add_option("--role", analyze.role, "Cheating party: alice or bob");
    an->add_flag("--optimize", analyze.optimize, "Also run the iterative measurement search");
    an->add_option("--out", analyze.out, "Write a machine-readable report document");

    int workers = omp_get_max_threads();
    std::string sweep_out;
    auto* sw = app.add_subcommand("sweep3x3", "Attack every inequivalent valid 3x3 deterministic function");
    sw->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sw->add_option("--out", sweep_out, "Write a machine-readable report document");

    std::string ot_out;
    auto* ot = app.add_subcommand("ot-demo", "Attack on the ideal oblivious-transfer box");
    ot->add_option("--out", ot_out, "Write a machine-readable report document");

    CertifyArgs certify;
    auto* ce = app.add_subcommand("certify", "Check the optimality conditions for a POVM");
    ce->add_option("function", certify.source, "Function file or @name")->required();
    ce->add_option("--povm", certify.povm, "POVM file")->required();
    ce->add_option("--prior", certify.prior, "Prior over the honest party's inputs");
    ce->add_option("--superposition", certify.superposition, "Cheater's input amplitudes (two-sided)");
    ce->add_option("--honest-input", certify.honest_input, "Cheater's classical input (one-sided)");
    ce->add_option("--role", certify.role, "Cheating party: alice or bob");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        load_tolerances_from_env();
        if (an->parsed()) return cmd_analyze(analyze, out, err);
        if (sw->parsed()) return cmd_sweep3x3(workers, sweep_out, out, err);
        if (ot->parsed()) return cmd_ot_demo(ot_out, out);
        if (ce->parsed()) return cmd_certify(certify, out);
    } catch (const InputFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace tpc
