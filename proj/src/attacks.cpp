#include "tpc/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string describe(const InputSuperposition& a) {
    std::vector<double> re;
    bool real = true;
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        re.push_back(a.amplitudes()(i).real());
        real = real && a.amplitudes()(i).imag() == 0.0;
    }
    return (real ? "superposition:" : "superposition(real part):") + join(re);
}

void merge_residuals(CertificateResiduals& acc, const CertificateResiduals& r) {
    acc.stationarity = std::max(acc.stationarity, r.stationarity);
    acc.min_eigenvalue = std::min(acc.min_eigenvalue, r.min_eigenvalue);
    acc.antihermitian = std::max(acc.antihermitian, r.antihermitian);
}

void require_binary_2x2(const FunctionSpec& f, Sidedness sided) {
    if (f.sidedness() != sided)
        throw std::invalid_argument(sided == Sidedness::two ? "expected a two-sided function" : "expected a one-sided function");
    if (f.alice_arity() != 2 || f.bob_arity() != 2 || f.outcome_count() != 2)
        throw std::invalid_argument("expected a binary-output 2x2 table");
}

// Best measurement for a family: Helstrom for two states, otherwise the better
// of the square-root measurement and its refinement.
DiscriminationResult best_measurement(const OutputStateFamily& fam, const Prior& prior) {
    if (fam.size() == 2) return helstrom(fam.states[0], fam.states[1], prior[0]);
    const auto d = static_cast<Eigen::Index>(fam.dim());
    if (fam.size() == 1) {
        auto povm = Povm::make({ComplexMatrix::Identity(d, d)});
        const auto cert = certify_optimal(fam, prior, povm);
        return {.success_probability = 1.0, .povm = std::move(povm), .certified_optimal = cert.optimal, .residuals = cert.residuals};
    }
    const auto srm = square_root_measurement(fam, prior);
    return optimize_povm(fam, prior, srm);
}

bool is_oblivious_transfer_table(const FunctionSpec& f) {
    const auto ot = builtin_function("ot");
    return f == ot || f == ot.transposed();
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::deterministic_3x3: return "deterministic-3x3";
        case Scenario::nondet_two_sided: return "nondet-two-sided";
        case Scenario::nondet_one_sided: return "nondet-one-sided";
        case Scenario::oblivious_transfer: return "oblivious-transfer";
        case Scenario::counterexample: return "counterexample";
        case Scenario::general: return "general";
    }
    return "general";
}

Scenario scenario_from_string(const std::string& s) {
    for (auto sc : {Scenario::deterministic_3x3, Scenario::nondet_two_sided, Scenario::nondet_one_sided,
                    Scenario::oblivious_transfer, Scenario::counterexample, Scenario::general})
        if (to_string(sc) == s) return sc;
    throw std::invalid_argument("unknown scenario '" + s + "'");
}

bool operator==(const AttackReport& x, const AttackReport& y) {
    return x.function_id == y.function_id && x.scenario == y.scenario && x.prior == y.prior &&
           x.input_used == y.input_used && x.p_honest == y.p_honest && x.p_attack == y.p_attack &&
           x.advantage == y.advantage && x.p_attack_optimized == y.p_attack_optimized && x.certified == y.certified &&
           x.residuals.stationarity == y.residuals.stationarity &&
           x.residuals.min_eigenvalue == y.residuals.min_eigenvalue &&
           x.residuals.antihermitian == y.residuals.antihermitian && x.notes == y.notes;
}

AttackReport attack_deterministic_3x3(const FunctionSpec& f, const DeterministicAttackOptions& opts) {
    if (f.sidedness() != Sidedness::two) throw std::invalid_argument("deterministic attack needs a two-sided function");
    const auto canon = canonicalize_3x3(f);
    const auto& base = canon.base;

    const std::vector<double> q = opts.prior.value_or(std::vector<double>(3, 1.0 / 3.0));
    const auto a = opts.superposition ? InputSuperposition::normalized(*opts.superposition) : InputSuperposition::uniform(3);
    if (q.size() != 3 || a.size() != 3) throw std::invalid_argument("prior and superposition need three entries");
    Prior::make(q);

    // Carry the prior and input into the canonical labelling.
    std::vector<double> q_base(3);
    ComplexVector a_base(3);
    for (std::size_t p = 0; p < 3; ++p) {
        q_base[p] = q[canon.row_perm[p]];
        a_base(static_cast<Eigen::Index>(p)) = a.amplitudes()(static_cast<Eigen::Index>(canon.col_perm[p]));
    }
    const auto prior = Prior::make(q_base);
    const auto fam = output_family(base, InputSuperposition::make(a_base));

    AttackReport r;
    r.function_id = "det3x3/" + base.identifier().substr(base.identifier().rfind('/') + 1);
    r.scenario = Scenario::deterministic_3x3;
    r.prior = q;
    r.input_used = describe(a);
    r.p_honest = honest_probability(base, prior);
    const auto srm = square_root_measurement(fam, prior);
    r.p_attack = povm_success(fam, prior, srm);
    r.advantage = r.p_attack - r.p_honest;
    const auto cert = certify_optimal(fam, prior, srm);
    r.certified = cert.optimal;
    r.residuals = cert.residuals;
    if (opts.optimize) r.p_attack_optimized = optimize_povm(fam, prior, srm).success_probability;
    std::ostringstream notes;
    notes << "square-root measurement; canonical a=" << canon.a << " b=" << canon.b;
    r.notes = notes.str();
    return r;
}

std::vector<double> default_q0_sweep() { return {1.0 - 1e-2, 1.0 - 1e-3, 1.0 - 1e-4}; }

bool is_theorem3_exception(const FunctionSpec& f) {
    require_binary_2x2(f, Sidedness::two);
    const auto p = [&](std::size_t i, std::size_t j) { return f.prob(0, i, j); };
    return (p(0, 0) == p(1, 0) && p(0, 1) == p(1, 1)) || (p(0, 0) == p(0, 1) && p(1, 0) == p(1, 1));
}

std::vector<SweepPoint> two_sided_sweep_points(const FunctionSpec& f, const std::vector<double>& q0_sweep) {
    require_binary_2x2(f, Sidedness::two);
    const auto fam = output_family(f, InputSuperposition::uniform(2));
    const auto table = binary_table(f);
    std::vector<SweepPoint> out;
    for (double q0 : q0_sweep) {
        SweepPoint pt;
        pt.q0 = q0;
        pt.p_honest = honest_probability(f, Prior::binary(q0));
        pt.p_helstrom = helstrom(fam.states[0], fam.states[1], q0).success_probability;
        pt.p_closed_form = theorem3_eigenvalues(table, q0).success();
        out.push_back(pt);
    }
    return out;
}

AttackReport attack_nondet_two_sided(const FunctionSpec& f, const std::vector<double>& q0_sweep) {
    require_binary_2x2(f, Sidedness::two);
    if (q0_sweep.empty()) throw std::invalid_argument("q0 sweep is empty");
    AttackReport r;
    r.function_id = f.identifier();
    r.scenario = Scenario::nondet_two_sided;
    r.input_used = describe(InputSuperposition::uniform(2));

    if (is_theorem3_exception(f)) {
        const double q0 = q0_sweep.front();
        r.prior = {q0, 1.0 - q0};
        r.p_honest = r.p_attack = honest_probability(f, Prior::binary(q0));
        r.advantage = 0.0;
        r.certified = true;
        r.notes = "effectively one-input: only one party can make a meaningful input";
        return r;
    }

    const auto fam = output_family(f, InputSuperposition::uniform(2));
    bool first = true;
    for (double q0 : q0_sweep) {
        const double ph = honest_probability(f, Prior::binary(q0));
        const auto h = helstrom(fam.states[0], fam.states[1], q0);
        const double adv = h.success_probability - ph;
        if (first || adv > r.advantage) {
            r.prior = {q0, 1.0 - q0};
            r.p_honest = ph;
            r.p_attack = h.success_probability;
            r.advantage = adv;
            r.certified = h.certified_optimal;
            r.residuals = h.residuals;
            first = false;
        }
    }
    const double closed = theorem3_eigenvalues(binary_table(f), r.prior[0]).success();
    std::ostringstream notes;
    notes.precision(17);
    notes << "Helstrom at best q0; closed-form spectrum gives " << closed;
    if (f.kind() == Kind::deterministic) notes << "; deterministic table";
    r.notes = notes.str();
    return r;
}

AttackReport attack_nondet_one_sided(const FunctionSpec& f, double q0) {
    require_binary_2x2(f, Sidedness::one);
    const auto prior = Prior::binary(q0);
    AttackReport r;
    r.function_id = f.identifier();
    r.scenario = Scenario::nondet_one_sided;
    r.prior = {q0, 1.0 - q0};
    r.p_honest = honest_probability(f, prior);
    std::ostringstream notes;
    notes << "honest input, optimal two-state measurement;";
    bool first = true;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto fam = output_family(f, HonestInput{i});
        const auto h = helstrom(fam.states[0], fam.states[1], q0);
        notes << " basis measurement " << (theorem4_basis_check(f, i, q0) ? "meets" : "fails")
              << " stationarity for i=" << i << ';';
        if (first || h.success_probability > r.p_attack) {
            r.p_attack = h.success_probability;
            r.input_used = "honest:" + std::to_string(i);
            r.certified = h.certified_optimal;
            r.residuals = h.residuals;
            first = false;
        }
    }
    r.advantage = r.p_attack - r.p_honest;
    r.notes = notes.str();
    r.notes.pop_back();
    return r;
}

ObliviousTransferDemo oblivious_transfer_demo() {
    const auto f = builtin_function("ot");
    // Bob receives the output; he cheats by measuring |psi_b> = (|b> + |?>)/sqrt2.
    const auto fam = output_family(f, HonestInput{0}, Role::bob);
    const auto prior = Prior::uniform(2);

    const double s3 = std::numbers::sqrt3;
    ComplexMatrix e0(3, 3);
    e0 << 2 + s3, -1, 1 + s3,
          -1, 2 - s3, 1 - s3,
          1 + s3, 1 - s3, 2;
    e0 /= 6.0;
    const auto explicit_povm = Povm::make({e0, ComplexMatrix::Identity(3, 3) - e0});

    ObliviousTransferDemo demo{.report = {},
                               .explicit_e0 = e0,
                               .explicit_success = povm_success(fam, prior, explicit_povm),
                               .explicit_certificate = certify_optimal(fam, prior, explicit_povm),
                               .helstrom_result = helstrom(fam.states[0], fam.states[1], 0.5)};
    auto& r = demo.report;
    r.function_id = f.identifier();
    r.scenario = Scenario::oblivious_transfer;
    r.prior = prior.weights();
    r.input_used = "honest:0";
    r.p_honest = honest_probability(f.transposed(), prior);
    r.p_attack = demo.helstrom_result.success_probability;
    r.advantage = r.p_attack - r.p_honest;
    r.certified = demo.helstrom_result.certified_optimal;
    r.residuals = demo.helstrom_result.residuals;
    std::ostringstream notes;
    notes.precision(17);
    notes << "receiver cheats; explicit E0 success " << demo.explicit_success << ", "
          << (demo.explicit_certificate.optimal ? "certified optimal" : "not certified");
    r.notes = notes.str();
    return demo;
}

AttackReport attack_oblivious_transfer() { return oblivious_transfer_demo().report; }

namespace {

struct ThetaEval {
    double advantage = 0.0;
    double p_attack = 0.0;
    bool certified = false;
    CertificateResiduals residuals;
};

ThetaEval eval_theta(const FunctionSpec& f, double q0, double ph, double t) {
    ComplexVector a(2);
    a << std::cos(t), std::sin(t);
    const auto fam = output_family(f, InputSuperposition::make(a));
    const auto h = helstrom(fam.states[0], fam.states[1], q0);
    return {h.success_probability - ph, h.success_probability, h.certified_optimal, h.residuals};
}

RealInputScan scan_impl(const FunctionSpec& f, double q0, std::size_t grid_points, bool parallel) {
    if (f.sidedness() != Sidedness::two || f.alice_arity() != 2 || f.bob_arity() != 2)
        throw std::invalid_argument("real-input scan needs a two-sided table with two inputs per party");
    if (grid_points < 3) throw std::invalid_argument("grid needs at least three points");
    const double ph = honest_probability(f, Prior::binary(q0));
    const double step = (std::numbers::pi / 2) / static_cast<double>(grid_points - 1);

    std::vector<ThetaEval> evals(grid_points);
    const auto n = static_cast<std::ptrdiff_t>(grid_points);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t g = 0; g < n; ++g) evals[static_cast<std::size_t>(g)] = eval_theta(f, q0, ph, step * static_cast<double>(g));

    RealInputScan out;
    out.p_honest = ph;
    out.worst_residuals.min_eigenvalue = INFINITY;
    std::size_t best = 0;
    for (std::size_t g = 0; g < grid_points; ++g) {
        out.all_certified = out.all_certified && evals[g].certified;
        merge_residuals(out.worst_residuals, evals[g].residuals);
        if (evals[g].advantage > evals[best].advantage) best = g;
    }
    out.best_theta = step * static_cast<double>(best);
    out.best_advantage = evals[best].advantage;
    out.p_attack = evals[best].p_attack;

    // Golden-section refinement on the neighbouring grid cells.
    double lo = std::max(0.0, out.best_theta - step), hi = std::min(std::numbers::pi / 2, out.best_theta + step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    auto e1 = eval_theta(f, q0, ph, x1), e2 = eval_theta(f, q0, ph, x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        for (const auto* e : {&e1, &e2}) {
            out.all_certified = out.all_certified && e->certified;
            merge_residuals(out.worst_residuals, e->residuals);
        }
        if (e1.advantage >= e2.advantage) {
            hi = x2;
            x2 = x1;
            e2 = e1;
            x1 = hi - inv_phi * (hi - lo);
            e1 = eval_theta(f, q0, ph, x1);
        } else {
            lo = x1;
            x1 = x2;
            e1 = e2;
            x2 = lo + inv_phi * (hi - lo);
            e2 = eval_theta(f, q0, ph, x2);
        }
    }
    for (const auto& [x, e] : {std::pair{x1, e1}, std::pair{x2, e2}})
        if (e.advantage > out.best_advantage) {
            out.best_advantage = e.advantage;
            out.best_theta = x;
            out.p_attack = e.p_attack;
        }
    return out;
}

}  // namespace

RealInputScan scan_real_superpositions(const FunctionSpec& f, double q0, std::size_t grid_points) {
    return scan_impl(f, q0, grid_points, true);
}

RealInputScan scan_real_superpositions_serial(const FunctionSpec& f, double q0, std::size_t grid_points) {
    return scan_impl(f, q0, grid_points, false);
}

AttackReport verify_counterexample() {
    const auto f = builtin_function("counterexample");
    const double q0 = 0.5;
    const auto scan = scan_real_superpositions(f, q0);
    AttackReport r;
    r.function_id = f.identifier();
    r.scenario = Scenario::counterexample;
    r.prior = {q0, 1.0 - q0};
    r.input_used = describe(InputSuperposition::normalized({std::cos(scan.best_theta), std::sin(scan.best_theta)}));
    r.p_honest = scan.p_honest;
    r.p_attack = scan.p_attack;
    r.advantage = r.p_attack - r.p_honest;
    r.certified = scan.all_certified;
    r.residuals = scan.worst_residuals;
    r.notes = "maximum over real-amplitude inputs (cos t, sin t); complex phases not explored";
    return r;
}

AttackReport attack_general(const FunctionSpec& f, const GeneralAttackOptions& opts) {
    const auto g = opts.role == Role::bob ? f.transposed() : f;
    const auto prior = opts.prior ? Prior::make(*opts.prior) : Prior::uniform(g.bob_arity());
    if (prior.size() != g.bob_arity()) throw std::invalid_argument("prior length does not match the honest party's arity");

    AttackReport r;
    r.function_id = f.identifier();
    r.scenario = Scenario::general;
    r.prior = prior.weights();
    r.p_honest = honest_probability(g, prior);

    std::ostringstream notes;
    notes << (opts.role == Role::bob ? "Bob" : "Alice") << " cheats";
    if (g.sidedness() == Sidedness::two) {
        const auto a = opts.superposition ? InputSuperposition::normalized(*opts.superposition)
                                          : InputSuperposition::uniform(g.alice_arity());
        const auto fam = output_family(g, a);
        const auto m = best_measurement(fam, prior);
        r.input_used = describe(a);
        r.p_attack = m.success_probability;
        r.certified = m.certified_optimal;
        r.residuals = m.residuals;
    } else {
        if (opts.superposition) throw std::invalid_argument("one-sided functions are attacked with an honest input");
        bool first = true;
        for (std::size_t i = 0; i < g.alice_arity(); ++i) {
            const auto fam = output_family(g, HonestInput{i});
            const auto m = best_measurement(fam, prior);
            if (first || m.success_probability > r.p_attack) {
                r.p_attack = m.success_probability;
                r.input_used = "honest:" + std::to_string(i);
                r.certified = m.certified_optimal;
                r.residuals = m.residuals;
                first = false;
            }
        }
    }
    r.advantage = r.p_attack - r.p_honest;
    if (f.kind() == Kind::probabilistic && f.outcome_count() > 2 && !is_oblivious_transfer_table(f))
        notes << "; conjecture territory: larger output alphabets are not covered by the proven attacks";
    r.notes = notes.str();
    return r;
}

}  // namespace tpc
