#pragma once

// End-to-end superposition attacks against ideal two-party boxes. Each attack
// returns an AttackReport comparing the cheater's best honest guessing
// probability with what the attack achieves.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tpc/blackbox.hpp"
#include "tpc/discrim.hpp"
#include "tpc/funcspec.hpp"

namespace tpc {

enum class Scenario { deterministic_3x3, nondet_two_sided, nondet_one_sided, oblivious_transfer, counterexample, general };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct AttackReport {
    std::string function_id;
    Scenario scenario = Scenario::general;
    std::vector<double> prior;
    std::string input_used;                 // "superposition:a0,a1,..." or "honest:i"
    double p_honest = 0.0;
    double p_attack = 0.0;
    double advantage = 0.0;                 // p_attack - p_honest
    std::optional<double> p_attack_optimized;
    bool certified = false;
    CertificateResiduals residuals;
    std::string notes;

    friend bool operator==(const AttackReport&, const AttackReport&);
};

struct DeterministicAttackOptions {
    bool optimize = false;
    std::optional<std::vector<double>> prior;             // default uniform
    std::optional<std::vector<double>> superposition;     // default uniform over 3 inputs
};

// Canonicalizes f, feeds (|0>+|1>+|2>)/sqrt3, measures with the square-root
// measurement under a uniform prior. Throws std::invalid_argument for a
// function violating either condition.
AttackReport attack_deterministic_3x3(const FunctionSpec& f, const DeterministicAttackOptions& opts = {});

// The default q0 probes 1 - 1e-2, 1 - 1e-3, 1 - 1e-4.
std::vector<double> default_q0_sweep();

struct SweepPoint {
    double q0 = 0.0;
    double p_honest = 0.0;
    double p_helstrom = 0.0;
    double p_closed_form = 0.0;
};

// Exception tables: output independent of Alice's input, or of Bob's.
bool is_theorem3_exception(const FunctionSpec& f);

// Per-q0 values for input (|0>+|1>)/sqrt2 on a binary 2x2 two-sided table.
std::vector<SweepPoint> two_sided_sweep_points(const FunctionSpec& f, const std::vector<double>& q0_sweep);

AttackReport attack_nondet_two_sided(const FunctionSpec& f, const std::vector<double>& q0_sweep);

// Alice receives the output and inputs honestly; she measures optimally
// instead of in the outcome basis.
AttackReport attack_nondet_one_sided(const FunctionSpec& f, double q0);

struct ObliviousTransferDemo {
    AttackReport report;
    ComplexMatrix explicit_e0;     // the explicit optimal element for guessing b = 0
    double explicit_success = 0.0;
    Certificate explicit_certificate;
    DiscriminationResult helstrom_result;
};

ObliviousTransferDemo oblivious_transfer_demo();
AttackReport attack_oblivious_transfer();

struct RealInputScan {
    double best_theta = 0.0;
    double best_advantage = 0.0;
    double p_honest = 0.0;
    double p_attack = 0.0;
    bool all_certified = true;
    CertificateResiduals worst_residuals;
};

// Maximizes the two-state optimum over inputs (cos t, sin t), t in [0, pi/2]:
// grid of `grid_points` then golden-section refinement around the best point.
RealInputScan scan_real_superpositions(const FunctionSpec& f, double q0, std::size_t grid_points = 2001);
RealInputScan scan_real_superpositions_serial(const FunctionSpec& f, double q0, std::size_t grid_points = 2001);

AttackReport verify_counterexample();

// Fallback for tables outside the named scenarios: superposed (two-sided) or
// per-honest-input (one-sided) attack, Helstrom for two states, otherwise the
// better of the square-root measurement and its iterative refinement.
struct GeneralAttackOptions {
    Role role = Role::alice;
    std::optional<std::vector<double>> prior;
    std::optional<std::vector<double>> superposition;
};
AttackReport attack_general(const FunctionSpec& f, const GeneralAttackOptions& opts = {});

struct SweepSummary {
    std::size_t count = 0;
    double min_advantage = 0.0;
    double median_advantage = 0.0;
    double max_advantage = 0.0;
    std::string min_function_id;
    std::vector<AttackReport> failures;  // advantage <= ADV_MIN
};

// Deterministic 3x3 attack over every inequivalent valid function, sorted by
// function id. The OpenMP version splits functions across `workers` threads;
// the serial version is the reference it is tested against.
std::vector<AttackReport> sweep_all_3x3(int workers);
std::vector<AttackReport> sweep_all_3x3_serial();
SweepSummary summarize_sweep(const std::vector<AttackReport>& reports);

}  // namespace tpc
