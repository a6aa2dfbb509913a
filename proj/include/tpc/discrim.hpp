#pragma once

// Minimum-error discrimination of the cheater's output states: the honest
// baseline, the two-state optimum, the square-root measurement, optimality
// certificates and an iterative POVM search.

#include <array>
#include <cstddef>
#include <vector>

#include "tpc/blackbox.hpp"
#include "tpc/funcspec.hpp"
#include "tpc/qmat.hpp"

namespace tpc {

// Measurement operators; element e votes for state labels[e].
class Povm {
public:
    // Each element PSD within TOL_PSD and the sum equal to the identity within
    // TOL_RECON; throws std::invalid_argument otherwise.
    static Povm make(std::vector<ComplexMatrix> elements, std::vector<std::size_t> labels);
    static Povm make(std::vector<ComplexMatrix> elements);

    std::size_t size() const { return elements_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.front().rows()); }
    const std::vector<ComplexMatrix>& elements() const { return elements_; }
    const std::vector<std::size_t>& labels() const { return labels_; }

    // Sum of the elements voting for each label 0..n-1. Throws if a label is >= n
    // or some label in 0..n-1 has no element.
    std::vector<ComplexMatrix> grouped(std::size_t n) const;

private:
    Povm(std::vector<ComplexMatrix> e, std::vector<std::size_t> l) : elements_(std::move(e)), labels_(std::move(l)) {}
    std::vector<ComplexMatrix> elements_;
    std::vector<std::size_t> labels_;
};

struct CertificateResiduals {
    double stationarity = 0.0;     // max |E_j (q_j rho_j - q_l rho_l) E_l| entry
    double min_eigenvalue = 0.0;   // most negative eigenvalue of the Hermitian part of sum_j E_j q_j rho_j - q_l rho_l
    double antihermitian = 0.0;    // max entry of the anti-Hermitian part of sum_j E_j q_j rho_j
};

struct Certificate {
    bool optimal = false;
    CertificateResiduals residuals;
};

struct DiscriminationResult {
    double success_probability = 0.0;
    Povm povm;
    bool certified_optimal = false;
    CertificateResiduals residuals;
    std::size_t iterations = 0;
};

// max_i sum_k max_j p(k|i,j) q_j : the best guess from a classical input.
double honest_probability(const FunctionSpec& f, const Prior& prior);

// Same quantity restricted to a single honest input i.
double honest_probability_for_input(const FunctionSpec& f, const Prior& prior, std::size_t i);

// 1/2 (1 + || q0 rho0 - (1-q0) rho1 ||_1) with the sign-projector measurement.
DiscriminationResult helstrom(const DensityState& rho0, const DensityState& rho1, double q0);

// E_j = S^{-1/2} sigma_j S^{-1/2}, S = sum_j sigma_j (or sum_j q_j sigma_j when
// weighted). The kernel of S goes to the highest-prior element, ties to the
// lowest index.
Povm square_root_measurement(const OutputStateFamily& family, const Prior& prior, bool prior_weighted = false);

// sum_j q_j tr(E_j sigma_j).
double povm_success(const OutputStateFamily& family, const Prior& prior, const Povm& povm);

// Necessary and sufficient optimality conditions for minimum-error
// discrimination, checked at CERT_TOL.
Certificate certify_optimal(const OutputStateFamily& family, const Prior& prior, const Povm& povm);

struct OptimizeOptions {
    std::size_t max_iters = 10000;
    double step_tol = 1e-12;
};

// Fixed-point iteration E_j <- R^{-1} W_j E_j W_j R^{-1}, W_j = q_j sigma_j,
// R = (sum_l W_l E_l W_l)^{1/2}. Steps that would lower the success are
// rejected, so the returned success is never below the seed's.
DiscriminationResult optimize_povm(const OutputStateFamily& family, const Prior& prior, const Povm& seed,
                                   const OptimizeOptions& opts = {});

// Closed-form spectrum of q0 rho0 - q1 rho1 for the binary two-sided box with
// input (|0>+|1>)/sqrt2.
struct Theorem3Spectrum {
    double lambda_plus, lambda_minus, mu_plus, mu_minus;
    double a_val, b_val, a_bar, b_bar;
    double trace_norm() const;
    double success() const { return 0.5 * (1.0 + trace_norm()); }
};

// p is indexed p[i][j] = p(0|i,j).
Theorem3Spectrum theorem3_eigenvalues(const std::array<std::array<double, 2>, 2>& p, double q0);
std::array<std::array<double, 2>, 2> binary_table(const FunctionSpec& f);

// Whether the computational-basis measurement meets the stationarity condition
// for honest input i of a binary one-sided table:
// q0 sqrt(p_i0 (1-p_i0)) == (1-q0) sqrt(p_i1 (1-p_i1)) within CERT_TOL.
bool theorem4_basis_check(const FunctionSpec& f, std::size_t i, double q0);

// Diagonal guess-by-register measurement that amounts to an honest strategy,
// embedded in an input register of dimension input_dim >= 2 and an outcome
// register of dimension outcome_dim. alphas holds alpha_1..alpha_5.
struct HonestPovmFamily {
    std::array<double, 5> alphas{};
    Povm elements(std::size_t input_dim, std::size_t outcome_dim, int a, int b) const;
};

}  // namespace tpc
