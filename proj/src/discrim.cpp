#include "tpc/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_prior(const OutputStateFamily& family, const Prior& prior) {
    if (family.size() == 0) throw std::invalid_argument("empty state family");
    if (prior.size() != family.size()) throw std::invalid_argument("prior length does not match the state family");
}

}  // namespace

Povm Povm::make(std::vector<ComplexMatrix> elements, std::vector<std::size_t> labels) {
    if (elements.empty()) throw std::invalid_argument("POVM needs at least one element");
    if (labels.size() != elements.size()) throw std::invalid_argument("POVM labels do not match its elements");
    const auto d = elements.front().rows();
    const auto& tol = tolerances();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t e = 0; e < elements.size(); ++e) {
        const auto& m = elements[e];
        if (m.rows() != d || m.cols() != d) throw std::invalid_argument("POVM elements differ in dimension");
        if (!all_finite(m)) throw std::invalid_argument("POVM element has non-finite entries");
        if (!is_hermitian(m, tol.herm)) throw std::invalid_argument("POVM element " + std::to_string(e) + " is not Hermitian");
        if (!is_psd(m, tol.psd)) throw std::invalid_argument("POVM element " + std::to_string(e) + " is not positive semidefinite");
        sum += m;
    }
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol.recon)
        throw std::invalid_argument("POVM elements do not sum to the identity");
    return Povm(std::move(elements), std::move(labels));
}

Povm Povm::make(std::vector<ComplexMatrix> elements) {
    std::vector<std::size_t> labels(elements.size());
    for (std::size_t e = 0; e < labels.size(); ++e) labels[e] = e;
    return make(std::move(elements), std::move(labels));
}

std::vector<ComplexMatrix> Povm::grouped(std::size_t n) const {
    const auto d = static_cast<Eigen::Index>(dim());
    std::vector<ComplexMatrix> out(n, ComplexMatrix::Zero(d, d));
    std::vector<bool> seen(n, false);
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (labels_[e] >= n) throw std::invalid_argument("POVM label " + std::to_string(labels_[e]) + " has no matching state");
        out[labels_[e]] += elements_[e];
        seen[labels_[e]] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw std::invalid_argument("POVM does not cover every state label");
    return out;
}

double honest_probability_for_input(const FunctionSpec& f, const Prior& prior, std::size_t i) {
    if (prior.size() != f.bob_arity()) throw std::invalid_argument("prior length does not match Bob's arity");
    double total = 0.0;
    for (std::size_t k = 0; k < f.outcome_count(); ++k) {
        double best = 0.0;
        for (std::size_t j = 0; j < f.bob_arity(); ++j) best = std::max(best, f.probability(k, i, j) * prior[j]);
        total += best;
    }
    return total;
}

double honest_probability(const FunctionSpec& f, const Prior& prior) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.alice_arity(); ++i) best = std::max(best, honest_probability_for_input(f, prior, i));
    return best;
}

DiscriminationResult helstrom(const DensityState& rho0, const DensityState& rho1, double q0) {
    if (rho0.dim() != rho1.dim()) throw std::invalid_argument("states differ in dimension");
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw std::invalid_argument("q0 must lie in [0,1]");
    const ComplexMatrix diff = q0 * rho0.matrix() - (1.0 - q0) * rho1.matrix();
    const auto es = eig_hermitian(diff);
    const ComplexMatrix e0 = hermitian_part(apply_spectral(es, [](double v) { return v >= 0.0 ? 1.0 : 0.0; }));
    const auto d = static_cast<Eigen::Index>(rho0.dim());
    const ComplexMatrix e1 = ComplexMatrix::Identity(d, d) - e0;

    OutputStateFamily fam{{rho0, rho1}, 1, rho0.dim()};
    const auto prior = Prior::binary(q0);
    auto povm = Povm::make({e0, e1});
    const auto cert = certify_optimal(fam, prior, povm);
    return DiscriminationResult{.success_probability = 0.5 * (1.0 + es.values.cwiseAbs().sum()),
                                .povm = std::move(povm),
                                .certified_optimal = cert.optimal,
                                .residuals = cert.residuals};
}

Povm square_root_measurement(const OutputStateFamily& family, const Prior& prior, bool prior_weighted) {
    require_prior(family, prior);
    if (family.size() < 2) throw std::invalid_argument("square-root measurement needs at least two states");
    const auto d = static_cast<Eigen::Index>(family.states.front().dim());
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < family.size(); ++j)
        total += (prior_weighted ? prior[j] : 1.0) * family.states[j].matrix();
    const ComplexMatrix root = inv_sqrt_on_support(total);

    std::vector<ComplexMatrix> elements;
    for (std::size_t j = 0; j < family.size(); ++j)
        elements.push_back(hermitian_part(root * ((prior_weighted ? prior[j] : 1.0) * family.states[j].matrix()) * root));

    const ComplexMatrix kernel = hermitian_part(ComplexMatrix::Identity(d, d) - root * total * root);
    std::size_t target = 0;
    for (std::size_t j = 1; j < family.size(); ++j)
        if (prior[j] > prior[target]) target = j;
    elements[target] += kernel;
    return Povm::make(std::move(elements));
}

double povm_success(const OutputStateFamily& family, const Prior& prior, const Povm& povm) {
    require_prior(family, prior);
    if (povm.dim() != family.states.front().dim()) throw std::invalid_argument("POVM dimension does not match the states");
    const auto g = povm.grouped(family.size());
    double p = 0.0;
    for (std::size_t j = 0; j < family.size(); ++j) p += prior[j] * (g[j] * family.states[j].matrix()).trace().real();
    return p;
}

Certificate certify_optimal(const OutputStateFamily& family, const Prior& prior, const Povm& povm) {
    require_prior(family, prior);
    if (povm.dim() != family.states.front().dim()) throw std::invalid_argument("POVM dimension does not match the states");
    const std::size_t n = family.size();
    const auto e = povm.grouped(n);
    std::vector<ComplexMatrix> w;
    for (std::size_t j = 0; j < n; ++j) w.push_back(prior[j] * family.states[j].matrix());

    Certificate c;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            if (j != l) c.residuals.stationarity = std::max(c.residuals.stationarity, max_abs(e[j] * (w[j] - w[l]) * e[l]));

    const auto d = static_cast<Eigen::Index>(povm.dim());
    ComplexMatrix gamma = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n; ++j) gamma += e[j] * w[j];
    c.residuals.antihermitian = max_abs(0.5 * (gamma - gamma.adjoint()));
    const ComplexMatrix gh = hermitian_part(gamma);
    c.residuals.min_eigenvalue = INFINITY;
    for (std::size_t l = 0; l < n; ++l)
        c.residuals.min_eigenvalue = std::min(c.residuals.min_eigenvalue, min_eigenvalue(gh - w[l]));

    const double tol = tolerances().cert;
    c.optimal = c.residuals.stationarity <= tol && c.residuals.min_eigenvalue >= -tol && c.residuals.antihermitian <= tol;
    return c;
}

double Theorem3Spectrum::trace_norm() const {
    return std::abs(lambda_plus) + std::abs(lambda_minus) + std::abs(mu_plus) + std::abs(mu_minus);
}

Theorem3Spectrum theorem3_eigenvalues(const std::array<std::array<double, 2>, 2>& p, double q0) {
    const double q1 = 1.0 - q0;
    const auto a_of = [&](double p00, double p01, double p10, double p11) {
        return (p00 + p10) * q0 - (p01 + p11) * q1;
    };
    const auto b_of = [&](double p00, double p01, double p10, double p11) {
        const double d = std::sqrt(p01 * p10) - std::sqrt(p00 * p11);
        return 4.0 * d * d * q0 * q1;
    };
    const double p00 = p[0][0], p01 = p[0][1], p10 = p[1][0], p11 = p[1][1];
    Theorem3Spectrum s{};
    s.a_val = a_of(p00, p01, p10, p11);
    s.b_val = b_of(p00, p01, p10, p11);
    s.a_bar = a_of(1 - p00, 1 - p01, 1 - p10, 1 - p11);
    s.b_bar = b_of(1 - p00, 1 - p01, 1 - p10, 1 - p11);
    const double r = std::sqrt(s.a_val * s.a_val + s.b_val);
    const double rb = std::sqrt(s.a_bar * s.a_bar + s.b_bar);
    s.lambda_plus = 0.25 * (s.a_val + r);
    s.lambda_minus = 0.25 * (s.a_val - r);
    s.mu_plus = 0.25 * (s.a_bar + rb);
    s.mu_minus = 0.25 * (s.a_bar - rb);
    return s;
}

std::array<std::array<double, 2>, 2> binary_table(const FunctionSpec& f) {
    if (f.alice_arity() != 2 || f.bob_arity() != 2 || f.outcome_count() != 2)
        throw std::invalid_argument("expected a binary-output 2x2 table");
    std::array<std::array<double, 2>, 2> p{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p[i][j] = f.probability(0, i, j);
    return p;
}

bool theorem4_basis_check(const FunctionSpec& f, std::size_t i, double q0) {
    if (f.sidedness() != Sidedness::one) throw std::invalid_argument("expected a one-sided table");
    const auto p = binary_table(f);
    if (i > 1) throw std::invalid_argument("Alice's input out of range");
    const double lhs = q0 * std::sqrt(p[i][0] * (1.0 - p[i][0]));
    const double rhs = (1.0 - q0) * std::sqrt(p[i][1] * (1.0 - p[i][1]));
    return std::abs(lhs - rhs) <= tolerances().cert;
}

Povm HonestPovmFamily::elements(std::size_t input_dim, std::size_t outcome_dim, int a, int b) const {
    if (input_dim < 2) throw std::invalid_argument("honest family needs at least two input levels");
    if (a < 0 || b < 0 || a > 3 || b > 3 || a == b) throw std::invalid_argument("outcome labels a, b must be distinct and in 0..3");
    if (static_cast<std::size_t>(std::max(a, b)) >= outcome_dim) throw std::invalid_argument("outcome register too small");
    for (double v : alphas)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("alpha parameters must lie in [0,1]");
    const auto d = static_cast<Eigen::Index>(input_dim * outcome_dim);
    const auto idx = [&](std::size_t i, int k) { return static_cast<Eigen::Index>(i * outcome_dim + static_cast<std::size_t>(k)); };
    ComplexMatrix e0 = ComplexMatrix::Zero(d, d), e1 = ComplexMatrix::Zero(d, d);
    e0(idx(0, 0), idx(0, 0)) = alphas[0];
    e0(idx(1, a), idx(1, a)) = 1.0;
    e1(idx(0, 0), idx(0, 0)) = 1.0 - alphas[0];
    e1(idx(1, b), idx(1, b)) = alphas[static_cast<std::size_t>(b) + 1];
    ComplexMatrix e2 = ComplexMatrix::Identity(d, d) - e0 - e1;
    return Povm::make({e0, e1, e2});
}

}  // namespace tpc
