#include <algorithm>
#include <stdexcept>

#include "tpc/discrim.hpp"
#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

constexpr double kMonotoneSlack = 1e-12;

double success_of(const std::vector<ComplexMatrix>& e, const std::vector<ComplexMatrix>& w) {
    double p = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) p += (e[j] * w[j]).trace().real();
    return p;
}

}  // namespace

DiscriminationResult optimize_povm(const OutputStateFamily& family, const Prior& prior, const Povm& seed,
                                   const OptimizeOptions& opts) {
    if (prior.size() != family.size()) throw std::invalid_argument("prior length does not match the state family");
    const std::size_t n = family.size();
    const auto d = static_cast<Eigen::Index>(seed.dim());
    if (static_cast<std::size_t>(d) != family.states.front().dim())
        throw std::invalid_argument("POVM dimension does not match the states");

    std::vector<ComplexMatrix> w;
    for (std::size_t j = 0; j < n; ++j) w.push_back(prior[j] * family.states[j].matrix());
    std::size_t kernel_owner = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (prior[j] > prior[kernel_owner]) kernel_owner = j;

    auto e = seed.grouped(n);
    double current = success_of(e, w);
    std::size_t it = 0;
    for (; it < opts.max_iters; ++it) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        for (std::size_t j = 0; j < n; ++j) m += w[j] * e[j] * w[j];
        const ComplexMatrix r_inv = inv_sqrt_on_support(0.5 * (m + m.adjoint()));
        std::vector<ComplexMatrix> next(n);
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix x = r_inv * w[j] * e[j] * w[j] * r_inv;
            next[j] = 0.5 * (x + x.adjoint());
            sum += next[j];
        }
        // Directions outside the support of m carry no weight; keep completeness.
        const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - sum;
        next[kernel_owner] += 0.5 * (rest + rest.adjoint());

        // Near-singular m makes R^{-1} amplify rounding; such a step is not a POVM.
        bool valid = max_abs(sum + 0.5 * (rest + rest.adjoint()) - ComplexMatrix::Identity(d, d)) <= tolerances().recon;
        for (std::size_t j = 0; j < n && valid; ++j) valid = min_eigenvalue(next[j]) >= -tolerances().psd;
        if (!valid) break;

        const double candidate = success_of(next, w);
        if (candidate < current - kMonotoneSlack) break;
        const double gain = candidate - current;
        e = std::move(next);
        current = std::max(current, candidate);
        if (gain < opts.step_tol) {
            ++it;
            break;
        }
    }

    auto povm = Povm::make(e);
    const auto cert = certify_optimal(family, prior, povm);
    return DiscriminationResult{.success_probability = povm_success(family, prior, povm),
                                .povm = std::move(povm),
                                .certified_optimal = cert.optimal,
                                .residuals = cert.residuals,
                                .iterations = it};
}

}  // namespace tpc
