#include "tpc/blackbox.hpp"

#include <cmath>
#include <stdexcept>

#include "tpc/tolerances.hpp"

namespace tpc {

InputSuperposition InputSuperposition::make(ComplexVector amplitudes) {
    if (amplitudes.size() == 0) throw std::invalid_argument("input superposition is empty");
    if (!amplitudes.allFinite()) throw std::invalid_argument("input superposition has non-finite amplitudes");
    if (std::abs(amplitudes.norm() - 1.0) > tolerances().trace)
        throw std::invalid_argument("input superposition is not normalized");
    return InputSuperposition(std::move(amplitudes));
}

InputSuperposition InputSuperposition::normalized(const std::vector<double>& amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("input superposition must be nonzero");
    return make(v / n);
}

InputSuperposition InputSuperposition::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("input superposition is empty");
    return InputSuperposition(ComplexVector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n))));
}

InputSuperposition InputSuperposition::basis(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("basis index out of range");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return InputSuperposition(std::move(v));
}

DensityState alice_reduced_state(const FunctionSpec& f, const InputSuperposition& a, std::size_t j) {
    if (f.sidedness() != Sidedness::two) throw std::invalid_argument("superposed-input state needs a two-sided function");
    if (a.size() != f.alice_arity()) throw std::invalid_argument("superposition length does not match Alice's arity");
    if (j >= f.bob_arity()) throw std::invalid_argument("Bob's input out of range");

    const auto na = static_cast<Eigen::Index>(f.alice_arity());
    const auto nk = static_cast<Eigen::Index>(f.outcome_count());
    const auto& amp = a.amplitudes();
    ComplexMatrix sigma = ComplexMatrix::Zero(na * nk, na * nk);
    // Block-diagonal in k: Bob's copy of the outcome decoheres it.
    for (Eigen::Index k = 0; k < nk; ++k) {
        ComplexVector v(na);
        for (Eigen::Index i = 0; i < na; ++i)
            v(i) = amp(i) * std::sqrt(f.probability(static_cast<std::size_t>(k), static_cast<std::size_t>(i), j));
        const ComplexMatrix block = v * v.adjoint();
        for (Eigen::Index i = 0; i < na; ++i)
            for (Eigen::Index ip = 0; ip < na; ++ip) sigma(i * nk + k, ip * nk + k) = block(i, ip);
    }
    return DensityState::make(std::move(sigma), {f.alice_arity(), f.outcome_count()});
}

DensityState alice_reduced_state_one_sided(const FunctionSpec& f, std::size_t i, std::size_t j) {
    if (f.sidedness() != Sidedness::one) throw std::invalid_argument("one-sided state needs a one-sided function");
    if (i >= f.alice_arity() || j >= f.bob_arity()) throw std::invalid_argument("input index out of range");
    const auto nk = static_cast<Eigen::Index>(f.outcome_count());
    ComplexVector psi(nk);
    for (Eigen::Index k = 0; k < nk; ++k) psi(k) = std::sqrt(f.probability(static_cast<std::size_t>(k), i, j));
    return DensityState::make(psi * psi.adjoint(), {f.outcome_count()});
}

OutputStateFamily output_family(const FunctionSpec& f, const CheaterInput& input, Role role) {
    if (role == Role::bob) return output_family(f.transposed(), input, Role::alice);

    OutputStateFamily fam;
    fam.output_dim = f.outcome_count();
    if (f.sidedness() == Sidedness::two) {
        const InputSuperposition a = std::holds_alternative<InputSuperposition>(input)
                                         ? std::get<InputSuperposition>(input)
                                         : InputSuperposition::basis(f.alice_arity(), std::get<HonestInput>(input).index);
        fam.input_dim = f.alice_arity();
        for (std::size_t j = 0; j < f.bob_arity(); ++j) fam.states.push_back(alice_reduced_state(f, a, j));
    } else {
        if (!std::holds_alternative<HonestInput>(input))
            throw std::invalid_argument("one-sided functions are attacked with an honest input");
        const std::size_t i = std::get<HonestInput>(input).index;
        fam.input_dim = 1;
        for (std::size_t j = 0; j < f.bob_arity(); ++j) fam.states.push_back(alice_reduced_state_one_sided(f, i, j));
    }
    return fam;
}

}  // namespace tpc
