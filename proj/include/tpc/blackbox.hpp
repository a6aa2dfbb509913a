#pragma once

// Ideal-unitary black box: the cheating party's reduced state after feeding a
// (possibly superposed) input while the honest party enters a classical value.
//
// Register order for the cheater is (input, outcome). Amplitudes of the box
// are the nonnegative roots sqrt(p(k|i,j)).

#include <cstddef>
#include <variant>
#include <vector>

#include "tpc/funcspec.hpp"
#include "tpc/qmat.hpp"

namespace tpc {

class InputSuperposition {
public:
    // Throws std::invalid_argument unless unit norm within TOL_TRACE.
    static InputSuperposition make(ComplexVector amplitudes);
    // Rescales to unit norm first; throws on an all-zero vector.
    static InputSuperposition normalized(const std::vector<double>& amplitudes);
    static InputSuperposition uniform(std::size_t n);
    static InputSuperposition basis(std::size_t n, std::size_t i);

    std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
    const ComplexVector& amplitudes() const { return amps_; }

private:
    explicit InputSuperposition(ComplexVector a) : amps_(std::move(a)) {}
    ComplexVector amps_;
};

struct HonestInput {
    std::size_t index = 0;
};

using CheaterInput = std::variant<InputSuperposition, HonestInput>;

enum class Role { alice, bob };

struct OutputStateFamily {
    std::vector<DensityState> states;  // indexed by the honest party's input
    std::size_t input_dim = 1;
    std::size_t output_dim = 1;

    std::size_t size() const { return states.size(); }
    std::size_t dim() const { return input_dim * output_dim; }
};

// sigma_j = sum_{i,i',k} a_i a*_{i'} alpha^k_{ij} alpha^k_{i'j} |i><i'| (x) |k><k|
// for a two-sided spec. Bob's registers never appear.
DensityState alice_reduced_state(const FunctionSpec& f, const InputSuperposition& a, std::size_t j);

// Pure outcome-register state sum_k sqrt(p(k|i,j)) |k> for a one-sided spec
// in which Alice receives the output.
DensityState alice_reduced_state_one_sided(const FunctionSpec& f, std::size_t i, std::size_t j);

// One state per honest input of the other party. For role == bob the table is
// transposed and Bob is treated as the cheating "Alice".
OutputStateFamily output_family(const FunctionSpec& f, const CheaterInput& input, Role role = Role::alice);

}  // namespace tpc
