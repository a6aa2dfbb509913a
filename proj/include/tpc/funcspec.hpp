#pragma once

// Two-party classical functions: outcome matrices, probability tables, the
// concealment/non-degeneracy conditions and the 3x3 canonical form.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace tpc {

using Rational = boost::rational<std::int64_t>;

enum class Kind { deterministic, probabilistic };
enum class Sidedness { one, two };

// Malformed function or POVM file; carries the 1-based line number.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A function f(i, j) of Alice's input i and Bob's input j. Tables are stored
// the way they are printed: row j, column i.
class FunctionSpec {
public:
    static FunctionSpec deterministic(Sidedness sided, std::size_t alice_arity, std::size_t bob_arity,
                                      std::size_t outcome_count, std::vector<int> outcomes_row_major);
    // probs indexed [(k * bob_arity + j) * alice_arity + i].
    static FunctionSpec probabilistic(Sidedness sided, std::size_t alice_arity, std::size_t bob_arity,
                                      std::size_t outcome_count, std::vector<Rational> probs);

    Kind kind() const { return kind_; }
    Sidedness sidedness() const { return sided_; }
    std::size_t alice_arity() const { return alice_; }
    std::size_t bob_arity() const { return bob_; }
    std::size_t outcome_count() const { return outcomes_count_; }

    // Deterministic only.
    int outcome(std::size_t i, std::size_t j) const;
    Rational prob(std::size_t k, std::size_t i, std::size_t j) const;
    double probability(std::size_t k, std::size_t i, std::size_t j) const;

    // Swaps the roles of the two parties: f'(i, j) = f(j, i).
    FunctionSpec transposed() const;

    // Stable textual identity of the table, e.g. "det/3x3x2/0,1,1;1,0,1;1,1,0".
    std::string identifier() const;

    friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;

private:
    FunctionSpec() = default;
    Kind kind_ = Kind::deterministic;
    Sidedness sided_ = Sidedness::two;
    std::size_t alice_ = 0;
    std::size_t bob_ = 0;
    std::size_t outcomes_count_ = 0;
    std::vector<int> outcomes_;      // [j * alice + i], deterministic only
    std::vector<Rational> probs_;    // [(k * bob + j) * alice + i]
};

// Probability vector over one party's inputs.
class Prior {
public:
    // Throws std::invalid_argument unless nonnegative and summing to 1 within TOL_TRACE.
    static Prior make(std::vector<double> weights);
    static Prior uniform(std::size_t n);
    static Prior binary(double q0);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t j) const { return w_[j]; }
    const std::vector<double>& weights() const { return w_; }

private:
    explicit Prior(std::vector<double> w) : w_(std::move(w)) {}
    std::vector<double> w_;
};

struct ConditionFlags {
    bool potentially_concealing = false;
    bool non_degenerate = false;
    bool valid() const { return potentially_concealing && non_degenerate; }
};

// Condition 1: every row and column has a repeated outcome.
// Condition 2: no two rows equal and no two columns equal.
// Throws std::invalid_argument for probabilistic specs.
ConditionFlags validate_conditions(const FunctionSpec& f);

// Canonical layout: column i=0 reads (0,0,1), column i=1 reads (a,b,b) with
// a != b and (a == 0 or b == 0 or b == 1).
// base(j', i') = outcome_relabel[f(row_perm[j'], col_perm[i'])].
struct CanonicalForm3x3 {
    FunctionSpec base;
    int a = 0;
    int b = 0;
    std::array<std::size_t, 3> row_perm{};
    std::array<std::size_t, 3> col_perm{};
    std::vector<int> outcome_relabel;

    // Undo the recorded transformations.
    FunctionSpec restore() const;
};

// Lexicographically smallest canonical layout reachable by row/column
// permutation and outcome relabelling. Throws std::invalid_argument for
// anything but a two-sided deterministic 3x3 satisfying both conditions.
CanonicalForm3x3 canonicalize_3x3(const FunctionSpec& f);

bool in_canonical_shape(const FunctionSpec& f);

// Every valid deterministic 3x3 function up to equivalence, as canonical bases,
// sorted by table.
std::vector<FunctionSpec> enumerate_valid_3x3();

// Parses the line-oriented function file format. Throws ParseError.
FunctionSpec parse_function_file(std::string_view text);

// Renders a spec back into the file format (exact rationals).
std::string format_function_file(const FunctionSpec& f);

// Parses "num/den" or a decimal into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view token);

// Built-in tables addressable as @ot, @counterexample, @neq3. Returns an empty
// view for an unknown name.
std::string_view builtin_function_text(std::string_view name);
FunctionSpec builtin_function(std::string_view name);

double to_double(const Rational& r);

}  // namespace tpc
