#include "tpc/funcspec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "tpc/tolerances.hpp"

namespace tpc {

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

FunctionSpec FunctionSpec::deterministic(Sidedness sided, std::size_t alice_arity, std::size_t bob_arity,
                                         std::size_t outcome_count, std::vector<int> outcomes_row_major) {
    if (alice_arity == 0 || bob_arity == 0 || outcome_count == 0)
        throw std::invalid_argument("arities and outcome count must be positive");
    if (outcomes_row_major.size() != alice_arity * bob_arity)
        throw std::invalid_argument("outcome matrix has the wrong number of entries");
    FunctionSpec f;
    f.kind_ = Kind::deterministic;
    f.sided_ = sided;
    f.alice_ = alice_arity;
    f.bob_ = bob_arity;
    f.outcomes_count_ = outcome_count;
    for (int v : outcomes_row_major)
        if (v < 0 || static_cast<std::size_t>(v) >= outcome_count)
            throw std::invalid_argument("outcome label " + std::to_string(v) + " out of range");
    f.probs_.assign(outcome_count * bob_arity * alice_arity, Rational(0));
    for (std::size_t j = 0; j < bob_arity; ++j)
        for (std::size_t i = 0; i < alice_arity; ++i) {
            const auto k = static_cast<std::size_t>(outcomes_row_major[j * alice_arity + i]);
            f.probs_[(k * bob_arity + j) * alice_arity + i] = 1;
        }
    f.outcomes_ = std::move(outcomes_row_major);
    return f;
}

FunctionSpec FunctionSpec::probabilistic(Sidedness sided, std::size_t alice_arity, std::size_t bob_arity,
                                         std::size_t outcome_count, std::vector<Rational> probs) {
    if (alice_arity == 0 || bob_arity == 0 || outcome_count == 0)
        throw std::invalid_argument("arities and outcome count must be positive");
    if (probs.size() != outcome_count * bob_arity * alice_arity)
        throw std::invalid_argument("probability table has the wrong number of entries");
    for (const auto& p : probs)
        if (p < Rational(0) || p > Rational(1)) throw std::invalid_argument("probability outside [0,1]");
    for (std::size_t j = 0; j < bob_arity; ++j)
        for (std::size_t i = 0; i < alice_arity; ++i) {
            Rational sum = 0;
            for (std::size_t k = 0; k < outcome_count; ++k) sum += probs[(k * bob_arity + j) * alice_arity + i];
            if (sum != Rational(1))
                throw std::invalid_argument("probabilities for inputs (i=" + std::to_string(i) +
                                            ", j=" + std::to_string(j) + ") do not sum to 1");
        }
    FunctionSpec f;
    f.kind_ = Kind::probabilistic;
    f.sided_ = sided;
    f.alice_ = alice_arity;
    f.bob_ = bob_arity;
    f.outcomes_count_ = outcome_count;
    f.probs_ = std::move(probs);
    return f;
}

int FunctionSpec::outcome(std::size_t i, std::size_t j) const {
    if (kind_ != Kind::deterministic) throw std::logic_error("outcome() on a probabilistic spec");
    return outcomes_.at(j * alice_ + i);
}

Rational FunctionSpec::prob(std::size_t k, std::size_t i, std::size_t j) const {
    return probs_.at((k * bob_ + j) * alice_ + i);
}

double FunctionSpec::probability(std::size_t k, std::size_t i, std::size_t j) const {
    return to_double(prob(k, i, j));
}

FunctionSpec FunctionSpec::transposed() const {
    if (kind_ == Kind::deterministic) {
        std::vector<int> t(alice_ * bob_);
        for (std::size_t j = 0; j < bob_; ++j)
            for (std::size_t i = 0; i < alice_; ++i) t[i * bob_ + j] = outcomes_[j * alice_ + i];
        return deterministic(sided_, bob_, alice_, outcomes_count_, std::move(t));
    }
    std::vector<Rational> t(probs_.size());
    for (std::size_t k = 0; k < outcomes_count_; ++k)
        for (std::size_t j = 0; j < bob_; ++j)
            for (std::size_t i = 0; i < alice_; ++i)
                t[(k * alice_ + i) * bob_ + j] = probs_[(k * bob_ + j) * alice_ + i];
    return probabilistic(sided_, bob_, alice_, outcomes_count_, std::move(t));
}

std::string FunctionSpec::identifier() const {
    std::ostringstream os;
    os << (kind_ == Kind::deterministic ? "det" : "prob") << (sided_ == Sidedness::one ? "1" : "2") << '/'
       << alice_ << 'x' << bob_ << 'x' << outcomes_count_ << '/';
    if (kind_ == Kind::deterministic) {
        for (std::size_t j = 0; j < bob_; ++j) {
            if (j) os << ';';
            for (std::size_t i = 0; i < alice_; ++i) os << (i ? "," : "") << outcomes_[j * alice_ + i];
        }
    } else {
        for (std::size_t k = 0; k < outcomes_count_; ++k) {
            if (k) os << '|';
            for (std::size_t j = 0; j < bob_; ++j) {
                if (j) os << ';';
                for (std::size_t i = 0; i < alice_; ++i) {
                    const auto& p = probs_[(k * bob_ + j) * alice_ + i];
                    os << (i ? "," : "") << p.numerator();
                    if (p.denominator() != 1) os << '/' << p.denominator();
                }
            }
        }
    }
    return os.str();
}

Prior Prior::make(std::vector<double> weights) {
    if (weights.empty()) throw std::invalid_argument("prior must be nonempty");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("prior weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tolerances().trace) throw std::invalid_argument("prior does not sum to 1");
    return Prior(std::move(weights));
}

Prior Prior::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("prior must be nonempty");
    return Prior(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Prior Prior::binary(double q0) {
    if (!(q0 >= 0.0 && q0 <= 1.0)) throw std::invalid_argument("q0 must lie in [0,1]");
    return Prior({q0, 1.0 - q0});
}

namespace {

bool has_repeat(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

ConditionFlags validate_conditions(const FunctionSpec& f) {
    if (f.kind() != Kind::deterministic)
        throw std::invalid_argument("concealment conditions are defined for deterministic functions only");
    const std::size_t na = f.alice_arity(), nb = f.bob_arity();
    std::vector<std::vector<int>> rows(nb, std::vector<int>(na)), cols(na, std::vector<int>(nb));
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < na; ++i) rows[j][i] = cols[i][j] = f.outcome(i, j);

    ConditionFlags flags;
    flags.potentially_concealing = std::all_of(rows.begin(), rows.end(), has_repeat) &&
                                   std::all_of(cols.begin(), cols.end(), has_repeat);
    flags.non_degenerate = std::set(rows.begin(), rows.end()).size() == rows.size() &&
                           std::set(cols.begin(), cols.end()).size() == cols.size();
    return flags;
}

bool in_canonical_shape(const FunctionSpec& f) {
    if (f.kind() != Kind::deterministic || f.alice_arity() != 3 || f.bob_arity() != 3) return false;
    if (f.outcome(0, 0) != 0 || f.outcome(0, 1) != 0 || f.outcome(0, 2) != 1) return false;
    const int a = f.outcome(1, 0), b = f.outcome(1, 1);
    if (f.outcome(1, 2) != b || a == b) return false;
    return a == 0 || b == 0 || b == 1;
}

FunctionSpec CanonicalForm3x3::restore() const {
    const std::size_t k_orig = outcome_relabel.size();
    std::vector<int> inverse(k_orig, -1);
    for (std::size_t k = 0; k < k_orig; ++k) inverse[static_cast<std::size_t>(outcome_relabel[k])] = static_cast<int>(k);
    std::vector<int> t(9);
    for (std::size_t jp = 0; jp < 3; ++jp)
        for (std::size_t ip = 0; ip < 3; ++ip)
            t[row_perm[jp] * 3 + col_perm[ip]] = inverse[static_cast<std::size_t>(base.outcome(ip, jp))];
    return FunctionSpec::deterministic(base.sidedness(), 3, 3, k_orig, std::move(t));
}

CanonicalForm3x3 canonicalize_3x3(const FunctionSpec& f) {
    if (f.kind() != Kind::deterministic || f.alice_arity() != 3 || f.bob_arity() != 3)
        throw std::invalid_argument("canonical form needs a deterministic 3x3 function");
    if (!validate_conditions(f).valid())
        throw std::invalid_argument("function is degenerate or not potentially concealing");

    const std::size_t k_orig = f.outcome_count();
    std::optional<CanonicalForm3x3> best;
    std::vector<int> best_table;

    std::array<std::size_t, 3> rp{0, 1, 2};
    do {
        std::array<std::size_t, 3> cp{0, 1, 2};
        do {
            // Permuted table in original labels: t[j'][i'] = f(cp[i'], rp[j']).
            std::array<int, 9> t{};
            for (std::size_t jp = 0; jp < 3; ++jp)
                for (std::size_t ip = 0; ip < 3; ++ip) t[jp * 3 + ip] = f.outcome(cp[ip], rp[jp]);
            const int x = t[0], y = t[6];
            if (t[3] != x || y == x) continue;
            const int a = t[1], b = t[4];
            if (t[7] != b || a == b) continue;
            if (!(a == x || b == x || b == y)) continue;

            // x -> 0 and y -> 1 are forced; the rest take the smallest free
            // label in row-major order of first appearance.
            std::vector<int> relabel(k_orig, -1);
            relabel[static_cast<std::size_t>(x)] = 0;
            relabel[static_cast<std::size_t>(y)] = 1;
            int next = 2;
            std::vector<int> table(9);
            for (std::size_t p = 0; p < 9; ++p) {
                auto& r = relabel[static_cast<std::size_t>(t[p])];
                if (r < 0) r = next++;
                table[p] = r;
            }
            if (best && table >= best_table) continue;
            for (auto& r : relabel)
                if (r < 0) r = next++;  // labels that never occur
            CanonicalForm3x3 c{FunctionSpec::deterministic(f.sidedness(), 3, 3,
                                                           static_cast<std::size_t>(*std::max_element(table.begin(), table.end()) + 1),
                                                           table),
                               table[1], table[4], rp, cp, relabel};
            best_table = table;
            best = std::move(c);
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));

    if (!best) throw std::logic_error("valid 3x3 function has no canonical form");
    return *best;
}

}  // namespace tpc
