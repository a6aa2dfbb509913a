#include <algorithm>
#include <array>
#include <set>

#include "tpc/funcspec.hpp"

namespace tpc {

namespace {

// Restricted growth strings of length 9: each row-major table up to outcome
// relabelling appears exactly once.
void grow(std::array<int, 9>& t, std::size_t pos, int max_label, std::vector<std::array<int, 9>>& out) {
    if (pos == t.size()) {
        out.push_back(t);
        return;
    }
    for (int v = 0; v <= max_label + 1; ++v) {
        t[pos] = v;
        grow(t, pos + 1, std::max(max_label, v), out);
    }
}

}  // namespace

std::vector<FunctionSpec> enumerate_valid_3x3() {
    std::vector<std::array<int, 9>> tables;
    std::array<int, 9> t{};
    grow(t, 0, -1, tables);

    std::set<std::vector<int>> seen;
    std::vector<FunctionSpec> out;
    for (const auto& tab : tables) {
        const int k = *std::max_element(tab.begin(), tab.end()) + 1;
        auto f = FunctionSpec::deterministic(Sidedness::two, 3, 3, static_cast<std::size_t>(k),
                                             std::vector<int>(tab.begin(), tab.end()));
        if (!validate_conditions(f).valid()) continue;
        auto c = canonicalize_3x3(f);
        std::vector<int> key;
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < 3; ++i) key.push_back(c.base.outcome(i, j));
        if (seen.insert(key).second) out.push_back(std::move(c.base));
    }
    std::sort(out.begin(), out.end(), [](const FunctionSpec& x, const FunctionSpec& y) {
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < 3; ++i)
                if (x.outcome(i, j) != y.outcome(i, j)) return x.outcome(i, j) < y.outcome(i, j);
        return false;
    });
    return out;
}

}  // namespace tpc
