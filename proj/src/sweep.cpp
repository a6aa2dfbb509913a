#include <algorithm>
#include <exception>

#include <omp.h>

#include "tpc/attacks.hpp"
#include "tpc/tolerances.hpp"

namespace tpc {

namespace {

void sort_by_id(std::vector<AttackReport>& reports) {
    std::sort(reports.begin(), reports.end(),
              [](const AttackReport& x, const AttackReport& y) { return x.function_id < y.function_id; });
}

}  // namespace

std::vector<AttackReport> sweep_all_3x3_serial() {
    std::vector<AttackReport> out;
    for (const auto& f : enumerate_valid_3x3()) out.push_back(attack_deterministic_3x3(f));
    sort_by_id(out);
    return out;
}

std::vector<AttackReport> sweep_all_3x3(int workers) {
    const auto functions = enumerate_valid_3x3();
    std::vector<AttackReport> out(functions.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(functions.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(workers, 1))
    for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        try {
            out[static_cast<std::size_t>(idx)] = attack_deterministic_3x3(functions[static_cast<std::size_t>(idx)]);
        } catch (...) {
#pragma omp critical(tpc_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    sort_by_id(out);
    return out;
}

SweepSummary summarize_sweep(const std::vector<AttackReport>& reports) {
    SweepSummary s;
    s.count = reports.size();
    if (reports.empty()) return s;
    std::vector<double> adv;
    std::size_t worst = 0;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        adv.push_back(reports[r].advantage);
        if (reports[r].advantage < reports[worst].advantage) worst = r;
        if (!(reports[r].advantage > tolerances().adv_min)) s.failures.push_back(reports[r]);
    }
    std::sort(adv.begin(), adv.end());
    s.min_advantage = adv.front();
    s.max_advantage = adv.back();
    const std::size_t mid = adv.size() / 2;
    s.median_advantage = adv.size() % 2 ? adv[mid] : 0.5 * (adv[mid - 1] + adv[mid]);
    s.min_function_id = reports[worst].function_id;
    return s;
}

}  // namespace tpc
