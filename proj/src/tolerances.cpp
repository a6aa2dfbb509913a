#include "tpc/tolerances.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace tpc {

namespace {

Tolerances g_tolerances;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double* slot(Tolerances& t, const std::string& name) {
    if (name == "TOL_HERM") return &t.herm;
    if (name == "TOL_TRACE") return &t.trace;
    if (name == "TOL_PSD") return &t.psd;
    if (name == "TOL_RECON") return &t.recon;
    if (name == "RANK_TOL") return &t.rank;
    if (name == "CERT_TOL") return &t.cert;
    if (name == "ADV_MIN") return &t.adv_min;
    return nullptr;
}

}  // namespace

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
    return {{"TOL_HERM", herm}, {"TOL_TRACE", trace}, {"TOL_PSD", psd},
            {"TOL_RECON", recon}, {"RANK_TOL", rank}, {"CERT_TOL", cert},
            {"ADV_MIN", adv_min}};
}

void Tolerances::apply_overrides(const std::string& spec) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("tolerance override '" + item + "' is not NAME=value");
        const std::string name = trim(item.substr(0, eq));
        double* target = slot(*this, name);
        if (target == nullptr)
            throw std::invalid_argument("unknown tolerance '" + name + "'");
        std::size_t used = 0;
        const std::string value = trim(item.substr(eq + 1));
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size() || !(v >= 0.0))
            throw std::invalid_argument("bad value for tolerance '" + name + "'");
        *target = v;
    }
}

const Tolerances& tolerances() { return g_tolerances; }

void set_tolerances(const Tolerances& t) { g_tolerances = t; }

void load_tolerances_from_env() {
    Tolerances t;
    if (const char* env = std::getenv("TPC_TOL_OVERRIDE")) t.apply_overrides(env);
    set_tolerances(t);
}

}  // namespace tpc
