#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tpc {

// Numerical thresholds shared by every module. All matrices handled here are
// at most a few dozen rows, so these sit far above accumulated rounding.
struct Tolerances {
    double herm = 1e-10;      // TOL_HERM: max |m - m^dagger| entry
    double trace = 1e-10;     // TOL_TRACE: |tr(rho) - 1|, ket norms, priors
    double psd = 1e-9;        // TOL_PSD: allowed negative eigenvalue
    double recon = 1e-9;      // TOL_RECON: reconstruction / completeness
    double rank = 1e-10;      // RANK_TOL: relative to the largest eigenvalue
    double cert = 1e-8;       // CERT_TOL: optimality certificate residuals
    double adv_min = 1e-9;    // ADV_MIN: smallest advantage counted as strict

    // (name, value) pairs in a fixed order, using the external names.
    std::vector<std::pair<std::string, double>> entries() const;

    // Applies "NAME=value,NAME=value". Throws std::invalid_argument on an
    // unknown name or malformed value.
    void apply_overrides(const std::string& spec);
};

// Process-wide tolerances. Set once at startup, before any parallel work.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& t);

// Reads TPC_TOL_OVERRIDE (if set) on top of the defaults and installs the result.
void load_tolerances_from_env();

}  // namespace tpc
