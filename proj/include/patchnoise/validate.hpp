#pragma once

#include <string>
#include <vector>

namespace patchnoise::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0; // worst deviation measured, in the units of tol
    double tol = 0.0;
};

struct Options {
    // fractional perturbation applied to the plane point-patch closed form;
    // nonzero values exist so tests can confirm the suite actually bites
    double plane_pp_perturb = 0.0;
};

// runs every cross-backend and closed-form agreement check; subset filters by
// substring on the check name ("" runs everything)
std::vector<CheckResult> run_checks(const std::string& subset = "", const Options& opt = {});

} // namespace patchnoise::validate
