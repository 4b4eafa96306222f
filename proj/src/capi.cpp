#include "patchnoise.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>

#include "patchnoise/errors.hpp"
#include "patchnoise/lambda.hpp"
#include "patchnoise/noise.hpp"
#include "patchnoise/scaling.hpp"
#include "patchnoise/validate.hpp"

using namespace patchnoise;

struct pn_model {
    geometry::Geometry g;
    pn_geometry kind = PN_PLANE;
    lambda::EvalOptions eopt;
    scaling::AlphaOptions aopt;
    double a_over_n = 1.0;

    std::mutex mu;
    std::shared_ptr<const lambda::SpectralContext> ctx;
    int ctx_lmax = -1;
    double ctx_delta = -1.0;
    std::string last_error;
};

namespace {

pn_status map_exception(pn_model* m) {
    try {
        throw;
    } catch (const NotConverged& e) {
        if (m) m->last_error = e.what();
        return PN_E_NOT_CONVERGED;
    } catch (const EdgeSingular& e) {
        if (m) m->last_error = e.what();
        return PN_E_EDGE;
    } catch (const NoClosedForm& e) {
        if (m) m->last_error = e.what();
        return PN_E_NO_CLOSED_FORM;
    } catch (const LogOfZero& e) {
        if (m) m->last_error = e.what();
        return PN_E_LOG_ZERO;
    } catch (const std::invalid_argument& e) {
        if (m) m->last_error = e.what();
        return PN_E_INVALID;
    } catch (const std::domain_error& e) {
        if (m) m->last_error = e.what();
        return PN_E_DOMAIN;
    } catch (const std::exception& e) {
        if (m) m->last_error = e.what();
        return PN_E_INTERNAL;
    } catch (...) {
        if (m) m->last_error = "unknown error";
        return PN_E_INTERNAL;
    }
}

patchmodel::PatchModel to_patch(const pn_model* m, pn_patch p) {
    const double an = m ? m->a_over_n : 1.0;
    switch (p.regime) {
        case PN_PATCH_IP: return patchmodel::PatchModel::ip(an);
        case PN_PATCH_PP: return patchmodel::PatchModel::pp(an);
        case PN_PATCH_TRUNCATED:
            if (p.l0 < 0) throw std::invalid_argument("truncation degree must be >= 0");
            return patchmodel::PatchModel::truncated(p.l0, an);
    }
    throw std::invalid_argument("unknown patch regime");
}

lambda::Backend to_backend(pn_backend b) {
    switch (b) {
        case PN_BACKEND_AUTO: return lambda::Backend::Auto;
        case PN_BACKEND_CLOSED: return lambda::Backend::Closed;
        case PN_BACKEND_SPECTRAL: return lambda::Backend::Spectral;
        case PN_BACKEND_QUADRATURE: return lambda::Backend::Quadrature;
    }
    throw std::invalid_argument("unknown backend");
}

// spheroid coefficient tables are reused across calls; rebuilt when the
// required degree or edge delta changes
std::shared_ptr<const lambda::SpectralContext> context_for(pn_model* m, const patchmodel::PatchModel& patch) {
    const bool spheroid = std::holds_alternative<geometry::ProlateSpheroid>(m->g) ||
                          std::holds_alternative<geometry::OblateSpheroid>(m->g);
    if (!spheroid) return nullptr;
    if (patch.regime == patchmodel::PatchModel::Regime::InfinitePatch) return nullptr;
    const int need = std::max(m->eopt.l_max,
                              patch.regime == patchmodel::PatchModel::Regime::Truncated ? 2 * patch.l0 : 0);
    std::lock_guard<std::mutex> lock(m->mu);
    if (!m->ctx || m->ctx_lmax < need || m->ctx_delta != m->eopt.edge_delta) {
        m->ctx = std::make_shared<lambda::SpectralContext>(
            lambda::make_spectral_context(m->g, need, m->eopt.edge_delta));
        m->ctx_lmax = need;
        m->ctx_delta = m->eopt.edge_delta;
    }
    return m->ctx;
}

} // namespace

extern "C" {

const char* pn_version(void) { return "1.0.0"; }

const char* pn_status_message(pn_status s) {
    switch (s) {
        case PN_OK: return "ok";
        case PN_E_INVALID: return "invalid argument or configuration";
        case PN_E_DOMAIN: return "argument outside the mathematical domain";
        case PN_E_NO_CLOSED_FORM: return "no closed form for this combination";
        case PN_E_NOT_CONVERGED: return "numerical scheme did not converge";
        case PN_E_EDGE: return "edge-divergent integral needs an exclusion band";
        case PN_E_LOG_ZERO: return "log of zero: the geometric factor vanishes";
        case PN_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* pn_model_last_error(const pn_model* m) {
    return m ? m->last_error.c_str() : "";
}

pn_status pn_model_create(pn_geometry kind, double xi0, pn_model** out) {
    if (!out) return PN_E_INVALID;
    *out = nullptr;
    auto m = std::make_unique<pn_model>();
    m->kind = kind;
    try {
        switch (kind) {
            case PN_PLANE: m->g = geometry::InfinitePlane{}; break;
            case PN_HOLE: m->g = geometry::HolePlane{1.0}; break;
            case PN_SPHERE: m->g = geometry::Sphere{1.0}; break;
            case PN_PROLATE: m->g = geometry::ProlateSpheroid{1.0, xi0}; break;
            case PN_OBLATE: m->g = geometry::OblateSpheroid{1.0, xi0}; break;
            default: return PN_E_INVALID;
        }
        geometry::validate(m->g);
    } catch (...) {
        return map_exception(m.get());
    }
    *out = m.release();
    return PN_OK;
}

void pn_model_destroy(pn_model* m) { delete m; }

pn_status pn_model_set_lmax(pn_model* m, int l_max) {
    if (!m || l_max < 1) return PN_E_INVALID;
    m->eopt.l_max = l_max;
    return PN_OK;
}

pn_status pn_model_set_tolerance(pn_model* m, double rel_tol) {
    if (!m || !(rel_tol > 0.0)) return PN_E_INVALID;
    m->eopt.rel_tol = rel_tol;
    return PN_OK;
}

pn_status pn_model_set_edge_delta(pn_model* m, double delta) {
    if (!m || delta < 0.0) return PN_E_INVALID;
    m->eopt.edge_delta = delta;
    return PN_OK;
}

pn_status pn_model_set_area_ratio(pn_model* m, double a_over_n) {
    if (!m || !(a_over_n > 0.0)) return PN_E_INVALID;
    m->a_over_n = a_over_n;
    return PN_OK;
}

pn_status pn_model_set_log_step(pn_model* m, double h, int richardson) {
    if (!m || !(h > 0.0) || h > 0.2) return PN_E_INVALID;
    m->aopt.h = h;
    m->aopt.richardson = richardson != 0;
    return PN_OK;
}

int pn_truncation_for_patch_size(double theta_zeta) {
    if (!(theta_zeta > 0.0)) return -1;
    return static_cast<int>(std::lround(2.0 / theta_zeta));
}

const char* pn_mode_label(pn_geometry kind, pn_mode mode) {
    const bool n = (mode == PN_MODE_NORMAL);
    switch (kind) {
        case PN_PLANE: return n ? "z" : "x";
        case PN_HOLE: return n ? "z" : "s";
        case PN_SPHERE: return n ? "r" : "theta";
        case PN_PROLATE:
        case PN_OBLATE: return n ? "xi" : "eta";
    }
    return "?";
}

pn_status pn_lambda(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend, double D,
                    pn_eval* out) {
    if (!m || !out) return PN_E_INVALID;
    try {
        const auto p = to_patch(m, patch);
        const auto ctx = context_for(m, p);
        const auto k = (mode == PN_MODE_NORMAL) ? geometry::FieldMode::Normal
                                                : geometry::FieldMode::Transverse;
        const auto r = lambda::evaluate(m->g, k, p, D, to_backend(backend), m->eopt, ctx.get());
        out->lambda = r.value;
        out->l_used = r.l_used;
        out->residual = r.residual;
        out->unit_power = r.unit_power;
        out->has_area_factor = r.has_patch_area_factor ? 1 : 0;
        switch (r.backend) {
            case lambda::Backend::Closed: out->backend_used = PN_BACKEND_CLOSED; break;
            case lambda::Backend::Spectral: out->backend_used = PN_BACKEND_SPECTRAL; break;
            case lambda::Backend::Quadrature: out->backend_used = PN_BACKEND_QUADRATURE; break;
            default: out->backend_used = PN_BACKEND_AUTO; break;
        }
        return PN_OK;
    } catch (...) {
        return map_exception(m);
    }
}

pn_status pn_alpha(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend, double D,
                   double* alpha) {
    if (!m || !alpha) return PN_E_INVALID;
    try {
        const auto p = to_patch(m, patch);
        const auto ctx = context_for(m, p);
        const auto k = (mode == PN_MODE_NORMAL) ? geometry::FieldMode::Normal
                                                : geometry::FieldMode::Transverse;
        scaling::AlphaOptions ao = m->aopt;
        ao.backend = to_backend(backend);
        *alpha = scaling::alpha_at(m->g, k, p, D, ao, m->eopt, ctx.get());
        return PN_OK;
    } catch (...) {
        return map_exception(m);
    }
}

pn_status pn_sweep(pn_model* m, pn_mode mode, pn_patch patch, pn_backend backend,
                   const double* d_grid, size_t n, double* lambda_out, double* alpha_out) {
    if (!m || !d_grid || n == 0) return PN_E_INVALID;
    try {
        const auto p = to_patch(m, patch);
        const auto ctx = context_for(m, p);
        const auto k = (mode == PN_MODE_NORMAL) ? geometry::FieldMode::Normal
                                                : geometry::FieldMode::Transverse;
        scaling::AlphaOptions ao = m->aopt;
        ao.backend = to_backend(backend);
        std::vector<double> grid(d_grid, d_grid + n);
        std::vector<patchmodel::PatchModel> patches{p};
        // reuse sweep_alpha so parallelism and ordering behave identically
        // whether callers come through C or C++
        auto curves = scaling::sweep_alpha(m->g, k, patches, grid, ao, m->eopt, ctx.get());
        for (size_t i = 0; i < n; ++i) {
            if (lambda_out) lambda_out[i] = curves[0].samples[i].lambda;
            if (alpha_out) alpha_out[i] = curves[0].samples[i].alpha;
        }
        return PN_OK;
    } catch (...) {
        return map_exception(m);
    }
}

pn_status pn_lambda_to_si(double lambda_nondim, double scale_meters, double* out) {
    if (!out) return PN_E_INVALID;
    try {
        lambda::LambdaResult r;
        r.value = lambda_nondim;
        *out = noise::lambda_si(r, scale_meters);
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

pn_status pn_spectral_density(double beta, double amplitude, double omega_ref, double omega,
                              double lambda_si, double* out) {
    if (!out) return PN_E_INVALID;
    try {
        noise::NoiseSpectrumModel model;
        model.beta = beta;
        model.amplitude = amplitude;
        model.omega_ref = omega_ref;
        *out = noise::spectral_density(model, omega, lambda_si);
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

pn_status pn_heating_rate(double charge, double mass, double omega, double hbar,
                          double spectral_density, double* out) {
    if (!out) return PN_E_INVALID;
    try {
        *out = noise::heating_rate({charge, mass, omega, hbar}, spectral_density);
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

pn_status pn_rf_advisory(double omega_k, double omega_rf, double threshold, double* ratio,
                         int* warn) {
    if (!ratio || !warn) return PN_E_INVALID;
    try {
        const auto adv = noise::validity_check_rf(omega_k, omega_rf, threshold);
        *ratio = adv.ratio;
        *warn = adv.warn ? 1 : 0;
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

pn_status pn_validate(const char* subset, pn_validate_cb cb, void* user, int* n_failed) {
    try {
        const auto results = validate::run_checks(subset ? subset : "");
        int failed = 0;
        for (const auto& r : results) {
            if (!r.pass) ++failed;
            if (cb) cb(r.name.c_str(), r.pass ? 1 : 0, r.worst, r.tol, user);
        }
        if (n_failed) *n_failed = failed;
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

pn_status pn_coeff_table_csv(pn_geometry kind, int m, double xi0, int l_max, double edge_delta,
                             const char* path) {
    if (!path) return PN_E_INVALID;
    try {
        const auto sk = (kind == PN_PROLATE) ? patchmodel::SpheroidKind::Prolate
                                             : patchmodel::SpheroidKind::Oblate;
        if (kind != PN_PROLATE && kind != PN_OBLATE)
            throw std::invalid_argument("coefficient tables exist for spheroids");
        const auto table = patchmodel::build_coefficient_table(sk, m, xi0, l_max, edge_delta);
        std::ofstream os(path);
        if (!os) throw std::invalid_argument("cannot open output file");
        patchmodel::write_csv(table, os);
        return PN_OK;
    } catch (...) {
        return map_exception(nullptr);
    }
}

} // extern "C"
