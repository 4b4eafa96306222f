#include "patchnoise/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace patchnoise::noise {

double spectrum(const NoiseSpectrumModel& model, double omega) {
    if (!(model.amplitude > 0.0)) throw std::invalid_argument("noise: amplitude must be positive");
    if (!(omega > 0.0)) throw std::domain_error("noise: frequency must be positive");
    if (!model.allow_any_beta && model.beta != 1.0 && model.beta != 1.5 && model.beta != 2.0)
        throw std::invalid_argument("noise: beta outside {1, 1.5, 2}; set allow_any_beta to override");
    return model.amplitude * std::pow(model.omega_ref / omega, model.beta);
}

double spectral_density(const NoiseSpectrumModel& model, double omega, double lambda_si) {
    return 2.0 * spectrum(model, omega) * lambda_si;
}

double lambda_si(const lambda::LambdaResult& r, double scale_meters) {
    if (!(scale_meters > 0.0)) throw std::invalid_argument("noise: geometry scale must be positive");
    return r.value / (scale_meters * scale_meters);
}

double heating_rate(const IonParams& ion, double spectral_density) {
    if (!(ion.charge > 0.0) || !(ion.mass > 0.0) || !(ion.omega > 0.0) || !(ion.hbar > 0.0))
        throw std::invalid_argument("noise: ion parameters must be strictly positive");
    return ion.charge * ion.charge * spectral_density / (4.0 * ion.mass * ion.hbar * ion.omega);
}

RfAdvisory validity_check_rf(double omega_k, double omega_rf, double threshold) {
    if (!(omega_k > 0.0) || !(omega_rf > 0.0))
        throw std::domain_error("noise: frequencies must be positive");
    const double ratio = (omega_k / omega_rf) * (omega_k / omega_rf);
    return {ratio, ratio > threshold};
}

} // namespace patchnoise::noise
