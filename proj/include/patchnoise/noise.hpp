#pragma once

#include "patchnoise/lambda.hpp"

// Conversion of geometric factors to electric-field noise spectral density
// and single-ion heating rate. This is the only layer that speaks SI units;
// everything below it is nondimensional.

namespace patchnoise::noise {

// single-patch voltage-noise spectrum R(omega) = amplitude * (omega_ref/omega)^beta.
// The absolute amplitude is a calibration at the reference frequency; all
// rate outputs are relative to it.
struct NoiseSpectrumModel {
    double beta = 1.0;                       // 1, 1.5 and 2 are the supported exponents
    double amplitude = 1.0;                  // R(omega_ref), V^2 s
    double omega_ref = 2.0e6 * 3.14159265358979323846; // 1 MHz reference
    bool allow_any_beta = false;
};

double spectrum(const NoiseSpectrumModel& model, double omega);

// S_E(omega) = 2 R(omega) Lambda, with Lambda in 1/m^2
double spectral_density(const NoiseSpectrumModel& model, double omega, double lambda_si);

// nondimensional Lambda (geometry scale = 1, A/N measured in scale^2) to 1/m^2
double lambda_si(const lambda::LambdaResult& r, double scale_meters);

struct IonParams {
    double charge = 1.602176634e-19; // C
    double mass = 1.0;               // kg
    double omega = 1.0;              // secular frequency, rad/s
    double hbar = 1.054571817e-34;   // J s
};

// quanta per second out of the motional ground state
double heating_rate(const IonParams& ion, double spectral_density);

struct RfAdvisory {
    double ratio = 0.0; // (omega_k / Omega_rf)^2
    bool warn = false;
};

// flags secular-to-drive frequency ratios for which the quasi-static
// treatment stops being safe
RfAdvisory validity_check_rf(double omega_k, double omega_rf, double threshold = 0.01);

} // namespace patchnoise::noise
