#pragma once

#include <stdexcept>
#include <string>

namespace patchnoise {

// raised when an iterative scheme (series, quadrature) cannot reach the
// requested tolerance; carries the residual actually achieved
class NotConverged : public std::runtime_error {
public:
    NotConverged(const std::string& what, double residual)
        : std::runtime_error(what + " (achieved residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// requested a printed closed form that does not exist for the combination
class NoClosedForm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// log-derivative of a vanishing geometric factor
class LogOfZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// an edge-divergent integral was requested without an exclusion band
class EdgeSingular : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace patchnoise
