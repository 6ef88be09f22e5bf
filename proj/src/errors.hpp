#ifndef QGRAV_ERRORS_HPP
#define QGRAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgrav {

struct invalid_argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct dimension_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested truncation cannot hold the state at the configured tolerance.
struct truncation_error : std::runtime_error {
    truncation_error(const std::string& msg, int required)
        : std::runtime_error(msg), required_dim(required) {}
    int required_dim;
};

// Iterative propagator failed to reach its residual target.
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& msg, double residual)
        : std::runtime_error(msg), achieved_residual(residual) {}
    double achieved_residual;
};

// Quadrature did not converge within the panel budget.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_estimate(achieved) {}
    double achieved_estimate;
};

struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct singular_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct incomplete_scenario_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace qgrav

#endif
