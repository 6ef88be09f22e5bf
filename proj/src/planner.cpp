#include "planner.hpp"

#include <cmath>
#include <limits>

#include "constants.hpp"

namespace qgrav {

namespace phys = qgrav::constants;

void Scenario::validate() const {
    geometry.validate();
    if (!(total_time > 0.0)) throw invalid_argument_error("total time must be > 0");
    if (pump_power && circulating_power)
        throw invalid_argument_error("give at most one of pump and circulating power");
    if ((pump_power && *pump_power <= 0.0) || (circulating_power && *circulating_power <= 0.0))
        throw invalid_argument_error("powers must be > 0");
}

std::optional<double> Scenario::resolved_circulating_power() const {
    if (circulating_power) return circulating_power;
    if (pump_power) return *pump_power * geometry.finesse;
    return std::nullopt;
}

double interrogation_time(const CavityGeometry& g) {
    return 2.0 * g.finesse * g.arm_length / phys::speed_of_light;
}

double shots(const CavityGeometry& g, double total_time) {
    if (!(total_time > 0.0)) throw invalid_argument_error("total time must be > 0");
    return total_time / interrogation_time(g);
}

double photon_number(const CavityGeometry& g, double circulating_power) {
    if (!(circulating_power > 0.0)) throw invalid_argument_error("power must be > 0");
    return 2.0 * g.arm_length * circulating_power / (phys::hbar * g.omega0() * phys::speed_of_light);
}

double circulating_power_for_photons(const CavityGeometry& g, double n) {
    if (!(n > 0.0)) throw invalid_argument_error("photon number must be > 0");
    return n * phys::hbar * g.omega0() * phys::speed_of_light / (2.0 * g.arm_length);
}

double circulating_power_bound(const CavityGeometry& g, double total_time) {
    g.validate();
    if (!(total_time > 0.0)) throw invalid_argument_error("total time must be > 0");
    const double c = phys::speed_of_light;
    const double log_lw = std::log(g.arm_length / g.arm_separation);
    const double inner = c * phys::hbar * phys::hbar /
                         (12.0 * phys::gravitational_constant * phys::gravitational_constant *
                          g.finesse * std::pow(g.arm_length, 3) * total_time * log_lw * log_lw);
    return c * c * c / 16.0 * std::pow(inner, 0.25);
}

FeasibilityReport feasibility_check(const Scenario& scenario) {
    scenario.validate();
    const std::optional<double> power = scenario.resolved_circulating_power();
    if (!power)
        throw incomplete_scenario_error("feasibility check needs a pump or circulating power");

    const CavityGeometry& g = scenario.geometry;
    FeasibilityReport r;
    r.chi_q = chi_q(g) * mediator_coupling(scenario.spin);
    r.photon_number = photon_number(g, *power);
    r.shots = shots(g, scenario.total_time);
    r.shots_below_one = r.shots < 1.0;

    const double root_m = std::sqrt(96.0 * r.shots);
    r.required_chi_q = 1.0 / (root_m * r.photon_number * (r.photon_number + 1.0));
    r.margin = r.chi_q / r.required_chi_q;
    r.shots_margin = r.margin * r.margin;

    // circulating power where chi_q meets the bound:
    // N(N+1) = 1/(sqrt(96 M) chi_q), then P = N hbar omega0 c / (2L)
    if (r.chi_q > 0.0) {
        const double k = 1.0 / (root_m * r.chi_q);
        const double n_star = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * k));
        r.marginal_power = circulating_power_for_photons(g, n_star);
    } else {
        r.marginal_power = std::numeric_limits<double>::infinity();
    }
    r.bound_power = circulating_power_bound(g, scenario.total_time);
    r.consistency_residual = std::abs(r.marginal_power / r.bound_power - 1.0);
    if (r.chi_q > 0.0 && r.consistency_residual > 0.03)
        throw precondition_error(
            "marginal power disagrees with the closed-form bound by more than 3%");

    if (r.margin >= 0.95 && r.margin <= 1.05)
        r.verdict = Verdict::marginal;
    else if (r.margin > 1.05)
        r.verdict = Verdict::pass;
    else
        r.verdict = Verdict::fail;

    if (g.beam_width > 0.0)
        r.intensity = *power / (g.beam_width * g.beam_width);
    return r;
}

} // namespace qgrav
