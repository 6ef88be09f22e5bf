#ifndef QGRAV_PLANNER_HPP
#define QGRAV_PLANNER_HPP

#include <optional>
#include <string>

#include "coupling.hpp"

namespace qgrav {

// Experimental setting: geometry plus run time, with at most one of pump
// and circulating power given (the other follows from
// circulating = finesse x pump).
struct Scenario {
    CavityGeometry geometry;
    double total_time = 0.0; // s
    std::optional<double> pump_power;        // W
    std::optional<double> circulating_power; // W
    MediatorSpin spin = MediatorSpin::spin2;
    std::string label;

    void validate() const;
    // resolved circulating power, if any power was given
    std::optional<double> resolved_circulating_power() const;
};

// Cavity interrogation time tau = 2 F L / c.
double interrogation_time(const CavityGeometry& g);

// Number of repetitions M = T / tau (real-valued).
double shots(const CavityGeometry& g, double total_time);

// Photon number from circulating power, N = 2 L P / (hbar omega0 c).
double photon_number(const CavityGeometry& g, double circulating_power);

// Inverse of photon_number.
double circulating_power_for_photons(const CavityGeometry& g, double n);

// Minimum circulating power at which the quartic phase clears the
// squeezed-vacuum nuisance bound over a total time T:
//   P >= (c^3/16) (c hbar^2 / (12 G^2 F L^3 T log(L/w)^2))^{1/4}.
// Wavelength-independent (omega0 cancels).
double circulating_power_bound(const CavityGeometry& g, double total_time);

enum class Verdict { pass, marginal, fail };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::marginal: return "marginal";
        case Verdict::fail: return "fail";
    }
    return "?";
}

struct FeasibilityReport {
    double chi_q = 0.0;          // achieved quartic phase per shot
    double photon_number = 0.0;  // from the resolved circulating power
    double shots = 0.0;          // M = T / tau
    double required_chi_q = 0.0; // nuisance bound 1/(sqrt(96 M) N (N+1))
    double margin = 0.0;         // chi_q / bound
    double shots_margin = 0.0;   // margin^2, the excess in repetition count
    double marginal_power = 0.0; // circulating power at which margin = 1
    double bound_power = 0.0;    // closed-form circulating_power_bound
    double consistency_residual = 0.0; // |marginal/bound - 1|, identity check
    bool shots_below_one = false;
    Verdict verdict = Verdict::fail;
    std::optional<double> intensity; // circulating power / beam_width^2, W/m^2
};

// Closes the loop between the coupling, the bound and the power budget.
// Requires a power in the scenario (incomplete_scenario_error otherwise).
FeasibilityReport feasibility_check(const Scenario& scenario);

} // namespace qgrav

#endif
