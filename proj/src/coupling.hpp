#ifndef QGRAV_COUPLING_HPP
#define QGRAV_COUPLING_HPP

#include <string>

#include "errors.hpp"

namespace qgrav {

// Rectangular travelling-wave ring cavity: two long arms of length L
// separated by w, with w << L and wavelength << w.
struct CavityGeometry {
    double arm_length = 0.0;    // L, m
    double arm_separation = 0.0; // w, m
    double finesse = 1.0;
    double wavelength = 0.0;    // m
    double beam_width = 0.0;    // m, 0 = unset (diagnostics only)

    void validate() const;
    bool near_field_warning() const { return arm_separation / wavelength < 100.0; }
    double omega0() const; // 2 pi c / wavelength
};

// Closed form of the arm-arm integral
//   I(L, w) = int_0^L int_0^L dz dz' / sqrt((z - z')^2 + w^2)
// written in a cancellation-free arrangement.
double geometric_factor_exact(double arm_length, double arm_separation);

// Large-L/w limit 2 L log(L/w); within 5% of the exact value once
// L/w >= 1e3. Requires L > w.
double geometric_factor_asymptotic(double arm_length, double arm_separation);

// Independent oracle: adaptive Simpson quadrature of the outer integral,
// with the inner integral done analytically
// (asinh((L-z)/w) + asinh(z/w)). `panels` caps the number of leaf
// subdivisions; an accuracy_error reports the achieved estimate when the
// budget is too small.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels_used = 0;
};
QuadratureResult geometric_factor_quadrature(double arm_length, double arm_separation,
                                             int panels, double rel_tol = 1e-12);

// Which arm-arm factor feeds the coupling: the published log(L/w) limit or
// the full closed form with the 1/(2(L+w)) mode normalization (which keeps
// the (L/(L+w))^2 factor the limit drops).
enum class GeometryMode { asymptotic_log, exact_integral };

// Quartic phase accumulated per interrogation,
// chi_q = 32 G F hbar omega0^2 log(L/w) / c^5 (asymptotic mode).
double chi_q(const CavityGeometry& g, GeometryMode mode = GeometryMode::asymptotic_log);

// Prefactor of a+a+aa in the interaction Hamiltonian, in joules:
// -(16 G / L)(hbar omega0 / c^2)^2 log(L/w) (asymptotic mode). Satisfies
// |coefficient| * (2 F L / c) / hbar = chi_q identically.
double interaction_hamiltonian_coefficient(const CavityGeometry& g,
                                           GeometryMode mode = GeometryMode::asymptotic_log);

enum class MediatorSpin { spin0 = 0, spin2 = 2 };

// Spin-2 mediators couple fully; spin-0 mediators couple to the trace of
// the stress-energy tensor, which vanishes for light.
double mediator_coupling(MediatorSpin spin);
MediatorSpin mediator_spin_from_int(int spin);

enum class BeamConfiguration { counter_propagating, co_propagating, standing_wave };

// Interaction coefficient per configuration: counter-propagating arms keep
// the full coefficient, co-propagating arms give exactly zero, and
// standing waves are out of scope (unsupported_error).
double configuration_coefficient(const CavityGeometry& g, BeamConfiguration config,
                                 GeometryMode mode = GeometryMode::asymptotic_log);

// Exactly zero; a freely co-propagating beam does not self-interact.
double co_propagating_interaction();

} // namespace qgrav

#endif
