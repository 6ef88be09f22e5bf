#include "coupling.hpp"

#include <cmath>

#include "constants.hpp"

namespace qgrav {

namespace phys = qgrav::constants;

void CavityGeometry::validate() const {
    if (!(arm_length > 0.0) || !(arm_separation > 0.0))
        throw invalid_argument_error("cavity lengths must be positive");
    if (!(arm_length > arm_separation))
        throw invalid_argument_error("arm length L must exceed separation w");
    if (!(wavelength > 0.0) || !(wavelength < arm_separation))
        throw invalid_argument_error("wavelength must satisfy 0 < lambda < w");
    if (!(finesse >= 1.0)) throw invalid_argument_error("finesse must be >= 1");
    if (beam_width < 0.0) throw invalid_argument_error("beam width must be >= 0");
}

double CavityGeometry::omega0() const { return 2.0 * M_PI * phys::speed_of_light / wavelength; }

double geometric_factor_exact(double arm_length, double arm_separation) {
    if (!(arm_length > 0.0) || !(arm_separation > 0.0))
        throw invalid_argument_error("geometric factor needs L, w > 0");
    const double l = arm_length;
    const double w = arm_separation;
    const double s = std::hypot(l, w);
    // 2(w - s) + L log((s+L)/(s-L)) rearranged to dodge the s-L and w-s
    // cancellations: s-L = w^2/(s+L), w-s = -L^2/(s+w).
    return 2.0 * l * std::log((s + l) / w) - 2.0 * l * l / (s + w);
}

double geometric_factor_asymptotic(double arm_length, double arm_separation) {
    if (!(arm_length > arm_separation) || !(arm_separation > 0.0))
        throw invalid_argument_error("asymptotic form needs L > w > 0");
    return 2.0 * arm_length * std::log(arm_length / arm_separation);
}

namespace {

// outer integrand: the inner z' integral in closed form
double inner_integral(double z, double l, double w) {
    return std::asinh((l - z) / w) + std::asinh(z / w);
}

struct SimpsonCtx {
    double l;
    double w;
    int budget;
    int used = 0;
    double err_sum = 0.0;
};

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(SimpsonCtx& ctx, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = inner_integral(lm, ctx.l, ctx.w);
    const double frm = inner_integral(rm, ctx.l, ctx.w);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double err = (left + right - whole) / 15.0;
    ++ctx.used;
    if (depth > 48 || ctx.used >= ctx.budget || std::abs(err) <= tol) {
        ctx.err_sum += std::abs(err);
        return left + right + err; // one extrapolation step
    }
    return adaptive(ctx, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           adaptive(ctx, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
}

} // namespace

QuadratureResult geometric_factor_quadrature(double arm_length, double arm_separation,
                                             int panels, double rel_tol) {
    if (!(arm_length > 0.0) || !(arm_separation > 0.0))
        throw invalid_argument_error("geometric factor needs L, w > 0");
    if (panels < 64) throw invalid_argument_error("quadrature needs a budget of >= 64 panels");

    SimpsonCtx ctx{arm_length, arm_separation, panels};
    const double a = 0.0;
    const double b = arm_length;
    const double fa = inner_integral(a, ctx.l, ctx.w);
    const double fb = inner_integral(b, ctx.l, ctx.w);
    const double fm = inner_integral(0.5 * (a + b), ctx.l, ctx.w);
    const double whole = simpson(fa, fm, fb, a, b);
    // the integrand is nonnegative, so `whole` sets the scale
    const double abs_tol = rel_tol * std::max(std::abs(whole), 1e-300);
    const double value = adaptive(ctx, a, b, fa, fm, fb, whole, abs_tol, 0);

    QuadratureResult r{value, ctx.err_sum, ctx.used};
    if (ctx.used >= panels && ctx.err_sum > abs_tol)
        throw accuracy_error("quadrature ran out of panels", ctx.err_sum / std::abs(value));
    return r;
}

namespace {

double arm_factor(const CavityGeometry& g, GeometryMode mode) {
    // Shape factor multiplying the quartic operator. The exact mode keeps
    // the (L/(L+w))^2 piece of the 1/(2(L+w)) mode normalization that the
    // published limit drops.
    if (mode == GeometryMode::asymptotic_log)
        return std::log(g.arm_length / g.arm_separation);
    const double l = g.arm_length;
    const double w = g.arm_separation;
    const double i = geometric_factor_exact(l, w);
    return i / (2.0 * l) * (l / (l + w)) * (l / (l + w));
}

} // namespace

double interaction_hamiltonian_coefficient(const CavityGeometry& g, GeometryMode mode) {
    g.validate();
    const double photon_mass_equiv =
        phys::hbar * g.omega0() / (phys::speed_of_light * phys::speed_of_light);
    return -16.0 * phys::gravitational_constant / g.arm_length * photon_mass_equiv *
           photon_mass_equiv * arm_factor(g, mode);
}

double chi_q(const CavityGeometry& g, GeometryMode mode) {
    // |coefficient| tau / hbar with tau = 2 F L / c
    const double coef = interaction_hamiltonian_coefficient(g, mode);
    const double tau = 2.0 * g.finesse * g.arm_length / phys::speed_of_light;
    return std::abs(coef) * tau / phys::hbar;
}

double mediator_coupling(MediatorSpin spin) {
    switch (spin) {
        case MediatorSpin::spin2: return 1.0;
        case MediatorSpin::spin0: return 0.0;
    }
    throw invalid_argument_error("unsupported mediator spin");
}

MediatorSpin mediator_spin_from_int(int spin) {
    if (spin == 0) return MediatorSpin::spin0;
    if (spin == 2) return MediatorSpin::spin2;
    throw invalid_argument_error("mediator spin must be 0 or 2");
}

double configuration_coefficient(const CavityGeometry& g, BeamConfiguration config,
                                 GeometryMode mode) {
    switch (config) {
        case BeamConfiguration::counter_propagating:
            return interaction_hamiltonian_coefficient(g, mode);
        case BeamConfiguration::co_propagating: return co_propagating_interaction();
        case BeamConfiguration::standing_wave:
            throw unsupported_error(
                "standing-wave configurations re-enable the electromagnetic "
                "photon-photon channel and are not modeled");
    }
    throw invalid_argument_error("unknown beam configuration");
}

double co_propagating_interaction() { return 0.0; }

} // namespace qgrav
