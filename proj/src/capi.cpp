#include "qgrav/qgrav.h"

#include <cstring>
#include <new>
#include <string>

#include "evolve.hpp"
#include "fock.hpp"
#include "metrology.hpp"
#include "operators.hpp"
#include "planner.hpp"

using namespace qgrav;

struct qg_state {
    FockState impl;
};
struct qg_operator {
    OperatorMatrix impl;
};
struct qg_distribution {
    OutcomeDistribution impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <typename Fn>
qg_status guard(Fn&& fn) {
    try {
        fn();
        return QG_OK;
    } catch (const dimension_mismatch_error& e) {
        set_error(e.what());
        return QG_ERR_DIMENSION_MISMATCH;
    } catch (const truncation_error& e) {
        set_error(e.what());
        return QG_ERR_TRUNCATION;
    } catch (const convergence_error& e) {
        set_error(e.what());
        return QG_ERR_CONVERGENCE;
    } catch (const accuracy_error& e) {
        set_error(e.what());
        return QG_ERR_ACCURACY;
    } catch (const precondition_error& e) {
        set_error(e.what());
        return QG_ERR_PRECONDITION;
    } catch (const singular_error& e) {
        set_error(e.what());
        return QG_ERR_SINGULAR;
    } catch (const unsupported_error& e) {
        set_error(e.what());
        return QG_ERR_UNSUPPORTED;
    } catch (const incomplete_scenario_error& e) {
        set_error(e.what());
        return QG_ERR_INVALID_ARGUMENT;
    } catch (const invalid_argument_error& e) {
        set_error(e.what());
        return QG_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return QG_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QG_ERR_INVALID_ARGUMENT;
    }
}

qg_status require(bool ok, const char* msg) {
    if (ok) return QG_OK;
    set_error(msg);
    return QG_ERR_INVALID_ARGUMENT;
}

double tol_or_default(double tol) { return tol > 0.0 ? tol : default_truncation_tol; }

CavityGeometry to_geometry(const qg_geometry* g) {
    CavityGeometry out;
    out.arm_length = g->arm_length_m;
    out.arm_separation = g->arm_separation_m;
    out.finesse = g->finesse;
    out.wavelength = g->wavelength_m;
    out.beam_width = g->beam_width_m;
    return out;
}

GeometryMode to_mode(int geometry_mode) {
    if (geometry_mode == 0) return GeometryMode::asymptotic_log;
    if (geometry_mode == 1) return GeometryMode::exact_integral;
    throw invalid_argument_error("geometry_mode must be 0 or 1");
}

Convention to_convention(int convention) {
    if (convention == 0) return Convention::half;
    if (convention == 1) return Convention::unhalved;
    throw invalid_argument_error("convention must be 0 (half) or 1 (unhalved)");
}

Eigen::Matrix2d to_matrix(const double f[4]) {
    Eigen::Matrix2d m;
    m(0, 0) = f[0];
    m(0, 1) = f[1];
    m(1, 0) = f[2];
    m(1, 1) = f[3];
    return m;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* qg_status_name(qg_status status) {
    switch (status) {
        case QG_OK: return "ok";
        case QG_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case QG_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
        case QG_ERR_TRUNCATION: return "truncation";
        case QG_ERR_CONVERGENCE: return "convergence";
        case QG_ERR_ACCURACY: return "accuracy";
        case QG_ERR_PRECONDITION: return "precondition";
        case QG_ERR_SINGULAR: return "singular";
        case QG_ERR_UNSUPPORTED: return "unsupported";
    }
    return "unknown";
}

const char* qg_last_error(void) { return g_last_error.c_str(); }

void qg_state_free(qg_state* state) { delete state; }
void qg_operator_free(qg_operator* op) { delete op; }
void qg_distribution_free(qg_distribution* dist) { delete dist; }
void qg_string_free(char* str) { delete[] str; }

/* ---- states ------------------------------------------------------- */

qg_status qg_vacuum(uint32_t dim, qg_state** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_state{make_vacuum(static_cast<int>(dim))}; });
}

qg_status qg_coherent(double alpha_re, double alpha_im, uint32_t dim, double tol,
                      qg_state** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] {
        *out = new qg_state{
            make_coherent(cd(alpha_re, alpha_im), static_cast<int>(dim), tol_or_default(tol))};
    });
}

qg_status qg_squeezed_vacuum(double r, double theta, uint32_t dim, double tol, qg_state** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] {
        *out = new qg_state{
            make_squeezed_vacuum(r, theta, static_cast<int>(dim), tol_or_default(tol))};
    });
}

qg_status qg_tmsv(double r, double phi, uint32_t dim, double tol, qg_state** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] {
        *out = new qg_state{make_tmsv(r, phi, static_cast<int>(dim), tol_or_default(tol))};
    });
}

qg_status qg_product_state(const qg_state* mode_a, const qg_state* mode_b, qg_state** out) {
    if (qg_status s = require(mode_a && mode_b && out, "null argument")) return s;
    return guard([&] { *out = new qg_state{make_product(mode_a->impl, mode_b->impl)}; });
}

qg_status qg_state_embed(const qg_state* state, uint32_t dim1, uint32_t dim2, qg_state** out) {
    if (qg_status s = require(state && out, "null argument")) return s;
    return guard([&] {
        *out = new qg_state{
            embed_two_mode(state->impl, static_cast<int>(dim1), static_cast<int>(dim2))};
    });
}

int qg_state_modes(const qg_state* state) { return state ? state->impl.modes : 0; }
uint32_t qg_state_dim1(const qg_state* state) {
    return state ? static_cast<uint32_t>(state->impl.dim1) : 0;
}
uint32_t qg_state_dim2(const qg_state* state) {
    return state ? static_cast<uint32_t>(state->impl.dim2) : 0;
}
double qg_state_tail_bound(const qg_state* state) { return state ? state->impl.tail_bound : 0.0; }
double qg_state_norm_sq(const qg_state* state) { return state ? state->impl.norm_sq() : 0.0; }

qg_status qg_state_amplitude(const qg_state* state, uint32_t n1, uint32_t n2, double* re,
                             double* im) {
    if (qg_status s = require(state && re && im, "null argument")) return s;
    return guard([&] {
        const cd a = state->impl.modes == 1
                         ? state->impl.amplitude(static_cast<int>(n1))
                         : state->impl.amplitude(static_cast<int>(n1), static_cast<int>(n2));
        *re = a.real();
        *im = a.imag();
    });
}

qg_status qg_state_mean_photons(const qg_state* state, double* mean) {
    if (qg_status s = require(state && mean, "null argument")) return s;
    return guard([&] { *mean = mean_photon_number(state->impl); });
}

qg_status qg_state_csv(const qg_state* state, char** out) {
    if (qg_status s = require(state && out, "null argument")) return s;
    return guard([&] { *out = dup_string(to_csv(state->impl)); });
}

/* ---- operators ----------------------------------------------------- */

qg_status qg_number_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{number_op(static_cast<int>(dim))}; });
}

qg_status qg_kerr_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{kerr_op(static_cast<int>(dim))}; });
}

qg_status qg_quadrature_operator(uint32_t dim, double theta, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{quadrature_op(static_cast<int>(dim), theta)}; });
}

qg_status qg_number_sum_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{number_sum_op(static_cast<int>(dim))}; });
}

qg_status qg_number_diff_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{number_diff_op(static_cast<int>(dim))}; });
}

qg_status qg_kerr_sum_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{kerr_sum_op(static_cast<int>(dim))}; });
}

qg_status qg_bs_generator(uint32_t dim, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] { *out = new qg_operator{bs_generator(static_cast<int>(dim))}; });
}

qg_status qg_thg_generator(uint32_t dim_pump, uint32_t dim_harmonic, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] {
        *out = new qg_operator{
            thg_generator(static_cast<int>(dim_pump), static_cast<int>(dim_harmonic))};
    });
}

qg_status qg_mz_generator(uint32_t dim, int convention, int part, qg_operator** out) {
    if (qg_status s = require(out != nullptr, "null out pointer")) return s;
    return guard([&] {
        MzGenerator g = mz_composed_generator(static_cast<int>(dim), to_convention(convention));
        switch (part) {
            case 0: *out = new qg_operator{std::move(g.full)}; break;
            case 1: *out = new qg_operator{std::move(g.plus)}; break;
            case 2: *out = new qg_operator{std::move(g.minus)}; break;
            default: throw invalid_argument_error("part must be 0 (full), 1 (plus) or 2 (minus)");
        }
    });
}

int qg_operator_modes(const qg_operator* op) { return op ? op->impl.modes() : 0; }
uint32_t qg_operator_dim1(const qg_operator* op) {
    return op ? static_cast<uint32_t>(op->impl.dim1()) : 0;
}
uint32_t qg_operator_dim2(const qg_operator* op) {
    return op ? static_cast<uint32_t>(op->impl.dim2()) : 0;
}
int qg_operator_is_hermitian(const qg_operator* op) {
    return op && op->impl.hermitian() ? 1 : 0;
}

qg_status qg_operator_structure(const qg_operator* op, char* buf, size_t buf_len) {
    if (qg_status s = require(op && buf && buf_len > 0, "null argument")) return s;
    return guard([&] {
        const std::string str = op->impl.structure();
        std::strncpy(buf, str.c_str(), buf_len - 1);
        buf[buf_len - 1] = '\0';
    });
}

qg_status qg_operator_hermiticity_defect(const qg_operator* op, double* defect) {
    if (qg_status s = require(op && defect, "null argument")) return s;
    return guard([&] { *defect = op->impl.hermiticity_defect(); });
}

qg_status qg_expectation(const qg_state* state, const qg_operator* op, double* re, double* im) {
    if (qg_status s = require(state && op && re && im, "null argument")) return s;
    return guard([&] {
        const cd v = expectation(state->impl, op->impl);
        *re = v.real();
        *im = v.imag();
    });
}

qg_status qg_variance(const qg_state* state, const qg_operator* op, double* var) {
    if (qg_status s = require(state && op && var, "null argument")) return s;
    return guard([&] { *var = variance(state->impl, op->impl); });
}

/* ---- evolution ------------------------------------------------------ */

qg_status qg_evolve_kerr(const qg_state* state, double chi_q, double chi_c, qg_state** out) {
    if (qg_status s = require(state && out, "null argument")) return s;
    return guard([&] { *out = new qg_state{evolve_kerr(state->impl, chi_q, chi_c)}; });
}

qg_status qg_evolve(const qg_state* state, const qg_operator* generator, double angle,
                    qg_state** out) {
    if (qg_status s = require(state && generator && out, "null argument")) return s;
    return guard([&] { *out = new qg_state{evolve(state->impl, generator->impl, angle)}; });
}

qg_status qg_bs_conjugation_residual(uint32_t dim, int convention, double* residual) {
    if (qg_status s = require(residual != nullptr, "null out pointer")) return s;
    return guard([&] {
        const BsConvention conv = convention == 0 ? BsConvention::standard
                                                  : BsConvention::swapped;
        *residual = beamsplitter_conjugation_residual(static_cast<int>(dim), conv);
    });
}

/* ---- metrology ------------------------------------------------------ */

qg_status qg_qfim(const qg_state* state, const qg_operator* g_quantum,
                  const qg_operator* g_classical, double tau, double f_out[4]) {
    if (qg_status s = require(state && g_quantum && g_classical && f_out, "null argument"))
        return s;
    return guard([&] {
        GeneratorSet gens{g_quantum->impl, g_classical->impl, "quantum", "classical"};
        const Eigen::Matrix2d f = qfim(state->impl, gens, tau);
        f_out[0] = f(0, 0);
        f_out[1] = f(0, 1);
        f_out[2] = f(1, 0);
        f_out[3] = f(1, 1);
    });
}

qg_status qg_analytic_sqvac_qfim(double n_mean, double f_out[4], double f_inv_out[4]) {
    if (qg_status s = require(f_out && f_inv_out, "null out pointer")) return s;
    return guard([&] {
        const SqvacQfim r = analytic_sqvac_qfim(n_mean);
        f_out[0] = r.f(0, 0);
        f_out[1] = r.f(0, 1);
        f_out[2] = r.f(1, 0);
        f_out[3] = r.f(1, 1);
        f_inv_out[0] = r.f_inverse(0, 0);
        f_inv_out[1] = r.f_inverse(0, 1);
        f_inv_out[2] = r.f_inverse(1, 0);
        f_inv_out[3] = r.f_inverse(1, 1);
    });
}

qg_status qg_nuisance_qcrb(const double f[4], double shots, double* bound,
                           int* indistinguishable) {
    if (qg_status s = require(f && bound && indistinguishable, "null argument")) return s;
    return guard([&] {
        const NuisanceBound b = nuisance_qcrb(to_matrix(f), shots);
        *indistinguishable = b.indistinguishable ? 1 : 0;
        *bound = b.value;
    });
}

qg_status qg_single_parameter_bound(const double f[4], double shots, double* bound,
                                    int* indistinguishable) {
    if (qg_status s = require(f && bound && indistinguishable, "null argument")) return s;
    return guard([&] {
        const NuisanceBound b = single_parameter_bound(to_matrix(f), shots);
        *indistinguishable = b.indistinguishable ? 1 : 0;
        *bound = b.value;
    });
}

qg_status qg_number_distribution(const qg_state* state, qg_distribution** out) {
    if (qg_status s = require(state && out, "null argument")) return s;
    return guard([&] { *out = new qg_distribution{number_distribution(state->impl)}; });
}

qg_status qg_mz_distribution(const qg_state* tmsv, double chi_q, double chi_c_sym,
                             double chi_c_asym, qg_distribution** out) {
    if (qg_status s = require(tmsv && out, "null argument")) return s;
    return guard([&] {
        *out = new qg_distribution{
            mz_outcome_distribution(tmsv->impl, chi_q, chi_c_sym, chi_c_asym)};
    });
}

int qg_distribution_modes(const qg_distribution* dist) { return dist ? dist->impl.modes : 0; }
uint32_t qg_distribution_dim1(const qg_distribution* dist) {
    return dist ? static_cast<uint32_t>(dist->impl.dim1) : 0;
}
uint32_t qg_distribution_dim2(const qg_distribution* dist) {
    return dist ? static_cast<uint32_t>(dist->impl.dim2) : 0;
}
double qg_distribution_tail(const qg_distribution* dist) {
    return dist ? dist->impl.tail_mass : 0.0;
}
double qg_distribution_total(const qg_distribution* dist) {
    return dist ? dist->impl.total() : 0.0;
}

qg_status qg_distribution_at(const qg_distribution* dist, uint32_t n1, uint32_t n2,
                             double* p) {
    if (qg_status s = require(dist && p, "null argument")) return s;
    return guard([&] {
        *p = dist->impl.modes == 1
                 ? dist->impl.at(static_cast<int>(n1))
                 : dist->impl.at(static_cast<int>(n1), static_cast<int>(n2));
    });
}

qg_status qg_hellinger_cfi(const qg_distribution* p0, const qg_distribution* p_chi, double chi,
                           double* f_c, long* clamped) {
    if (qg_status s = require(p0 && p_chi && f_c && clamped, "null argument")) return s;
    return guard([&] {
        const CfiEstimate e = hellinger_cfi(p0->impl, p_chi->impl, chi);
        *f_c = e.value;
        *clamped = e.clamped;
    });
}

qg_status qg_hellinger_cfi_richardson(const qg_distribution* p0,
                                      const qg_distribution* p_chi_full,
                                      const qg_distribution* p_chi_half, double chi,
                                      double* f_c, long* clamped) {
    if (qg_status s = require(p0 && p_chi_full && p_chi_half && f_c && clamped, "null argument"))
        return s;
    return guard([&] {
        const CfiEstimate e =
            hellinger_cfi_richardson(p0->impl, p_chi_full->impl, p_chi_half->impl, chi);
        *f_c = e.value;
        *clamped = e.clamped;
    });
}

qg_status qg_analytic_mz_cfi(const qg_state* tmsv, int convention, double* f_c) {
    if (qg_status s = require(tmsv && f_c, "null argument")) return s;
    return guard([&] { *f_c = analytic_mz_cfi(tmsv->impl, to_convention(convention)); });
}

qg_status qg_quadrature_cumulants(const qg_state* state, double theta, double k_out[4]) {
    if (qg_status s = require(state && k_out, "null argument")) return s;
    return guard([&] {
        const std::array<double, 4> k = quadrature_cumulants(state->impl, theta);
        for (int i = 0; i < 4; ++i) k_out[i] = k[i];
    });
}

qg_status qg_fit_power_law(const double* x, const double* y, size_t n, double* exponent,
                           double* intercept, double* r_squared) {
    if (qg_status s = require(x && y && exponent && intercept && r_squared, "null argument"))
        return s;
    return guard([&] {
        std::vector<std::pair<double, double>> values;
        values.reserve(n);
        for (size_t i = 0; i < n; ++i) values.emplace_back(x[i], y[i]);
        const ScalingFit fit = scaling_exponent(values);
        *exponent = fit.exponent;
        *intercept = fit.intercept;
        *r_squared = fit.r_squared;
    });
}

qg_status qg_metrology_report_json(const double f[4], double tau, double shots,
                                   const char* generator_labels, const char* state_descriptor,
                                   const char* convention_flags, char** out_json) {
    if (qg_status s = require(f && out_json, "null argument")) return s;
    return guard([&] {
        const MetrologyReport r = make_metrology_report(
            to_matrix(f), tau, shots, generator_labels ? generator_labels : "",
            state_descriptor ? state_descriptor : "", convention_flags ? convention_flags : "");
        *out_json = dup_string(r.to_json());
    });
}

/* ---- gravitational coupling ----------------------------------------- */

qg_status qg_geometry_validate(const qg_geometry* g, int* warn_near_field) {
    if (qg_status s = require(g && warn_near_field, "null argument")) return s;
    return guard([&] {
        const CavityGeometry geom = to_geometry(g);
        geom.validate();
        *warn_near_field = geom.near_field_warning() ? 1 : 0;
    });
}

qg_status qg_geometric_factor_exact(double arm_length, double arm_separation, double* value) {
    if (qg_status s = require(value != nullptr, "null out pointer")) return s;
    return guard([&] { *value = geometric_factor_exact(arm_length, arm_separation); });
}

qg_status qg_geometric_factor_asymptotic(double arm_length, double arm_separation,
                                         double* value) {
    if (qg_status s = require(value != nullptr, "null out pointer")) return s;
    return guard([&] { *value = geometric_factor_asymptotic(arm_length, arm_separation); });
}

qg_status qg_geometric_factor_quadrature(double arm_length, double arm_separation, int panels,
                                         double* value, double* error_estimate) {
    if (qg_status s = require(value && error_estimate, "null argument")) return s;
    return guard([&] {
        const QuadratureResult r = geometric_factor_quadrature(arm_length, arm_separation,
                                                               panels);
        *value = r.value;
        *error_estimate = r.error_estimate;
    });
}

qg_status qg_chi_q(const qg_geometry* g, int geometry_mode, double* out) {
    if (qg_status s = require(g && out, "null argument")) return s;
    return guard([&] { *out = chi_q(to_geometry(g), to_mode(geometry_mode)); });
}

qg_status qg_interaction_coefficient(const qg_geometry* g, int geometry_mode,
                                     double* coefficient_j) {
    if (qg_status s = require(g && coefficient_j, "null argument")) return s;
    return guard([&] {
        *coefficient_j = interaction_hamiltonian_coefficient(to_geometry(g),
                                                             to_mode(geometry_mode));
    });
}

qg_status qg_mediator_coupling(int spin, double* multiplier) {
    if (qg_status s = require(multiplier != nullptr, "null out pointer")) return s;
    return guard([&] { *multiplier = mediator_coupling(mediator_spin_from_int(spin)); });
}

qg_status qg_configuration_coefficient(const qg_geometry* g, int config, int geometry_mode,
                                       double* coefficient_j) {
    if (qg_status s = require(g && coefficient_j, "null argument")) return s;
    return guard([&] {
        BeamConfiguration bc;
        switch (config) {
            case 0: bc = BeamConfiguration::counter_propagating; break;
            case 1: bc = BeamConfiguration::co_propagating; break;
            case 2: bc = BeamConfiguration::standing_wave; break;
            default: throw invalid_argument_error("config must be 0, 1 or 2");
        }
        *coefficient_j = configuration_coefficient(to_geometry(g), bc, to_mode(geometry_mode));
    });
}

/* ---- experiment planner ---------------------------------------------- */

qg_status qg_interrogation_time(const qg_geometry* g, double* tau_s) {
    if (qg_status s = require(g && tau_s, "null argument")) return s;
    return guard([&] { *tau_s = interrogation_time(to_geometry(g)); });
}

qg_status qg_shots(const qg_geometry* g, double total_time_s, double* out) {
    if (qg_status s = require(g && out, "null argument")) return s;
    return guard([&] { *out = shots(to_geometry(g), total_time_s); });
}

qg_status qg_photon_number(const qg_geometry* g, double circulating_power_w, double* n) {
    if (qg_status s = require(g && n, "null argument")) return s;
    return guard([&] { *n = photon_number(to_geometry(g), circulating_power_w); });
}

qg_status qg_circulating_power_for_photons(const qg_geometry* g, double n, double* power_w) {
    if (qg_status s = require(g && power_w, "null argument")) return s;
    return guard([&] { *power_w = circulating_power_for_photons(to_geometry(g), n); });
}

qg_status qg_circulating_power_bound(const qg_geometry* g, double total_time_s,
                                     double* power_w) {
    if (qg_status s = require(g && power_w, "null argument")) return s;
    return guard([&] { *power_w = circulating_power_bound(to_geometry(g), total_time_s); });
}

qg_status qg_feasibility_check(const qg_geometry* g, double total_time_s, double pump_power_w,
                               double circulating_power_w, int spin, qg_feasibility* out) {
    if (qg_status s = require(g && out, "null argument")) return s;
    return guard([&] {
        Scenario sc;
        sc.geometry = to_geometry(g);
        sc.total_time = total_time_s;
        if (pump_power_w > 0.0) sc.pump_power = pump_power_w;
        if (circulating_power_w > 0.0) sc.circulating_power = circulating_power_w;
        sc.spin = mediator_spin_from_int(spin);
        const FeasibilityReport r = feasibility_check(sc);
        out->chi_q = r.chi_q;
        out->photon_number = r.photon_number;
        out->shots = r.shots;
        out->required_chi_q = r.required_chi_q;
        out->margin = r.margin;
        out->shots_margin = r.shots_margin;
        out->marginal_power_w = r.marginal_power;
        out->bound_power_w = r.bound_power;
        out->consistency_residual = r.consistency_residual;
        out->intensity_w_per_m2 = r.intensity.value_or(0.0);
        out->has_intensity = r.intensity.has_value() ? 1 : 0;
        out->shots_below_one = r.shots_below_one ? 1 : 0;
        out->verdict = static_cast<int>(r.verdict);
    });
}

} // extern "C"
