#ifndef QGRAV_METROLOGY_HPP
#define QGRAV_METROLOGY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fock.hpp"
#include "operators.hpp"

namespace qgrav {

// F_ij = 4 tau^2 Cov(G_i, G_j), row/col order (quantum, classical).
// Cov(A, B) = <AB + BA>/2 - <A><B>. The state must be normalized up to its
// declared truncation loss.
Eigen::Matrix2d qfim(const FockState& state, const GeneratorSet& generators, double tau = 1.0);

// Closed-form QFIM of a squeezed vacuum probe under (a+a+aa, a+a), cast in
// the mean photon number N, together with its exact inverse.
struct SqvacQfim {
    Eigen::Matrix2d f;
    Eigen::Matrix2d f_inverse;
};
SqvacQfim analytic_sqvac_qfim(double n_mean);

// Smallest chi_q resolvable with M shots given an unknown quadratic phase:
// sqrt([F^-1]_QQ / M). A QFIM whose smallest eigenvalue is below
// 1e-12 x largest is reported as indistinguishable instead of inverted.
struct NuisanceBound {
    bool indistinguishable = false;
    double value = 0.0; // valid when !indistinguishable
};
NuisanceBound nuisance_qcrb(const Eigen::Matrix2d& f, double shots);

// Single-parameter bound without the nuisance: 1/sqrt(M F_QQ).
NuisanceBound single_parameter_bound(const Eigen::Matrix2d& f, double shots);

// Photon-counting distribution after the balanced interferometer:
// exp(-i pi/4 (a+b+b+a)) . phase . exp(+i pi/4 (a+b+b+a)) with the
// mid-sequence phase exp(i [chi_q (K_a + K_b) + chi_cs (n_a + n_b)
// + chi_ca (n_a - n_b)]). The input is embedded in a 2*dim-1 grid so the
// mixers act unitarily on every reachable total-photon sector; chi_cs is a
// global phase per sector and drops out of the probabilities identically.
OutcomeDistribution mz_outcome_distribution(const FockState& two_mode, double chi_q,
                                            double chi_c_sym, double chi_c_asym);

// (8/chi^2)(1 - sum sqrt(P_chi P_0)). Negative inputs are clamped to zero
// and counted.
struct CfiEstimate {
    double value = 0.0;
    long clamped = 0;
};
CfiEstimate hellinger_cfi(const OutcomeDistribution& p0, const OutcomeDistribution& p_chi,
                          double chi);

// Richardson combination (4 F(chi/2) - F(chi))/3 of the raw estimates,
// cancelling the O(chi^2) bias.
CfiEstimate hellinger_cfi_richardson(const OutcomeDistribution& p0,
                                     const OutcomeDistribution& p_chi_full,
                                     const OutcomeDistribution& p_chi_half, double chi);

// F_C = 4 <G_-^2> for states supported on |n,n> only; throws
// precondition_error otherwise. The convention scales G_- by 1/2 or 1.
double analytic_mz_cfi(const FockState& two_mode, Convention convention = Convention::half);

// Cumulants k1..k4 of the rotated quadrature (a e^{-i theta} + a+ e^{i
// theta})/sqrt(2). Moments are taken on a zero-padded copy so the operator
// powers act exactly on the truncated state, and are normalized by the
// squared norm.
std::array<double, 4> quadrature_cumulants(const FockState& state, double theta,
                                           int max_order = 4);

// Least-squares fit of log y against log N.
struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0; // log-space intercept
    double r_squared = 0.0;
    std::size_t points = 0;
};
ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& values);

// Report bundle for serialization; matrices row-major.
struct MetrologyReport {
    Eigen::Matrix2d f;
    std::optional<Eigen::Matrix2d> f_inverse;
    NuisanceBound qcrb_nuisance;
    double tau = 1.0;
    double shots = 1.0;
    std::string generator_labels;
    std::string state_descriptor;
    std::string convention_flags;

    std::string to_json() const;
};

MetrologyReport make_metrology_report(const Eigen::Matrix2d& f, double tau, double shots,
                                      const std::string& generator_labels,
                                      const std::string& state_descriptor,
                                      const std::string& convention_flags);

} // namespace qgrav

#endif
