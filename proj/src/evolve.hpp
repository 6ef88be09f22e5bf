#ifndef QGRAV_EVOLVE_HPP
#define QGRAV_EVOLVE_HPP

#include <Eigen/Dense>

#include "fock.hpp"
#include "operators.hpp"

namespace qgrav {

// exp(i [chi_q n(n-1) + chi_c n]) applied entrywise; single mode only.
FockState evolve_kerr(const FockState& state, double chi_q, double chi_c);

// exp(i angle G) |state> for hermitian G. Diagonal generators evolve by
// exact phase multiplication; everything else goes through a Lanczos
// propagator with automatic substepping. Norm is preserved to 1e-10 or a
// convergence_error carries the achieved residual.
FockState evolve(const FockState& state, const OperatorMatrix& generator, double angle,
                 double tol = 1e-13);

// exp(i t H) v for hermitian H, same engine as evolve().
Eigen::VectorXcd apply_exp_hermitian(const OperatorMatrix& h, double t,
                                     const Eigen::VectorXcd& v, double tol = 1e-13);

// Dense exp(i t H) for hermitian H via eigendecomposition.
Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double t);

enum class BsConvention { standard, swapped };

// Max-norm residual between the beamsplitter-conjugated two-mode Kerr sum
// U+ (K_a + K_b) U and the composed generator (half convention), taken over
// the total-photon sectors the truncation keeps complete (n1+n2 <= dim-1).
// `standard` uses U = exp(-i (pi/4)(a+b + b+a)) and the residual collapses
// to rounding noise; `swapped` uses the real-rotation mixer
// exp((pi/4)(a+b - b+a)), for which the pair-exchange terms come out with
// the opposite sign and the residual is large. Dense check, dim <= 64.
double beamsplitter_conjugation_residual(int dim, BsConvention convention);

} // namespace qgrav

#endif
