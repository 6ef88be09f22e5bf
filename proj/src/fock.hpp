#ifndef QGRAV_FOCK_HPP
#define QGRAV_FOCK_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qgrav {

using cd = std::complex<double>;

// Default cap on the probability mass a constructor may discard.
inline constexpr double default_truncation_tol = 1e-12;

// Pure state of one or two optical modes in a truncated Fock basis.
//
// Amplitudes are the closed-form coefficients of the untruncated state, so
// the squared norm lies in [1 - tail_bound, 1]. Two-mode amplitudes are
// stored row-major: index(n1, n2) = n1 * dim2 + n2. States are immutable
// after construction.
struct FockState {
    int modes = 1;
    int dim1 = 1;        // truncation of mode 1
    int dim2 = 1;        // truncation of mode 2 (unused when modes == 1)
    Eigen::VectorXcd amp;
    double tail_bound = 0.0;

    Eigen::Index size() const { return amp.size(); }

    cd amplitude(int n) const;
    cd amplitude(int n1, int n2) const;
    double norm_sq() const { return amp.squaredNorm(); }
};

// Outcome probabilities of photon counting, same indexing as FockState.
// Probabilities sum to 1 - tail_mass (up to rounding).
struct OutcomeDistribution {
    int modes = 1;
    int dim1 = 1;
    int dim2 = 1;
    Eigen::VectorXd p;
    double tail_mass = 0.0;

    double at(int n) const;
    double at(int n1, int n2) const;
    double total() const { return p.sum(); }
};

// |0>, exact at any truncation.
FockState make_vacuum(int dim);

// Coherent state c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!). Pass dim = 0 to
// pick the smallest truncation whose Poisson tail bound is <= tol.
FockState make_coherent(cd alpha, int dim = 0, double tol = default_truncation_tol);

// Squeezed vacuum, even-n closed form
//   c_{2m} = (-e^{i theta} tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r).
// Odd amplitudes are exactly zero.
FockState make_squeezed_vacuum(double r, double theta, int dim = 0,
                               double tol = default_truncation_tol);

// Two-mode squeezed vacuum, c_N = (-e^{i phi} tanh r)^N / cosh r on |N,N>.
FockState make_tmsv(double r, double phi, int dim = 0,
                    double tol = default_truncation_tol);

// |a> (x) |b> as a two-mode state, keeping each factor's truncation.
FockState make_product(const FockState& a, const FockState& b);

// Zero-pad a two-mode state onto a larger grid (same amplitudes, same
// tail bound). Ladder operators then act exactly near the old boundary.
FockState embed_two_mode(const FockState& state, int dim1, int dim2);

class OperatorMatrix;

// <psi|O|psi>. Imaginary part is rounding noise when O is hermitian.
cd expectation(const FockState& state, const OperatorMatrix& op);

// <O^2> - <O>^2 for hermitian O.
double variance(const FockState& state, const OperatorMatrix& op);

// <n_tot> summed over modes, directly from the amplitudes.
double mean_photon_number(const FockState& state);

OutcomeDistribution number_distribution(const FockState& state);

// Debug dump: "n,re,im" rows (one mode) or "n1,n2,re,im" rows (two modes).
std::string to_csv(const FockState& state);

} // namespace qgrav

#endif
