#include "fock.hpp"

#include <cmath>
#include <cstdio>

#include "operators.hpp"

namespace qgrav {

namespace {

// Smallest truncation holding a Poisson(mu) photon distribution with tail
// bound <= tol. The tail past dim-1 is bounded by P(dim)/(1 - mu/(dim+1)).
struct PoissonTail {
    int dim;
    double bound;
};

double poisson_tail_bound(double mu, int dim) {
    if (mu == 0.0) return 0.0;
    const double logp = -mu + dim * std::log(mu) - std::lgamma(dim + 1.0);
    const double ratio = mu / (dim + 1.0);
    if (ratio >= 1.0) return 1.0;
    return std::exp(logp) / (1.0 - ratio);
}

PoissonTail poisson_auto_dim(double mu, double tol) {
    int dim = std::max(1, static_cast<int>(std::ceil(mu)) + 1);
    double bound = poisson_tail_bound(mu, dim);
    while (bound > tol) {
        ++dim;
        bound = poisson_tail_bound(mu, dim);
        if (dim > 20'000'000)
            throw truncation_error("coherent-state truncation search exceeded 2e7", dim);
    }
    return {dim, bound};
}

// P(2m) for squeezed vacuum: q^m C(2m, m) / 4^m / cosh r, q = tanh^2 r.
// Successive ratios are q (2m+1)/(2m+2) < q, so the tail past the kept
// range is bounded by P(2 m_max) q / (1 - q).
double sqvac_log_p2m(double r, int m) {
    const double q = std::pow(std::tanh(r), 2);
    return m * std::log(q) + std::lgamma(2 * m + 1.0) - 2.0 * std::lgamma(m + 1.0) -
           2 * m * std::log(2.0) - std::log(std::cosh(r));
}

double sqvac_tail_bound(double r, int dim) {
    if (r == 0.0) return 0.0;
    const double q = std::pow(std::tanh(r), 2);
    const int m_max = (dim - 1) / 2; // largest kept even index is 2*m_max
    return std::exp(sqvac_log_p2m(r, m_max)) * q / (1.0 - q);
}

int sqvac_auto_dim(double r, double tol) {
    if (r == 0.0) return 1;
    int m = std::max(1, static_cast<int>(std::ceil(std::sinh(r) * std::sinh(r))));
    while (sqvac_tail_bound(r, 2 * m + 1) > tol) {
        ++m;
        if (m > 10'000'000)
            throw truncation_error("squeezed-vacuum truncation search exceeded 2e7", 2 * m);
    }
    return 2 * m + 1;
}

double tmsv_tail_bound(double r, int dim) {
    if (r == 0.0) return 0.0;
    const double q = std::pow(std::tanh(r), 2);
    return std::exp(dim * std::log(q)); // geometric tail, exact
}

int tmsv_auto_dim(double r, double tol) {
    if (r == 0.0) return 1;
    const double q = std::pow(std::tanh(r), 2);
    const int dim = static_cast<int>(std::ceil(std::log(tol) / std::log(q))) + 1;
    return std::max(dim, 1);
}

void check_dim(int dim) {
    if (dim < 1) throw invalid_argument_error("truncation dim must be >= 1");
}

} // namespace

cd FockState::amplitude(int n) const {
    if (modes != 1) throw dimension_mismatch_error("single-index amplitude on a two-mode state");
    if (n < 0 || n >= dim1) throw invalid_argument_error("photon index out of range");
    return amp[n];
}

cd FockState::amplitude(int n1, int n2) const {
    if (modes != 2) throw dimension_mismatch_error("pair amplitude on a single-mode state");
    if (n1 < 0 || n1 >= dim1 || n2 < 0 || n2 >= dim2)
        throw invalid_argument_error("photon index out of range");
    return amp[static_cast<Eigen::Index>(n1) * dim2 + n2];
}

double OutcomeDistribution::at(int n) const {
    if (modes != 1) throw dimension_mismatch_error("single-index probability on a two-mode table");
    if (n < 0 || n >= dim1) throw invalid_argument_error("outcome index out of range");
    return p[n];
}

double OutcomeDistribution::at(int n1, int n2) const {
    if (modes != 2) throw dimension_mismatch_error("pair probability on a single-mode table");
    if (n1 < 0 || n1 >= dim1 || n2 < 0 || n2 >= dim2)
        throw invalid_argument_error("outcome index out of range");
    return p[static_cast<Eigen::Index>(n1) * dim2 + n2];
}

FockState make_vacuum(int dim) {
    check_dim(dim);
    FockState s;
    s.modes = 1;
    s.dim1 = dim;
    s.amp = Eigen::VectorXcd::Zero(dim);
    s.amp[0] = 1.0;
    s.tail_bound = 0.0;
    return s;
}

FockState make_coherent(cd alpha, int dim, double tol) {
    if (dim < 0) throw invalid_argument_error("truncation dim must be >= 0");
    const double mu = std::norm(alpha);
    if (mu == 0.0) return make_vacuum(dim == 0 ? 1 : dim);

    const PoissonTail needed = poisson_auto_dim(mu, tol);
    if (dim == 0) {
        dim = needed.dim;
    } else if (poisson_tail_bound(mu, dim) > tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "coherent state |alpha|^2=%.6g needs dim >= %d for tail <= %.3g (got %d)",
                      mu, needed.dim, tol, dim);
        throw truncation_error(msg, needed.dim);
    }

    FockState s;
    s.modes = 1;
    s.dim1 = dim;
    s.amp = Eigen::VectorXcd::Zero(dim);
    const double phase = std::arg(alpha);
    for (int n = 0; n < dim; ++n) {
        const double logmag = -mu / 2.0 + n * std::log(std::abs(alpha)) - 0.5 * std::lgamma(n + 1.0);
        s.amp[n] = std::polar(std::exp(logmag), phase * n);
    }
    s.tail_bound = poisson_tail_bound(mu, dim);
    return s;
}

FockState make_squeezed_vacuum(double r, double theta, int dim, double tol) {
    if (r < 0.0) throw invalid_argument_error("squeeze magnitude r must be >= 0");
    if (dim < 0) throw invalid_argument_error("truncation dim must be >= 0");
    if (r == 0.0) return make_vacuum(dim == 0 ? 1 : dim);

    const int needed = sqvac_auto_dim(r, tol);
    if (dim == 0) {
        dim = needed;
    } else if (sqvac_tail_bound(r, dim) > tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "squeezed vacuum r=%.6g needs dim >= %d for tail <= %.3g (got %d)",
                      r, needed, tol, dim);
        throw truncation_error(msg, needed);
    }

    FockState s;
    s.modes = 1;
    s.dim1 = dim;
    s.amp = Eigen::VectorXcd::Zero(dim);
    const double tanh_r = std::tanh(r);
    for (int m = 0; 2 * m < dim; ++m) {
        // |c_2m| = tanh^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r); the phase
        // comes from (-e^{i theta})^m.
        const double logmag = m * std::log(tanh_r) + 0.5 * std::lgamma(2 * m + 1.0) -
                              std::lgamma(m + 1.0) - m * std::log(2.0) -
                              0.5 * std::log(std::cosh(r));
        const double ph = m * (theta + M_PI);
        s.amp[2 * m] = std::polar(std::exp(logmag), ph);
    }
    s.tail_bound = sqvac_tail_bound(r, dim);
    return s;
}

FockState make_tmsv(double r, double phi, int dim, double tol) {
    if (r < 0.0) throw invalid_argument_error("squeeze magnitude r must be >= 0");
    if (dim < 0) throw invalid_argument_error("truncation dim must be >= 0");

    const int needed = tmsv_auto_dim(r, tol);
    if (dim == 0) {
        dim = needed;
    } else if (tmsv_tail_bound(r, dim) > tol) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "TMSV r=%.6g needs dim >= %d for tail <= %.3g (got %d)", r, needed, tol,
                      dim);
        throw truncation_error(msg, needed);
    }

    FockState s;
    s.modes = 2;
    s.dim1 = dim;
    s.dim2 = dim;
    s.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * dim);
    const double tanh_r = std::tanh(r);
    for (int n = 0; n < dim; ++n) {
        const double logmag = (n > 0 ? n * std::log(tanh_r) : 0.0) - std::log(std::cosh(r));
        const double ph = n * (phi + M_PI);
        s.amp[static_cast<Eigen::Index>(n) * dim + n] = std::polar(std::exp(logmag), ph);
    }
    s.tail_bound = tmsv_tail_bound(r, dim);
    return s;
}

FockState make_product(const FockState& a, const FockState& b) {
    if (a.modes != 1 || b.modes != 1)
        throw dimension_mismatch_error("product state needs two single-mode inputs");
    FockState s;
    s.modes = 2;
    s.dim1 = a.dim1;
    s.dim2 = b.dim1;
    s.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.dim1) * s.dim2);
    for (int n1 = 0; n1 < s.dim1; ++n1)
        for (int n2 = 0; n2 < s.dim2; ++n2)
            s.amp[static_cast<Eigen::Index>(n1) * s.dim2 + n2] = a.amp[n1] * b.amp[n2];
    // discarded mass is at most the union of the one-mode tails
    s.tail_bound = std::min(1.0, a.tail_bound + b.tail_bound);
    return s;
}

FockState embed_two_mode(const FockState& state, int dim1, int dim2) {
    if (state.modes != 2) throw dimension_mismatch_error("embed takes a two-mode state");
    if (dim1 < state.dim1 || dim2 < state.dim2)
        throw invalid_argument_error("embedding target must not shrink the grid");
    FockState out;
    out.modes = 2;
    out.dim1 = dim1;
    out.dim2 = dim2;
    out.tail_bound = state.tail_bound;
    out.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim1) * dim2);
    for (int n1 = 0; n1 < state.dim1; ++n1)
        for (int n2 = 0; n2 < state.dim2; ++n2)
            out.amp[static_cast<Eigen::Index>(n1) * dim2 + n2] =
                state.amp[static_cast<Eigen::Index>(n1) * state.dim2 + n2];
    return out;
}

cd expectation(const FockState& state, const OperatorMatrix& op) {
    if (op.modes() != state.modes || op.total_dim() != state.size())
        throw dimension_mismatch_error("operator and state dimensions differ");
    return state.amp.dot(op.apply(state.amp));
}

double variance(const FockState& state, const OperatorMatrix& op) {
    if (op.modes() != state.modes || op.total_dim() != state.size())
        throw dimension_mismatch_error("operator and state dimensions differ");
    if (!op.hermitian())
        throw invalid_argument_error("variance requires a hermitian operator");
    const Eigen::VectorXcd w = op.apply(state.amp);
    const double m2 = w.squaredNorm();
    const double m1 = state.amp.dot(w).real();
    return m2 - m1 * m1;
}

double mean_photon_number(const FockState& state) {
    double total = 0.0;
    if (state.modes == 1) {
        for (int n = 0; n < state.dim1; ++n) total += n * std::norm(state.amp[n]);
    } else {
        for (int n1 = 0; n1 < state.dim1; ++n1)
            for (int n2 = 0; n2 < state.dim2; ++n2)
                total += (n1 + n2) *
                         std::norm(state.amp[static_cast<Eigen::Index>(n1) * state.dim2 + n2]);
    }
    return total;
}

OutcomeDistribution number_distribution(const FockState& state) {
    OutcomeDistribution d;
    d.modes = state.modes;
    d.dim1 = state.dim1;
    d.dim2 = state.dim2;
    d.p = state.amp.cwiseAbs2();
    d.tail_mass = state.tail_bound;
    return d;
}

std::string to_csv(const FockState& state) {
    std::string out;
    char line[128];
    if (state.modes == 1) {
        out = "n,re,im\n";
        for (int n = 0; n < state.dim1; ++n) {
            std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", n, state.amp[n].real(),
                          state.amp[n].imag());
            out += line;
        }
    } else {
        out = "n1,n2,re,im\n";
        for (int n1 = 0; n1 < state.dim1; ++n1)
            for (int n2 = 0; n2 < state.dim2; ++n2) {
                const cd a = state.amp[static_cast<Eigen::Index>(n1) * state.dim2 + n2];
                std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g\n", n1, n2, a.real(),
                              a.imag());
                out += line;
            }
    }
    return out;
}

} // namespace qgrav
