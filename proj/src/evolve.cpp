#include "evolve.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qgrav {

namespace {

// One Lanczos step: exp(i dt H) v with Krylov dimension grown until the
// standard a-posteriori estimate beta_m |[exp(i dt T)]_{m,1}| drops under
// tol. Returns false when m_max is hit first.
bool lanczos_exp_step(const OperatorMatrix& h, double dt, const Eigen::VectorXcd& v,
                      double tol, int m_max, Eigen::VectorXcd& out, double& residual) {
    const double vnorm = v.norm();
    if (vnorm == 0.0) {
        out = v;
        residual = 0.0;
        return true;
    }

    std::vector<Eigen::VectorXcd> basis;
    basis.push_back(v / vnorm);
    std::vector<double> alpha, beta;

    Eigen::VectorXcd w;
    for (int j = 0; j < m_max; ++j) {
        w = h.apply(basis[j]);
        const double a = basis[j].dot(w).real();
        alpha.push_back(a);
        w -= a * basis[j];
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        // full reorthogonalization; the bases here are small
        for (const auto& b : basis) w -= b.dot(w) * b;
        const double bnorm = w.norm();

        const int m = j + 1;
        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub =
            j > 0 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1) : Eigen::VectorXd();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub);
        const Eigen::MatrixXd& q = es.eigenvectors();
        Eigen::VectorXcd phases(m);
        for (int k = 0; k < m; ++k)
            phases[k] = std::polar(1.0, dt * es.eigenvalues()[k]);
        // y = Q exp(i dt L) Q^T e_1
        const Eigen::VectorXcd y = q * phases.cwiseProduct(q.row(0).transpose().cast<cd>());

        residual = bnorm * std::abs(dt) * std::abs(y[m - 1]);
        if (residual <= tol || bnorm <= 1e-14) {
            out = Eigen::VectorXcd::Zero(v.size());
            for (int k = 0; k < m; ++k) out += y[k] * basis[k];
            out *= vnorm;
            return true;
        }
        beta.push_back(bnorm);
        basis.push_back(w / bnorm);
    }
    return false;
}

} // namespace

FockState evolve_kerr(const FockState& state, double chi_q, double chi_c) {
    if (state.modes != 1)
        throw dimension_mismatch_error("evolve_kerr acts on single-mode states");
    FockState out = state;
    for (int n = 0; n < state.dim1; ++n)
        out.amp[n] *= std::polar(1.0, chi_q * n * (n - 1.0) + chi_c * n);
    return out;
}

Eigen::VectorXcd apply_exp_hermitian(const OperatorMatrix& h, double t,
                                     const Eigen::VectorXcd& v, double tol) {
    if (!h.hermitian())
        throw invalid_argument_error("propagator requires a hermitian generator");
    if (v.size() != h.total_dim()) throw dimension_mismatch_error("vector length mismatch");

    if (h.storage() == OperatorMatrix::Storage::diagonal) {
        const Eigen::VectorXcd& d = h.diagonal_entries();
        Eigen::VectorXcd out = v;
        for (Eigen::Index k = 0; k < v.size(); ++k)
            out[k] *= std::polar(1.0, t * d[k].real());
        return out;
    }

    if (t == 0.0) return v;

    const double scale = h.norm_bound();
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * scale / 8.0)));
    const int m_max = 60;

    for (int attempt = 0; attempt < 6; ++attempt) {
        const double dt = t / steps;
        const double step_tol = tol / steps;
        Eigen::VectorXcd cur = v;
        Eigen::VectorXcd next;
        double residual = 0.0;
        bool ok = true;
        for (int s = 0; s < steps && ok; ++s) {
            ok = lanczos_exp_step(h, dt, cur, step_tol, m_max, next, residual);
            if (ok) cur.swap(next);
        }
        if (ok) return cur;
        if (attempt == 5)
            throw convergence_error("Krylov propagator failed to converge", residual);
        steps *= 4;
    }
    throw std::logic_error("unreachable");
}

FockState evolve(const FockState& state, const OperatorMatrix& generator, double angle,
                 double tol) {
    if (generator.modes() != state.modes || generator.total_dim() != state.size())
        throw dimension_mismatch_error("generator and state dimensions differ");
    FockState out = state;
    out.amp = apply_exp_hermitian(generator, angle, state.amp, tol);
    return out;
}

Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases[k] = std::polar(1.0, t * es.eigenvalues()[k]);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double beamsplitter_conjugation_residual(int dim, BsConvention convention) {
    if (dim < 1 || dim > 64)
        throw invalid_argument_error("dense conjugation check limited to dim <= 64");
    const Eigen::MatrixXcd mixer = convention == BsConvention::standard
                                       ? bs_generator(dim).dense_matrix()
                                       : bs_generator_alternative(dim).dense_matrix();
    const Eigen::MatrixXcd u = expm_i_hermitian(mixer, -M_PI / 4.0);
    const Eigen::MatrixXcd k = kerr_sum_op(dim).dense_matrix();
    const Eigen::MatrixXcd g = mz_composed_generator(dim, Convention::half).full.dense_matrix();
    const Eigen::MatrixXcd diff = u * k * u.adjoint() - g;
    // All three operators conserve n1+n2, so the identity holds sector by
    // sector. Sectors with n1+n2 > dim-1 are clipped by the truncation and
    // the mixer is not unitary on them; restrict the residual to the
    // complete ones.
    double worst = 0.0;
    for (int r1 = 0; r1 < dim; ++r1)
        for (int r2 = 0; r2 < dim; ++r2) {
            if (r1 + r2 > dim - 1) continue;
            const Eigen::Index row = static_cast<Eigen::Index>(r1) * dim + r2;
            for (int c1 = 0; c1 < dim; ++c1)
                for (int c2 = 0; c2 < dim; ++c2) {
                    if (c1 + c2 > dim - 1) continue;
                    const Eigen::Index col = static_cast<Eigen::Index>(c1) * dim + c2;
                    worst = std::max(worst, std::abs(diff(row, col)));
                }
        }
    return worst;
}

} // namespace qgrav
