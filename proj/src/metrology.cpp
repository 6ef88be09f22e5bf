#include "metrology.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "json_writer.hpp"

namespace qgrav {

namespace {

constexpr double singularity_ratio = 1e-12;

struct Eig2 {
    double lo;
    double hi;
};

Eig2 sym2x2_eigenvalues(const Eigen::Matrix2d& f) {
    const double mean = 0.5 * (f(0, 0) + f(1, 1));
    const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
    const double disc = std::sqrt(std::max(0.0, mean * mean - det));
    return {mean - disc, mean + disc};
}

bool effectively_singular(const Eigen::Matrix2d& f) {
    const Eig2 e = sym2x2_eigenvalues(f);
    return e.hi <= 0.0 || e.lo <= singularity_ratio * e.hi;
}

} // namespace

Eigen::Matrix2d qfim(const FockState& state, const GeneratorSet& generators, double tau) {
    const double nsq = state.norm_sq();
    if (std::abs(nsq - 1.0) > 1e-6)
        throw precondition_error("qfim requires a normalized state (norm deficit > 1e-6)");
    if (!generators.g_quantum.hermitian() || !generators.g_classical.hermitian())
        throw invalid_argument_error("qfim generators must be hermitian");
    if (generators.g_quantum.total_dim() != state.size() ||
        generators.g_classical.total_dim() != state.size())
        throw dimension_mismatch_error("generator and state dimensions differ");

    const Eigen::VectorXcd gq = generators.g_quantum.apply(state.amp);
    const Eigen::VectorXcd gc = generators.g_classical.apply(state.amp);
    const double eq = state.amp.dot(gq).real();
    const double ec = state.amp.dot(gc).real();
    // Re<Gq psi|Gc psi> = <(Gq Gc + Gc Gq)/2> for hermitian generators
    const double mqq = gq.squaredNorm();
    const double mcc = gc.squaredNorm();
    const double mqc = gq.dot(gc).real();

    const double s = 4.0 * tau * tau;
    Eigen::Matrix2d f;
    f(0, 0) = s * (mqq - eq * eq);
    f(0, 1) = s * (mqc - eq * ec);
    f(1, 0) = f(0, 1);
    f(1, 1) = s * (mcc - ec * ec);
    return f;
}

SqvacQfim analytic_sqvac_qfim(double n) {
    if (n <= 0.0) throw singular_error("squeezed-vacuum QFIM is singular at N = 0");
    SqvacQfim r;
    r.f(0, 0) = 8.0 * n * (48.0 * n * n * n + 72.0 * n * n + 25.0 * n + 1.0);
    r.f(0, 1) = 8.0 * n * (6.0 * n * n + 7.0 * n + 1.0);
    r.f(1, 0) = r.f(0, 1);
    r.f(1, 1) = 8.0 * n * (n + 1.0);
    const double pre = 1.0 / (96.0 * n * n * (n + 1.0) * (n + 1.0));
    r.f_inverse(0, 0) = pre;
    r.f_inverse(0, 1) = pre * (-6.0 * n - 1.0);
    r.f_inverse(1, 0) = r.f_inverse(0, 1);
    r.f_inverse(1, 1) = pre * (24.0 * n * (2.0 * n + 1.0) + 1.0);
    return r;
}

NuisanceBound nuisance_qcrb(const Eigen::Matrix2d& f, double shots) {
    if (shots <= 0.0) throw invalid_argument_error("shot count must be > 0");
    NuisanceBound b;
    if (effectively_singular(f)) {
        b.indistinguishable = true;
        return b;
    }
    const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
    const double inv_qq = f(1, 1) / det;
    b.value = std::sqrt(inv_qq / shots);
    return b;
}

NuisanceBound single_parameter_bound(const Eigen::Matrix2d& f, double shots) {
    if (shots <= 0.0) throw invalid_argument_error("shot count must be > 0");
    NuisanceBound b;
    if (f(0, 0) <= 0.0) {
        b.indistinguishable = true;
        return b;
    }
    b.value = 1.0 / std::sqrt(shots * f(0, 0));
    return b;
}

OutcomeDistribution mz_outcome_distribution(const FockState& two_mode, double chi_q,
                                            double chi_c_sym, double chi_c_asym) {
    if (two_mode.modes != 2)
        throw dimension_mismatch_error("interferometer input must be a two-mode state");
    if (two_mode.dim1 != two_mode.dim2)
        throw dimension_mismatch_error("interferometer input needs equal per-mode dims");
    (void)chi_c_sym; // global phase on each total-photon sector

    const int d = two_mode.dim1;
    const int big = 2 * d - 1; // holds every (k, n-k) with n <= 2(d-1)
    const int n_max = 2 * (d - 1);

    OutcomeDistribution out;
    out.modes = 2;
    out.dim1 = big;
    out.dim2 = big;
    out.p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(big) * big);
    out.tail_mass = two_mode.tail_bound;

    const bool uniform_phase = (chi_q == 0.0 && chi_c_asym == 0.0);

    for (int n = 0; n <= n_max; ++n) {
        // input block: k runs over mode-1 occupation within total n
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 1);
        bool empty = true;
        for (int k = std::max(0, n - (d - 1)); k <= std::min(n, d - 1); ++k) {
            const cd a = two_mode.amp[static_cast<Eigen::Index>(k) * d + (n - k)];
            b[k] = a;
            if (a != cd(0.0, 0.0)) empty = false;
        }
        if (empty) continue;

        if (uniform_phase) {
            // mixer pair cancels exactly; sector picks up only a global phase
            for (int k = 0; k <= n; ++k)
                out.p[static_cast<Eigen::Index>(k) * big + (n - k)] += std::norm(b[k]);
            continue;
        }

        // mixer block: tridiagonal <k+1|a+b|k> = sqrt((k+1)(n-k))
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(n + 1);
        Eigen::VectorXd sub(n);
        for (int k = 0; k < n; ++k) sub[k] = std::sqrt(double(k + 1) * (n - k));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub);
        const Eigen::MatrixXd& q = es.eigenvectors();
        const Eigen::VectorXd& lam = es.eigenvalues();

        // first mixer exp(+i pi/4 G_bs)
        Eigen::VectorXcd u = q.transpose() * b;
        for (int k = 0; k <= n; ++k) u[k] *= std::polar(1.0, M_PI / 4.0 * lam[k]);
        Eigen::VectorXcd v = q * u;

        // mid-sequence phases (chi_c_sym factored out)
        for (int k = 0; k <= n; ++k) {
            const double kerr = double(k) * (k - 1.0) + double(n - k) * (n - k - 1.0);
            v[k] *= std::polar(1.0, chi_q * kerr + chi_c_asym * (2.0 * k - n));
        }

        // final mixer exp(-i pi/4 G_bs)
        u = q.transpose() * v;
        for (int k = 0; k <= n; ++k) u[k] *= std::polar(1.0, -M_PI / 4.0 * lam[k]);
        v = q * u;

        for (int k = 0; k <= n; ++k)
            out.p[static_cast<Eigen::Index>(k) * big + (n - k)] += std::norm(v[k]);
    }
    return out;
}

CfiEstimate hellinger_cfi(const OutcomeDistribution& p0, const OutcomeDistribution& p_chi,
                          double chi) {
    if (chi <= 0.0) throw invalid_argument_error("hellinger_cfi needs chi > 0");
    if (p0.modes != p_chi.modes || p0.dim1 != p_chi.dim1 || p0.dim2 != p_chi.dim2)
        throw dimension_mismatch_error("outcome tables are indexed differently");
    CfiEstimate e;
    double overlap = 0.0;
    for (Eigen::Index k = 0; k < p0.p.size(); ++k) {
        double a = p0.p[k];
        double b = p_chi.p[k];
        if (a < 0.0) {
            a = 0.0;
            ++e.clamped;
        }
        if (b < 0.0) {
            b = 0.0;
            ++e.clamped;
        }
        overlap += std::sqrt(a * b);
    }
    const double d_h2 = 1.0 - overlap;
    e.value = 8.0 / (chi * chi) * d_h2;
    return e;
}

CfiEstimate hellinger_cfi_richardson(const OutcomeDistribution& p0,
                                     const OutcomeDistribution& p_chi_full,
                                     const OutcomeDistribution& p_chi_half, double chi) {
    const CfiEstimate full = hellinger_cfi(p0, p_chi_full, chi);
    const CfiEstimate half = hellinger_cfi(p0, p_chi_half, chi / 2.0);
    CfiEstimate e;
    e.value = (4.0 * half.value - full.value) / 3.0;
    e.clamped = full.clamped + half.clamped;
    return e;
}

double analytic_mz_cfi(const FockState& two_mode, Convention convention) {
    if (two_mode.modes != 2)
        throw dimension_mismatch_error("analytic_mz_cfi needs a two-mode state");
    if (two_mode.dim1 != two_mode.dim2)
        throw dimension_mismatch_error("analytic_mz_cfi needs equal per-mode dims");
    const int d = two_mode.dim1;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            if (n1 != n2 && two_mode.amp[static_cast<Eigen::Index>(n1) * d + n2] != cd(0.0, 0.0))
                throw precondition_error("analytic_mz_cfi input must be supported on |n,n>");

    const double c = convention == Convention::half ? 0.5 : 1.0;
    // <n,n|G_-^2|n,n> = 2 c^2 n(n-1)(n+1)(n+2)
    double acc = 0.0;
    for (int n = 0; n < d; ++n) {
        const double p = std::norm(two_mode.amp[static_cast<Eigen::Index>(n) * d + n]);
        acc += p * 2.0 * c * c * double(n) * (n - 1.0) * (n + 1.0) * (n + 2.0);
    }
    return 4.0 * acc;
}

std::array<double, 4> quadrature_cumulants(const FockState& state, double theta,
                                           int max_order) {
    if (state.modes != 1)
        throw dimension_mismatch_error("quadrature cumulants act on single-mode states");
    if (max_order < 1 || max_order > 4)
        throw invalid_argument_error("cumulants supported up to order 4");

    // zero-pad so X^2 acts exactly on the truncated state
    const int padded = state.dim1 + max_order;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(padded);
    v.head(state.dim1) = state.amp;
    const OperatorMatrix x = quadrature_op(padded, theta);

    const double nsq = v.squaredNorm();
    const Eigen::VectorXcd u1 = x.apply(v);
    const Eigen::VectorXcd u2 = x.apply(u1);
    const double m1 = v.dot(u1).real() / nsq;
    const double m2 = u1.squaredNorm() / nsq;
    const double m3 = u1.dot(u2).real() / nsq;
    const double m4 = u2.squaredNorm() / nsq;

    std::array<double, 4> k{};
    k[0] = m1;
    k[1] = m2 - m1 * m1;
    k[2] = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
    k[3] = m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1 * m1 * m1 * m1;
    for (int i = max_order; i < 4; ++i) k[i] = 0.0;
    return k;
}

ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& values) {
    if (values.size() < 4)
        throw invalid_argument_error("scaling fit needs at least 4 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, y] : values) {
        if (n <= 0.0 || y <= 0.0)
            throw invalid_argument_error("scaling fit needs positive N and y");
        sx += std::log(n);
        sy += std::log(y);
    }
    const double mx = sx / values.size();
    const double my = sy / values.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, y] : values) {
        const double dx = std::log(n) - mx;
        const double dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw invalid_argument_error("scaling fit needs distinct N values");

    ScalingFit fit;
    fit.points = values.size();
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (const auto& [n, y] : values) {
            const double resid = std::log(y) - (fit.intercept + fit.exponent * std::log(n));
            ss_res += resid * resid;
        }
        fit.r_squared = std::max(0.0, 1.0 - ss_res / syy);
    }
    return fit;
}

MetrologyReport make_metrology_report(const Eigen::Matrix2d& f, double tau, double shots,
                                      const std::string& generator_labels,
                                      const std::string& state_descriptor,
                                      const std::string& convention_flags) {
    MetrologyReport r;
    r.f = f;
    r.tau = tau;
    r.shots = shots;
    r.generator_labels = generator_labels;
    r.state_descriptor = state_descriptor;
    r.convention_flags = convention_flags;
    r.qcrb_nuisance = nuisance_qcrb(f, shots);
    if (!r.qcrb_nuisance.indistinguishable) {
        const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
        Eigen::Matrix2d inv;
        inv(0, 0) = f(1, 1) / det;
        inv(1, 1) = f(0, 0) / det;
        inv(0, 1) = -f(0, 1) / det;
        inv(1, 0) = -f(1, 0) / det;
        r.f_inverse = inv;
    }
    return r;
}

std::string MetrologyReport::to_json() const {
    Json j = Json::object();
    Json fm = Json::array();
    fm.push(f(0, 0)).push(f(0, 1)).push(f(1, 0)).push(f(1, 1));
    j.set("qfim", std::move(fm));
    if (f_inverse) {
        Json im = Json::array();
        im.push((*f_inverse)(0, 0)).push((*f_inverse)(0, 1));
        im.push((*f_inverse)(1, 0)).push((*f_inverse)(1, 1));
        j.set("qfim_inverse", std::move(im));
    } else {
        j.set("qfim_inverse", nullptr);
    }
    if (qcrb_nuisance.indistinguishable)
        j.set("qcrb_nuisance", "indistinguishable");
    else
        j.set("qcrb_nuisance", qcrb_nuisance.value);
    j.set("tau", tau);
    j.set("shots", shots);
    j.set("generator_labels", generator_labels);
    j.set("state_descriptor", state_descriptor);
    j.set("convention_flags", convention_flags);
    return j.dump();
}

} // namespace qgrav
