#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "evolve.hpp"
#include "fock.hpp"
#include "metrology.hpp"
#include "operators.hpp"

using namespace qgrav;
using doctest::Approx;

namespace {

FockState pair_fock(int n, int dim) {
    FockState s;
    s.modes = 2;
    s.dim1 = dim;
    s.dim2 = dim;
    s.amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * dim);
    s.amp[static_cast<Eigen::Index>(n) * dim + n] = 1.0;
    return s;
}

// F_C of a TMSV in closed form, half convention: 48 mu^2 (mu+1)^2
double tmsv_fc(double r) {
    const double mu = std::sinh(r) * std::sinh(r);
    return 48.0 * mu * mu * (mu + 1.0) * (mu + 1.0);
}

double delta_mass(const OutcomeDistribution& d, int delta) {
    double acc = 0.0;
    for (int n1 = 0; n1 < d.dim1; ++n1)
        for (int n2 = 0; n2 < d.dim2; ++n2)
            if (std::abs(n1 - n2) == delta) acc += d.at(n1, n2);
    return acc;
}

double max_odd_delta(const OutcomeDistribution& d) {
    double acc = 0.0;
    for (int n1 = 0; n1 < d.dim1; ++n1)
        for (int n2 = 0; n2 < d.dim2; ++n2)
            if ((n1 - n2) % 2 != 0) acc = std::max(acc, d.at(n1, n2));
    return acc;
}

} // namespace

TEST_CASE("numeric QFIM reproduces the squeezed-vacuum closed form") {
    for (double r : {0.25, 0.5, 0.75, 1.0, 1.25}) {
        const FockState s = make_squeezed_vacuum(r, 0.0);
        REQUIRE(s.dim1 <= 200);
        const Eigen::Matrix2d f = qfim(s, single_mode_generators(s.dim1));
        const double n = std::sinh(r) * std::sinh(r);
        const SqvacQfim a = analytic_sqvac_qfim(n);
        CHECK(f(0, 0) == Approx(a.f(0, 0)).epsilon(1e-6));
        CHECK(f(0, 1) == Approx(a.f(0, 1)).epsilon(1e-6));
        CHECK(f(1, 1) == Approx(a.f(1, 1)).epsilon(1e-6));
        CHECK(f(1, 0) == f(0, 1));

        // inverse of the numeric matrix against the closed form
        const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
        const double inv_qq = f(1, 1) / det;
        CHECK(inv_qq == Approx(a.f_inverse(0, 0)).epsilon(1e-6));

        // positive semidefinite
        CHECK(det > 0.0);
        CHECK(f(0, 0) > 0.0);
    }
}

TEST_CASE("analytic squeezed-vacuum QFIM at N = 1") {
    const SqvacQfim a = analytic_sqvac_qfim(1.0);
    CHECK(a.f(0, 0) == 1168.0);
    CHECK(a.f(0, 1) == 112.0);
    CHECK(a.f(1, 0) == 112.0);
    CHECK(a.f(1, 1) == 16.0);
    CHECK(a.f(0, 0) * a.f(1, 1) - a.f(0, 1) * a.f(1, 0) == 6144.0); // 768 N^3 (N+1)^3
    CHECK(a.f_inverse(0, 0) == Approx(1.0 / 384.0).epsilon(1e-15));
    const Eigen::Matrix2d id = a.f * a.f_inverse;
    CHECK(id(0, 0) == Approx(1.0).epsilon(1e-10));
    CHECK(id(1, 1) == Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(id(0, 1)) <= 1e-10);
    CHECK_THROWS_AS(analytic_sqvac_qfim(0.0), singular_error);
}

TEST_CASE("nuisance bound") {
    SUBCASE("analytic squeezed vacuum, N = 1, M = 1") {
        const SqvacQfim a = analytic_sqvac_qfim(1.0);
        const NuisanceBound b = nuisance_qcrb(a.f, 1.0);
        REQUIRE_FALSE(b.indistinguishable);
        CHECK(b.value == Approx(0.051031036307982877).epsilon(1e-12));
    }
    SUBCASE("square-root shot scaling") {
        const SqvacQfim a = analytic_sqvac_qfim(2.0);
        const double b1 = nuisance_qcrb(a.f, 1.0).value;
        const double b100 = nuisance_qcrb(a.f, 100.0).value;
        CHECK(b100 == Approx(b1 / 10.0).epsilon(1e-14));
    }
    SUBCASE("vacuum QFIM is indistinguishable") {
        const FockState v = make_vacuum(8);
        const Eigen::Matrix2d f = qfim(v, single_mode_generators(8));
        CHECK(f.cwiseAbs().maxCoeff() == 0.0);
        CHECK(nuisance_qcrb(f, 1.0).indistinguishable);
    }
    SUBCASE("coherent-state exponents with and without the nuisance") {
        std::vector<std::pair<double, double>> with_n, without_n;
        for (double n : {4.0, 8.0, 16.0, 32.0, 64.0}) {
            const FockState s = make_coherent(cd(std::sqrt(n), 0.0));
            const Eigen::Matrix2d f = qfim(s, single_mode_generators(s.dim1));
            with_n.emplace_back(n, nuisance_qcrb(f, 1.0).value);
            without_n.emplace_back(n, single_parameter_bound(f, 1.0).value);
        }
        const ScalingFit fit_with = scaling_exponent(with_n);
        const ScalingFit fit_without = scaling_exponent(without_n);
        CHECK(fit_with.exponent == Approx(-1.0).epsilon(1e-4));
        CHECK(fit_without.exponent == Approx(-1.4808754739870016).epsilon(1e-4));
        CHECK(std::abs(fit_without.exponent + 1.5) <= 0.1);
    }
}

TEST_CASE("interferometer outcome distribution") {
    const FockState tmsv = make_tmsv(0.8, 0.0);

    SUBCASE("zero angles reproduce the input weights exactly") {
        const OutcomeDistribution d = mz_outcome_distribution(tmsv, 0.0, 0.0, 0.0);
        for (int n = 0; n < tmsv.dim1; ++n)
            CHECK(d.at(n, n) == std::norm(tmsv.amplitude(n, n)));
        CHECK(delta_mass(d, 1) == 0.0);
        CHECK(delta_mass(d, 2) == 0.0);
    }
    SUBCASE("quartic channel leaks quadratically") {
        const OutcomeDistribution d1 = mz_outcome_distribution(tmsv, 1e-4, 0.0, 0.0);
        const OutcomeDistribution d2 = mz_outcome_distribution(tmsv, 2e-4, 0.0, 0.0);
        const double p1 = delta_mass(d1, 4);
        const double p2 = delta_mass(d2, 4);
        const double slope = std::log(p2 / p1) / std::log(2.0);
        CHECK(slope == Approx(2.0).epsilon(0.005));
    }
    SUBCASE("selection rules of the quartic channel") {
        const OutcomeDistribution d = mz_outcome_distribution(tmsv, 1e-3, 0.0, 0.0);
        CHECK(max_odd_delta(d) <= 1e-20);
        CHECK(delta_mass(d, 2) <= 1e-20);
        CHECK(delta_mass(d, 4) > 1e-8);
    }
    SUBCASE("symmetric classical phase changes nothing, bit for bit") {
        const OutcomeDistribution base = mz_outcome_distribution(tmsv, 0.0, 0.0, 0.0);
        const OutcomeDistribution d = mz_outcome_distribution(tmsv, 0.0, 0.37, 0.0);
        REQUIRE(d.p.size() == base.p.size());
        for (Eigen::Index k = 0; k < d.p.size(); ++k) CHECK(d.p[k] == base.p[k]);
    }
    SUBCASE("asymmetric classical phase leaks dominantly to |n1-n2| = 2") {
        const OutcomeDistribution d = mz_outcome_distribution(tmsv, 0.0, 0.0, 1e-4);
        const double p2 = delta_mass(d, 2);
        CHECK(p2 > 0.0);
        CHECK(p2 > 10.0 * delta_mass(d, 4));
        CHECK(p2 > delta_mass(d, 1));
    }
    SUBCASE("probability mass accounting") {
        const OutcomeDistribution d = mz_outcome_distribution(tmsv, 1e-3, 0.1, 1e-4);
        CHECK(d.total() == Approx(1.0 - d.tail_mass).epsilon(1e-10));
    }
    SUBCASE("agrees with the composed-generator evolution") {
        // U_mz = exp(i chi G) is an operator identity; drive the padded
        // state through the generic propagator and compare tables.
        const FockState small = make_tmsv(0.5, 0.0);
        const double chi = 1e-3;
        const OutcomeDistribution via_mz = mz_outcome_distribution(small, chi, 0.0, 0.0);
        const int big = 2 * small.dim1 - 1;
        const FockState padded = embed_two_mode(small, big, big);
        const FockState evolved = evolve(padded, mz_composed_generator(big).full, chi);
        const OutcomeDistribution via_g = number_distribution(evolved);
        REQUIRE(via_g.dim1 == via_mz.dim1);
        double worst = 0.0;
        for (Eigen::Index k = 0; k < via_g.p.size(); ++k)
            worst = std::max(worst, std::abs(via_g.p[k] - via_mz.p[k]));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("hellinger classical Fisher information") {
    const FockState tmsv = make_tmsv(0.6, 0.0);
    const OutcomeDistribution p0 = mz_outcome_distribution(tmsv, 0.0, 0.0, 0.0);

    SUBCASE("identical tables give zero") {
        const CfiEstimate e = hellinger_cfi(p0, p0, 1e-3);
        CHECK(e.value == Approx(0.0));
        CHECK(e.clamped == 0);
    }
    SUBCASE("extrapolated estimate matches 4<G_-^2> within 1%") {
        const double chi = 1e-3;
        const OutcomeDistribution pf = mz_outcome_distribution(tmsv, chi, 0.0, 0.0);
        const OutcomeDistribution ph = mz_outcome_distribution(tmsv, chi / 2.0, 0.0, 0.0);
        const CfiEstimate e = hellinger_cfi_richardson(p0, pf, ph, chi);
        const double analytic = analytic_mz_cfi(tmsv);
        // the truncated sum sits a tail-weighted hair under the closed form
        CHECK(analytic == Approx(tmsv_fc(0.6)).epsilon(1e-7));
        CHECK(e.value == Approx(analytic).epsilon(0.01));
    }
    SUBCASE("classical information never beats the quantum bound") {
        for (double r : {0.4, 0.6, 0.8}) {
            const FockState t = make_tmsv(r, 0.0);
            const OutcomeDistribution q0 = mz_outcome_distribution(t, 0.0, 0.0, 0.0);
            const OutcomeDistribution qf = mz_outcome_distribution(t, 1e-3, 0.0, 0.0);
            const OutcomeDistribution qh = mz_outcome_distribution(t, 5e-4, 0.0, 0.0);
            const double fc = hellinger_cfi_richardson(q0, qf, qh, 1e-3).value;
            const int big = 2 * t.dim1 + 3;
            const FockState padded = embed_two_mode(t, big, big);
            const double fq = 4.0 * variance(padded, mz_composed_generator(big).full);
            CHECK(fc <= fq);
            CHECK(fc > 0.0);
        }
    }
    SUBCASE("mismatched tables are rejected") {
        const FockState other = make_tmsv(0.4, 0.0);
        const OutcomeDistribution q0 = mz_outcome_distribution(other, 0.0, 0.0, 0.0);
        CHECK_THROWS_AS(hellinger_cfi(p0, q0, 1e-3), dimension_mismatch_error);
        CHECK_THROWS_AS(hellinger_cfi(p0, p0, 0.0), invalid_argument_error);
    }
    SUBCASE("negative probabilities are clamped and counted") {
        OutcomeDistribution dirty = p0;
        dirty.p[0] = -1e-14;
        const CfiEstimate e = hellinger_cfi(p0, dirty, 1e-3);
        CHECK(e.clamped == 1);
        CHECK(e.value >= 0.0);
    }
}

TEST_CASE("analytic interferometer CFI") {
    SUBCASE("vacuum gives zero") {
        CHECK(analytic_mz_cfi(make_tmsv(0.0, 0.0)) == 0.0);
    }
    SUBCASE("|1,1> gives zero") {
        CHECK(analytic_mz_cfi(pair_fock(1, 4)) == 0.0);
    }
    SUBCASE("|2,2> gives 48 under the half convention") {
        CHECK(analytic_mz_cfi(pair_fock(2, 5)) == Approx(48.0).epsilon(1e-14));
        CHECK(analytic_mz_cfi(pair_fock(2, 5), Convention::unhalved) ==
              Approx(192.0).epsilon(1e-14));
    }
    SUBCASE("TMSV closed form 48 mu^2 (mu+1)^2") {
        for (double r : {0.4, 0.8}) {
            CHECK(analytic_mz_cfi(make_tmsv(r, 0.0)) == Approx(tmsv_fc(r)).epsilon(1e-7));
        }
    }
    SUBCASE("non-diagonal input is a precondition error") {
        const FockState c = make_coherent(cd(1.0, 0.0));
        const FockState p = make_product(c, c);
        CHECK_THROWS_AS(analytic_mz_cfi(p), precondition_error);
    }
}

TEST_CASE("quadrature cumulants") {
    SUBCASE("coherent states are gaussian") {
        const FockState s = make_coherent(cd(2.0, 0.0), 0, 1e-14);
        const std::array<double, 4> k = quadrature_cumulants(s, 0.0);
        CHECK(k[0] == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));
        CHECK(k[1] == Approx(0.5).epsilon(1e-9));
        CHECK(std::abs(k[2]) <= 1e-9);
        CHECK(std::abs(k[3]) <= 1e-9);
    }
    SUBCASE("squeezed vacuum is gaussian with reciprocal quadrature pair") {
        const FockState s = make_squeezed_vacuum(1.0, 0.0, 0, 1e-14);
        const std::array<double, 4> k0 = quadrature_cumulants(s, 0.0);
        const std::array<double, 4> k90 = quadrature_cumulants(s, M_PI / 2.0);
        CHECK(k0[0] == Approx(0.0));
        CHECK(std::abs(k0[3]) <= 1e-9);
        CHECK(std::abs(k90[3]) <= 1e-9);
        // minimum-uncertainty pair: product of the two variances is 1/4
        CHECK(k0[1] * k90[1] == Approx(0.25).epsilon(1e-8));
    }
    SUBCASE("quadratic evolution keeps gaussianity") {
        const FockState s = make_coherent(cd(1.5, 0.0), 0, 1e-14);
        const FockState e = evolve_kerr(s, 0.0, 0.8);
        for (double theta : {0.0, 0.7}) {
            const std::array<double, 4> k = quadrature_cumulants(e, theta);
            CHECK(std::abs(k[2]) <= 1e-9);
            CHECK(std::abs(k[3]) <= 1e-9);
        }
    }
    SUBCASE("quartic evolution generates a fourth cumulant linear in chi") {
        const FockState s = make_squeezed_vacuum(1.0, 0.0, 0, 1e-14);
        const double k_small =
            std::abs(quadrature_cumulants(evolve_kerr(s, 1e-4, 0.0), M_PI / 4.0)[3]);
        const double k_large =
            std::abs(quadrature_cumulants(evolve_kerr(s, 1e-3, 0.0), M_PI / 4.0)[3]);
        CHECK(k_small > 1e-9); // clearly above the gaussian-null noise floor
        const double slope = std::log(k_large / k_small) / std::log(10.0);
        CHECK(slope == Approx(1.0).epsilon(0.05));
    }
    SUBCASE("order cap") {
        const FockState s = make_coherent(cd(1.0, 0.0));
        CHECK_THROWS_AS(quadrature_cumulants(s, 0.0, 5), invalid_argument_error);
    }
}

TEST_CASE("scaling exponent fit") {
    SUBCASE("exact power law") {
        std::vector<std::pair<double, double>> pts;
        for (double n : {2.0, 4.0, 8.0, 16.0}) pts.emplace_back(n, n * n);
        const ScalingFit fit = scaling_exponent(pts);
        CHECK(fit.exponent == Approx(2.0).epsilon(1e-12));
        CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("heisenberg law over a wide window") {
        std::vector<std::pair<double, double>> pts;
        for (double n : {32.0, 64.0, 128.0, 256.0, 512.0})
            pts.emplace_back(n, 1.0 / (std::sqrt(96.0) * n * (n + 1.0)));
        const ScalingFit fit = scaling_exponent(pts);
        CHECK(fit.exponent == Approx(-1.990009852866262).epsilon(1e-9));
        CHECK(std::abs(fit.exponent + 2.0) <= 0.05);
    }
    SUBCASE("preconditions") {
        std::vector<std::pair<double, double>> few = {{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}};
        CHECK_THROWS_AS(scaling_exponent(few), invalid_argument_error);
        std::vector<std::pair<double, double>> neg = {
            {1.0, 1.0}, {2.0, -2.0}, {3.0, 3.0}, {4.0, 4.0}};
        CHECK_THROWS_AS(scaling_exponent(neg), invalid_argument_error);
    }
}

TEST_CASE("metrology report serialization") {
    const SqvacQfim a = analytic_sqvac_qfim(1.0);
    const MetrologyReport r =
        make_metrology_report(a.f, 1.0, 1.0, "a+a+aa,a+a", "squeezed-vacuum r=0.881", "half");
    const std::string json = r.to_json();
    CHECK(json.find("\"qfim\"") != std::string::npos);
    CHECK(json.find("1168") != std::string::npos);
    CHECK(json.find("\"qcrb_nuisance\": 0.051031036307982877") != std::string::npos);
    // serialization is deterministic
    CHECK(json == r.to_json());

    const FockState v = make_vacuum(4);
    const Eigen::Matrix2d f = qfim(v, single_mode_generators(4));
    const MetrologyReport rv = make_metrology_report(f, 1.0, 1.0, "g", "vacuum", "half");
    CHECK(rv.to_json().find("\"qcrb_nuisance\": \"indistinguishable\"") != std::string::npos);
}

TEST_CASE("qfim input contracts") {
    const FockState s = make_coherent(cd(1.0, 0.0), 25);
    FockState broken = s;
    broken.amp *= 0.5;
    CHECK_THROWS_AS(qfim(broken, single_mode_generators(25)), precondition_error);
    CHECK_THROWS_AS(qfim(s, single_mode_generators(26)), dimension_mismatch_error);
}

TEST_CASE("qfim is symmetric positive semidefinite on every probe") {
    std::vector<FockState> probes;
    probes.push_back(make_vacuum(8));
    for (double a : {0.5, 1.0, 2.0, 3.0}) probes.push_back(make_coherent(cd(a, 0.3)));
    for (double r : {0.2, 0.7, 1.1}) probes.push_back(make_squeezed_vacuum(r, 0.4));
    for (const FockState& s : probes) {
        const Eigen::Matrix2d f = qfim(s, single_mode_generators(s.dim1));
        CHECK(f(0, 1) == f(1, 0));
        const double mean = 0.5 * (f(0, 0) + f(1, 1));
        const double det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
        const double lo = mean - std::sqrt(std::max(0.0, mean * mean - det));
        CHECK(lo >= -1e-10);
    }
}

TEST_CASE("interrogation time enters the QFIM as 4 tau^2") {
    const FockState s = make_squeezed_vacuum(0.5, 0.0);
    const GeneratorSet g = single_mode_generators(s.dim1);
    const Eigen::Matrix2d f1 = qfim(s, g, 1.0);
    const Eigen::Matrix2d f2 = qfim(s, g, 2.0);
    CHECK(f2(0, 0) == Approx(4.0 * f1(0, 0)).epsilon(1e-14));
    CHECK(f2(0, 1) == Approx(4.0 * f1(0, 1)).epsilon(1e-14));
    CHECK(f2(1, 1) == Approx(4.0 * f1(1, 1)).epsilon(1e-14));
}
