#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <qgrav/qgrav.h>

using doctest::Approx;

namespace {

struct StateGuard {
    qg_state* p = nullptr;
    ~StateGuard() { qg_state_free(p); }
};
struct OpGuard {
    qg_operator* p = nullptr;
    ~OpGuard() { qg_operator_free(p); }
};
struct DistGuard {
    qg_distribution* p = nullptr;
    ~DistGuard() { qg_distribution_free(p); }
};

qg_geometry ce_geometry() {
    qg_geometry g{};
    g.arm_length_m = 1e4;
    g.arm_separation_m = 0.1;
    g.finesse = 450.0;
    g.wavelength_m = 2e-6;
    g.beam_width_m = 0.02;
    return g;
}

} // namespace

TEST_CASE("state lifecycle and accessors") {
    StateGuard s;
    REQUIRE(qg_coherent(2.0, 0.0, 0, 0.0, &s.p) == QG_OK);
    CHECK(qg_state_modes(s.p) == 1);
    CHECK(qg_state_dim1(s.p) > 10);
    CHECK(qg_state_tail_bound(s.p) <= 1e-12);
    CHECK(qg_state_norm_sq(s.p) == Approx(1.0).epsilon(1e-11));

    double mean = 0.0;
    REQUIRE(qg_state_mean_photons(s.p, &mean) == QG_OK);
    CHECK(mean == Approx(4.0).epsilon(1e-10));

    double re = 0.0, im = 0.0;
    REQUIRE(qg_state_amplitude(s.p, 0, 0, &re, &im) == QG_OK);
    CHECK(re == Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(im == 0.0);

    char* csv = nullptr;
    REQUIRE(qg_state_csv(s.p, &csv) == QG_OK);
    CHECK(std::strncmp(csv, "n,re,im\n", 8) == 0);
    qg_string_free(csv);
}

TEST_CASE("error reporting carries detail") {
    qg_state* s = nullptr;
    CHECK(qg_vacuum(0, &s) == QG_ERR_INVALID_ARGUMENT);
    CHECK(std::string(qg_last_error()).find("dim") != std::string::npos);
    CHECK(qg_coherent(2.0, 0.0, 4, 0.0, &s) == QG_ERR_TRUNCATION);
    CHECK(std::string(qg_status_name(QG_ERR_TRUNCATION)) == "truncation");
}

TEST_CASE("operators and expectation through the C surface") {
    StateGuard s;
    REQUIRE(qg_squeezed_vacuum(1.0, 0.0, 0, 0.0, &s.p) == QG_OK);
    OpGuard n;
    REQUIRE(qg_number_generator(qg_state_dim1(s.p), &n.p) == QG_OK);
    CHECK(qg_operator_is_hermitian(n.p) == 1);

    char buf[32];
    REQUIRE(qg_operator_structure(n.p, buf, sizeof(buf)) == QG_OK);
    CHECK(std::string(buf) == "diagonal");

    double re = 0.0, im = 0.0;
    REQUIRE(qg_expectation(s.p, n.p, &re, &im) == QG_OK);
    CHECK(re == Approx(std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-8));
    CHECK(std::abs(im) <= 1e-12);

    double defect = 1.0;
    REQUIRE(qg_operator_hermiticity_defect(n.p, &defect) == QG_OK);
    CHECK(defect == 0.0);

    OpGuard wrong;
    REQUIRE(qg_number_generator(qg_state_dim1(s.p) + 1, &wrong.p) == QG_OK);
    double var = 0.0;
    CHECK(qg_variance(s.p, wrong.p, &var) == QG_ERR_DIMENSION_MISMATCH);
}

TEST_CASE("qfim and bounds") {
    StateGuard s;
    REQUIRE(qg_squeezed_vacuum(1.0, 0.0, 0, 0.0, &s.p) == QG_OK);
    OpGuard gq, gc;
    REQUIRE(qg_kerr_generator(qg_state_dim1(s.p), &gq.p) == QG_OK);
    REQUIRE(qg_number_generator(qg_state_dim1(s.p), &gc.p) == QG_OK);

    double f[4] = {0, 0, 0, 0};
    REQUIRE(qg_qfim(s.p, gq.p, gc.p, 1.0, f) == QG_OK);

    double fa[4], fia[4];
    const double n = std::sinh(1.0) * std::sinh(1.0);
    REQUIRE(qg_analytic_sqvac_qfim(n, fa, fia) == QG_OK);
    for (int k = 0; k < 4; ++k) CHECK(f[k] == Approx(fa[k]).epsilon(1e-6));

    double bound = 0.0;
    int indist = 0;
    REQUIRE(qg_nuisance_qcrb(f, 1.0, &bound, &indist) == QG_OK);
    CHECK(indist == 0);
    CHECK(bound == Approx(1.0 / (std::sqrt(96.0) * n * (n + 1.0))).epsilon(1e-5));

    REQUIRE(qg_analytic_sqvac_qfim(0.0, fa, fia) == QG_ERR_SINGULAR);

    char* json = nullptr;
    REQUIRE(qg_metrology_report_json(f, 1.0, 1.0, "a+a+aa,a+a", "sqvac r=1", "half", &json) ==
            QG_OK);
    CHECK(std::string(json).find("\"qfim\"") != std::string::npos);
    qg_string_free(json);
}

TEST_CASE("interferometer pipeline") {
    StateGuard tmsv;
    REQUIRE(qg_tmsv(0.6, 0.0, 0, 0.0, &tmsv.p) == QG_OK);

    DistGuard p0, pf, ph;
    REQUIRE(qg_mz_distribution(tmsv.p, 0.0, 0.0, 0.0, &p0.p) == QG_OK);
    REQUIRE(qg_mz_distribution(tmsv.p, 1e-3, 0.0, 0.0, &pf.p) == QG_OK);
    REQUIRE(qg_mz_distribution(tmsv.p, 5e-4, 0.0, 0.0, &ph.p) == QG_OK);
    CHECK(qg_distribution_total(p0.p) == Approx(1.0).epsilon(1e-10));

    double fc = 0.0;
    long clamped = 0;
    REQUIRE(qg_hellinger_cfi_richardson(p0.p, pf.p, ph.p, 1e-3, &fc, &clamped) == QG_OK);
    double fa = 0.0;
    REQUIRE(qg_analytic_mz_cfi(tmsv.p, 0, &fa) == QG_OK);
    CHECK(fc == Approx(fa).epsilon(0.01));

    double fa_unhalved = 0.0;
    REQUIRE(qg_analytic_mz_cfi(tmsv.p, 1, &fa_unhalved) == QG_OK);
    CHECK(fa_unhalved == Approx(4.0 * fa).epsilon(1e-12));

    StateGuard padded;
    const uint32_t big = 2 * qg_state_dim1(tmsv.p) + 3;
    REQUIRE(qg_state_embed(tmsv.p, big, big, &padded.p) == QG_OK);
    OpGuard g;
    REQUIRE(qg_mz_generator(big, 0, 0, &g.p) == QG_OK);
    double var = 0.0;
    REQUIRE(qg_variance(padded.p, g.p, &var) == QG_OK);
    CHECK(4.0 * var >= fc);

    double residual = 0.0;
    REQUIRE(qg_bs_conjugation_residual(8, 0, &residual) == QG_OK);
    CHECK(residual <= 1e-8);
    REQUIRE(qg_bs_conjugation_residual(8, 1, &residual) == QG_OK);
    CHECK(residual > 1.0);
}

TEST_CASE("evolution and cumulants") {
    StateGuard s;
    REQUIRE(qg_squeezed_vacuum(1.0, 0.0, 0, 1e-14, &s.p) == QG_OK);
    StateGuard e;
    REQUIRE(qg_evolve_kerr(s.p, 1e-3, 0.0, &e.p) == QG_OK);
    double k[4];
    REQUIRE(qg_quadrature_cumulants(e.p, M_PI / 4.0, k) == QG_OK);
    CHECK(std::abs(k[3]) > 1e-9);

    double k0[4];
    REQUIRE(qg_quadrature_cumulants(s.p, M_PI / 4.0, k0) == QG_OK);
    CHECK(std::abs(k0[3]) <= 1e-9);
}

TEST_CASE("thg through the C surface") {
    StateGuard pump, vac, joint;
    REQUIRE(qg_coherent(2.0, 0.0, 0, 0.0, &pump.p) == QG_OK);
    REQUIRE(qg_vacuum(4, &vac.p) == QG_OK);
    REQUIRE(qg_product_state(pump.p, vac.p, &joint.p) == QG_OK);
    StateGuard padded;
    REQUIRE(qg_state_embed(joint.p, qg_state_dim1(joint.p) + 3, 4, &padded.p) == QG_OK);
    OpGuard g;
    REQUIRE(qg_thg_generator(qg_state_dim1(padded.p), 4, &g.p) == QG_OK);
    double var = 0.0;
    REQUIRE(qg_variance(padded.p, g.p, &var) == QG_OK);
    CHECK(4.0 * var == Approx(4.0 * 64.0).epsilon(1e-9)); // 4 N^3 at N = 4
}

TEST_CASE("coupling and planner through the C surface") {
    const qg_geometry g = ce_geometry();
    int warn = 1;
    REQUIRE(qg_geometry_validate(&g, &warn) == QG_OK);
    CHECK(warn == 0);

    double chi = 0.0;
    REQUIRE(qg_chi_q(&g, 0, &chi) == QG_OK);
    CHECK(chi == Approx(4.2743266275148591e-52).epsilon(1e-12));

    double mult = 1.0;
    REQUIRE(qg_mediator_coupling(0, &mult) == QG_OK);
    CHECK(mult == 0.0);
    CHECK(qg_mediator_coupling(1, &mult) == QG_ERR_INVALID_ARGUMENT);

    double coef = 1.0;
    REQUIRE(qg_configuration_coefficient(&g, 1, 0, &coef) == QG_OK);
    CHECK(coef == 0.0);
    CHECK(qg_configuration_coefficient(&g, 2, 0, &coef) == QG_ERR_UNSUPPORTED);

    double exact = 0.0, asym = 0.0, quad = 0.0, err = 0.0;
    REQUIRE(qg_geometric_factor_exact(1.0, 1.0, &exact) == QG_OK);
    CHECK(exact == Approx(0.93432004929289595).epsilon(1e-14));
    REQUIRE(qg_geometric_factor_asymptotic(1000.0, 1.0, &asym) == QG_OK);
    REQUIRE(qg_geometric_factor_quadrature(1000.0, 1.0, 4096, &quad, &err) == QG_OK);
    CHECK(quad == Approx(13203.804419084227).epsilon(1e-10));

    double tau = 0.0;
    REQUIRE(qg_interrogation_time(&g, &tau) == QG_OK);
    CHECK(tau == Approx(0.030020768567833684).epsilon(1e-14));

    double pb = 0.0;
    REQUIRE(qg_circulating_power_bound(&g, 31557600.0, &pb) == QG_OK);
    CHECK(pb == Approx(127765983.44959583).epsilon(1e-12));

    qg_feasibility f{};
    REQUIRE(qg_feasibility_check(&g, 31557600.0, -1.0, 1.28e8, 2, &f) == QG_OK);
    CHECK(f.verdict == 1); // marginal
    CHECK(f.margin == Approx(1.0036665606412675).epsilon(1e-10));
    CHECK(f.has_intensity == 1);

    // both powers set is invalid; no power set is invalid
    CHECK(qg_feasibility_check(&g, 31557600.0, 1e5, 1.28e8, 2, &f) ==
          QG_ERR_INVALID_ARGUMENT);
    CHECK(qg_feasibility_check(&g, 31557600.0, -1.0, -1.0, 2, &f) == QG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("power-law fit") {
    const double x[5] = {2.0, 4.0, 8.0, 16.0, 32.0};
    double y[5];
    for (int i = 0; i < 5; ++i) y[i] = 3.0 * std::pow(x[i], -1.5);
    double expo = 0.0, inter = 0.0, r2 = 0.0;
    REQUIRE(qg_fit_power_law(x, y, 5, &expo, &inter, &r2) == QG_OK);
    CHECK(expo == Approx(-1.5).epsilon(1e-12));
    CHECK(r2 == Approx(1.0).epsilon(1e-12));
    CHECK(qg_fit_power_law(x, y, 3, &expo, &inter, &r2) == QG_ERR_INVALID_ARGUMENT);
}
