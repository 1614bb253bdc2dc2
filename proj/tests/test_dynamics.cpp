#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "gravcorr/dynamics.hpp"

using namespace gravcorr;

namespace {
bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
SystemParams test_system() { return default_system(); }
} // namespace

TEST_CASE("mechanical susceptibility limits") {
    MechanicalParams mech = test_system().cavity_a.mech;
    const double wm = mech.omega_m;
    const double gm = mech.gamma_m();

    SUBCASE("static limit") {
        const cplx c = susceptibility(0.0, mech);
        CHECK(c.imag() == 0.0);
        CHECK(rel_close(c.real(), 1.0 / wm, 1e-14));
    }
    SUBCASE("on resonance: i/gamma_m") {
        const cplx c = susceptibility(wm, mech);
        CHECK(std::abs(c - cplx(0.0, 1.0 / gm)) < 1e-12 / gm);
        CHECK(rel_close(std::abs(c), mech.q_m / wm, 1e-12));
    }
    SUBCASE("conjugate symmetry") {
        for (double w : {0.3, 1.7, 6.28, 200.0}) {
            const cplx plus = susceptibility(w, mech);
            const cplx minus = susceptibility(-w, mech);
            CHECK(std::abs(minus - std::conj(plus)) < 1e-15 * std::abs(plus));
        }
    }
}

TEST_CASE("cross coefficient magnitude at resonance") {
    SystemParams sys = test_system();
    const FrequencyResponse r = response_at(sys.omega_m(), sys);
    const double expected = 2.0 * std::sqrt(sys.cooperativity_a() * sys.cooperativity_b()) *
                            sys.cavity_a.mech.q_m * sys.omega_g_sq() /
                            (sys.omega_m() * sys.omega_m());
    CHECK(rel_close(std::abs(r.g_cross), expected, 1e-12));
}

TEST_CASE("decoupled and semiclassical limits") {
    SystemParams sys = test_system();

    SUBCASE("no coupling at all") {
        sys.model = GravityModel::none;
        const FrequencyResponse r = response_at(sys.omega_m(), sys);
        CHECK(std::abs(r.g_cross) == 0.0);
        CHECK(std::abs(r.beta_b) == 0.0);
        CHECK(std::abs(r.k_b) > 0.0);  // single-cavity response intact
    }
    SUBCASE("semiclassical model removes the quantum cross term only") {
        const cplx alpha_quantum = response_at(sys.omega_m(), sys).alpha_b;
        sys.model = GravityModel::schroedinger_newton;
        const FrequencyResponse r = response_at(sys.omega_m(), sys);
        CHECK(std::abs(r.g_cross) == 0.0);
        CHECK(std::abs(r.beta_b) == 0.0);
        CHECK(std::abs(r.alpha_b - alpha_quantum) == 0.0);
    }
    SUBCASE("semiclassical with retained classical cross path") {
        sys.model = GravityModel::schroedinger_newton;
        sys.sn_keep_thermal_cross = true;
        const FrequencyResponse r = response_at(sys.omega_m(), sys);
        CHECK(std::abs(r.g_cross) == 0.0);
        CHECK(std::abs(r.beta_b) > 0.0);
    }
}

TEST_CASE("output spectra closed forms") {
    SystemParams sys = test_system();
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    std::vector<double> grid;
    for (int i = -60; i <= 60; ++i) grid.push_back(wm + gm * i / 3.0);
    const SpectraSet s = output_spectra(grid, sys);

    SUBCASE("vacuum amplitude floor") {
        for (double v : s.s_xx) CHECK(v == 0.5);
        for (double v : s.s_nn) CHECK(v >= 0.5);
    }
    SUBCASE("cross spectrum peaks at the resonance") {
        std::size_t imax = 0;
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            if (std::abs(s.s_xy[i]) > std::abs(s.s_xy[imax])) imax = i;
        }
        CHECK(rel_close(s.grid[imax], wm, 1e-9));
    }
    SUBCASE("zero coupling kills the cross spectrum") {
        sys.model = GravityModel::none;
        const SpectraSet s0 = output_spectra(grid, sys);
        for (const auto& v : s0.s_xy) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("Cauchy-Schwarz against the full phase spectrum") {
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            const double s_yy = s.s_nn[i] + std::norm(std::conj(s.s_xy[i]) * 2.0) / 2.0;
            CHECK(std::norm(s.s_xy[i]) <= s.s_xx[i] * s_yy * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("vacuum floor with zero occupation and no squeezing") {
    // With n_th = 0, K_B ~ 0 and beta = 0 the on-resonance noise reduces to
    // (1+|alpha|^2)/2.
    SystemParams sys = test_system();
    sys.cavity_a.mech.temperature = 0.0;
    sys.cavity_b.mech.temperature = 0.0;
    sys.model = GravityModel::none;
    sys.cavity_b.opt.power_cav *= 1e-21;  // C_B ~ 1e-8, so |k_b|^2 is negligible against |alpha|^2
    const double wm = sys.omega_m();
    const FrequencyResponse r = response_at(wm, sys);
    const double s_nn = spectrum_nn(wm, sys);
    CHECK(rel_close(s_nn, (1.0 + std::norm(r.alpha_b)) / 2.0, 1e-6));
}

TEST_CASE("coefficient conjugate symmetry") {
    SystemParams sys = test_system();
    const ResponseEvaluator ev(sys);
    for (double w : {0.0, 2.0, 6.283185, 13.0, 900.0}) {
        const FrequencyResponse p = ev.at(w);
        const FrequencyResponse m = ev.at(-w);
        CHECK(std::abs(m.k_b - std::conj(p.k_b)) <= 1e-14 * std::abs(p.k_b));
        CHECK(std::abs(m.g_cross - std::conj(p.g_cross)) <= 1e-14 * std::abs(p.g_cross));
        CHECK(std::abs(m.alpha_b - std::conj(p.alpha_b)) <= 1e-14 * std::abs(p.alpha_b));
        CHECK(std::abs(m.beta_b - std::conj(p.beta_b)) <= 1e-14 * std::abs(p.beta_b));
    }
}

TEST_CASE("beta/alpha ratio identity and smallness") {
    SystemParams sys = test_system();
    const ResponseEvaluator ev(sys);
    const double og2 = sys.omega_g_sq();
    const double wm = sys.omega_m();
    for (double w : {wm / 3.0, wm, 2.0 * wm, 10.0 * wm}) {
        const FrequencyResponse r = ev.at(w);
        const cplx ratio = r.beta_b / r.alpha_b;
        const cplx expected = r.chi_qq * og2 / wm;
        CHECK(std::abs(ratio - expected) <= 1e-12 * std::abs(expected));
    }
    // |beta/alpha|(omega_m) = Q_m omega_g^2/omega_m^2, small for the defaults.
    const FrequencyResponse r = ev.at(wm);
    const double ratio_res = std::abs(r.beta_b) / std::abs(r.alpha_b);
    CHECK(rel_close(ratio_res, sys.cavity_a.mech.q_m * og2 / (wm * wm), 1e-12));
    CHECK(ratio_res < 0.1);
}

TEST_CASE("matrix route reproduces the closed-form spectra") {
    SystemParams sys = test_system();
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    for (double w : {wm - 5.0 * gm, wm, wm + 3.7 * gm, 2.0 * wm}) {
        const Eigen::Matrix4cd s = full_output_covariance_spectrum(w, sys);
        CHECK(rel_close(s(0, 0).real(), 0.5, 1e-12));
        // noise spectrum = full Y_B autospectrum minus the X_A-correlated part
        const double s_yy = s(3, 3).real();
        const double s_nn = spectrum_nn(w, sys);
        const double coh = std::norm(s(0, 3)) / s(0, 0).real();
        CHECK(rel_close(s_yy - coh, s_nn, 1e-12));
        // cross entry equals the closed form
        const cplx s_xy = spectrum_xy(w, sys);
        CHECK(std::abs(s(0, 3) - s_xy) <= 1e-12 * std::abs(s_xy));
    }
}

TEST_CASE("output spectral matrix is Hermitian PSD across random draws") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        SystemParams sys = test_system();
        sys.cavity_a.mech.temperature = 300.0 * u(rng);
        sys.cavity_b.mech.temperature = sys.cavity_a.mech.temperature;
        sys.cavity_a.opt.power_cav = 2000.0 * std::pow(10.0, 2.0 * u(rng) - 1.0);
        sys.cavity_b.opt.power_cav = 2000.0 * std::pow(10.0, 2.0 * u(rng) - 1.0);
        sys.gravity.lambda_form = 4.0 * u(rng) + 1e-3;
        const double w = sys.omega_m() * (0.2 + 2.0 * u(rng));
        const Eigen::Matrix4cd s = full_output_covariance_spectrum(w, sys);
        CHECK((s - s.adjoint()).norm() <= 1e-12 * s.norm());
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(s);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * s.norm());
    }
}
