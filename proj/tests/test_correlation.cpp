#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gravcorr/correlation.hpp"

using namespace gravcorr;

namespace {
bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

SystemParams optimized_default() {
    SystemParams sys = default_system();
    const double p = optimize_power_b(sys);
    sys.cavity_b.opt.power_cav = p;
    return sys;
}

// Closed form with the exact completed integral (2(2n+1) in place of the
// published 2(n+1)); the published form is sqrt(2) above this at large n.
double corrected_closed_form(const SystemParams& sys, double tau) {
    const double og2 = sys.omega_g_sq();
    const double wm = sys.omega_m();
    return std::sqrt(tau * sys.cooperativity_a() * sys.cavity_a.mech.q_m * og2 * og2 /
                     (2.0 * (2.0 * sys.n_th_b() + 1.0) * wm * wm * wm));
}
} // namespace

TEST_CASE("optimal filter basics") {
    SystemParams sys = optimized_default();
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    auto grid = make_spectra_grid(sys, std::max(0.0, wm - 40.0 * gm), wm + 40.0 * gm);
    const SpectraSet sp = output_spectra(grid, sys);
    const auto f = optimal_filter(sp);

    SUBCASE("unit peak magnitude") {
        double peak = 0.0;
        for (const auto& v : f) peak = std::max(peak, std::abs(v));
        CHECK(rel_close(peak, 1.0, 1e-12));
    }
    SUBCASE("no coupling, no filter") {
        SystemParams off = sys;
        off.model = GravityModel::none;
        const auto f0 = optimal_filter(output_spectra(grid, off));
        for (const auto& v : f0) CHECK(std::abs(v) == 0.0);
        CHECK(snr_with_filter(output_spectra(grid, off), f0, 1e7) == 0.0);
    }
    SUBCASE("white noise: filter proportional to the cross spectrum, peaked on resonance") {
        SpectraSet white = sp;
        for (auto& v : white.s_nn) v = 1.7;
        const auto fw = optimal_filter(white);
        double peak_xy = 0.0;
        std::size_t imax_xy = 0, imax_f = 0;
        for (std::size_t i = 0; i < white.grid.size(); ++i) {
            if (std::abs(white.s_xy[i]) > peak_xy) {
                peak_xy = std::abs(white.s_xy[i]);
                imax_xy = i;
            }
            if (std::abs(fw[i]) > std::abs(fw[imax_f])) imax_f = i;
        }
        CHECK(imax_xy == imax_f);
        CHECK(rel_close(white.grid[imax_f], wm, 1e-6));
        for (std::size_t i = 0; i < white.grid.size(); ++i) {
            CHECK(std::abs(fw[i] * peak_xy - white.s_xy[i]) <= 1e-12 * peak_xy);
        }
    }
    SUBCASE("zero noise spectrum rejected") {
        SpectraSet bad = sp;
        bad.s_nn[3] = 0.0;
        CHECK_THROWS_AS(optimal_filter(bad), std::domain_error);
    }
}

TEST_CASE("filter optimality against random perturbations") {
    SystemParams sys = optimized_default();
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    auto grid = make_spectra_grid(sys, std::max(0.0, wm - 40.0 * gm), wm + 40.0 * gm);
    const SpectraSet sp = output_spectra(grid, sys);
    const auto fopt = optimal_filter(sp);
    const double tau = 1e8;
    const double best = snr_with_filter(sp, fopt, tau);
    CHECK(best > 0.0);

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 120; ++k) {
        auto f = fopt;
        for (auto& v : f) {
            v *= (1.0 + 0.4 * u(rng));
            v += 0.05 * cplx(u(rng), u(rng));
        }
        const double s = snr_with_filter(sp, f, tau);
        CHECK(s <= best * (1.0 + 1e-9));
    }
    SUBCASE("a flat filter is strictly worse") {
        std::vector<cplx> flat(grid.size(), cplx(1.0, 0.0));
        CHECK(snr_with_filter(sp, flat, tau) < 0.9 * best);
    }
    SUBCASE("the optimal filter reproduces the quadrature SNR on the same grid") {
        const double numeric = snr_numeric(sys, tau).snr;
        CHECK(rel_close(best, numeric, 0.01));
    }
}

TEST_CASE("snr_numeric scalings and edge cases") {
    SystemParams sys = optimized_default();
    const double tau = 3.09e7;
    const double s1 = snr_numeric(sys, tau).snr;
    CHECK(s1 > 0.0);

    SUBCASE("sqrt(tau) growth exactly") {
        const double s4 = snr_numeric(sys, 4.0 * tau).snr;
        CHECK(rel_close(s4, 2.0 * s1, 1e-12));
    }
    SUBCASE("no coupling, no signal") {
        sys.model = GravityModel::none;
        CHECK(snr_numeric(sys, tau).snr == 0.0);
    }
    SUBCASE("short-tau warning") {
        const auto r = snr_numeric(sys, 2.0 * kTwoPi / sys.gamma_m());
        CHECK(r.warning.has_value());
        CHECK(!snr_numeric(sys, tau).warning.has_value());
    }
    SUBCASE("insufficient coverage is a configuration error") {
        SnrGrid g;
        g.omega_max = sys.omega_m() + 5.0 * sys.gamma_m();
        CHECK_THROWS_AS(snr_numeric(sys, tau, g), std::invalid_argument);
        SnrGrid g2;
        g2.points_per_gamma = 10;
        CHECK_THROWS_AS(snr_numeric(sys, tau, g2), std::invalid_argument);
    }
}

TEST_CASE("read-out power optimum") {
    SystemParams sys = default_system();
    const double p = optimize_power_b(sys);

    SUBCASE("cooperativity lands exactly on 1/2") {
        sys.cavity_b.opt.power_cav = p;
        CHECK(rel_close(sys.cooperativity_b(), 0.5, 1e-12));
    }
    SUBCASE("doubling the mass doubles the power") {
        SystemParams heavy = default_system();
        heavy.cavity_a.mech.mass *= 2.0;
        heavy.cavity_b.mech.mass *= 2.0;
        CHECK(rel_close(optimize_power_b(heavy), 2.0 * p, 1e-12));
    }
    SUBCASE("on-resonance integrand is maximised at the returned power") {
        auto integrand_at = [&](double power) {
            SystemParams s = sys;
            s.cavity_b.opt.power_cav = power;
            const double wm = s.omega_m();
            const double sxy2 = std::norm(spectrum_xy(wm, s));
            return sxy2 / (spectrum_xx() * spectrum_nn(wm, s));
        };
        const double at_half = integrand_at(0.5 * p);
        const double at_opt = integrand_at(p);
        const double at_twice = integrand_at(2.0 * p);
        CHECK(at_opt > at_half);
        CHECK(at_opt > at_twice);
    }
    SUBCASE("full SNR is flat against the power near the optimum at high occupation") {
        // The thermally dominated integral depends on the read-out power only
        // through the wings; the three-point scan is level to ~1e-5.
        const double tau = 3.09e7;
        SystemParams s = sys;
        s.cavity_b.opt.power_cav = p;
        const double s_opt = snr_numeric(s, tau).snr;
        s.cavity_b.opt.power_cav = 2.0 * p;
        const double s_twice = snr_numeric(s, tau).snr;
        CHECK(rel_close(s_twice, s_opt, 1e-5));
    }
}

TEST_CASE("closed form against the published reference point") {
    SystemParams sys = optimized_default();
    // n_th/C = 0.41, omega_m = 2pi, Q = 1e6, rho = 19 g/cm^3, Lambda = 2:
    // unity SNR near one year of integration.
    const auto r = snr_closed_form(sys, 3.09e7);
    CHECK(!r.warning.has_value());
    CHECK(rel_close(r.snr, 1.0, 0.05));

    SUBCASE("quadrupling C_A doubles the SNR") {
        SystemParams s4 = sys;
        s4.cavity_a.opt.power_cav *= 4.0;
        CHECK(rel_close(snr_closed_form(s4, 3.09e7).snr, 2.0 * r.snr, 1e-12));
    }
    SUBCASE("warns away from the read-out optimum") {
        SystemParams off = sys;
        off.cavity_b.opt.power_cav *= 3.0;
        CHECK(snr_closed_form(off, 3.09e7).warning.has_value());
    }
    SUBCASE("depends on the B-side temperature only") {
        SystemParams asym = sys;
        asym.cavity_a.mech.temperature = 3.0;  // cold A side
        const auto r2 = snr_closed_form(asym, 3.09e7);
        CHECK(r2.snr == r.snr);
        SystemParams asym_b = sys;
        asym_b.cavity_b.mech.temperature = 3.0;  // n_th down 100x -> SNR up 10x
        CHECK(rel_close(snr_closed_form(asym_b, 3.09e7).snr, 10.0 * r.snr, 1e-3));
    }
}

TEST_CASE("numeric and closed-form routes: documented ratio") {
    // The published closed form completes the frequency integral a factor
    // sqrt(2) high; a faithful quadrature (confirmed by the time-domain
    // ensemble) therefore sits at ~0.704 of it for the reference set.
    SystemParams sys = optimized_default();
    const double tau = 3.09e7;
    const double numeric = snr_numeric(sys, tau).snr;
    const double closed = snr_closed_form(sys, tau).snr;
    CHECK(rel_close(numeric / closed, 0.7064, 0.005));

    SUBCASE("quadrature matches the exactly completed integral within 1%") {
        for (double t_k : {300.0, 1.0, 3e-4 /* n_th ~ 6e6 */}) {
            SystemParams s = sys;
            s.cavity_a.mech.temperature = t_k;
            s.cavity_b.mech.temperature = t_k;
            const double num = snr_numeric(s, tau).snr;
            const double corr = corrected_closed_form(s, tau);
            CHECK(rel_close(num, corr, 0.01));
        }
        // At n_th ~ 100 the vacuum terms shift the wings by a few percent.
        SystemParams cold = sys;
        cold.cavity_a.mech.temperature = 4.8e-9;
        cold.cavity_b.mech.temperature = 4.8e-9;
        CHECK(rel_close(snr_numeric(cold, tau).snr, corrected_closed_form(cold, tau), 0.04));
    }
}

TEST_CASE("required integration time") {
    SystemParams sys = optimized_default();
    const RequiredTau rt = required_tau(sys, 1.0);
    REQUIRE(rt.reachable);
    // ~1.0 year for the reference set.
    CHECK(rel_close(rt.tau_s, kSecondsPerYear, 0.05));
    CHECK(rel_close(snr_closed_form(sys, rt.tau_s).snr, 1.0, 1e-9));

    SUBCASE("quadratic in the target") {
        const RequiredTau rt2 = required_tau(sys, 2.0);
        CHECK(rel_close(rt2.tau_s, 4.0 * rt.tau_s, 1e-12));
    }
    SUBCASE("unreachable without coupling") {
        SystemParams off = sys;
        off.model = GravityModel::none;
        CHECK(!required_tau(off, 1.0).reachable);
    }
    SUBCASE("cubic in omega_m at fixed n_th/C") {
        SystemParams s2 = sys;
        s2.cavity_a.mech.omega_m *= 2.0;
        s2.cavity_b.mech.omega_m *= 2.0;
        // Pin n_th/C back to the reference value by rescaling T.
        const double r0 = sys.n_th_b() / sys.cooperativity_a();
        const double r2 = s2.n_th_b() / s2.cooperativity_a();
        s2.cavity_a.mech.temperature *= r0 / r2;
        s2.cavity_b.mech.temperature *= r0 / r2;
        const RequiredTau rt8 = required_tau(s2, 1.0);
        CHECK(rel_close(rt8.tau_s, 8.0 * rt.tau_s, 1e-6));
    }
    SUBCASE("inverse in Q_m at fixed n_th/C") {
        SystemParams s2 = sys;
        s2.cavity_a.mech.q_m *= 2.0;
        s2.cavity_b.mech.q_m *= 2.0;
        const double r0 = sys.n_th_b() / sys.cooperativity_a();
        const double r2 = s2.n_th_b() / s2.cooperativity_a();
        s2.cavity_a.mech.temperature *= r0 / r2;
        s2.cavity_b.mech.temperature *= r0 / r2;
        CHECK(rel_close(required_tau(s2, 1.0).tau_s, 0.5 * rt.tau_s, 1e-6));
    }
    SUBCASE("inverse square in density") {
        SystemParams s2 = sys;
        s2.cavity_a.mech.density *= 2.0;
        s2.cavity_b.mech.density *= 2.0;
        CHECK(rel_close(required_tau(s2, 1.0).tau_s, 0.25 * rt.tau_s, 1e-9));
    }
}

TEST_CASE("snr report plumbing") {
    SystemParams sys = default_system();
    const SnrReport rep = snr_report(sys, 3.09e7, /*optimize_b=*/true);
    REQUIRE(rep.optimized_power_b.has_value());
    CHECK(rep.snr_numeric > 0.0);
    CHECK(rep.snr_closed_form > 0.0);
    CHECK(!rep.filter.empty());
    CHECK(rel_close(rep.snr_numeric / rep.snr_closed_form, 0.7064, 0.005));
}
