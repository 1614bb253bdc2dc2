#include "gravcorr/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "gravcorr/fft.hpp"
#include "gravcorr/random.hpp"

namespace gravcorr {

namespace {

// Matched-filter transfer value S_XY/(S_XX S_NN) at one frequency (no
// normalisation; callers divide by the peak magnitude).
cplx filter_value(double omega, const ResponseEvaluator& ev) {
    return ev.s_xy(omega) / (0.5 * ev.s_nn(omega));
}

double filter_peak(const SystemParams& sys, const ResponseEvaluator& ev) {
    // The magnitude peaks at the mechanical resonance.
    return std::abs(filter_value(sys.omega_m(), ev));
}

} // namespace

NoiseModel NoiseModel::from_system(const SystemParams& sys) {
    NoiseModel n;
    n.vacuum = 0.5;
    n.thermal_a = sys.n_th_a() + 0.5;
    n.thermal_b = sys.n_th_b() + 0.5;
    return n;
}

TimeSeriesPair synthesize_outputs(const SystemParams& sys, double dt, double tau,
                                  std::uint64_t seed, std::uint64_t trial_index) {
    sys.validate();
    if (!(dt > 0.0) || !(tau > 0.0)) {
        throw std::domain_error("synthesize_outputs: dt and tau must be > 0");
    }
    if (dt > kTwoPi / (20.0 * sys.omega_m())) {
        throw std::domain_error(
            "synthesize_outputs: dt too coarse to resolve the resonance "
            "(need dt <= 2*pi/(20*omega_m))");
    }
    const std::int64_t n = static_cast<std::int64_t>(std::llround(tau / dt));
    if (n < 16) throw std::domain_error("synthesize_outputs: record too short");
    if (n > (std::int64_t(1) << 28)) {
        throw std::domain_error(
            "synthesize_outputs: record exceeds 2^28 samples; reduce tau or increase dt");
    }
    const int m = static_cast<int>(2 * n);  // doubled record, first half discarded
    const int nbins = m / 2 + 1;

    const NoiseModel noise = NoiseModel::from_system(sys);
    const ResponseEvaluator ev(sys);
    GaussianStream rng(seed, trial_index);

    // Half-spectra in c2r layout. A coefficient c(omega) applied to the
    // analytic spectrum corresponds to multiplying these bins by conj(c);
    // see the transform conventions in dynamics.hpp and fft.hpp.
    std::vector<cplx> bxa(nbins), byb(nbins);
    const double domega = kTwoPi / (m * dt);
    for (int k = 0; k < nbins; ++k) {
        const bool edge = (k == 0) || (2 * k == m);
        auto draw = [&](double psd) -> cplx {
            const double amp = std::sqrt(m * dt * psd);
            if (edge) return cplx(amp * rng.normal(), 0.0);
            const double inv_sqrt2 = 0.70710678118654752440;
            return amp * cplx(rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2);
        };
        // Fixed draw order per bin keeps (seed, trial) -> samples bit-stable.
        const cplx xa = draw(noise.vacuum);
        const cplx xb = draw(noise.vacuum);
        const cplx yb = draw(noise.vacuum);
        const cplx qa = draw(noise.thermal_a);
        const cplx qb = draw(noise.thermal_b);

        const FrequencyResponse r = ev.at(k * domega);
        bxa[k] = xa;
        byb[k] = std::conj(r.g_cross) * xa + std::conj(r.k_b) * xb + yb +
                 std::conj(r.beta_b) * qa + std::conj(r.alpha_b) * qb;
    }

    const double norm = 1.0 / (m * dt);
    std::vector<double> xa_t = halfspectrum_to_real(bxa, m);
    std::vector<double> yb_t = halfspectrum_to_real(byb, m);

    TimeSeriesPair out;
    out.dt = dt;
    out.tau = n * dt;
    out.seed = seed;
    out.trial_index = trial_index;
    out.x_a.resize(n);
    out.y_b.resize(n);
    for (std::int64_t t = 0; t < n; ++t) {
        out.x_a[t] = xa_t[n + t] * norm;
        out.y_b[t] = yb_t[n + t] * norm;
    }
    return out;
}

std::vector<double> filter_kernel(const SystemParams& sys, double dt, int m) {
    if (m < 4) throw std::invalid_argument("filter_kernel: grid too short");
    const int nbins = m / 2 + 1;
    const double domega = kTwoPi / (m * dt);
    const ResponseEvaluator ev(sys);
    const double peak = filter_peak(sys, ev);
    if (!(peak > 0.0)) {
        return std::vector<double>(m, 0.0);  // no coupling -> null filter
    }
    std::vector<cplx> half(nbins);
    for (int k = 0; k < nbins; ++k) {
        half[k] = std::conj(filter_value(k * domega, ev)) / peak;
    }
    std::vector<double> kernel = halfspectrum_to_real(half, m);
    const double norm = 1.0 / (m * dt);
    for (auto& v : kernel) v *= norm;
    return kernel;
}

double estimator_cxy(const TimeSeriesPair& pair, const std::vector<double>& kernel) {
    const std::size_t n = pair.x_a.size();
    if (pair.y_b.size() != n) throw std::invalid_argument("estimator_cxy: length mismatch");
    const std::size_t m = kernel.size();
    if (m < 2 * n) {
        throw std::invalid_argument(
            "estimator_cxy: kernel grid must be at least twice the record "
            "(zero-padded linear convolution)");
    }
    std::vector<double> ypad(m, 0.0);
    std::copy(pair.y_b.begin(), pair.y_b.end(), ypad.begin());

    auto yk = real_to_halfspectrum(ypad);
    auto fk = real_to_halfspectrum(kernel);
    for (std::size_t i = 0; i < yk.size(); ++i) yk[i] *= fk[i];
    auto conv = halfspectrum_to_real(yk, static_cast<int>(m));

    const double inv_m = 1.0 / static_cast<double>(m);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        acc += pair.x_a[t] * conv[t] * inv_m;
    }
    return acc * pair.dt * pair.dt;
}

double estimator_mean_expected(const SystemParams& sys, double tau) {
    const ResponseEvaluator ev(sys);
    const double peak = filter_peak(sys, ev);
    if (!(peak > 0.0)) return 0.0;
    // mu = tau * int dw/2pi S_XY F^* = tau * int dw/2pi |S_XY|^2/(Sxx Snn)/peak,
    // same integrand as the squared SNR; reuse the adaptive machinery.
    SnrNumericResult s = snr_numeric(sys, 1.0);
    return tau * s.snr * s.snr / peak;
}

EnsembleResult run_ensemble(const SystemParams& sys, double dt,
                            const std::vector<double>& tau_list, int n_trials,
                            std::uint64_t seed) {
    if (tau_list.empty()) throw std::invalid_argument("run_ensemble: empty tau list");
    if (n_trials < 2) throw std::invalid_argument("run_ensemble: need at least 2 trials");

    EnsembleResult res;
    res.seed = seed;
    res.per_tau.resize(tau_list.size());
    res.cxy.assign(tau_list.size(), std::vector<double>(n_trials, 0.0));

    for (std::size_t ti = 0; ti < tau_list.size(); ++ti) {
        const double tau = tau_list[ti];
        const std::int64_t n = static_cast<std::int64_t>(std::llround(tau / dt));
        const int m = static_cast<int>(2 * n);
        const std::vector<double> kernel = filter_kernel(sys, dt, m);

        // Trials keyed by (seed, global trial index); aggregation is over the
        // index-ordered vector, so any execution order gives identical stats.
        for (int tr = 0; tr < n_trials; ++tr) {
            const std::uint64_t trial_index =
                static_cast<std::uint64_t>(ti) * 1000000ull + static_cast<std::uint64_t>(tr);
            const TimeSeriesPair pair = synthesize_outputs(sys, dt, tau, seed, trial_index);
            res.cxy[ti][tr] = estimator_cxy(pair, kernel);
        }

        double mu = 0.0;
        for (double v : res.cxy[ti]) mu += v;
        mu /= n_trials;
        double var = 0.0;
        for (double v : res.cxy[ti]) var += (v - mu) * (v - mu);
        var /= (n_trials - 1);

        TauStats& st = res.per_tau[ti];
        st.tau = n * dt;
        st.mu_hat = mu;
        st.sigma_hat = std::sqrt(var);
        st.snr_empirical = st.sigma_hat > 0.0 ? mu / st.sigma_hat : 0.0;
        st.snr_analytic = snr_numeric(sys, st.tau).snr;
        st.n_trials = n_trials;
    }

    // log-log least squares for the growth exponent.
    if (tau_list.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int npts = 0;
        for (const auto& st : res.per_tau) {
            if (st.snr_empirical <= 0.0) continue;
            const double x = std::log(st.tau);
            const double y = std::log(st.snr_empirical);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++npts;
        }
        if (npts >= 2) {
            res.growth_exponent = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
        }
    }
    return res;
}

SystemParams boosted(const SystemParams& sys, double boost) {
    SystemParams out = sys;
    out.gravity.lambda_form = sys.gravity.lambda_form * boost * boost;
    return out;
}

DeskPreset desk_scale_preset() {
    DeskPreset p;
    SystemParams sys;
    MechanicalParams mech;
    mech.omega_m = kTwoPi * 10.0;
    mech.q_m = 100.0;
    mech.mass = 1e-3;
    mech.density = 19000.0;
    mech.temperature = 0.0;
    OpticalParams opt;
    opt.wavelength = 1064e-9;
    opt.cavity_length = 0.1;
    opt.finesse = 1000.0;
    opt.power_cav = 1.0;  // placeholder, replaced by the optimum below
    sys.cavity_a = {mech, opt};
    sys.cavity_b = {mech, opt};
    sys.gravity.lambda_form = 2.0;
    const double p_opt = optimize_power_b(sys);
    sys.cavity_a.opt.power_cav = p_opt;
    sys.cavity_b.opt.power_cav = p_opt;

    p.dt = kTwoPi / (20.0 * mech.omega_m);
    p.tau_ref = 100.0 * kTwoPi / mech.gamma_m();
    p.snr_target = 5.0;

    // Solve snr_numeric(boosted omega_g, tau_ref) = target by secant in
    // log(boost); the SNR is nearly a power law in the coupling.
    double lo = 1.0, hi = 1e7;
    auto f = [&](double boost) {
        return snr_numeric(boosted(sys, boost), p.tau_ref).snr - p.snr_target;
    };
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
        if (hi / lo < 1.0 + 1e-12) break;
    }
    p.boost = std::sqrt(lo * hi);
    p.sys = boosted(sys, p.boost);
    return p;
}

} // namespace gravcorr
