#include "gravcorr/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gravcorr {

namespace {

using boost::math::quadrature::gauss_kronrod;

double snr_integrand(double omega, const ResponseEvaluator& ev) {
    const double s_xy2 = std::norm(ev.s_xy(omega));
    return s_xy2 / (0.5 * ev.s_nn(omega));
}

// Integral over [a,b] of the SNR integrand, adaptive Gauss-Kronrod.
double integrate_segment(const ResponseEvaluator& ev, double a, double b) {
    if (b <= a) return 0.0;
    double err = 0.0;
    return gauss_kronrod<double, 61>::integrate(
        [&](double w) { return snr_integrand(w, ev); }, a, b, 12, 1e-10, &err);
}

} // namespace

void SnrGrid::validate_coverage(const SystemParams& sys) const {
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    const double lo = wm - dense_halfwidth_gammas * gm;
    const double hi = wm + dense_halfwidth_gammas * gm;
    if (omega_min > std::max(lo, 0.0)) {
        throw std::invalid_argument(
            "snr grid: omega_min does not cover the resonance band down to omega_m - 20*gamma_m");
    }
    if (omega_max > 0.0 && omega_max < hi) {
        throw std::invalid_argument(
            "snr grid: omega_max does not cover the resonance band up to omega_m + 20*gamma_m");
    }
    if (dense_halfwidth_gammas < 20.0) {
        throw std::invalid_argument("snr grid: dense window must span at least +-20 gamma_m");
    }
    if (points_per_gamma < 50) {
        throw std::invalid_argument("snr grid: need at least 50 points per gamma_m");
    }
}

std::vector<cplx> optimal_filter(const SpectraSet& spectra) {
    std::vector<cplx> f(spectra.grid.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < spectra.grid.size(); ++i) {
        if (!(spectra.s_nn[i] > 0.0) || !(spectra.s_xx[i] > 0.0)) {
            throw std::domain_error("optimal_filter: noise spectrum must be strictly positive");
        }
        f[i] = spectra.s_xy[i] / (spectra.s_xx[i] * spectra.s_nn[i]);
        peak = std::max(peak, std::abs(f[i]));
    }
    if (peak > 0.0) {
        for (auto& v : f) v /= peak;
    }
    return f;
}

double snr_with_filter(const SpectraSet& spectra, const std::vector<cplx>& filter, double tau) {
    if (filter.size() != spectra.grid.size()) {
        throw std::invalid_argument("snr_with_filter: filter/grid size mismatch");
    }
    const std::size_t n = spectra.grid.size();
    if (n < 2) throw std::invalid_argument("snr_with_filter: need at least two grid points");
    // Grid holds omega >= 0; the negative-frequency half contributes the
    // complex conjugates, so both integrals are twice the real part.
    double mu = 0.0, var = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dw = spectra.grid[i + 1] - spectra.grid[i];
        auto mu_at = [&](std::size_t j) {
            return std::real(spectra.s_xy[j] * std::conj(filter[j]));
        };
        auto var_at = [&](std::size_t j) {
            return std::norm(filter[j]) * spectra.s_xx[j] * spectra.s_nn[j];
        };
        mu += 0.5 * dw * (mu_at(i) + mu_at(i + 1));
        var += 0.5 * dw * (var_at(i) + var_at(i + 1));
    }
    mu *= 2.0 / kTwoPi;
    var *= 2.0 / kTwoPi;
    if (var <= 0.0) return 0.0;
    return std::sqrt(tau) * std::abs(mu) / std::sqrt(var);
}

SnrNumericResult snr_numeric(const SystemParams& sys, double tau, const SnrGrid& grid) {
    sys.validate();
    if (!(tau > 0.0)) throw std::domain_error("snr_numeric: tau must be > 0");
    grid.validate_coverage(sys);

    SnrNumericResult out;
    const double gm = sys.gamma_m();
    if (tau < 10.0 * kTwoPi / gm) {
        std::ostringstream os;
        os << "tau = " << tau << " s is below ten damping times (" << 10.0 * kTwoPi / gm
           << " s); the stationary estimator statistics behind the SNR formula degrade";
        out.warning = os.str();
    }

    const ResponseEvaluator ev(sys);
    const double wm = sys.omega_m();
    const double lo = std::max(grid.omega_min, 0.0);
    const double dense_lo = std::max(wm - grid.dense_halfwidth_gammas * gm, lo);
    const double dense_hi = wm + grid.dense_halfwidth_gammas * gm;

    double total = integrate_segment(ev, lo, dense_lo);
    // Dense band in single-gamma_m slices; GK61 nodes give >= 50 points each.
    const int slices = static_cast<int>(std::ceil((dense_hi - dense_lo) / gm));
    double a = dense_lo;
    for (int i = 0; i < slices; ++i) {
        const double b = std::min(dense_hi, dense_lo + (i + 1) * (dense_hi - dense_lo) / slices);
        total += integrate_segment(ev, a, b);
        a = b;
    }
    // Tail: extend by octaves until the marginal contribution is negligible
    // or the caller-imposed cutoff is reached.
    double hi = dense_hi;
    const double hard_max = grid.omega_max > 0.0 ? grid.omega_max : 1e9 * wm;
    double width = std::max(wm, 100.0 * gm);
    while (hi < hard_max) {
        const double b = std::min(hi + width, hard_max);
        const double part = integrate_segment(ev, hi, b);
        total += part;
        hi = b;
        width *= 2.0;
        if (part < 1e-10 * total) break;
    }

    out.snr = std::sqrt(tau * 2.0 * total / kTwoPi);
    return out;
}

double optimize_power_b(const SystemParams& sys) {
    sys.validate();
    const double wq_opt_sq = sys.gamma_b() * sys.gamma_m() / 4.0;
    const auto& opt = sys.cavity_b.opt;
    const auto& mech = sys.cavity_b.mech;
    // Invert omega_q^2 = 2 P omega_0/(m c L omega_m).
    return wq_opt_sq * mech.mass * sys.constants.c * opt.cavity_length * mech.omega_m /
           (2.0 * opt.omega_0(sys.constants));
}

ClosedFormResult snr_closed_form(const SystemParams& sys, double tau) {
    sys.validate();
    if (!(tau > 0.0)) throw std::domain_error("snr_closed_form: tau must be > 0");
    ClosedFormResult out;
    const double cb = sys.cooperativity_b();
    if (std::abs(cb - 0.5) > 0.01) {
        std::ostringstream os;
        os << "closed-form SNR assumes the read-out power at its optimum (C_B = 1/2); got C_B = "
           << cb;
        out.warning = os.str();
    }
    // The formula also drops |beta|^2 against |alpha|^2; the ratio at
    // resonance is Q_m*omega_g^2/omega_m^2 and must stay small.
    const double wm = sys.omega_m();
    const double beta_ratio = sys.cavity_a.mech.q_m * sys.omega_g_sq() / (wm * wm);
    if (beta_ratio > 0.5) {
        throw std::domain_error(
            "snr_closed_form: the cross-thermal response is not negligible for these "
            "parameters (Q_m*omega_g^2/omega_m^2 = " + std::to_string(beta_ratio) + ")");
    }
    const double og2 = sys.omega_g_sq();
    const double ca = sys.cooperativity_a();
    const double nb = sys.n_th_b();
    out.snr = std::sqrt(tau * ca * sys.cavity_a.mech.q_m * og2 * og2 /
                        (2.0 * (nb + 1.0) * wm * wm * wm));
    return out;
}

RequiredTau required_tau(const SystemParams& sys, double target_snr) {
    sys.validate();
    if (!(target_snr > 0.0)) throw std::domain_error("required_tau: target must be > 0");
    RequiredTau r;
    const double og2 = sys.omega_g_sq();
    if (og2 <= 0.0) {
        r.reachable = false;  // no coupling, no correlation, ever
        return r;
    }
    const double wm = sys.omega_m();
    const double ca = sys.cooperativity_a();
    const double nb = sys.n_th_b();
    r.tau_s = target_snr * target_snr * 2.0 * (nb + 1.0) * wm * wm * wm /
              (ca * sys.cavity_a.mech.q_m * og2 * og2);
    r.reachable = std::isfinite(r.tau_s);
    return r;
}

SnrReport snr_report(SystemParams sys, double tau, bool optimize_b) {
    SnrReport rep;
    rep.tau = tau;
    if (optimize_b) {
        const double p = optimize_power_b(sys);
        sys.cavity_b.opt.power_cav = p;
        rep.optimized_power_b = p;
    }
    auto num = snr_numeric(sys, tau);
    rep.snr_numeric = num.snr;
    if (num.warning) rep.warnings.push_back(*num.warning);
    auto cf = snr_closed_form(sys, tau);
    rep.snr_closed_form = cf.snr;
    if (cf.warning) rep.warnings.push_back(*cf.warning);
    if (auto w = sys.adiabatic_warning()) rep.warnings.push_back(*w);

    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    auto grid = make_spectra_grid(sys, std::max(0.0, wm - 40.0 * gm), wm + 40.0 * gm);
    rep.filter = optimal_filter(output_spectra(grid, sys));
    return rep;
}

std::vector<double> make_spectra_grid(const SystemParams& sys, double omega_min,
                                      double omega_max, int points_per_gamma) {
    if (!(omega_max > omega_min) || omega_min < 0.0) {
        throw std::invalid_argument("make_spectra_grid: need 0 <= omega_min < omega_max");
    }
    const double wm = sys.omega_m();
    const double gm = sys.gamma_m();
    const double dense_lo = std::max(wm - 20.0 * gm, omega_min);
    const double dense_hi = std::min(wm + 20.0 * gm, omega_max);

    std::vector<double> grid;
    auto push_log = [&grid](double a, double b, int n) {
        if (!(b > a) || n < 1) return;
        const double la = std::log(std::max(a, 1e-300));
        const double lb = std::log(b);
        if (a <= 0.0) grid.push_back(0.0);
        for (int i = 0; i <= n; ++i) {
            grid.push_back(std::exp(la + (lb - la) * i / n));
        }
    };
    if (dense_hi > dense_lo) {
        push_log(omega_min, dense_lo, 200);
        const int ndense = std::max(2, static_cast<int>(std::ceil(
            (dense_hi - dense_lo) / gm * points_per_gamma)));
        for (int i = 0; i <= ndense; ++i) {
            grid.push_back(dense_lo + (dense_hi - dense_lo) * i / ndense);
        }
        push_log(dense_hi, omega_max, 200);
    } else {
        push_log(omega_min, omega_max, 600);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace gravcorr
