#ifndef GRAVCORR_CORRELATION_HPP
#define GRAVCORR_CORRELATION_HPP

#include <optional>
#include <vector>

#include "gravcorr/dynamics.hpp"

namespace gravcorr {

// Frequency window for the SNR integral. The integrand is a narrow resonance
// of width ~gamma_m sitting on thermally broadened wings, so the window pairs
// a dense band around omega_m with adaptive coverage of the rest of the axis.
struct SnrGrid {
    double omega_min = 0.0;        // rad/s; must reach below omega_m - 20*gamma_m
    double omega_max = 0.0;        // 0 -> automatic (extends until converged)
    double dense_halfwidth_gammas = 20.0;
    int points_per_gamma = 50;     // minimum sampling density inside the dense band

    void validate_coverage(const SystemParams& sys) const;
};

// Matched filter S_XY(omega)/(S_XX(omega)*S_NN(omega)) on the grid of the
// spectra, normalised to unit peak magnitude.
std::vector<cplx> optimal_filter(const SpectraSet& spectra);

// General filtered-correlation SNR per unit sqrt(time), evaluated on the
// spectra grid (trapezoid, both frequency signs):
//   snr(F)^2/tau = [int S_XY F*]^2 / int |F|^2 S_XX S_NN.
// Any filter is admissible; the optimal filter maximises this functional.
double snr_with_filter(const SpectraSet& spectra, const std::vector<cplx>& filter, double tau);

// sqrt(tau * int dw/2pi |S_XY|^2/(S_XX S_NN)) by adaptive quadrature.
// Warns (returns the message) when tau is below ten damping times, where the
// stationary-phase treatment of the estimator variance degrades.
struct SnrNumericResult {
    double snr = 0.0;
    std::optional<std::string> warning;
};
SnrNumericResult snr_numeric(const SystemParams& sys, double tau, const SnrGrid& grid = {});

// Cavity-B power that puts the read-out at its on-resonance optimum
// omega_q^B = sqrt(gamma*gamma_m/4), i.e. C_B = 1/2.
double optimize_power_b(const SystemParams& sys);

// Closed-form resonance-limit SNR sqrt(tau C_A Q_m omega_g^4/(2(n_B+1) omega_m^3)).
// Kept verbatim; a faithful quadrature of the underlying integral comes out a
// factor ~sqrt(2) lower (see snr_numeric), and the Monte Carlo sides with the
// quadrature. The report carries both numbers so the gap stays visible.
struct ClosedFormResult {
    double snr = 0.0;
    std::optional<std::string> warning;  // set when C_B is away from 1/2
};
ClosedFormResult snr_closed_form(const SystemParams& sys, double tau);

// Integration time for a target SNR, by inverting the closed form.
struct RequiredTau {
    bool reachable = false;
    double tau_s = 0.0;  // valid when reachable
};
RequiredTau required_tau(const SystemParams& sys, double target_snr);

struct SnrReport {
    double snr_numeric = 0.0;
    double snr_closed_form = 0.0;
    double tau = 0.0;
    std::vector<cplx> filter;
    std::optional<double> optimized_power_b;
    std::vector<std::string> warnings;
};

// Convenience wrapper: optionally moves cavity B to its optimal power, then
// evaluates both SNR routes and the filter on a default spectra grid.
SnrReport snr_report(SystemParams sys, double tau, bool optimize_b);

// Dense grid for spectra/filter output: log-spaced coarse part plus a linear
// window around omega_m (points_per_gamma samples per gamma_m width).
std::vector<double> make_spectra_grid(const SystemParams& sys, double omega_min,
                                      double omega_max, int points_per_gamma = 50);

} // namespace gravcorr

#endif
