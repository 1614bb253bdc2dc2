#ifndef GRAVCORR_MONTECARLO_HPP
#define GRAVCORR_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "gravcorr/correlation.hpp"
#include "gravcorr/dynamics.hpp"

namespace gravcorr {

// Flat (white) double-sided input spectra of the six noise channels.
struct NoiseModel {
    double vacuum = 0.5;
    double thermal_a = 0.5;  // n_th^A + 1/2
    double thermal_b = 0.5;

    static NoiseModel from_system(const SystemParams& sys);
};

struct TimeSeriesPair {
    std::vector<double> x_a;
    std::vector<double> y_b;
    double dt = 0.0;
    double tau = 0.0;   // = n * dt
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
};

// Frequency-domain synthesis of one realisation of (X_A^out, Y_B^out):
// independent white Gaussian half-spectra per input channel, multiplied by
// the input-output coefficients bin by bin, inverse transformed; the first
// half of a doubled record is discarded as burn-in.
TimeSeriesPair synthesize_outputs(const SystemParams& sys, double dt, double tau,
                                  std::uint64_t seed, std::uint64_t trial_index);

// Real time-domain kernel of the matched filter on a length-m periodic grid
// (wrap-around layout, unit peak in frequency magnitude).
std::vector<double> filter_kernel(const SystemParams& sys, double dt, int m);

// Quadratic cross-statistic sum_{t,t'} X_A(t) F(t-t') Y_B(t') dt^2, evaluated
// by zero-padded FFT convolution (exact linear convolution on the record).
double estimator_cxy(const TimeSeriesPair& pair, const std::vector<double>& kernel);

// Expected value of the estimator, tau * int dw/2pi S_XY(w) F(w)^*.
double estimator_mean_expected(const SystemParams& sys, double tau);

struct TauStats {
    double tau = 0.0;
    double mu_hat = 0.0;
    double sigma_hat = 0.0;
    double snr_empirical = 0.0;
    double snr_analytic = 0.0;
    int n_trials = 0;
};

struct EnsembleResult {
    std::vector<TauStats> per_tau;
    std::vector<std::vector<double>> cxy; // [tau index][trial]
    double growth_exponent = 0.0;
    std::uint64_t seed = 0;
};

EnsembleResult run_ensemble(const SystemParams& sys, double dt,
                            const std::vector<double>& tau_list, int n_trials,
                            std::uint64_t seed);

// Desk-scale verification preset: 10 Hz / Q = 100 oscillators at T = 0 with
// the coupling boosted so the analytic SNR is ~5 after 100 damping times.
struct DeskPreset {
    SystemParams sys;
    double boost = 0.0;         // applied to omega_g (through lambda_form)
    double dt = 0.0;
    double tau_ref = 0.0;       // 100 damping times
    double snr_target = 5.0;
};

DeskPreset desk_scale_preset();

// Scales the gravitational coupling rate omega_g by `boost` (lambda_form by
// boost^2), leaving everything else untouched.
SystemParams boosted(const SystemParams& sys, double boost);

} // namespace gravcorr

#endif
