#ifndef GRAVCORR_DYNAMICS_HPP
#define GRAVCORR_DYNAMICS_HPP

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "gravcorr/params.hpp"

namespace gravcorr {

using cplx = std::complex<double>;

// Fourier conventions used project-wide:
//   a(omega) = \int a(t) e^{+i omega t} dt
//   S_ab(omega) = \int <a(t+u) b(t)> e^{+i omega u} du   (double-sided)
// so that for outputs o = T(omega) i, the cross-spectral matrix is
// S_out = T S_in T^dagger, and all coefficients obey f(-omega) = conj(f(omega)).

// Mechanical susceptibility -omega_m/(omega^2 - omega_m^2 + i gamma_m omega),
// normalised so |chi(omega_m)| = 1/gamma_m and chi(0) = 1/omega_m.
cplx susceptibility(double omega, const MechanicalParams& mech);

// Input-output coefficient set of the coupled pair at one frequency.
// Quadrature order everywhere: (X_A, Y_A, X_B, Y_B).
struct FrequencyResponse {
    double omega = 0.0;
    cplx chi_qq;
    cplx k_a, k_b;            // ponderomotive X->Y rotation, per cavity
    cplx g_cross;             // gravity-mediated cross coefficient
    cplx alpha_a, alpha_b;    // own-bath thermal response
    cplx beta_a, beta_b;      // cross-bath thermal response (via gravity)

    // 4x4 matrix applied to the vacuum inputs (X_A,Y_A,X_B,Y_B)^in.
    Eigen::Matrix4cd vacuum_transfer() const;
    // 4x2 matrix applied to the normalised thermal drives (Q_A^th, Q_B^th).
    Eigen::Matrix<cplx, 4, 2> thermal_transfer() const;
};

FrequencyResponse response_at(double omega, const SystemParams& sys);

// Same evaluation with the derived rates cached; use for per-bin sweeps.
class ResponseEvaluator {
public:
    explicit ResponseEvaluator(const SystemParams& sys);
    FrequencyResponse at(double omega) const;
    double s_nn(double omega) const;
    cplx s_xy(double omega) const { return std::conj(at(omega).g_cross) / 2.0; }
    double n_th_b() const { return nb_; }

private:
    double wqa_, wqb_, ga_, gb_, gm_, wm_, og2_, nb_;
    double alpha_a_pref_, alpha_b_pref_;
    bool zero_g_, zero_beta_;
};

// Double-sided output spectral densities on a frequency grid. s_xx is the
// (white) amplitude-quadrature spectrum of cavity A, s_nn the noise spectrum
// of Y_B with the X_A-correlated part removed, s_xy the cross spectrum
// <X_A(omega) Y_B(omega)^dagger>-density = conj(g_cross)/2.
struct SpectraSet {
    std::vector<double> grid;   // rad/s, non-negative
    std::vector<double> s_xx;
    std::vector<double> s_nn;
    std::vector<cplx> s_xy;
};

double spectrum_xx();
double spectrum_nn(double omega, const SystemParams& sys);
cplx spectrum_xy(double omega, const SystemParams& sys);

SpectraSet output_spectra(const std::vector<double>& grid, const SystemParams& sys);

// Diagonal PSDs of the six input channels, order
// (X_A^in, Y_A^in, X_B^in, Y_B^in, Q_A^th, Q_B^th): vacuum 1/2, thermal n+1/2.
Eigen::Matrix<double, 6, 1> input_psd_diagonal(const SystemParams& sys);

// Hermitian PSD matrix of the four outputs, assembled from the transfer
// matrices and the per-channel input spectra.
Eigen::Matrix4cd full_output_covariance_spectrum(double omega, const SystemParams& sys);

} // namespace gravcorr

#endif
