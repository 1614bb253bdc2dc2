#ifndef GRAVCORR_FFT_HPP
#define GRAVCORR_FFT_HPP

#include <complex>
#include <vector>

namespace gravcorr {

// Thin FFTW wrappers (double precision, deterministic ESTIMATE plans).
// Layout conventions follow FFTW: real_to_halfspectrum computes
// X_k = sum_t x_t e^{-2 pi i k t / N}; halfspectrum_to_real is its
// unnormalised inverse (sum over the Hermitian-completed spectrum with
// e^{+2 pi i k t / N}).
std::vector<std::complex<double>> real_to_halfspectrum(const std::vector<double>& x);
std::vector<double> halfspectrum_to_real(const std::vector<std::complex<double>>& h, int n);

} // namespace gravcorr

#endif
