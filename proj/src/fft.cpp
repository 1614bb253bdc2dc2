#include "gravcorr/fft.hpp"

#include <stdexcept>

#include <fftw3.h>

namespace gravcorr {

std::vector<std::complex<double>> real_to_halfspectrum(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw std::invalid_argument("fft: need at least 2 samples");
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan = fftw_plan_dft_r2c_1d(
        n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw: r2c plan failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

std::vector<double> halfspectrum_to_real(const std::vector<std::complex<double>>& h, int n) {
    if (static_cast<int>(h.size()) != n / 2 + 1) {
        throw std::invalid_argument("fft: half spectrum size must be n/2+1");
    }
    std::vector<std::complex<double>> in(h);
    std::vector<double> out(n);
    fftw_plan plan = fftw_plan_dft_c2r_1d(
        n, reinterpret_cast<fftw_complex*>(in.data()), out.data(), FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw: c2r plan failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

} // namespace gravcorr
