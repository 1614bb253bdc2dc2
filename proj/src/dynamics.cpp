#include "gravcorr/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace gravcorr {

cplx susceptibility(double omega, const MechanicalParams& mech) {
    const double wm = mech.omega_m;
    const double gm = mech.gamma_m();
    return -wm / cplx(omega * omega - wm * wm, gm * omega);
}

Eigen::Matrix4cd FrequencyResponse::vacuum_transfer() const {
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Identity();
    t(1, 0) = k_a;
    t(1, 2) = g_cross;
    t(3, 0) = g_cross;
    t(3, 2) = k_b;
    return t;
}

Eigen::Matrix<cplx, 4, 2> FrequencyResponse::thermal_transfer() const {
    Eigen::Matrix<cplx, 4, 2> t = Eigen::Matrix<cplx, 4, 2>::Zero();
    t(1, 0) = alpha_a;
    t(1, 1) = beta_a;
    t(3, 0) = beta_b;
    t(3, 1) = alpha_b;
    return t;
}

ResponseEvaluator::ResponseEvaluator(const SystemParams& sys) {
    wqa_ = sys.omega_q_a();
    wqb_ = sys.omega_q_b();
    ga_ = sys.gamma_a();
    gb_ = sys.gamma_b();
    gm_ = sys.gamma_m();
    wm_ = sys.omega_m();
    og2_ = sys.omega_g_sq();
    nb_ = sys.n_th_b();
    alpha_a_pref_ = 2.0 * std::sqrt(2.0 * gm_ / ga_) * wqa_;
    alpha_b_pref_ = 2.0 * std::sqrt(2.0 * gm_ / gb_) * wqb_;
    // Semiclassical gravity is sourced by expectation values, so the quantum
    // fluctuations do not couple across; the thermally driven classical path
    // is optional.
    zero_g_ = sys.model == GravityModel::schroedinger_newton;
    zero_beta_ = zero_g_ && !sys.sn_keep_thermal_cross;
}

FrequencyResponse ResponseEvaluator::at(double omega) const {
    FrequencyResponse r;
    r.omega = omega;
    r.chi_qq = -wm_ / cplx(omega * omega - wm_ * wm_, gm_ * omega);
    r.k_a = -4.0 * wqa_ * wqa_ * r.chi_qq / ga_;
    r.k_b = -4.0 * wqb_ * wqb_ * r.chi_qq / gb_;
    r.alpha_a = alpha_a_pref_ * r.chi_qq;
    r.alpha_b = alpha_b_pref_ * r.chi_qq;
    const cplx chi2 = r.chi_qq * r.chi_qq;
    r.g_cross = zero_g_ ? cplx(0.0)
                        : 4.0 * wqa_ * wqb_ * og2_ * chi2 / (std::sqrt(ga_ * gb_) * wm_);
    r.beta_a = zero_beta_ ? cplx(0.0) : r.alpha_a * r.chi_qq * og2_ / wm_;
    r.beta_b = zero_beta_ ? cplx(0.0) : r.alpha_b * r.chi_qq * og2_ / wm_;
    return r;
}

double ResponseEvaluator::s_nn(double omega) const {
    const FrequencyResponse r = at(omega);
    return (1.0 + std::norm(r.k_b) +
            (2.0 * nb_ + 1.0) * (std::norm(r.alpha_b) + std::norm(r.beta_b))) / 2.0;
}

FrequencyResponse response_at(double omega, const SystemParams& sys) {
    return ResponseEvaluator(sys).at(omega);
}

double spectrum_xx() { return 0.5; }

double spectrum_nn(double omega, const SystemParams& sys) {
    const FrequencyResponse r = response_at(omega, sys);
    const double nb = sys.n_th_b();
    return (1.0 + std::norm(r.k_b) +
            (2.0 * nb + 1.0) * (std::norm(r.alpha_b) + std::norm(r.beta_b))) / 2.0;
}

cplx spectrum_xy(double omega, const SystemParams& sys) {
    return std::conj(response_at(omega, sys).g_cross) / 2.0;
}

SpectraSet output_spectra(const std::vector<double>& grid, const SystemParams& sys) {
    if (grid.empty()) throw std::invalid_argument("output_spectra: empty frequency grid");
    const ResponseEvaluator ev(sys);
    SpectraSet s;
    s.grid = grid;
    s.s_xx.reserve(grid.size());
    s.s_nn.reserve(grid.size());
    s.s_xy.reserve(grid.size());
    for (double w : grid) {
        s.s_xx.push_back(0.5);
        s.s_nn.push_back(ev.s_nn(w));
        s.s_xy.push_back(ev.s_xy(w));
    }
    return s;
}

Eigen::Matrix<double, 6, 1> input_psd_diagonal(const SystemParams& sys) {
    Eigen::Matrix<double, 6, 1> d;
    d << 0.5, 0.5, 0.5, 0.5, sys.n_th_a() + 0.5, sys.n_th_b() + 0.5;
    return d;
}

Eigen::Matrix4cd full_output_covariance_spectrum(double omega, const SystemParams& sys) {
    const FrequencyResponse r = response_at(omega, sys);
    const Eigen::Matrix4cd t = r.vacuum_transfer();
    const Eigen::Matrix<cplx, 4, 2> th = r.thermal_transfer();
    const auto d = input_psd_diagonal(sys);

    Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 4; ++k) {
        s += d(k) * t.col(k) * t.col(k).adjoint();
    }
    for (int k = 0; k < 2; ++k) {
        s += d(4 + k) * th.col(k) * th.col(k).adjoint();
    }
    return s;
}

} // namespace gravcorr
