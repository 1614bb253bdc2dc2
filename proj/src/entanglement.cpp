#include "gravcorr/entanglement.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "gravcorr/dynamics.hpp"

namespace gravcorr {

namespace {

// det of a 2x2 block of the Hermitian matrix; real for Hermitian blocks.
double det2(const Eigen::Matrix4cd& m, int r, int c) {
    const std::complex<double> d =
        m(r, c) * m(r + 1, c + 1) - m(r, c + 1) * m(r + 1, c);
    return d.real();
}

} // namespace

Eigen::Matrix4cd CovMatrix4::hermitian() const {
    Eigen::Matrix4cd h = v.cast<std::complex<double>>();
    // X-Y entries of the single-cavity blocks: stored value is the real part,
    // im_k the imaginary part of the lower-triangular element.
    h(1, 0) += std::complex<double>(0.0, im_k);
    h(0, 1) -= std::complex<double>(0.0, im_k);
    h(3, 2) += std::complex<double>(0.0, im_k);
    h(2, 3) -= std::complex<double>(0.0, im_k);
    return h;
}

CovMatrix4 covariance_at_resonance(const SystemParams& sys, double delta_omega) {
    sys.validate();
    const double gm = sys.gamma_m();
    if (!(delta_omega >= gm)) {
        throw std::domain_error(
            "covariance_at_resonance: delta_omega must be at least gamma_m");
    }
    const double wqa = sys.omega_q_a();
    const double wqb = sys.omega_q_b();
    if (std::abs(wqa - wqb) > 1e-9 * std::max(wqa, wqb)) {
        throw std::domain_error(
            "covariance_at_resonance: the resonance covariance assumes equal coupling rates; "
            "symmetrise the cavity powers first");
    }
    if (std::abs(sys.cavity_a.mech.temperature - sys.cavity_b.mech.temperature) >
        1e-9 * std::max(1.0, sys.cavity_a.mech.temperature)) {
        throw std::domain_error(
            "covariance_at_resonance: the resonance covariance assumes equal temperatures");
    }

    // V = 2 * (spectral density matrix at omega_m): the sideband-mode
    // normalisation turns the double-sided density (vacuum 1/2) into the
    // covariance convention (vacuum 1). Centralised here.
    const Eigen::Matrix4cd s = full_output_covariance_spectrum(sys.omega_m(), sys);
    const Eigen::Matrix4cd h = 2.0 * s;

    CovMatrix4 out;
    out.delta_omega = delta_omega;
    out.v = h.real();
    out.im_k = h(1, 0).imag();
    return out;
}

NegativityReport log_negativity(const CovMatrix4& v) {
    const Eigen::Matrix4cd h = v.hermitian();

    const double det_a = det2(h, 0, 0);
    const double det_b = det2(h, 2, 2);
    // Upper-right 2x2 block (rows 0-1, cols 2-3).
    const std::complex<double> dab =
        h(0, 2) * h(1, 3) - h(0, 3) * h(1, 2);
    const double det_ab = dab.real();
    const double det_v = h.determinant().real();

    NegativityReport rep;
    rep.sigma = det_a + det_b - 2.0 * det_ab;
    rep.det_v = det_v;

    const double disc = rep.sigma * rep.sigma - 4.0 * det_v;
    const double scale = std::max({1.0, rep.sigma * rep.sigma, std::abs(4.0 * det_v)});
    if (disc < -1e-9 * scale) {
        throw std::domain_error(
            "log_negativity: sigma^2 < 4 det V; the matrix is not a physical two-mode state");
    }
    const double nu_minus_sq = (rep.sigma - std::sqrt(std::max(disc, 0.0))) / 2.0;
    if (!(nu_minus_sq > 0.0)) {
        throw std::domain_error("log_negativity: non-positive symplectic eigenvalue");
    }
    rep.e_n = std::max(-0.5 * std::log(nu_minus_sq), 0.0);

    // Resonance-form condition sides, expressed in determinant invariants:
    // det V_A = 1 + |G|^2 + Theta and det V_AB = -|G|^2, so
    // Theta = det V_A - 1 + det V_AB and 2|G| = 2 sqrt(-det V_AB).
    const double g2 = std::max(-det_ab, 0.0);
    rep.condition_lhs = det_a - 1.0 - g2;
    rep.condition_rhs = 2.0 * std::sqrt(g2);
    rep.entangled = rep.e_n > 0.0;
    return rep;
}

NegativityReport negativity_at_resonance(const SystemParams& sys, double delta_omega) {
    const CovMatrix4 v = covariance_at_resonance(sys, delta_omega);

    // The resonance blocks give the determinant invariants in closed form:
    //   det V_A = det V_B = 1 + |G|^2 + Theta   (|K|^2 cancels)
    //   det V_AB = -|G|^2,  det V = (1 + Theta)^2.
    // These are cancellation-free, unlike the generic 4x4 determinant whose
    // terms grow like |G|^4 at large cooperativity.
    const FrequencyResponse r = response_at(sys.omega_m(), sys);
    const double nb = sys.n_th_b();
    const double theta = (2.0 * nb + 1.0) * (std::norm(r.alpha_b) + std::norm(r.beta_b));
    const double g = std::abs(r.g_cross);

    NegativityReport rep;
    const double det_a = 1.0 + g * g + theta;
    rep.sigma = 2.0 * det_a + 2.0 * g * g;
    rep.det_v = (1.0 + theta) * (1.0 + theta);
    const double disc = rep.sigma * rep.sigma - 4.0 * rep.det_v;
    // nu_minus^2 via the product form to avoid the subtractive branch.
    const double nu_plus_sq = (rep.sigma + std::sqrt(std::max(disc, 0.0))) / 2.0;
    const double nu_minus_sq = rep.det_v / nu_plus_sq;
    rep.e_n = std::max(-0.5 * std::log(nu_minus_sq), 0.0);
    rep.condition_lhs = theta;
    rep.condition_rhs = 2.0 * g;
    rep.entangled = rep.e_n > 0.0;

    // Two independent algebraic routes must agree: the symplectic-invariant
    // route above and the direct resonance expression.
    const double e_n_closed = std::max(-std::log(std::sqrt(1.0 + g * g + theta) - g), 0.0);
    if (std::abs(e_n_closed - rep.e_n) > 1e-9 * std::max(1.0, rep.e_n)) {
        throw std::logic_error(
            "negativity_at_resonance: invariant route and closed form disagree");
    }
    // At moderate scale the generic matrix route must agree as well; at large
    // cooperativity its determinant loses all significant digits, which is
    // why the invariants above are used.
    if (det_a < 1e6) {
        const NegativityReport generic = log_negativity(v);
        if (std::abs(generic.e_n - rep.e_n) > 1e-6 * std::max(1.0, rep.e_n)) {
            throw std::logic_error(
                "negativity_at_resonance: matrix route and invariant route disagree");
        }
    }
    return rep;
}

EntanglementCondition entanglement_condition(const SystemParams& sys) {
    sys.validate();
    EntanglementCondition c;

    const FrequencyResponse r = response_at(sys.omega_m(), sys);
    const double nb = sys.n_th_b();
    c.lhs_exact = (2.0 * nb + 1.0) * (std::norm(r.alpha_b) + std::norm(r.beta_b));
    c.rhs_exact = 2.0 * std::abs(r.g_cross);
    c.satisfied_exact = c.lhs_exact < c.rhs_exact;

    const ThresholdReport t =
        entanglement_threshold(sys.cavity_a.mech, sys.gravity.lambda_form, sys.constants);
    c.lhs_reduced = t.lhs;
    c.rhs_reduced = t.rhs;
    c.satisfied_reduced = t.satisfied;
    c.tq_bound = t.tq_bound;
    return c;
}

DecoherenceReport decoherence_bound(const MechanicalParams& mech, DecoherenceRegime regime,
                                    const DecoherenceGeometry& geom, double lambda_form,
                                    const PhysicalConstants& pc) {
    mech.validate("mechanical");
    if (!(geom.d > 0.0) || !(geom.delta_xq > 0.0)) {
        throw std::domain_error("decoherence_bound: separation and quantum scale must be > 0");
    }
    DecoherenceReport rep;
    const double ratio = geom.delta_xq / geom.d;
    double h_ab; // |interaction energy| in J
    if (regime == DecoherenceRegime::gaussian) {
        if (ratio > 0.1) {
            rep.warning = "gaussian regime expects delta_xq << d (ratio " +
                          std::to_string(ratio) + ")";
        }
        h_ab = 2.0 * lambda_form * pc.G_newton * mech.mass * mech.density *
               geom.delta_xq * geom.delta_xq;
    } else {
        if (ratio < 10.0) {
            rep.warning = "non-gaussian regime expects delta_xq >> d (ratio " +
                          std::to_string(ratio) + ")";
        }
        h_ab = pc.G_newton * mech.mass * mech.mass / geom.d;
    }
    rep.interaction_rate = h_ab / pc.hbar;
    rep.decoherence_rate = 2.0 * mech.mass * mech.gamma_m() * pc.k_B * mech.temperature *
                           geom.delta_xq * geom.delta_xq / (pc.hbar * pc.hbar);
    rep.satisfied = rep.interaction_rate >= rep.decoherence_rate;
    return rep;
}

} // namespace gravcorr
