#ifndef GRAVCORR_ENTANGLEMENT_HPP
#define GRAVCORR_ENTANGLEMENT_HPP

#include <Eigen/Core>

#include "gravcorr/params.hpp"

namespace gravcorr {

// Covariance matrix of the two sideband modes (X_A, Y_A, X_B, Y_B) filtered
// around the mechanical resonance, vacuum normalised to 1 ([X, Y^dag] = 2i).
//
// The X-Y intra-cavity entry is complex at a single sideband frequency; its
// real part lives in the symmetric matrix and the imaginary part is carried
// alongside, so determinants can be taken over the full Hermitian object
// (they depend on the entry only through its squared magnitude).
struct CovMatrix4 {
    Eigen::Matrix4d v = Eigen::Matrix4d::Identity();
    double im_k = 0.0;          // Im of the X-Y entry of each single-cavity block
    double delta_omega = 0.0;   // rad/s, bandwidth metadata (>= gamma_m)

    Eigen::Matrix4cd hermitian() const;
};

struct NegativityReport {
    double e_n = 0.0;
    double sigma = 0.0;          // det V_A + det V_B - 2 det V_AB
    double det_v = 0.0;
    bool entangled = false;
    // Sides of the resonance-form entanglement condition
    // (2n+1)(|alpha|^2+|beta|^2) < 2|G|, read off the matrix invariants.
    double condition_lhs = 0.0;
    double condition_rhs = 0.0;
};

// Two-mode covariance at the mechanical resonance, Eq.-of-motion coefficients
// evaluated at omega_m. Requires symmetric cavities (equal omega_q and
// temperature); callers must symmetrise the powers first.
CovMatrix4 covariance_at_resonance(const SystemParams& sys, double delta_omega);

// Logarithmic negativity from the smaller partially transposed symplectic
// eigenvalue, via the two-mode determinant invariants.
NegativityReport log_negativity(const CovMatrix4& v);

// covariance_at_resonance + log_negativity, with the closed-form resonance
// expression -ln[sqrt(1+|G|^2+Theta) - |G|] checked against the determinant
// route to 1e-9.
NegativityReport negativity_at_resonance(const SystemParams& sys, double delta_omega);

struct EntanglementCondition {
    bool satisfied_exact = false;   // resonance condition Theta < 2|G|
    double lhs_exact = 0.0;
    double rhs_exact = 0.0;
    bool satisfied_reduced = false; // gamma_m k_B T <= hbar G rho (Lambda/2 folded)
    double lhs_reduced = 0.0;       // W
    double rhs_reduced = 0.0;       // W
    double tq_bound = 0.0;          // K
};

EntanglementCondition entanglement_condition(const SystemParams& sys);

enum class DecoherenceRegime { gaussian, non_gaussian };

struct DecoherenceGeometry {
    double d = 0.0;         // m, mean separation
    double delta_xq = 0.0;  // m, characteristic quantum scale
};

struct DecoherenceReport {
    double interaction_rate = 0.0;   // 1/s
    double decoherence_rate = 0.0;   // 1/s
    bool satisfied = false;
    std::optional<std::string> warning;  // regime/geometry mismatch
};

// Interaction-vs-decoherence rate comparison for the two regimes of the
// quantum scale against the separation: the compact (Gaussian) scale uses the
// quadratic coupling 2*Lambda*G*m*rho*dxq^2, the delocalised one G*m^2/d.
DecoherenceReport decoherence_bound(const MechanicalParams& mech, DecoherenceRegime regime,
                                    const DecoherenceGeometry& geom, double lambda_form,
                                    const PhysicalConstants& pc = {});

} // namespace gravcorr

#endif
