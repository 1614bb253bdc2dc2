#ifndef GRAVCORR_PARAMS_HPP
#define GRAVCORR_PARAMS_HPP

#include <optional>
#include <string>

#include "gravcorr/constants.hpp"

namespace gravcorr {

// Mechanical oscillator (the movable end mirror of one cavity).
// All angular frequencies in rad/s, SI units throughout.
struct MechanicalParams {
    double omega_m = 0.0;      // rad/s
    double q_m = 0.0;          // quality factor
    double mass = 0.0;         // kg
    double density = 0.0;      // kg/m^3
    double temperature = 0.0;  // K

    double gamma_m() const { return omega_m / q_m; }
    void validate(const std::string& where) const;
};

// Optical cavity drive. The bandwidth (amplitude half-linewidth) is either
// given explicitly or derived from the finesse as gamma = pi*c/(2*L*finesse).
struct OpticalParams {
    double power_cav = 0.0;        // W, intra-cavity
    double wavelength = 1064e-9;   // m
    double cavity_length = 0.0;    // m
    std::optional<double> finesse;
    std::optional<double> bandwidth; // rad/s, overrides finesse when set

    double omega_0(const PhysicalConstants& pc) const {
        return kTwoPi * pc.c / wavelength;
    }
    double gamma(const PhysicalConstants& pc) const;
    void validate(const std::string& where) const;
};

// Gravitational spring between the two mirrors: omega_g^2 = Lambda*G*rho.
struct GravityCoupling {
    double lambda_form = 2.0;

    double omega_g_sq(const PhysicalConstants& pc, double density) const {
        return lambda_form * pc.G_newton * density;
    }
    void validate() const;
};

enum class GravityModel { quantum, schroedinger_newton, none };

const char* to_string(GravityModel m);
GravityModel gravity_model_from_string(const std::string& s);

struct CavityParams {
    MechanicalParams mech;
    OpticalParams opt;
};

struct SystemParams {
    PhysicalConstants constants;
    CavityParams cavity_a;
    CavityParams cavity_b;
    GravityCoupling gravity;
    GravityModel model = GravityModel::quantum;
    // Under the semiclassical model the quantum cross coupling vanishes;
    // whether thermally driven classical motion still transmits is left
    // selectable (off by default).
    bool sn_keep_thermal_cross = false;

    void validate() const;

    double omega_m() const { return cavity_a.mech.omega_m; }
    double gamma_m() const { return cavity_a.mech.gamma_m(); }
    double gamma_a() const { return cavity_a.opt.gamma(constants); }
    double gamma_b() const { return cavity_b.opt.gamma(constants); }
    double omega_q_a() const;
    double omega_q_b() const;
    double cooperativity_a() const;
    double cooperativity_b() const;
    double n_th_a() const;
    double n_th_b() const;
    // omega_g^2 as seen by the dynamics; zero when the model removes the
    // quantum coupling entirely (model == none).
    double omega_g_sq() const;

    // Non-empty when the adiabatic (broadband-cavity) treatment is
    // questionable, i.e. omega_m > gamma/10.
    std::optional<std::string> adiabatic_warning() const;
};

// Optomechanical coupling rate, sqrt(2*P*omega_0/(m*c*L*omega_m)).
double coupling_rate_omega_q(const OpticalParams& opt, const MechanicalParams& mech,
                             const PhysicalConstants& pc = {});

// 2*omega_q^2/(gamma*gamma_m), proportional to the intra-cavity photon number.
double cooperativity(double omega_q, double gamma, double gamma_m);

// High-temperature occupation k_B*T/(hbar*omega_m).
double thermal_occupation(const MechanicalParams& mech, const PhysicalConstants& pc = {});

// Thermal-decoherence budget for steady-state entanglement. Both sides have
// units of watts; the bound is satisfied when lhs <= rhs. tq_bound is the
// largest T/Q_m compatible with the bound at this omega_m and density.
struct ThresholdReport {
    double lhs;       // gamma_m * k_B * T [W]
    double rhs;       // hbar * G * rho * Lambda/2 [W]
    double tq_bound;  // K
    bool satisfied;
};

ThresholdReport entanglement_threshold(const MechanicalParams& mech, double lambda_form,
                                       const PhysicalConstants& pc = {});

// Reference parameter set used throughout: 1 Hz gram-scale mirror in a 2 kW,
// finesse-6000 cavity at room temperature.
SystemParams default_system();

} // namespace gravcorr

#endif
