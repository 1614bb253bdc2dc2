#include "gravcorr/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gravcorr {

namespace {
void require_positive(double v, const std::string& where, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(where + "." + name + ": must be > 0 (got " +
                                std::to_string(v) + ")");
    }
}
} // namespace

void MechanicalParams::validate(const std::string& where) const {
    require_positive(omega_m, where, "omega_m");
    require_positive(mass, where, "mass");
    require_positive(density, where, "density");
    if (!(q_m >= 1.0)) {
        throw std::domain_error(where + ".q_m: must be >= 1 (got " + std::to_string(q_m) + ")");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw std::domain_error(where + ".temperature: must be >= 0");
    }
}

double OpticalParams::gamma(const PhysicalConstants& pc) const {
    if (bandwidth) return *bandwidth;
    if (!finesse) {
        throw std::domain_error("optical: either finesse or bandwidth must be set");
    }
    return kPi * pc.c / (2.0 * cavity_length * *finesse);
}

void OpticalParams::validate(const std::string& where) const {
    require_positive(power_cav, where, "power_cav");
    require_positive(wavelength, where, "wavelength");
    require_positive(cavity_length, where, "cavity_length");
    if (!finesse && !bandwidth) {
        throw std::domain_error(where + ": either finesse or bandwidth must be set");
    }
    if (finesse) require_positive(*finesse, where, "finesse");
    if (bandwidth) require_positive(*bandwidth, where, "bandwidth");
}

void GravityCoupling::validate() const {
    if (!(lambda_form > 0.0)) {
        throw std::domain_error("gravity.lambda_form: must be > 0");
    }
}

const char* to_string(GravityModel m) {
    switch (m) {
        case GravityModel::quantum: return "quantum";
        case GravityModel::schroedinger_newton: return "schroedinger_newton";
        case GravityModel::none: return "none";
    }
    return "?";
}

GravityModel gravity_model_from_string(const std::string& s) {
    if (s == "quantum") return GravityModel::quantum;
    if (s == "schroedinger_newton" || s == "schroedinger-newton" || s == "sn")
        return GravityModel::schroedinger_newton;
    if (s == "none") return GravityModel::none;
    throw std::domain_error("gravity_model: unknown value '" + s +
                            "' (expected quantum|schroedinger_newton|none)");
}

void SystemParams::validate() const {
    cavity_a.mech.validate("mechanical_a");
    cavity_b.mech.validate("mechanical_b");
    cavity_a.opt.validate("optical_a");
    cavity_b.opt.validate("optical_b");
    gravity.validate();
    // The two-cavity model assumes identical oscillators.
    auto same = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
    };
    if (!same(cavity_a.mech.omega_m, cavity_b.mech.omega_m)) {
        throw std::domain_error("mechanical_b.omega_m: the two oscillators must share omega_m");
    }
    if (!same(cavity_a.mech.mass, cavity_b.mech.mass)) {
        throw std::domain_error("mechanical_b.mass: the two oscillators must share the mass");
    }
    if (!same(cavity_a.mech.density, cavity_b.mech.density)) {
        throw std::domain_error("mechanical_b.density: the two oscillators must share the density");
    }
}

double SystemParams::omega_q_a() const {
    return coupling_rate_omega_q(cavity_a.opt, cavity_a.mech, constants);
}

double SystemParams::omega_q_b() const {
    return coupling_rate_omega_q(cavity_b.opt, cavity_b.mech, constants);
}

double SystemParams::cooperativity_a() const {
    return cooperativity(omega_q_a(), gamma_a(), cavity_a.mech.gamma_m());
}

double SystemParams::cooperativity_b() const {
    return cooperativity(omega_q_b(), gamma_b(), cavity_b.mech.gamma_m());
}

double SystemParams::n_th_a() const { return thermal_occupation(cavity_a.mech, constants); }
double SystemParams::n_th_b() const { return thermal_occupation(cavity_b.mech, constants); }

double SystemParams::omega_g_sq() const {
    if (model == GravityModel::none) return 0.0;
    return gravity.omega_g_sq(constants, cavity_a.mech.density);
}

std::optional<std::string> SystemParams::adiabatic_warning() const {
    const double g = std::min(gamma_a(), gamma_b());
    if (omega_m() > g / 10.0) {
        std::ostringstream os;
        os << "omega_m = " << omega_m() << " rad/s is not small against the cavity bandwidth "
           << g << " rad/s; the broadband-cavity (adiabatic) output relations are inaccurate";
        return os.str();
    }
    return std::nullopt;
}

double coupling_rate_omega_q(const OpticalParams& opt, const MechanicalParams& mech,
                             const PhysicalConstants& pc) {
    opt.validate("optical");
    mech.validate("mechanical");
    return std::sqrt(2.0 * opt.power_cav * opt.omega_0(pc) /
                     (mech.mass * pc.c * opt.cavity_length * mech.omega_m));
}

double cooperativity(double omega_q, double gamma, double gamma_m) {
    if (!(gamma > 0.0) || !(gamma_m > 0.0)) {
        throw std::domain_error("cooperativity: gamma and gamma_m must be > 0");
    }
    return 2.0 * omega_q * omega_q / (gamma * gamma_m);
}

double thermal_occupation(const MechanicalParams& mech, const PhysicalConstants& pc) {
    mech.validate("mechanical");
    return pc.k_B * mech.temperature / (pc.hbar * mech.omega_m);
}

ThresholdReport entanglement_threshold(const MechanicalParams& mech, double lambda_form,
                                       const PhysicalConstants& pc) {
    mech.validate("mechanical");
    if (!(lambda_form > 0.0)) throw std::domain_error("lambda_form: must be > 0");
    ThresholdReport r{};
    r.lhs = mech.gamma_m() * pc.k_B * mech.temperature;
    // The Lambda = 2 disk geometry makes the right side exactly hbar*G*rho.
    r.rhs = pc.hbar * pc.G_newton * mech.density * (lambda_form / 2.0);
    r.tq_bound = pc.hbar * lambda_form * pc.G_newton * mech.density /
                 (2.0 * pc.k_B * mech.omega_m);
    r.satisfied = r.lhs <= r.rhs;
    return r;
}

SystemParams default_system() {
    SystemParams sys;
    MechanicalParams mech;
    mech.omega_m = kTwoPi * 1.0;
    mech.q_m = 1e6;
    mech.mass = 1e-3;
    mech.density = 19000.0;
    mech.temperature = 300.0;
    OpticalParams opt;
    opt.power_cav = 2000.0;
    opt.wavelength = 1064e-9;
    opt.cavity_length = 1.0;
    opt.finesse = 6000.0;
    sys.cavity_a = {mech, opt};
    sys.cavity_b = {mech, opt};
    sys.gravity.lambda_form = 2.0;
    sys.model = GravityModel::quantum;
    return sys;
}

} // namespace gravcorr
