#ifndef GRAVCORR_CONSTANTS_HPP
#define GRAVCORR_CONSTANTS_HPP

namespace gravcorr {

// CODATA values, fixed project-wide.
struct PhysicalConstants {
    double G_newton = 6.674e-11;  // m^3 kg^-1 s^-2
    double hbar     = 1.0546e-34; // J s
    double k_B      = 1.381e-23;  // J/K
    double c        = 2.998e8;    // m/s
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSecondsPerYear = 3.156e7;

} // namespace gravcorr

#endif
