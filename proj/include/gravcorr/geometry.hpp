#ifndef GRAVCORR_GEOMETRY_HPP
#define GRAVCORR_GEOMETRY_HPP

#include <exception>
#include <string>
#include <vector>

#include "gravcorr/constants.hpp"

namespace gravcorr {

// Uniform-density solid of revolution about the optical axis, described by
// its half-thickness profile c(r) for r in [0, R].
struct BodyShape {
    enum class Kind { sphere, disk };
    Kind kind = Kind::sphere;
    double radius = 0.0;     // m
    double thickness = 0.0;  // m, disks only
    double density = 0.0;    // kg/m^3

    static BodyShape sphere(double radius, double density);
    static BodyShape disk(double radius, double thickness, double density);

    double half_thickness_at(double r) const;
    double half_extent() const;  // on-axis half length (R or h/2)
    double volume() const;
    double mass() const { return density * volume(); }
    void validate() const;
};

// Contact separation of a coaxial pair (centre-to-centre along the axis).
double contact_separation(const BodyShape& a, const BodyShape& b);

struct QuadratureOptions {
    double rel_tol = 1e-8;  // per force evaluation
};

// Thrown when the nested quadrature cannot reach the requested tolerance;
// carries the best estimate and its error bound.
class QuadratureError : public std::exception {
public:
    QuadratureError(std::string msg, double estimate, double error_bound)
        : msg_(std::move(msg)), estimate_(estimate), error_bound_(error_bound) {}
    const char* what() const noexcept override { return msg_.c_str(); }
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    std::string msg_;
    double estimate_;
    double error_bound_;
};

struct ForceResult {
    double force = 0.0;        // N, magnitude of the mutual attraction
    double est_rel_err = 0.0;
};

// Mutual Newtonian attraction along the axis at centre separation d. The
// pairwise 6-D mass integral reduces, via the axial symmetry and the exact
// in-thickness integration, to three nested 1-D quadratures over
// (r_1, r_2, relative angle); the angular kernel is a difference of asinh
// terms, log-singular only where the surfaces touch.
ForceResult axial_force(const BodyShape& a, const BodyShape& b, double d,
                        const QuadratureOptions& opts = {});

// Lambda normalisation. The derived convention matches the point-mass
// relation (Lambda -> V/d^3 far away); the alternative scales by 2 to match
// the published touching-sphere value pi/3.
enum class LambdaConvention { derived, paper };

struct FormFactorResult {
    double lambda = 0.0;
    double est_rel_err = 0.0;
};

// Dimensionless gravitational spring constant |dF/dd|/(2 m G rho), by
// Richardson-extrapolated finite differences of axial_force (one-sided
// stencils next to contact).
FormFactorResult form_factor(const BodyShape& a, const BodyShape& b, double d,
                             LambdaConvention conv = LambdaConvention::derived,
                             const QuadratureOptions& opts = {});

struct FormFactorCurve {
    std::vector<double> d;          // m
    std::vector<double> lambda;
    std::vector<double> est_rel_err;
    std::size_t argmax = 0;
};

FormFactorCurve form_factor_curve(const BodyShape& a, const BodyShape& b, double d_min,
                                  double d_max, int n_points,
                                  LambdaConvention conv = LambdaConvention::derived,
                                  const QuadratureOptions& opts = {});

} // namespace gravcorr

#endif
