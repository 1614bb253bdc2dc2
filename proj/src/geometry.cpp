#include "gravcorr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace gravcorr {

namespace {

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

const double kGNewton = PhysicalConstants{}.G_newton;

// In-thickness double integral of (z2-z1)/rho^3 in closed form:
//   Z = [asinh((d-c2+c1)/a) - asinh((d-c2-c1)/a)]
//     - [asinh((d+c2+c1)/a) - asinh((d+c2-c1)/a)],
// a the transverse column distance, c1/c2 the half-thicknesses, d the centre
// separation. Written as a single log of a ratio of u + sqrt(u^2+a^2) terms
// so a -> 0 (touching columns) stays finite until the genuine log
// singularity, with the conjugate form guarding negative u.
inline double stable_asinh_num(double u, double a2) {
    if (u >= 0.0) return u + std::sqrt(u * u + a2);
    return a2 / (std::sqrt(u * u + a2) - u);
}

inline double column_kernel(double a2, double c1, double c2, double d) {
    const double num = stable_asinh_num(d - c2 + c1, a2) * stable_asinh_num(d + c2 - c1, a2);
    const double den = stable_asinh_num(d - c2 - c1, a2) * stable_asinh_num(d + c2 + c1, a2);
    return std::log(num / den);
}

// Radial parametrisation that keeps every integrand smooth: spheres use
// r = R sin t (so the half-thickness R cos t has no endpoint cusp), disks the
// identity. Writes radius and the Jacobian dr/dt.
struct RadialMap {
    const BodyShape& body;
    double t_max() const {
        return body.kind == BodyShape::Kind::sphere ? 0.5 * kPi : body.radius;
    }
    void at(double t, double& r, double& jac) const {
        if (body.kind == BodyShape::Kind::sphere) {
            r = body.radius * std::sin(t);
            jac = body.radius * std::cos(t);
        } else {
            r = t;
            jac = 1.0;
        }
    }
    double t_of_r(double r) const {
        if (body.kind == BodyShape::Kind::sphere) {
            return std::asin(std::min(r / body.radius, 1.0));
        }
        return r;
    }
};

struct ForceIntegrand {
    const BodyShape& a;
    const BodyShape& b;
    double d;
    double psi_tol;
    double radial_tol;

    double psi_integral(double r1, double r2, double c1, double c2) const {
        const double dr2 = (r1 - r2) * (r1 - r2);
        const double rr4 = 4.0 * r1 * r2;
        // Floor on the squared column distance: keeps the integrable log
        // singularity at the touching corner finite without moving the
        // integral at any relevant digit.
        const double scale = r1 + r2 + d;
        const double a2_floor = 1e-28 * scale * scale;
        static thread_local tanh_sinh<double> integ(10);
        // Node clustering at psi = 0 resolves the near-touching ridge where
        // the transverse distance vanishes.
        const double v = integ.integrate(
            [&](double psi) {
                const double s = std::sin(0.5 * psi);
                const double a2 = std::max(dr2 + rr4 * s * s, a2_floor);
                return column_kernel(a2, c1, c2, d);
            },
            0.0, kPi, psi_tol);
        return 2.0 * v;
    }

    double r2_integral(double r1) const {
        const double c1 = a.half_thickness_at(r1);
        const RadialMap map{b};
        auto f = [&](double t) {
            double r2, jac;
            map.at(t, r2, jac);
            return jac * r2 * psi_integral(r1, r2, c1, b.half_thickness_at(r2));
        };
        const double t_end = map.t_max();
        const double t_ridge = map.t_of_r(r1);
        double err;
        if (t_ridge > 0.0 && t_ridge < t_end) {
            // Split at the ridge r2 = r1 where the angular profile peaks.
            return gauss_kronrod<double, 31>::integrate(f, 0.0, t_ridge, 8, radial_tol, &err) +
                   gauss_kronrod<double, 31>::integrate(f, t_ridge, t_end, 8, radial_tol, &err);
        }
        return gauss_kronrod<double, 31>::integrate(f, 0.0, t_end, 8, radial_tol, &err);
    }
};

} // namespace

BodyShape BodyShape::sphere(double radius, double density) {
    BodyShape s;
    s.kind = Kind::sphere;
    s.radius = radius;
    s.density = density;
    s.validate();
    return s;
}

BodyShape BodyShape::disk(double radius, double thickness, double density) {
    BodyShape s;
    s.kind = Kind::disk;
    s.radius = radius;
    s.thickness = thickness;
    s.density = density;
    s.validate();
    return s;
}

double BodyShape::half_thickness_at(double r) const {
    if (kind == Kind::sphere) {
        const double t = radius * radius - r * r;
        return t > 0.0 ? std::sqrt(t) : 0.0;
    }
    return 0.5 * thickness;
}

double BodyShape::half_extent() const {
    return kind == Kind::sphere ? radius : 0.5 * thickness;
}

double BodyShape::volume() const {
    if (kind == Kind::sphere) return 4.0 / 3.0 * kPi * radius * radius * radius;
    return kPi * radius * radius * thickness;
}

void BodyShape::validate() const {
    if (!(radius > 0.0)) throw std::domain_error("body: radius must be > 0");
    if (kind == Kind::disk && !(thickness > 0.0)) {
        throw std::domain_error("body: disk thickness must be > 0");
    }
    if (!(density > 0.0)) throw std::domain_error("body: density must be > 0");
}

double contact_separation(const BodyShape& a, const BodyShape& b) {
    return a.half_extent() + b.half_extent();
}

ForceResult axial_force(const BodyShape& a, const BodyShape& b, double d,
                        const QuadratureOptions& opts) {
    a.validate();
    b.validate();
    const double contact = contact_separation(a, b);
    if (d < contact * (1.0 - 1e-12)) {
        throw std::domain_error("axial_force: bodies overlap (d below contact separation)");
    }

    ForceIntegrand fi{a, b, d, opts.rel_tol * 0.1, opts.rel_tol * 0.5};

    double err = 0.0;
    double val;
    try {
        const RadialMap map{a};
        auto f = [&](double t) {
            double r1, jac;
            map.at(t, r1, jac);
            return jac * r1 * fi.r2_integral(r1);
        };
        val = gauss_kronrod<double, 31>::integrate(f, 0.0, map.t_max(), 10, opts.rel_tol, &err);
    } catch (const std::exception& e) {
        throw QuadratureError(std::string("axial_force: quadrature failed: ") + e.what(), 0.0,
                              1.0);
    }
    const double scale = 2.0 * kPi * a.density * b.density * kGNewton;
    const double force = scale * val;
    const double rel = std::abs(val) > 0.0 ? err / std::abs(val) : 0.0;
    if (rel > 10.0 * opts.rel_tol) {
        throw QuadratureError("axial_force: quadrature did not converge to tolerance", force,
                              scale * err);
    }
    ForceResult r;
    r.force = force;
    r.est_rel_err = std::max(rel, opts.rel_tol * 0.5);
    return r;
}

namespace {

// First derivative of the force with an error estimate. Central three-level
// Richardson away from contact, one-sided 4-point stencil (two step sizes)
// next to it.
struct DerivativeResult {
    double value;
    double err;
};

DerivativeResult force_derivative(const BodyShape& a, const BodyShape& b, double d,
                                  const QuadratureOptions& opts) {
    const double contact = contact_separation(a, b);
    auto F = [&](double x) { return axial_force(a, b, x, opts).force; };

    const double room = d - contact;
    double h0 = 0.02 * d;
    if (room > 2.5 * h0) {
        // Central differences, Richardson over h, h/2, h/4.
        auto central = [&](double h) { return (F(d + h) - F(d - h)) / (2.0 * h); };
        const double d1 = central(h0);
        const double d2 = central(h0 / 2.0);
        const double d4 = central(h0 / 4.0);
        const double r1 = (4.0 * d2 - d1) / 3.0;
        const double r2 = (4.0 * d4 - d2) / 3.0;
        const double rr = (16.0 * r2 - r1) / 15.0;
        return {rr, std::abs(rr - r2)};
    }
    // One-sided, stepping away from contact.
    h0 = std::min(0.01 * d, std::max(room, 1e-3 * d));
    auto onesided = [&](double h) {
        const double f0 = F(d), f1 = F(d + h), f2 = F(d + 2.0 * h), f3 = F(d + 3.0 * h);
        return (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h);
    };
    const double d1 = onesided(h0);
    const double d2 = onesided(h0 / 2.0);
    const double ext = (8.0 * d2 - d1) / 7.0;
    return {ext, std::abs(ext - d2)};
}

} // namespace

FormFactorResult form_factor(const BodyShape& a, const BodyShape& b, double d,
                             LambdaConvention conv, const QuadratureOptions& opts) {
    if (a.kind != b.kind || std::abs(a.radius - b.radius) > 1e-12 * a.radius ||
        (a.kind == BodyShape::Kind::disk &&
         std::abs(a.thickness - b.thickness) > 1e-12 * a.thickness)) {
        throw std::domain_error("form_factor: requires an identical body pair");
    }
    const DerivativeResult dF = force_derivative(a, b, d, opts);
    const double m = a.mass();
    double lambda = std::abs(dF.value) / (2.0 * m * kGNewton * a.density);
    if (conv == LambdaConvention::paper) lambda *= 2.0;
    FormFactorResult r;
    r.lambda = lambda;
    r.est_rel_err =
        std::abs(dF.value) > 0.0 ? dF.err / std::abs(dF.value) + opts.rel_tol : 1.0;
    return r;
}

FormFactorCurve form_factor_curve(const BodyShape& a, const BodyShape& b, double d_min,
                                  double d_max, int n_points, LambdaConvention conv,
                                  const QuadratureOptions& opts) {
    const double contact = contact_separation(a, b);
    if (d_min < contact * (1.0 - 1e-12)) {
        throw std::domain_error("form_factor_curve: d_min below contact separation");
    }
    if (!(d_max >= d_min) || n_points < 1) {
        throw std::domain_error("form_factor_curve: bad range");
    }
    FormFactorCurve c;
    c.d.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double d =
            n_points == 1 ? d_min : d_min + (d_max - d_min) * i / (n_points - 1);
        const FormFactorResult r = form_factor(a, b, d, conv, opts);
        c.d.push_back(d);
        c.lambda.push_back(r.lambda);
        c.est_rel_err.push_back(r.est_rel_err);
        if (r.lambda > c.lambda[c.argmax]) c.argmax = c.d.size() - 1;
    }
    return c;
}

} // namespace gravcorr
