#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gravcorr/geometry.hpp"

using namespace gravcorr;

namespace {
constexpr double kG = 6.674e-11;
bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}
} // namespace

TEST_CASE("body bookkeeping") {
    const BodyShape s = BodyShape::sphere(0.05, 19000.0);
    CHECK(rel_close(s.volume(), 4.0 / 3.0 * kPi * 0.05 * 0.05 * 0.05, 1e-14));
    const BodyShape d = BodyShape::disk(0.06, 0.04, 19000.0);
    CHECK(rel_close(d.volume(), kPi * 0.06 * 0.06 * 0.04, 1e-14));
    CHECK(rel_close(contact_separation(s, s), 0.1, 1e-14));
    CHECK(rel_close(contact_separation(d, d), 0.04, 1e-14));
    CHECK_THROWS_AS(BodyShape::disk(0.06, 0.0, 19000.0), std::domain_error);
    CHECK_THROWS_AS(BodyShape::sphere(-1.0, 19000.0), std::domain_error);
}

TEST_CASE("sphere pair force reproduces the point-mass law") {
    const double r = 0.05;
    const BodyShape s = BodyShape::sphere(r, 19000.0);
    const double m = s.mass();
    for (double dfac : {2.0, 2.5, 4.0, 10.0, 50.0}) {
        const double d = dfac * r;
        const ForceResult f = axial_force(s, s, d);
        const double expected = kG * m * m / (d * d);
        CHECK(rel_close(f.force, expected, 1e-6));
    }
}

TEST_CASE("disk pair force limits") {
    const double h = 0.04;
    const BodyShape d = BodyShape::disk(1.5 * h, h, 19000.0);
    const double m = d.mass();

    SUBCASE("far field approaches the point-mass law") {
        const double sep = 20.0 * d.radius;
        const ForceResult f = axial_force(d, d, sep);
        CHECK(rel_close(f.force, kG * m * m / (sep * sep), 0.01));
    }
    SUBCASE("force decreases monotonically with separation") {
        double last = std::numeric_limits<double>::infinity();
        for (double sep : {h, 1.3 * h, 2.0 * h, 4.0 * h, 8.0 * h}) {
            const double f = axial_force(d, d, sep).force;
            CHECK(f < last);
            CHECK(f > 0.0);
            last = f;
        }
    }
    SUBCASE("overlapping bodies are rejected") {
        CHECK_THROWS_AS(axial_force(d, d, 0.9 * h), std::domain_error);
    }
}

TEST_CASE("sphere form factor matches the analytic geometry factor") {
    const double r = 0.05;
    const BodyShape s = BodyShape::sphere(r, 19000.0);

    SUBCASE("separated pair: volume over distance cubed") {
        const FormFactorResult f = form_factor(s, s, 4.0 * r);
        CHECK(rel_close(f.lambda, kPi / 48.0, 1e-4));
    }
    SUBCASE("touching pair") {
        const FormFactorResult f = form_factor(s, s, 2.0 * r);
        CHECK(rel_close(f.lambda, kPi / 6.0, 1e-3));
    }
    SUBCASE("published convention doubles the value") {
        const FormFactorResult a = form_factor(s, s, 4.0 * r, LambdaConvention::derived);
        const FormFactorResult b = form_factor(s, s, 4.0 * r, LambdaConvention::paper);
        CHECK(rel_close(b.lambda, 2.0 * a.lambda, 1e-12));
    }
    SUBCASE("error estimate brackets the truth") {
        const FormFactorResult f = form_factor(s, s, 3.0 * r);
        const double truth = s.volume() / std::pow(3.0 * r, 3);
        CHECK(std::abs(f.lambda - truth) <= std::max(f.est_rel_err, 1e-5) * truth * 10.0);
    }
}

TEST_CASE("disk form factor at contact") {
    const double h = 0.04;
    const BodyShape d = BodyShape::disk(1.5 * h, h, 19000.0);
    const BodyShape s = BodyShape::sphere(0.05, 19000.0);

    const FormFactorResult fd = form_factor(d, d, h);
    // Frozen from an independent quadrature of the same geometry.
    CHECK(rel_close(fd.lambda, 1.042, 0.01));

    SUBCASE("convention-independent ratio against the touching spheres") {
        const FormFactorResult fs = form_factor(s, s, 2.0 * s.radius);
        const double ratio = fd.lambda / fs.lambda;
        CHECK(rel_close(ratio, 1.99, 0.02));
    }
}

TEST_CASE("form factor curve") {
    const double h = 0.05;
    const BodyShape d = BodyShape::disk(1.5 * h, h, 19000.0);

    SUBCASE("disks: monotone decreasing from contact, argmax at the start") {
        const FormFactorCurve c = form_factor_curve(d, d, h, 6.0 * h, 8);
        CHECK(c.argmax == 0);
        for (std::size_t i = 1; i < c.lambda.size(); ++i) {
            CHECK(c.lambda[i] < c.lambda[i - 1]);
        }
    }
    SUBCASE("spheres: matches the analytic curve everywhere") {
        const BodyShape s = BodyShape::sphere(h, 19000.0);
        const FormFactorCurve c = form_factor_curve(s, s, 2.0 * h, 8.0 * h, 6);
        for (std::size_t i = 0; i < c.d.size(); ++i) {
            const double truth = s.volume() / std::pow(c.d[i], 3);
            CHECK(rel_close(c.lambda[i], truth, 1e-3));
        }
    }
    SUBCASE("range below contact rejected") {
        CHECK_THROWS_AS(form_factor_curve(d, d, 0.5 * h, 2.0 * h, 4), std::domain_error);
    }
    SUBCASE("density drops out of the form factor") {
        const BodyShape light = BodyShape::disk(1.5 * h, h, 1000.0);
        const double a = form_factor(d, d, 2.0 * h).lambda;
        const double b = form_factor(light, light, 2.0 * h).lambda;
        CHECK(rel_close(a, b, 1e-8));
    }
}

TEST_CASE("scale invariance of the form factor") {
    const double h = 0.04;
    const double base = form_factor(BodyShape::disk(1.5 * h, h, 19000.0),
                                    BodyShape::disk(1.5 * h, h, 19000.0), 2.0 * h)
                            .lambda;
    for (double k : {0.5, 2.0, 10.0}) {
        const BodyShape d = BodyShape::disk(1.5 * h * k, h * k, 19000.0);
        const double lam = form_factor(d, d, 2.0 * h * k).lambda;
        CHECK(rel_close(lam, base, 1e-5));
    }
}

TEST_CASE("far-field universality") {
    // Lambda * d^3 / V -> 1 for any shape when the separation dwarfs the body.
    const double r = 0.01;
    const BodyShape s = BodyShape::sphere(r, 19000.0);
    const BodyShape d = BodyShape::disk(1.5 * r, r, 19000.0);
    for (const BodyShape& body : {s, d}) {
        const double sep = 50.0 * r;
        const double lam = form_factor(body, body, sep).lambda;
        CHECK(rel_close(lam * sep * sep * sep / body.volume(), 1.0, 0.02));
    }
}

TEST_CASE("quadrature tolerance behaves") {
    const double h = 0.04;
    const BodyShape d = BodyShape::disk(1.5 * h, h, 19000.0);
    QuadratureOptions loose;
    loose.rel_tol = 1e-6;
    QuadratureOptions tight;
    tight.rel_tol = 5e-7;
    const FormFactorResult a = form_factor(d, d, 1.5 * h, LambdaConvention::derived, loose);
    const FormFactorResult b = form_factor(d, d, 1.5 * h, LambdaConvention::derived, tight);
    CHECK(std::abs(a.lambda - b.lambda) <= (a.est_rel_err + b.est_rel_err) * a.lambda);
}
