#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "contact_optics/contact.hpp"
#include "contact_optics/errors.hpp"
#include "oracles.hpp"

namespace co = contact_optics;
using co::ContactState;
using co::Geometry;
using co::GeometryKind;
using co::Vec;
using std::numbers::pi;

namespace {

const Geometry kE2{GeometryKind::Euclidean2};
const Geometry kE3{GeometryKind::Euclidean3};
const Geometry kH{GeometryKind::HyperbolicHalfPlane};

ContactState random_state(Geometry geom, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(-4.0, 4.0), height(0.5, 3.0), turn(0.0, 2.0 * pi), polar(0.0, pi);
    if (geom.kind == GeometryKind::Euclidean3) return {Vec{coord(rng), coord(rng), coord(rng)}, Vec{polar(rng), turn(rng)}};
    if (geom.hyperbolic()) return {Vec{coord(rng), height(rng)}, Vec{turn(rng)}};
    return {Vec{coord(rng), coord(rng)}, Vec{turn(rng)}};
}

TEST(Momentum, Examples) {
    const auto p = co::momentum_of(kE2, 1.0, {Vec{0, 0}, Vec{pi / 2}});
    EXPECT_NEAR(p[0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(p[1], 1.0);

    const auto q = co::momentum_of(kH, 1.0, {Vec{0, 2}, Vec{pi / 2}});
    EXPECT_NEAR(q[0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(q[1], 0.5);

    const auto r = co::momentum_of(kE3, 1.0, {Vec{0, 0, 0}, Vec{0.0, 0.0}});
    EXPECT_DOUBLE_EQ(r[0], 0.0);
    EXPECT_DOUBLE_EQ(r[1], 0.0);
    EXPECT_DOUBLE_EQ(r[2], 1.0);
}

TEST(Liouville, Examples) {
    // Contact angle theta = 0 is the upward ray of the vacuum chart: lambda = -sin(0) dx + cos(0) dy.
    const double alpha = co::direction_angle_from_contact_angle(0.0);
    const auto l = co::liouville_form(kE2, 1.0, {Vec{0, 0}, Vec{alpha}});
    EXPECT_NEAR(l[0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(l[1], 1.0);

    const auto h = co::liouville_form(kH, 1.0, {Vec{0, 1}, Vec{0.0}});
    EXPECT_DOUBLE_EQ(h[0], -1.0);
    EXPECT_DOUBLE_EQ(h[1], 0.0);

    const auto e = co::liouville_form(kE3, 2.0, {Vec{0, 0, 0}, Vec{pi / 2, 0.0}});
    EXPECT_DOUBLE_EQ(e[0], 2.0);
    EXPECT_DOUBLE_EQ(e[1], 0.0);
    EXPECT_NEAR(e[2], 0.0, 1e-15);
}

TEST(Liouville, AgreesWithVacuumContactChart) {
    // In the contact-angle vacuum chart lambda = -sin(theta) dx + sqrt(cos^2 theta + n^2 - 1) dy, n = 1.
    for (int k = 0; k < 64; ++k) {
        const double theta = -pi / 2 + pi * (k + 0.5) / 64.0;
        const auto l = co::liouville_form(kE2, 1.0, {Vec{0.3, -0.7}, Vec{co::direction_angle_from_contact_angle(theta)}});
        EXPECT_NEAR(l[0], -std::sin(theta), 1e-15);
        EXPECT_NEAR(l[1], std::sqrt(std::cos(theta) * std::cos(theta)), 1e-15);
    }
}

TEST(Reeb, Examples) {
    const auto xi = co::reeb_field(kH, 1.0, {Vec{0, 1}, Vec{0.0}});
    EXPECT_DOUBLE_EQ(xi.base_rate[0], -1.0);
    EXPECT_DOUBLE_EQ(xi.base_rate[1], 0.0);
    EXPECT_DOUBLE_EQ(xi.fiber_rate[0], -1.0);

    const auto e = co::reeb_field(kE2, 2.0, {Vec{0, 0}, Vec{pi / 2}});
    EXPECT_NEAR(e.base_rate[0], 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(e.base_rate[1], 0.5);
    EXPECT_DOUBLE_EQ(e.fiber_rate[0], 0.0);

    const auto t = co::reeb_field(kE3, 1.0, {Vec{0, 0, 0}, Vec{0.0, 0.0}});
    EXPECT_DOUBLE_EQ(t.base_rate[2], 1.0);
    EXPECT_DOUBLE_EQ(t.fiber_rate[0], 0.0);
    EXPECT_DOUBLE_EQ(t.fiber_rate[1], 0.0);
}

TEST(Reeb, MatchesHalfPlaneFieldFormula) {
    std::mt19937_64 rng(1);
    for (double n : {1.0, 1.33, 2.0}) {
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(kH, rng);
            const double y = s.base[1], phi = s.fiber[0];
            const auto xi = co::reeb_field(kH, n, s);
            EXPECT_NEAR(xi.base_rate[0], -y * std::cos(phi) / n, 1e-14);
            EXPECT_NEAR(xi.base_rate[1], y * std::sin(phi) / n, 1e-14);
            EXPECT_NEAR(xi.fiber_rate[0], -std::cos(phi) / n, 1e-15);
        }
    }
}

TEST(Invariants, CosphereUnitSpeedAndCoordinateSpeed) {
    std::mt19937_64 rng(2);
    for (auto geom : {kE2, kE3, kH}) {
        for (double n : {1.0, 1.33, 2.0}) {
            for (int i = 0; i < 1000; ++i) {
                const auto s = random_state(geom, rng);
                const auto p = co::momentum_of(geom, n, s);
                EXPECT_NEAR(co::dot(p, p) / co::conformal_factor(geom, n, s.base), 1.0, 1e-12);
                const auto v = co::reeb_field(geom, n, s).base_rate;
                EXPECT_NEAR(co::g_inner(geom, n, s.base, v, v), 1.0, 1e-10);
                if (!geom.hyperbolic()) EXPECT_NEAR(co::norm(v), 1.0 / n, 1e-12);
            }
        }
    }
}

TEST(ClosedFlow, VacuumPlanarExample) {
    // Contact angle pi/2 in the vacuum chart, flowed for t = 2.
    const ContactState s{Vec{0, 0}, Vec{co::direction_angle_from_contact_angle(pi / 2)}};
    const auto out = co::closed_flow(kE2, 1.0, s, 2.0);
    EXPECT_NEAR(out.base[0], -2.0, 1e-15);
    EXPECT_NEAR(out.base[1], 0.0, 1e-15);
    EXPECT_NEAR(co::contact_angle_from_direction_angle(out.fiber[0]), pi / 2, 1e-15);
}

TEST(ClosedFlow, VerticalHalfPlaneGeodesic) {
    const auto out = co::closed_flow(kH, 1.0, {Vec{0, 1}, Vec{pi / 2}}, std::log(2.0));
    EXPECT_NEAR(out.base[0], 0.0, 1e-15);
    EXPECT_NEAR(out.base[1], 2.0, 1e-14);
    EXPECT_NEAR(out.fiber[0], pi / 2, 1e-15);
}

TEST(ClosedFlow, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(4);
    for (auto geom : {kE2, kE3, kH}) {
        const auto s = random_state(geom, rng);
        const auto out = co::closed_flow(geom, 1.33, s, 0.0);
        EXPECT_EQ(out.base, s.base);
        EXPECT_EQ(out.fiber, s.fiber);
    }
}

TEST(ClosedFlow, MatchesVacuumFormula) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> t(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(kE2, rng);
        const double tt = t(rng);
        const double theta = co::contact_angle_from_direction_angle(s.fiber[0]);
        const auto ref = oracle::vacuum_flow(s.base[0], s.base[1], theta, tt);
        const auto out = co::closed_flow(kE2, 1.0, s, tt);
        EXPECT_NEAR(out.base[0], ref.x, 1e-13);
        EXPECT_NEAR(out.base[1], ref.y, 1e-13);
    }
}

TEST(ClosedFlow, MatchesHalfPlaneFormula) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> t(-2.0, 2.0);
    for (double n : {1.0, 1.33, 2.0}) {
        for (int i = 0; i < 500; ++i) {
            const auto s = random_state(kH, rng);
            const double tt = t(rng);
            const auto ref = oracle::half_plane_flow(s.base[0], s.base[1], s.fiber[0], n, tt);
            const auto out = co::closed_flow(kH, n, s, tt);
            const double scale = 1.0 + std::abs(ref.x) + ref.y;
            EXPECT_NEAR(out.base[0], ref.x, 1e-12 * scale);
            EXPECT_NEAR(out.base[1], ref.y, 1e-12 * scale);
            EXPECT_NEAR(oracle::angle_gap(out.fiber[0], ref.angle), 0.0, 1e-12);
        }
    }
}

TEST(ClosedFlow, EuclideanFollowsField) {
    std::mt19937_64 rng(8);
    for (auto geom : {kE2, kE3}) {
        const auto s = random_state(geom, rng);
        const auto out = co::closed_flow(geom, 1.33, s, 1.33);
        EXPECT_NEAR(co::norm(out.base - s.base), 1.0, 1e-14);
    }
}

TEST(ClosedFlow, GroupLaw) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> t(-1.5, 1.5);
    for (auto geom : {kE2, kE3, kH}) {
        for (double n : {1.0, 1.33, 2.0}) {
            for (int i = 0; i < 300; ++i) {
                const auto s = random_state(geom, rng);
                const double t1 = t(rng), t2 = t(rng);
                const auto a = co::closed_flow(geom, n, s, t1 + t2);
                const auto b = co::closed_flow(geom, n, co::closed_flow(geom, n, s, t1), t2);
                EXPECT_LE(co::norm(a.base - b.base), 1e-9);
                for (std::size_t k = 0; k < a.fiber.size(); ++k)
                    EXPECT_LE(oracle::angle_gap(a.fiber[k], b.fiber[k]), 1e-9);
            }
        }
    }
}

TEST(ClosedFlow, GeneratorIsTheReebField) {
    // Central-difference slope at h and h/10 converges to the field at second order.
    std::mt19937_64 rng(10);
    for (auto geom : {kE2, kE3, kH}) {
        for (int i = 0; i < 50; ++i) {
            const auto s = random_state(geom, rng);
            const double n = 1.33;
            const auto xi = co::reeb_field(geom, n, s);
            const auto err = [&](double h) {
                const auto plus = co::closed_flow(geom, n, s, h);
                const auto minus = co::closed_flow(geom, n, s, -h);
                return co::norm((plus.base - minus.base) / (2 * h) - xi.base_rate);
            };
            const double e1 = err(1e-3), e2 = err(1e-4);
            EXPECT_LE(e1, 1e-5);
            if (geom.hyperbolic() && e1 > 1e-12) EXPECT_LT(e2 / e1, 0.02);  // ideal ratio 0.01
        }
    }
}

TEST(ClosedFlow, HalfPlaneTracksAreSemicircles) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> t(-3.0, 3.0);
    for (double n : {1.0, 1.33}) {
        for (int i = 0; i < 300; ++i) {
            const auto s = random_state(kH, rng);
            if (std::abs(std::cos(s.fiber[0])) < 0.05) continue;
            const double c = (s.base[0] * std::cos(s.fiber[0]) - s.base[1] * std::sin(s.fiber[0])) / std::cos(s.fiber[0]);
            const double r = s.base[1] / std::cos(s.fiber[0]);
            const auto geo = co::hyperbolic_geodesic(s);
            EXPECT_NEAR(geo.center_x, c, 1e-12 * (1 + std::abs(c)));
            EXPECT_NEAR(geo.radius, std::abs(r), 1e-12 * std::abs(r));
            const auto out = co::closed_flow(kH, n, s, t(rng));
            const double dx = out.base[0] - c;
            EXPECT_NEAR(dx * dx + out.base[1] * out.base[1], r * r, 1e-9 * (1 + r * r));
        }
    }
}

TEST(ClosedFlow, VacuumSlopeIsMinusCotangentOfContactAngle) {
    for (double theta : {0.3, 1.1, 2.0, -0.7}) {
        const ContactState s{Vec{1.0, 2.0}, Vec{co::direction_angle_from_contact_angle(theta)}};
        const auto a = co::closed_flow(kE2, 1.0, s, 0.7);
        const auto b = co::closed_flow(kE2, 1.0, s, 2.9);
        EXPECT_NEAR((b.base[1] - a.base[1]) / (b.base[0] - a.base[0]), -1.0 / std::tan(theta), 1e-12);
    }
}

TEST(ClosedFlow, ReportsOverflow) {
    EXPECT_THROW(co::closed_flow(kH, 1.0, {Vec{0, 1}, Vec{pi / 2}}, 800.0), co::NumericError);
}

TEST(VerifyReeb, ResidualsOnRandomStates) {
    std::mt19937_64 rng(13);
    const struct {
        Geometry geom;
        double n;
    } cases[] = {{kE2, 1.0}, {kH, 1.33}, {kE3, 2.0}};
    for (const auto& c : cases) {
        for (int i = 0; i < 200; ++i) {
            const auto r = co::verify_reeb(c.geom, c.n, random_state(c.geom, rng));
            EXPECT_LE(r.contraction, 1e-9);
            EXPECT_LE(r.curvature, 1e-6);
        }
    }
}

TEST(VerifyReeb, DetectsAWrongField) {
    const ContactState s{Vec{0.2, 1.5}, Vec{0.4}};
    auto xi = co::reeb_field(kH, 1.0, s);
    xi.fiber_rate[0] += 1e-3;
    EXPECT_GT(co::verify_reeb_field(kH, 1.0, s, xi).curvature, 1e-6);
    auto stretched = co::reeb_field(kE2, 1.0, {Vec{0, 0}, Vec{0.4}});
    stretched.base_rate *= 1.01;
    EXPECT_GT(co::verify_reeb_field(kE2, 1.0, {Vec{0, 0}, Vec{0.4}}, stretched).contraction, 1e-9);
}

TEST(VerifyStrictContact, FlowsPreserveTheForm) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 100; ++i) {
        EXPECT_LE(co::verify_strict_contact(kE2, 1.0, random_state(kE2, rng), 1.7), 1e-6);
        EXPECT_LE(co::verify_strict_contact(kH, 1.33, random_state(kH, rng), 0.8), 1e-6);
        EXPECT_LE(co::verify_strict_contact(kE3, 2.0, random_state(kE3, rng), -1.2), 1e-6);
    }
    for (auto geom : {kE2, kE3, kH}) EXPECT_LE(co::verify_strict_contact(geom, 1.33, random_state(geom, rng), 0.0), 1e-9);
}

TEST(Fiber, DirectionRoundTrip) {
    std::mt19937_64 rng(15);
    for (auto geom : {kE2, kE3, kH}) {
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(geom, rng);
            const auto d = co::fiber_direction(geom, s.fiber);
            const auto back = co::fiber_from_direction(geom, 3.7 * d);
            EXPECT_LE(co::norm(co::fiber_direction(geom, back) - d), 1e-14);
        }
    }
    EXPECT_THROW(co::fiber_from_direction(kE2, Vec{0, 0}), co::DomainError);
}

TEST(Angles, WrapIntoHalfOpenTurn) {
    EXPECT_EQ(co::wrap_angle(0.0), 0.0);
    EXPECT_NEAR(co::wrap_angle(-pi / 2), 1.5 * pi, 1e-15);
    EXPECT_NEAR(co::wrap_angle(5 * pi), pi, 1e-14);
    EXPECT_LT(co::wrap_angle(-1e-300), 2 * pi);
}

}  // namespace
