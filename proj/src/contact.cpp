#include "contact_optics/contact.hpp"

#include <algorithm>
#include <numbers>

#include "contact_optics/errors.hpp"

namespace contact_optics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxStateDim = 5;

/// Flattened state coordinates (base..., fiber...).
struct StateCoords {
    std::array<double, kMaxStateDim> q{};
    std::size_t size = 0;
};

StateCoords flatten(const ContactState& s) {
    StateCoords c;
    for (double v : s.base) c.q[c.size++] = v;
    for (double v : s.fiber) c.q[c.size++] = v;
    return c;
}

ContactState unflatten(Geometry geom, const StateCoords& c) {
    ContactState s{Vec(geom.dim()), Vec(geom.fiber_dim())};
    for (std::size_t i = 0; i < geom.dim(); ++i) s.base[i] = c.q[i];
    for (std::size_t i = 0; i < geom.fiber_dim(); ++i) s.fiber[i] = c.q[geom.dim() + i];
    return s;
}

ContactState nudged(Geometry geom, const ContactState& s, std::size_t k, double delta) {
    auto c = flatten(s);
    c.q[k] += delta;
    return unflatten(geom, c);
}

/// Central-difference step for coordinate k, shrunk near the half-plane edge.
double fd_step(Geometry geom, const ContactState& s, std::size_t k, double h) {
    if (geom.hyperbolic() && k == 1) return std::min(h, 0.25 * s.base[1]);
    return h;
}

}  // namespace

void validate_state(Geometry geom, const ContactState& s) {
    validate_base_point(geom, s.base);
    if (s.fiber.size() != geom.fiber_dim()) throw DomainError("fiber has wrong number of angles");
    if (!all_finite(s.fiber)) throw DomainError("fiber has non-finite angles");
}

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod of a tiny negative number can round up to exactly 2pi.
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double direction_angle_from_contact_angle(double theta) { return wrap_angle(theta + 0.5 * std::numbers::pi); }

double contact_angle_from_direction_angle(double alpha) { return wrap_angle(alpha - 0.5 * std::numbers::pi); }

Vec fiber_direction(Geometry geom, const Vec& fiber) {
    switch (geom.kind) {
        case GeometryKind::Euclidean2: return Vec{std::cos(fiber[0]), std::sin(fiber[0])};
        case GeometryKind::Euclidean3: {
            const double st = std::sin(fiber[0]);
            return Vec{st * std::cos(fiber[1]), st * std::sin(fiber[1]), std::cos(fiber[0])};
        }
        case GeometryKind::HyperbolicHalfPlane: return Vec{-std::cos(fiber[0]), std::sin(fiber[0])};
    }
    return {};
}

Vec fiber_from_direction(Geometry geom, const Vec& d) {
    if (d.size() != geom.dim()) throw std::invalid_argument("fiber_from_direction: dimension mismatch");
    const double len = norm(d);
    if (!(len > 0.0)) throw DomainError("fiber_from_direction: zero direction");
    switch (geom.kind) {
        case GeometryKind::Euclidean2: return Vec{wrap_angle(std::atan2(d[1], d[0]))};
        case GeometryKind::Euclidean3: {
            const double theta = std::acos(std::clamp(d[2] / len, -1.0, 1.0));
            return Vec{theta, wrap_angle(std::atan2(d[1], d[0]))};
        }
        case GeometryKind::HyperbolicHalfPlane: return Vec{wrap_angle(std::atan2(d[1], -d[0]))};
    }
    return {};
}

Covector momentum_of(Geometry geom, double n, const ContactState& s) {
    // p = sqrt(g) * (unit chart direction); g is conformal so this is g-dual to the ray velocity.
    return std::sqrt(conformal_factor(geom, n, s.base)) * fiber_direction(geom, s.fiber);
}

Covector liouville_form(Geometry geom, double n, const ContactState& s) { return momentum_of(geom, n, s); }

StateVelocity reeb_field(Geometry geom, double n, const ContactState& s) {
    StateVelocity xi{fiber_direction(geom, s.fiber) / std::sqrt(conformal_factor(geom, n, s.base)),
                     Vec(geom.fiber_dim())};
    if (geom.hyperbolic()) xi.fiber_rate[0] = -std::cos(s.fiber[0]) / n;
    return xi;
}

ContactState closed_flow(Geometry geom, double n, const ContactState& s, double t) {
    if (t == 0.0) return s;
    switch (geom.kind) {
        case GeometryKind::Euclidean2:
            if (n == 1.0) {
                // Vacuum chart: x - t sin(theta), y + t cos(theta).
                const double theta = contact_angle_from_direction_angle(s.fiber[0]);
                return {Vec{s.base[0] - t * std::sin(theta), s.base[1] + t * std::cos(theta)}, s.fiber};
            }
            [[fallthrough]];
        case GeometryKind::Euclidean3:
            return {s.base + t * reeb_field(geom, n, s).base_rate, s.fiber};
        case GeometryKind::HyperbolicHalfPlane: {
            const double x = s.base[0];
            const double y = s.base[1];
            const double sp = std::sin(s.fiber[0]);
            const double cp = std::cos(s.fiber[0]);
            const double tau = t / n;
            const double grow = std::exp(tau);
            const double decay = std::exp(-tau);
            // cosh(tau) - sin(phi) sinh(tau), written without cancellation.
            const double den = 0.5 * ((1.0 + sp) * decay + (1.0 - sp) * grow);
            const double sh = std::sinh(tau);
            ContactState out{Vec{x - y * cp * sh / den, y / den},
                             Vec{wrap_angle(std::atan2(0.5 * ((sp - 1.0) * grow + (sp + 1.0) * decay) / den, cp / den))}};
            if (!all_finite(out.base) || !all_finite(out.fiber) || !(out.base[1] > 0.0))
                throw NumericError("closed_flow: half-plane flow overflowed at t/n = " + std::to_string(tau));
            return out;
        }
    }
    return s;
}

ReebResidual verify_reeb(Geometry geom, double n, const ContactState& s, double h) {
    return verify_reeb_field(geom, n, s, reeb_field(geom, n, s), h);
}

ReebResidual verify_reeb_field(Geometry geom, double n, const ContactState& s, const StateVelocity& xi, double h) {
    validate_state(geom, s);
    const std::size_t dim = geom.dim();
    const std::size_t total = dim + geom.fiber_dim();

    ReebResidual res;
    res.contraction = std::abs(dot(liouville_form(geom, n, s), xi.base_rate) - 1.0);

    // jac[i][j] = d Lambda_j / d q_i, Lambda having no fiber components.
    std::array<std::array<double, 3>, kMaxStateDim> jac{};
    for (std::size_t i = 0; i < total; ++i) {
        const double hi = fd_step(geom, s, i, h);
        const Covector plus = liouville_form(geom, n, nudged(geom, s, i, hi));
        const Covector minus = liouville_form(geom, n, nudged(geom, s, i, -hi));
        for (std::size_t j = 0; j < dim; ++j) jac[i][j] = (plus[j] - minus[j]) / (2.0 * hi);
    }
    std::array<double, kMaxStateDim> xi_flat{};
    for (std::size_t i = 0; i < dim; ++i) xi_flat[i] = xi.base_rate[i];
    for (std::size_t i = 0; i < geom.fiber_dim(); ++i) xi_flat[dim + i] = xi.fiber_rate[i];

    for (std::size_t j = 0; j < total; ++j) {
        double comp = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            const double d_ij = (j < dim ? jac[i][j] : 0.0) - (i < dim ? jac[j][i] : 0.0);
            comp += xi_flat[i] * d_ij;
        }
        res.curvature = std::max(res.curvature, std::abs(comp));
    }
    return res;
}

double verify_strict_contact(Geometry geom, double n, const ContactState& s, double t, double h) {
    validate_state(geom, s);
    const std::size_t dim = geom.dim();
    const std::size_t total = dim + geom.fiber_dim();
    const Covector lambda_before = liouville_form(geom, n, s);
    const Covector lambda_after = liouville_form(geom, n, closed_flow(geom, n, s, t));

    double residual = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        const double hk = fd_step(geom, s, k, h);
        const BasePoint plus = closed_flow(geom, n, nudged(geom, s, k, hk), t).base;
        const BasePoint minus = closed_flow(geom, n, nudged(geom, s, k, -hk), t).base;
        const double pulled = dot(lambda_after, (plus - minus) / (2.0 * hk));
        const double original = k < dim ? lambda_before[k] : 0.0;
        residual = std::max(residual, std::abs(pulled - original));
    }
    return residual;
}

Semicircle hyperbolic_geodesic(const ContactState& s) {
    const double cp = std::cos(s.fiber[0]);
    if (cp == 0.0) throw DomainError("vertical half-plane geodesic has no finite center");
    const double x0 = s.base[0];
    const double y0 = s.base[1];
    return {(x0 * cp - y0 * std::sin(s.fiber[0])) / cp, std::abs(y0 / cp)};
}

}  // namespace contact_optics
