#pragma once

// Independent reference formulas used only by tests. Nothing here calls into
// the library's flow or refraction code.

#include <cmath>
#include <numbers>
#include <random>

namespace oracle {

struct Planar {
    double x, y, angle;
};

/// Vacuum planar flow in the contact-angle chart: x - t sin(theta), y + t cos(theta).
inline Planar vacuum_flow(double x, double y, double theta, double t) {
    return {x - t * std::sin(theta), y + t * std::cos(theta), theta};
}

/// Half-plane Reeb flow in rational closed form, with e = exp(2t/n). The angle uses
/// atan2 on the tangent's numerator and denominator, both divided by
/// the (negative) common denominator so the quadrant is that of the flow.
inline Planar half_plane_flow(double x, double y, double phi, double n, double t) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double e = std::exp(2.0 * t / n);
    const double h = std::exp(t / n);
    const double den = (s - 1.0) * e - s - 1.0;
    const double xt = ((x * s + y * c - x) * e - x * s - y * c - x) / den;
    const double yt = -2.0 * y * h / den;
    // tan(phi_t) = -((1 - s) e - s - 1) / (2 h c); sin and cos of phi_t share the sign of -den > 0.
    const double num = -((-s + 1.0) * e - s - 1.0);
    const double dd = 2.0 * h * c;
    double at = std::atan2(num / -den, dd / -den);
    if (at < 0) at += 2.0 * std::numbers::pi;
    return {xt, yt, at};
}

/// Scalar Snell law; returns NaN beyond the critical angle.
inline double snell_angle(double n1, double n2, double incidence) {
    const double s = n1 / n2 * std::sin(incidence);
    return s > 1.0 ? std::nan("") : std::asin(s);
}

inline double deg(double d) { return d * std::numbers::pi / 180.0; }
inline double to_deg(double r) { return r * 180.0 / std::numbers::pi; }

/// Intersection parameter of the line p + s d with the plane dot(nrm, x) = c (2D).
inline double line_plane(double px, double py, double dx, double dy, double nx, double ny, double c) {
    return (c - (nx * px + ny * py)) / (nx * dx + ny * dy);
}

inline double angle_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
    return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace oracle
