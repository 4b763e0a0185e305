#pragma once

#include "contact_optics/geometry.hpp"

namespace contact_optics {

/// A point of the unit co-sphere bundle: base point plus fiber angles.
///
/// Fiber conventions (physical direction angles, radians):
///  - Euclidean2: one angle alpha, ray direction (cos a, sin a).
///  - Euclidean3: polar theta in [0, pi] and azimuth phi, direction
///    (sin t cos p, sin t sin p, cos t).
///  - Half-plane: one angle phi, ray direction (-cos phi, sin phi).
/// Azimuthal angles are kept in [0, 2pi).
struct ContactState {
    BasePoint base;
    Vec fiber;
};

using Covector = Vec;

/// A tangent vector to the co-sphere bundle, split into base and fiber parts.
struct StateVelocity {
    Vec base_rate;
    Vec fiber_rate;
};

void validate_state(Geometry geom, const ContactState& s);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double a);

/// Converts the contact-element angle theta of the planar vacuum chart
/// (momentum (-sin theta, cos theta)) into the direction angle alpha used here.
double direction_angle_from_contact_angle(double theta);
double contact_angle_from_direction_angle(double alpha);

/// Unit chart direction of the ray carried by a fiber.
Vec fiber_direction(Geometry geom, const Vec& fiber);

/// Inverse of fiber_direction for any nonzero chart vector.
Vec fiber_from_direction(Geometry geom, const Vec& direction);

/// Momentum covector p with g^{-1}(p, p) = 1.
Covector momentum_of(Geometry geom, double n, const ContactState& s);

/// Liouville form lambda = p_i dx^i at `s`; same components as momentum_of.
Covector liouville_form(Geometry geom, double n, const ContactState& s);

/// Reeb field of the Liouville form at `s`. Its base part is the ray velocity,
/// g-unit and of chart speed 1/n in the Euclidean charts.
StateVelocity reeb_field(Geometry geom, double n, const ContactState& s);

/// Time-t Reeb flow in a homogeneous medium, in closed form.
/// Throws NumericError if the half-plane exponentials overflow.
ContactState closed_flow(Geometry geom, double n, const ContactState& s, double t);

struct ReebResidual {
    double contraction = 0.0;  ///< |lambda(xi) - 1|
    double curvature = 0.0;    ///< max |(i_xi d lambda)_j|
};

inline constexpr double kDefaultFdStep = 1e-5;

/// Checks lambda(xi) = 1 and i_xi d lambda = 0 for the Reeb field at `s`, with
/// d lambda assembled by central differences of liouville_form over all state
/// coordinates.
ReebResidual verify_reeb(Geometry geom, double n, const ContactState& s, double h = kDefaultFdStep);

/// Same check for an arbitrary candidate field `xi`.
ReebResidual verify_reeb_field(Geometry geom, double n, const ContactState& s, const StateVelocity& xi,
                               double h = kDefaultFdStep);

/// max_e |lambda_{phi_t(s)}(D phi_t e) - lambda_s(e)| over the coordinate basis
/// of the state space, with D phi_t from central differences of closed_flow.
double verify_strict_contact(Geometry geom, double n, const ContactState& s, double t, double h = kDefaultFdStep);

/// Center abscissa and radius of the half-plane geodesic through `s`.
/// Requires cos(phi) != 0 (vertical geodesics are lines).
struct Semicircle {
    double center_x = 0.0;
    double radius = 0.0;
};
Semicircle hyperbolic_geodesic(const ContactState& s);

}  // namespace contact_optics
