#pragma once

#include <optional>
#include <vector>

#include "contact_optics/contact.hpp"

namespace contact_optics {

/// Piecewise-constant optical medium: regions are tested in declaration order,
/// first match wins, otherwise the default index applies.
struct Medium {
    Geometry geom;
    double default_index = 1.0;
    std::vector<Region> regions;

    static constexpr int kDefaultRegion = -1;

    void validate() const;

    /// Region id (index into `regions`, or kDefaultRegion) containing `p`.
    [[nodiscard]] int region_at(const BasePoint& p) const;
    /// As above, but a point within 1e-12 of a boundary of `came_from` stays in it.
    [[nodiscard]] int region_at(const BasePoint& p, int came_from) const;
    [[nodiscard]] double index_of(int region) const;
    [[nodiscard]] double index_at(const BasePoint& p) const { return index_of(region_at(p)); }
};

enum class TirMode { Terminate, Reflect };

struct InterfaceEvent {
    double t = 0.0;
    BasePoint point;
    double n_in = 1.0;
    double n_out = 1.0;
    double angle_in = 0.0;                 ///< radians in [0, pi/2], from the normal
    std::optional<double> angle_out;       ///< set when refracted, empty on TIR
    TangentVector direction_in;            ///< g-unit for n_in
    std::optional<TangentVector> direction_out;  ///< g-unit for n_out
    TangentVector normal;                  ///< g-unit for n_in

    [[nodiscard]] bool refracted() const { return angle_out.has_value(); }
};

enum class SampleEvent { None, Refract, Tir };

struct RaySample {
    double t = 0.0;
    ContactState state;
    double n_local = 1.0;
    SampleEvent event = SampleEvent::None;
};

struct Ray {
    ContactState launch;
    std::vector<RaySample> samples;
    std::vector<InterfaceEvent> events;
    bool terminated_by_tir = false;
};

/// One classical Runge-Kutta step of the Reeb field with a fixed index.
/// Throws NumericError if a half-plane state leaves y > 0.
ContactState step_rk4(Geometry geom, double n_local, const ContactState& s, double dt);

/// Fractions of a step that bracket an interface crossing: the state at
/// `before * dt` is still in the starting region, the one at `after * dt` is
/// not, and their base points are within 1e-10 of each other.
struct CrossingBracket {
    double before = 0.0;
    double after = 1.0;
};

/// Bisects the RK4 sub-step from `s_before` over [0, dt]. The region at
/// `s_before` is taken as the starting region.
/// Throws MultipleCrossingsError when the step straddles more than one distinct
/// boundary plane, and std::invalid_argument when it straddles none.
CrossingBracket locate_crossing(const Medium& medium, const ContactState& s_before, double dt);
CrossingBracket locate_crossing(const Medium& medium, const ContactState& s_before, double dt, int start);

/// Angle between a direction and the normal line, measured with the body metric.
double incidence_angle(Geometry geom, double n, const BasePoint& p, const TangentVector& d, const TangentVector& normal);

/// Vector Snell refraction at a conformal interface. `d_in` and `normal` are
/// g-unit for index n1. Returns the transmitted direction, g-unit for n2, with
/// the tangential and normal orientations of `d_in`, or nullopt on total
/// internal reflection (grazing transmission counts as reflection).
std::optional<TangentVector> refract(Geometry geom, const BasePoint& p, const TangentVector& d_in,
                                     const TangentVector& normal, double n1, double n2);

/// Specular reflection of a g-unit direction in the plane orthogonal to `normal`.
TangentVector reflect(Geometry geom, double n, const BasePoint& p, const TangentVector& d_in,
                      const TangentVector& normal);

/// asin(n2/n1) when n1 > n2; no critical angle otherwise.
std::optional<double> critical_angle(double n1, double n2);

/// Integrates a ray with fixed-step RK4, refracting at region boundaries.
/// Samples are recorded every dt and at every interface event.
Ray trace_ray(const Medium& medium, const ContactState& launch, double t_max, double dt,
              TirMode tir_mode = TirMode::Terminate);

}  // namespace contact_optics
