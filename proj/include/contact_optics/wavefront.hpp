#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "contact_optics/ray_flow.hpp"

namespace contact_optics {

/// Point source radiating a fan of rays.
///
/// Planar charts use `count` fiber angles between `angle_from` and `angle_to`;
/// a fan spanning a full turn is closed and spaced without repeating the
/// endpoint. Euclidean3 uses a latitude-longitude grid of `polar_count` polar
/// angles (cell centers) times `azimuth_count` azimuths, launch index
/// polar * azimuth_count + azimuth.
struct Fan {
    BasePoint source;
    std::size_t count = 0;
    double angle_from = 0.0;
    double angle_to = 0.0;
    std::size_t polar_count = 0;
    std::size_t azimuth_count = 0;

    [[nodiscard]] std::size_t size(Geometry geom) const;
    /// True when the planar fan covers the full circle of directions.
    [[nodiscard]] bool full_turn() const;
};

void validate_fan(Geometry geom, const Fan& fan);

/// Launch states in fan order.
std::vector<ContactState> launch_states(Geometry geom, const Fan& fan);

struct FrontPoint {
    std::size_t launch_index = 0;
    BasePoint point;
    TangentVector direction;  ///< ray velocity at the front time
};

/// Equal-time locus of a ray fan, ordered by launch index.
struct Wavefront {
    double t = 0.0;
    std::vector<FrontPoint> points;
    bool closed = false;
};

struct FanResult {
    std::vector<Ray> rays;
    std::vector<Wavefront> fronts;
};

struct FanOptions {
    double t_max = 1.0;
    double dt = 1e-3;
    std::vector<double> front_times;
    TirMode tir_mode = TirMode::Terminate;
};

/// Traces every fan ray with OpenMP and assembles fronts. `threads` <= 0 uses
/// the OpenMP default. Output is identical to propagate_fan_serial.
FanResult propagate_fan(const Medium& medium, const Fan& fan, const FanOptions& options, int threads = 0);

/// Single-threaded reference for propagate_fan.
FanResult propagate_fan_serial(const Medium& medium, const Fan& fan, const FanOptions& options);

/// Ray position and velocity at flow time `t`, advanced from the last sample
/// at or before `t`. Empty when the ray ended before `t`.
std::optional<FrontPoint> ray_state_at(const Medium& medium, const Ray& ray, std::size_t launch_index, double t);

/// Builds fronts from traced rays as a sequential fold over launch order.
std::vector<Wavefront> assemble_fronts(const Medium& medium, const std::vector<Ray>& rays,
                                       const std::vector<double>& times, bool fan_closed);

/// Central-difference tangents along a planar front polyline (one-sided at the
/// ends of an open front). Throws std::invalid_argument for fewer than three
/// points and DomainError for coincident neighbours.
std::vector<TangentVector> front_tangents(const Wavefront& front);

/// |g(d, T)| / (|d|_g |T|_g) per front point, d the ray velocity and T the
/// front tangent.
std::vector<double> orthogonality_residual(const Medium& medium, const Wavefront& front);

/// Transversal crossings between a ray's base polyline and a planar front
/// polyline. Coincident intersection points (shared segment endpoints, touches)
/// count once.
int count_front_intersections(const Ray& ray, const Wavefront& front);

}  // namespace contact_optics
