#include "contact_optics/wavefront.hpp"

namespace contact_optics {

FanResult propagate_fan_serial(const Medium& medium, const Fan& fan, const FanOptions& options) {
    medium.validate();
    const auto launches = launch_states(medium.geom, fan);
    FanResult result;
    result.rays.reserve(launches.size());
    for (const auto& launch : launches)
        result.rays.push_back(trace_ray(medium, launch, options.t_max, options.dt, options.tir_mode));
    const bool closed = medium.geom.kind != GeometryKind::Euclidean3 && fan.full_turn();
    result.fronts = assemble_fronts(medium, result.rays, options.front_times, closed);
    return result;
}

}  // namespace contact_optics
