#include <exception>
#include <vector>

#include <omp.h>

#include "contact_optics/wavefront.hpp"

namespace contact_optics {

FanResult propagate_fan(const Medium& medium, const Fan& fan, const FanOptions& options, int threads) {
    medium.validate();
    const auto launches = launch_states(medium.geom, fan);
    const auto count = static_cast<std::ptrdiff_t>(launches.size());
    const int workers = threads > 0 ? threads : omp_get_max_threads();

    FanResult result;
    result.rays.resize(launches.size());
    std::vector<std::exception_ptr> failures(launches.size());

    // Each ray writes only its own slot; ordering is fixed by launch index.
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            result.rays[i] = trace_ray(medium, launches[i], options.t_max, options.dt, options.tir_mode);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    // Report the lowest failing launch index so errors do not depend on scheduling.
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    const bool closed = medium.geom.kind != GeometryKind::Euclidean3 && fan.full_turn();
    result.fronts = assemble_fronts(medium, result.rays, options.front_times, closed);
    return result;
}

}  // namespace contact_optics
