#include <cstdio>

#include "contact_optics/scene_io.hpp"

namespace contact_optics {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

const char* event_name(SampleEvent e) {
    switch (e) {
        case SampleEvent::None: return "-";
        case SampleEvent::Refract: return "refract";
        case SampleEvent::Tir: return "tir";
    }
    return "-";
}

}  // namespace

CsvOutput emit_csv(Geometry geom, const std::vector<Ray>& rays, const std::vector<Wavefront>& fronts) {
    CsvOutput out;
    const bool three = geom.dim() == 3;

    out.rays = three ? "ray_id,t,x,y,z,theta,phi,n_local,event\n"
                     : (geom.hyperbolic() ? "ray_id,t,x,y,phi,n_local,event\n" : "ray_id,t,x,y,alpha,n_local,event\n");
    for (std::size_t id = 0; id < rays.size(); ++id) {
        for (const auto& s : rays[id].samples) {
            out.rays += std::to_string(id);
            out.rays += ',';
            append_number(out.rays, s.t);
            for (double v : s.state.base) {
                out.rays += ',';
                append_number(out.rays, v);
            }
            for (double v : s.state.fiber) {
                out.rays += ',';
                append_number(out.rays, v);
            }
            out.rays += ',';
            append_number(out.rays, s.n_local);
            out.rays += ',';
            out.rays += event_name(s.event);
            out.rays += '\n';
        }
    }

    out.fronts = three ? "front_t,launch_index,x,y,z\n" : "front_t,launch_index,x,y\n";
    for (const auto& front : fronts) {
        for (const auto& p : front.points) {
            append_number(out.fronts, front.t);
            out.fronts += ',';
            out.fronts += std::to_string(p.launch_index);
            for (double v : p.point) {
                out.fronts += ',';
                append_number(out.fronts, v);
            }
            out.fronts += '\n';
        }
    }
    return out;
}

}  // namespace contact_optics
