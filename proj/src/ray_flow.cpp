#include "contact_optics/ray_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "contact_optics/errors.hpp"

namespace contact_optics {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kBracketTolerance = 1e-10;
constexpr double kGrazingTolerance = 1e-12;
constexpr int kMaxHalvings = 20;

ContactState axpy(const ContactState& s, double h, const StateVelocity& k) {
    return {s.base + h * k.base_rate, s.fiber + h * k.fiber_rate};
}

/// Boundary planes of all regions with duplicates (same or opposite orientation) removed.
std::vector<Plane> distinct_planes(const Medium& medium) {
    std::vector<Plane> out;
    for (const auto& region : medium.regions) {
        for (auto plane : region.boundary_planes(medium.geom.dim())) {
            const double len = norm(plane.normal);
            plane.normal /= len;
            plane.offset /= len;
            const bool seen = std::any_of(out.begin(), out.end(), [&](const Plane& q) {
                const double c = dot(q.normal, plane.normal);
                return (std::abs(c - 1.0) < 1e-14 && std::abs(q.offset - plane.offset) < 1e-14) ||
                       (std::abs(c + 1.0) < 1e-14 && std::abs(q.offset + plane.offset) < 1e-14);
            });
            if (!seen) out.push_back(plane);
        }
    }
    return out;
}

bool near_boundary(const Medium& medium, int region, const BasePoint& p) {
    if (region == Medium::kDefaultRegion) return false;
    for (const auto& plane : medium.regions[region].boundary_planes(medium.geom.dim()))
        if (std::abs(plane.signed_distance(p)) <= kTieTolerance) return true;
    return false;
}

/// The region owning the boundary plane closest to `p` among regions a and b.
int owner_of_crossed_plane(const Medium& medium, int a, int b, const BasePoint& p) {
    int best = Medium::kDefaultRegion;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int r : {a, b}) {
        if (r == Medium::kDefaultRegion) continue;
        for (const auto& plane : medium.regions[r].boundary_planes(medium.geom.dim())) {
            const double d = std::abs(plane.signed_distance(p));
            if (d < best_dist) {
                best_dist = d;
                best = r;
            }
        }
    }
    return best;
}

void push_sample(Ray& ray, RaySample sample) {
    if (!ray.samples.empty() && sample.t <= ray.samples.back().t) {
        ray.samples.back() = std::move(sample);
        return;
    }
    ray.samples.push_back(std::move(sample));
}

}  // namespace

void Medium::validate() const {
    if (!(default_index > 0.0) || !std::isfinite(default_index)) throw DomainError("default index must be finite and > 0");
    for (const auto& r : regions) validate_region(geom, r);
}

int Medium::region_at(const BasePoint& p) const {
    for (std::size_t i = 0; i < regions.size(); ++i)
        if (regions[i].contains(p)) return static_cast<int>(i);
    return kDefaultRegion;
}

int Medium::region_at(const BasePoint& p, int came_from) const {
    const int raw = region_at(p);
    if (raw == came_from) return raw;
    if (near_boundary(*this, came_from, p) || near_boundary(*this, raw, p)) return came_from;
    return raw;
}

double Medium::index_of(int region) const {
    return region == kDefaultRegion ? default_index : regions.at(static_cast<std::size_t>(region)).index;
}

ContactState step_rk4(Geometry geom, double n, const ContactState& s, double dt) try {
    const StateVelocity k1 = reeb_field(geom, n, s);
    const StateVelocity k2 = reeb_field(geom, n, axpy(s, 0.5 * dt, k1));
    const StateVelocity k3 = reeb_field(geom, n, axpy(s, 0.5 * dt, k2));
    const StateVelocity k4 = reeb_field(geom, n, axpy(s, dt, k3));
    ContactState out = s;
    const double w = dt / 6.0;
    out.base += w * (k1.base_rate + 2.0 * k2.base_rate + 2.0 * k3.base_rate + k4.base_rate);
    out.fiber += w * (k1.fiber_rate + 2.0 * k2.fiber_rate + 2.0 * k3.fiber_rate + k4.fiber_rate);
    if (!all_finite(out.base) || !all_finite(out.fiber)) throw NumericError("step_rk4: non-finite state");
    if (geom.hyperbolic() && !(out.base[1] > 0.0)) throw NumericError("step_rk4: state left the upper half-plane");
    // Azimuths are periodic; the Euclidean3 polar angle is not.
    const std::size_t last = out.fiber.size() - 1;
    out.fiber[last] = wrap_angle(out.fiber[last]);
    return out;
} catch (const DomainError& e) {
    throw NumericError(std::string("step_rk4: ") + e.what());
}

CrossingBracket locate_crossing(const Medium& medium, const ContactState& s_before, double dt) {
    return locate_crossing(medium, s_before, dt, medium.region_at(s_before.base));
}

CrossingBracket locate_crossing(const Medium& medium, const ContactState& s_before, double dt, int start) {
    const Geometry geom = medium.geom;
    const double n = medium.index_of(start);
    const ContactState s_after = step_rk4(geom, n, s_before, dt);
    if (medium.region_at(s_after.base, start) == start)
        throw std::invalid_argument("locate_crossing: step does not leave the starting region");

    int straddled = 0;
    for (const auto& plane : distinct_planes(medium)) {
        const double a = plane.signed_distance(s_before.base);
        const double b = plane.signed_distance(s_after.base);
        if ((a < 0.0) != (b < 0.0)) ++straddled;
    }
    if (straddled > 1) throw MultipleCrossingsError("locate_crossing: step straddles " + std::to_string(straddled) + " interfaces");

    CrossingBracket br;
    BasePoint lo_pos = s_before.base;
    BasePoint hi_pos = s_after.base;
    for (int iter = 0; iter < 200 && norm(hi_pos - lo_pos) > kBracketTolerance; ++iter) {
        const double mid = 0.5 * (br.before + br.after);
        const BasePoint pos = step_rk4(geom, n, s_before, mid * dt).base;
        if (medium.region_at(pos, start) == start) {
            br.before = mid;
            lo_pos = pos;
        } else {
            br.after = mid;
            hi_pos = pos;
        }
    }
    return br;
}

double incidence_angle(Geometry geom, double n, const BasePoint& p, const TangentVector& d, const TangentVector& normal) {
    const double nn = g_norm(geom, n, p, normal);
    const double dd = g_norm(geom, n, p, d);
    const double c = std::abs(g_inner(geom, n, p, d, normal)) / (nn * dd);
    const TangentVector tangential = d / dd - (g_inner(geom, n, p, d, normal) / (nn * nn * dd)) * normal;
    return std::atan2(g_norm(geom, n, p, tangential), c);
}

std::optional<TangentVector> refract(Geometry geom, const BasePoint& p, const TangentVector& d_in,
                                     const TangentVector& normal, double n1, double n2) {
    const double cos_i = g_inner(geom, n1, p, d_in, normal);
    const TangentVector tangential = d_in - cos_i * normal;
    const double sin_i = std::min(1.0, g_norm(geom, n1, p, tangential));
    const double sin_t = (n1 / n2) * sin_i;
    if (sin_t >= 1.0 - kGrazingTolerance) return std::nullopt;
    const double cos_t = std::sqrt(1.0 - sin_t * sin_t);

    // g2 = (c2/c1) g1 at the same point, so g1-unit vectors scale by sqrt(c1/c2).
    const double rescale = std::sqrt(conformal_factor(geom, n1, p) / conformal_factor(geom, n2, p));
    TangentVector out = (std::copysign(cos_t, cos_i) * rescale) * normal;
    if (sin_i > 0.0) out += (sin_t / sin_i * rescale) * tangential;
    return out;
}

TangentVector reflect(Geometry geom, double n, const BasePoint& p, const TangentVector& d_in, const TangentVector& normal) {
    return d_in - (2.0 * g_inner(geom, n, p, d_in, normal) / g_inner(geom, n, p, normal, normal)) * normal;
}

std::optional<double> critical_angle(double n1, double n2) {
    if (n1 > n2) return std::asin(n2 / n1);
    return std::nullopt;
}

Ray trace_ray(const Medium& medium, const ContactState& launch, double t_max, double dt, TirMode tir_mode) {
    if (!(t_max > 0.0) || !(dt > 0.0)) throw std::invalid_argument("trace_ray: t_max and dt must be > 0");
    const Geometry geom = medium.geom;
    validate_state(geom, launch);

    Ray ray;
    ray.launch = launch;
    int region = medium.region_at(launch.base);
    double n = medium.index_of(region);
    ContactState s = launch;
    double t = 0.0;
    ray.samples.push_back({0.0, s, n, SampleEvent::None});

    while (t < t_max) {
        double h = std::min(dt, t_max - t);
        for (int halvings = 0;; ++halvings) {
            const ContactState next = step_rk4(geom, n, s, h);
            if (medium.region_at(next.base, region) == region) {
                t = (h == t_max - t) ? t_max : t + h;
                s = next;
                push_sample(ray, {t, s, n, SampleEvent::None});
                break;
            }

            CrossingBracket br;
            try {
                br = locate_crossing(medium, s, h, region);
            } catch (const MultipleCrossingsError&) {
                if (halvings >= kMaxHalvings)
                    throw NumericError("trace_ray: could not isolate interface crossing after " +
                                       std::to_string(kMaxHalvings) + " step halvings");
                h *= 0.5;
                continue;
            }

            const ContactState inside = step_rk4(geom, n, s, br.before * h);
            const ContactState outside = step_rk4(geom, n, s, br.after * h);
            const int next_region = medium.region_at(outside.base, region);
            const double n_out = medium.index_of(next_region);
            const int owner = owner_of_crossed_plane(medium, region, next_region, outside.base);
            const TangentVector normal = interface_normal(geom, n, medium.regions[static_cast<std::size_t>(owner)],
                                                          outside.base);

            InterfaceEvent ev;
            ev.n_in = n;
            ev.n_out = n_out;
            ev.normal = normal;
            ev.direction_in = reeb_field(geom, n, outside).base_rate;
            const auto transmitted = refract(geom, outside.base, ev.direction_in, normal, n, n_out);

            if (transmitted) {
                ev.t = t + br.after * h;
                ev.point = outside.base;
                ev.angle_in = incidence_angle(geom, n, outside.base, ev.direction_in, normal);
                ev.direction_out = *transmitted;
                ev.angle_out = incidence_angle(geom, n_out, outside.base, *transmitted, normal);
                s = {outside.base, fiber_from_direction(geom, *transmitted)};
                region = next_region;
                n = n_out;
                t = ev.t;
                ray.events.push_back(ev);
                push_sample(ray, {t, s, n, SampleEvent::Refract});
                break;
            }

            ev.t = t + br.before * h;
            ev.point = inside.base;
            ev.direction_in = reeb_field(geom, n, inside).base_rate;
            ev.angle_in = incidence_angle(geom, n, inside.base, ev.direction_in, normal);
            t = ev.t;
            ray.events.push_back(ev);
            if (tir_mode == TirMode::Terminate) {
                push_sample(ray, {t, inside, n, SampleEvent::Tir});
                ray.terminated_by_tir = true;
                return ray;
            }
            s = {inside.base, fiber_from_direction(geom, reflect(geom, n, inside.base, ev.direction_in, normal))};
            push_sample(ray, {t, s, n, SampleEvent::Tir});
            break;
        }
    }
    return ray;
}

}  // namespace contact_optics
