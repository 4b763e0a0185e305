#include "contact_optics/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "contact_optics/errors.hpp"

namespace contact_optics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCollinearTolerance = 1e-12;
constexpr double kDedupTolerance = 1e-9;

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

void segment_intersections(const Vec& p1, const Vec& p2, const Vec& q1, const Vec& q2, std::vector<Vec>& out) {
    const Vec r = p2 - p1;
    const Vec s = q2 - q1;
    const Vec qp = q1 - p1;
    const double denom = cross2(r, s);
    const double rr = norm(r);
    const double ss = norm(s);
    if (rr == 0.0 || ss == 0.0) return;
    if (std::abs(denom) <= kCollinearTolerance * rr * ss) {
        if (std::abs(cross2(qp, r)) > kCollinearTolerance * std::max(norm(qp), 1.0) * rr) return;
        const double t0 = dot(qp, r) / (rr * rr);
        const double t1 = dot(q2 - p1, r) / (rr * rr);
        const double lo = std::max(0.0, std::min(t0, t1));
        const double hi = std::min(1.0, std::max(t0, t1));
        if (lo <= hi) out.push_back(p1 + lo * r);
        return;
    }
    const double t = cross2(qp, s) / denom;
    const double u = cross2(qp, r) / denom;
    constexpr double eps = kCollinearTolerance;
    if (t >= -eps && t <= 1.0 + eps && u >= -eps && u <= 1.0 + eps) out.push_back(p1 + t * r);
}

bool overlaps(const Vec& a1, const Vec& a2, const Vec& b1, const Vec& b2) {
    constexpr double pad = 1e-9;
    for (std::size_t k = 0; k < 2; ++k) {
        if (std::max(a1[k], a2[k]) + pad < std::min(b1[k], b2[k])) return false;
        if (std::max(b1[k], b2[k]) + pad < std::min(a1[k], a2[k])) return false;
    }
    return true;
}

}  // namespace

std::size_t Fan::size(Geometry geom) const {
    return geom.kind == GeometryKind::Euclidean3 ? polar_count * azimuth_count : count;
}

bool Fan::full_turn() const { return std::abs((angle_to - angle_from) - kTwoPi) <= 1e-12; }

void validate_fan(Geometry geom, const Fan& fan) {
    validate_base_point(geom, fan.source);
    if (geom.kind == GeometryKind::Euclidean3) {
        if (fan.polar_count < 1 || fan.azimuth_count < 1 || fan.polar_count * fan.azimuth_count < 3)
            throw DomainError("3D fan needs polar_count * azimuth_count >= 3");
        return;
    }
    if (fan.count < 3) throw DomainError("fan needs at least 3 rays");
    if (!std::isfinite(fan.angle_from) || !std::isfinite(fan.angle_to) || !(fan.angle_from < fan.angle_to))
        throw DomainError("fan angles must be finite and strictly ordered");
    if (fan.angle_to - fan.angle_from > kTwoPi + 1e-12) throw DomainError("fan spans more than a full turn");
}

std::vector<ContactState> launch_states(Geometry geom, const Fan& fan) {
    validate_fan(geom, fan);
    std::vector<ContactState> out;
    if (geom.kind == GeometryKind::Euclidean3) {
        out.reserve(fan.polar_count * fan.azimuth_count);
        for (std::size_t i = 0; i < fan.polar_count; ++i) {
            const double theta = (static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(fan.polar_count);
            for (std::size_t j = 0; j < fan.azimuth_count; ++j) {
                const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(fan.azimuth_count);
                out.push_back({fan.source, Vec{theta, phi}});
            }
        }
        return out;
    }
    const double span = fan.angle_to - fan.angle_from;
    const double step = fan.full_turn() ? span / static_cast<double>(fan.count)
                                        : span / static_cast<double>(fan.count - 1);
    out.reserve(fan.count);
    for (std::size_t i = 0; i < fan.count; ++i)
        out.push_back({fan.source, Vec{wrap_angle(fan.angle_from + step * static_cast<double>(i))}});
    return out;
}

std::optional<FrontPoint> ray_state_at(const Medium& medium, const Ray& ray, std::size_t launch_index, double t) {
    const auto& samples = ray.samples;
    if (samples.empty() || t < samples.front().t || t > samples.back().t) return std::nullopt;
    // Last sample with sample.t <= t; the segment after it lies in one region.
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double value, const RaySample& s) { return value < s.t; });
    const RaySample& from = *(it - 1);
    const ContactState state = (t == from.t) ? from.state : step_rk4(medium.geom, from.n_local, from.state, t - from.t);
    return FrontPoint{launch_index, state.base, reeb_field(medium.geom, from.n_local, state).base_rate};
}

std::vector<Wavefront> assemble_fronts(const Medium& medium, const std::vector<Ray>& rays,
                                       const std::vector<double>& times, bool fan_closed) {
    std::vector<Wavefront> fronts;
    fronts.reserve(times.size());
    for (double t : times) {
        Wavefront front;
        front.t = t;
        bool complete = true;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (auto p = ray_state_at(medium, rays[i], i, t))
                front.points.push_back(std::move(*p));
            else
                complete = false;
        }
        front.closed = fan_closed && complete;
        fronts.push_back(std::move(front));
    }
    return fronts;
}

std::vector<TangentVector> front_tangents(const Wavefront& front) {
    const auto& pts = front.points;
    const std::size_t m = pts.size();
    if (m < 3) throw std::invalid_argument("front_tangents: front needs at least 3 points");
    if (pts.front().point.size() != 2) throw std::invalid_argument("front_tangents: planar fronts only");
    std::vector<TangentVector> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t prev = i == 0 ? (front.closed ? m - 1 : 0) : i - 1;
        std::size_t next = i + 1 == m ? (front.closed ? 0 : m - 1) : i + 1;
        const TangentVector d = pts[next].point - pts[prev].point;
        if (norm(d) == 0.0) throw DomainError("front_tangents: coincident neighbouring front points");
        out.push_back(d);
    }
    return out;
}

std::vector<double> orthogonality_residual(const Medium& medium, const Wavefront& front) {
    const auto tangents = front_tangents(front);
    std::vector<double> out;
    out.reserve(tangents.size());
    for (std::size_t i = 0; i < tangents.size(); ++i) {
        const auto& fp = front.points[i];
        const double n = medium.index_at(fp.point);
        const auto g = [&](const Vec& a, const Vec& b) { return g_inner(medium.geom, n, fp.point, a, b); };
        out.push_back(std::abs(g(fp.direction, tangents[i])) /
                      std::sqrt(g(fp.direction, fp.direction) * g(tangents[i], tangents[i])));
    }
    return out;
}

int count_front_intersections(const Ray& ray, const Wavefront& front) {
    const auto& pts = front.points;
    if (ray.samples.size() < 2 || pts.size() < 2) return 0;
    if (pts.front().point.size() != 2) throw std::invalid_argument("count_front_intersections: planar fronts only");

    std::vector<Vec> hits;
    const std::size_t front_segments = front.closed ? pts.size() : pts.size() - 1;
    for (std::size_t i = 0; i + 1 < ray.samples.size(); ++i) {
        const Vec& a = ray.samples[i].state.base;
        const Vec& b = ray.samples[i + 1].state.base;
        for (std::size_t j = 0; j < front_segments; ++j) {
            const Vec& c = pts[j].point;
            const Vec& d = pts[(j + 1) % pts.size()].point;
            if (overlaps(a, b, c, d)) segment_intersections(a, b, c, d, hits);
        }
    }

    std::vector<Vec> distinct;
    for (const auto& h : hits) {
        const bool dup = std::any_of(distinct.begin(), distinct.end(), [&](const Vec& q) {
            return norm(h - q) <= kDedupTolerance * std::max(1.0, norm(q));
        });
        if (!dup) distinct.push_back(h);
    }
    return static_cast<int>(distinct.size());
}

}  // namespace contact_optics
