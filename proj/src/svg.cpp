#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "contact_optics/scene_io.hpp"

namespace contact_optics {

namespace {

using Point2 = std::array<double, 2>;
using Polygon = std::vector<Point2>;

constexpr double kCanvasWidth = 800.0;
constexpr std::size_t kMaxPointsPerRay = 1500;
// Extent of the half-plane drawn when shading regions on the disc.
constexpr double kHalfPlaneFar = 1e4;
constexpr double kHalfPlaneNear = 1e-6;

/// a*u + b*v >= c in the plotting plane.
struct Constraint {
    double a, b, c;
};

Polygon clip(const Polygon& poly, const Constraint& k) {
    Polygon out;
    const auto inside = [&](const Point2& p) { return k.a * p[0] + k.b * p[1] >= k.c; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % poly.size()];
        const bool pin = inside(p);
        const bool qin = inside(q);
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double fp = k.a * p[0] + k.b * p[1] - k.c;
            const double fq = k.a * q[0] + k.b * q[1] - k.c;
            const double s = fp / (fp - fq);
            out.push_back({p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])});
        }
    }
    return out;
}

/// Chart coordinates shown on the page: (x, y), or (x, z) in three dimensions.
Point2 plane_of(Geometry geom, const Vec& p) { return geom.dim() == 3 ? Point2{p[0], p[2]} : Point2{p[0], p[1]}; }

/// Region constraints expressed in the plotting plane; empty optional when the
/// region cannot be drawn in that plane.
std::optional<std::vector<Constraint>> plane_constraints(Geometry geom, const Region& region) {
    const auto axis_slot = [&](std::size_t axis) -> std::optional<std::size_t> {
        if (geom.dim() == 2) return axis;
        if (axis == 0) return 0;
        if (axis == 2) return 1;
        return std::nullopt;
    };
    if (const auto* hs = std::get_if<HalfSpace>(&region.shape)) {
        if (geom.dim() == 3 && hs->normal[1] != 0.0) return std::nullopt;
        const Point2 nrm = plane_of(geom, hs->normal);
        return std::vector<Constraint>{{nrm[0], nrm[1], hs->offset}};
    }
    const auto& slab = std::get<Slab>(region.shape);
    const auto slot = axis_slot(slab.axis);
    if (!slot) return std::nullopt;
    const double a = *slot == 0 ? 1.0 : 0.0;
    const double b = *slot == 1 ? 1.0 : 0.0;
    return std::vector<Constraint>{{a, b, slab.lo}, {-a, -b, -slab.hi}};
}

Point2 disc_of(const Point2& p) {
    const Vec w = to_poincare_disc(Vec{p[0], std::max(p[1], 0.0)});
    return {w[0], w[1]};
}

/// Maps a chart polygon onto the disc, subdividing edges until mapped chords are short.
Polygon polygon_to_disc(const Polygon& poly) {
    Polygon out;
    const auto subdivide = [&](auto&& self, const Point2& a, const Point2& b, int depth) -> void {
        const Point2 wa = disc_of(a);
        const Point2 wb = disc_of(b);
        const Point2 m{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
        const Point2 wm = disc_of(m);
        const double bow = std::hypot(wm[0] - 0.5 * (wa[0] + wb[0]), wm[1] - 0.5 * (wa[1] + wb[1]));
        if (depth >= 40 || (depth >= 4 && std::hypot(wa[0] - wb[0], wa[1] - wb[1]) < 0.005 && bow < 1e-3)) {
            out.push_back(wa);
            return;
        }
        self(self, a, m, depth + 1);
        self(self, m, b, depth + 1);
    };
    for (std::size_t i = 0; i < poly.size(); ++i) subdivide(subdivide, poly[i], poly[(i + 1) % poly.size()], 0);
    return out;
}

struct Frame {
    double umin = 0.0, umax = 1.0, vmin = 0.0, vmax = 1.0, scale = 1.0;

    [[nodiscard]] double width() const { return (umax - umin) * scale; }
    [[nodiscard]] double height() const { return (vmax - vmin) * scale; }
};

void append_xy(std::string& out, const Frame& f, const Point2& p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", (p[0] - f.umin) * f.scale, (f.vmax - p[1]) * f.scale);
    out += buf;
}

void append_polyline(std::string& out, const Frame& f, const std::vector<Point2>& pts, const char* tag,
                     const char* style) {
    out += "  <";
    out += tag;
    out += " points=\"";
    for (const auto& p : pts) append_xy(out, f, p);
    if (!pts.empty()) out.pop_back();
    out += "\" ";
    out += style;
    out += "/>\n";
}

}  // namespace

std::string emit_svg(const SceneFile& scene, const std::vector<Ray>& rays, const std::vector<Wavefront>& fronts) {
    const Geometry geom = scene.medium.geom;
    const bool disc = scene.projection == Projection::PoincareDisc;
    const auto project = [&](const Vec& p) { return disc ? disc_of({p[0], p[1]}) : plane_of(geom, p); };

    std::vector<std::vector<Point2>> ray_lines;
    for (const auto& ray : rays) {
        std::vector<Point2> line;
        const std::size_t m = ray.samples.size();
        const std::size_t stride = std::max<std::size_t>(1, (m + kMaxPointsPerRay - 1) / kMaxPointsPerRay);
        for (std::size_t i = 0; i < m; ++i)
            if (i % stride == 0 || i + 1 == m || ray.samples[i].event != SampleEvent::None)
                line.push_back(project(ray.samples[i].state.base));
        ray_lines.push_back(std::move(line));
    }
    std::vector<std::vector<Point2>> front_lines;
    for (const auto& front : fronts) {
        std::vector<Point2> line;
        for (const auto& p : front.points) line.push_back(project(p.point));
        front_lines.push_back(std::move(line));
    }

    Frame f;
    if (disc) {
        f.umin = f.vmin = -1.05;
        f.umax = f.vmax = 1.05;
    } else {
        f.umin = f.vmin = std::numeric_limits<double>::infinity();
        f.umax = f.vmax = -std::numeric_limits<double>::infinity();
        const auto grow = [&](const Point2& p) {
            f.umin = std::min(f.umin, p[0]);
            f.umax = std::max(f.umax, p[0]);
            f.vmin = std::min(f.vmin, p[1]);
            f.vmax = std::max(f.vmax, p[1]);
        };
        grow(plane_of(geom, scene.fan.source));
        for (const auto& l : ray_lines) std::for_each(l.begin(), l.end(), grow);
        for (const auto& l : front_lines) std::for_each(l.begin(), l.end(), grow);
        const double span = std::max({f.umax - f.umin, f.vmax - f.vmin, 1e-9});
        const double pad = 0.05 * span;
        f.umin -= pad;
        f.umax += pad;
        f.vmin -= pad;
        f.vmax += pad;
    }
    f.scale = kCanvasWidth / (f.umax - f.umin);

    std::string out;
    char header[256];
    std::snprintf(header, sizeof header,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.2f %.2f\">\n",
                  f.width(), f.height(), f.width(), f.height());
    out += header;
    out += "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& region : scene.medium.regions) {
        const auto constraints = plane_constraints(geom, region);
        if (!constraints) continue;
        Polygon poly = disc ? Polygon{{-kHalfPlaneFar, kHalfPlaneNear},
                                      {kHalfPlaneFar, kHalfPlaneNear},
                                      {kHalfPlaneFar, kHalfPlaneFar},
                                      {-kHalfPlaneFar, kHalfPlaneFar}}
                            : Polygon{{f.umin, f.vmin}, {f.umax, f.vmin}, {f.umax, f.vmax}, {f.umin, f.vmax}};
        for (const auto& k : *constraints) poly = clip(poly, k);
        if (poly.size() < 3) continue;
        if (disc) poly = polygon_to_disc(poly);
        append_polyline(out, f, poly, "polygon", "fill=\"#b0b0b0\" fill-opacity=\"0.6\" stroke=\"none\"");
    }
    if (disc) {
        char circle[200];
        std::snprintf(circle, sizeof circle,
                      "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
                      -f.umin * f.scale, f.vmax * f.scale, f.scale);
        out += circle;
    }
    for (const auto& line : ray_lines)
        append_polyline(out, f, line, "polyline", "fill=\"none\" stroke=\"#d62728\" stroke-width=\"0.6\"");
    for (std::size_t i = 0; i < front_lines.size(); ++i) {
        const bool closed = fronts[i].closed;
        append_polyline(out, f, front_lines[i], closed ? "polygon" : "polyline",
                        "fill=\"none\" stroke=\"#1f4e9e\" stroke-width=\"1.2\" stroke-dasharray=\"4 2\"");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace contact_optics
