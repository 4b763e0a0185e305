#include "contact_optics/geometry.hpp"

#include <limits>
#include <string>

#include "contact_optics/errors.hpp"

namespace contact_optics {

std::string_view to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Euclidean2: return "euclidean2";
        case GeometryKind::Euclidean3: return "euclidean3";
        case GeometryKind::HyperbolicHalfPlane: return "hyperbolic";
    }
    return "unknown";
}

std::optional<GeometryKind> parse_geometry_kind(std::string_view name) {
    if (name == "euclidean2") return GeometryKind::Euclidean2;
    if (name == "euclidean3") return GeometryKind::Euclidean3;
    if (name == "hyperbolic") return GeometryKind::HyperbolicHalfPlane;
    return std::nullopt;
}

void validate_base_point(Geometry geom, const BasePoint& p) {
    if (p.size() != geom.dim())
        throw DomainError("base point has " + std::to_string(p.size()) + " components, chart needs " +
                          std::to_string(geom.dim()));
    if (!all_finite(p)) throw DomainError("base point has non-finite components");
    if (geom.hyperbolic() && !(p[1] > 0.0)) throw DomainError("half-plane base point requires y > 0");
}

bool Region::contains(const BasePoint& p) const {
    if (const auto* hs = std::get_if<HalfSpace>(&shape)) return dot(hs->normal, p) >= hs->offset;
    const auto& slab = std::get<Slab>(shape);
    return p[slab.axis] >= slab.lo && p[slab.axis] <= slab.hi;
}

std::vector<Plane> Region::boundary_planes(std::size_t dim) const {
    if (const auto* hs = std::get_if<HalfSpace>(&shape)) return {Plane{hs->normal, hs->offset}};
    const auto& slab = std::get<Slab>(shape);
    Vec axis(dim);
    axis[slab.axis] = 1.0;
    return {Plane{axis, slab.lo}, Plane{axis, slab.hi}};
}

void validate_region(Geometry geom, const Region& region) {
    if (!(region.index > 0.0) || !std::isfinite(region.index)) throw DomainError("region index must be finite and > 0");
    if (const auto* hs = std::get_if<HalfSpace>(&region.shape)) {
        if (hs->normal.size() != geom.dim()) throw DomainError("half-space normal has wrong dimension");
        if (!all_finite(hs->normal) || !std::isfinite(hs->offset)) throw DomainError("half-space has non-finite values");
        if (norm(hs->normal) == 0.0) throw DomainError("half-space normal is zero");
        return;
    }
    const auto& slab = std::get<Slab>(region.shape);
    if (slab.axis >= geom.dim()) throw DomainError("slab axis out of range");
    if (!std::isfinite(slab.lo) || !std::isfinite(slab.hi)) throw DomainError("slab bounds must be finite");
    if (slab.lo > slab.hi) throw DomainError("slab requires lo <= hi");
}

double conformal_factor(Geometry geom, double n, const BasePoint& p) {
    if (geom.hyperbolic()) {
        if (!(p[1] > 0.0)) throw DomainError("half-plane metric requires y > 0");
        const double s = n / p[1];
        return s * s;
    }
    return n * n;
}

Mat body_metric_at(Geometry geom, double n, const BasePoint& p) {
    validate_base_point(geom, p);
    if (!(n > 0.0)) throw DomainError("refractive index must be > 0");
    const double c = conformal_factor(geom, n, p);
    Mat g;
    g.size = geom.dim();
    for (std::size_t i = 0; i < g.size; ++i) g(i, i) = c;
    return g;
}

double g_inner(Geometry geom, double n, const BasePoint& p, const TangentVector& v, const TangentVector& w) {
    if (v.size() != geom.dim() || w.size() != geom.dim())
        throw std::invalid_argument("g_inner: tangent vector dimension mismatch");
    return conformal_factor(geom, n, p) * dot(v, w);
}

TangentVector interface_normal(Geometry geom, double n_at_p, const Region& region, const BasePoint& p,
                               std::optional<double> n_other) {
    validate_base_point(geom, p);
    const auto planes = region.boundary_planes(geom.dim());
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < planes.size(); ++i) {
        const double d = std::abs(planes[i].signed_distance(p));
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    if (best_dist > kBoundaryTolerance) throw DomainError("point is not on the region boundary");

    TangentVector nrm = planes[best].normal / norm(planes[best].normal);
    if (n_other && *n_other != region.index) {
        // Outward normal of the region at this face.
        TangentVector outward = nrm;
        if (std::holds_alternative<HalfSpace>(region.shape) || best == 0) outward = -nrm;
        nrm = region.index > *n_other ? outward : -outward;
    }
    return nrm / std::sqrt(conformal_factor(geom, n_at_p, p));
}

Vec to_poincare_disc(const BasePoint& p) {
    if (p.size() != 2) throw std::invalid_argument("to_poincare_disc: expects a 2D point");
    if (p[1] < 0.0) throw DomainError("to_poincare_disc: y must be >= 0");
    // (x + i(y-1)) / (x + i(y+1))
    const double x = p[0];
    const double y = p[1];
    const double den = x * x + (y + 1.0) * (y + 1.0);
    return Vec{(x * x + y * y - 1.0) / den, -2.0 * x / den};
}

}  // namespace contact_optics
