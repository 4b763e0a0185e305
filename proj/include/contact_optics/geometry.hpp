#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "contact_optics/vec.hpp"

namespace contact_optics {

enum class GeometryKind { Euclidean2, Euclidean3, HyperbolicHalfPlane };

/// Chart family of a scene. The body metric is n^2 * delta for the Euclidean
/// kinds and (n/y)^2 * delta on the upper half-plane.
struct Geometry {
    GeometryKind kind = GeometryKind::Euclidean2;

    [[nodiscard]] constexpr std::size_t dim() const { return kind == GeometryKind::Euclidean3 ? 3 : 2; }
    /// Number of angular fiber coordinates on the unit co-sphere.
    [[nodiscard]] constexpr std::size_t fiber_dim() const { return dim() - 1; }
    [[nodiscard]] constexpr bool hyperbolic() const { return kind == GeometryKind::HyperbolicHalfPlane; }

    friend constexpr bool operator==(Geometry, Geometry) = default;
};

std::string_view to_string(GeometryKind kind);
std::optional<GeometryKind> parse_geometry_kind(std::string_view name);

using BasePoint = Vec;
using TangentVector = Vec;

/// Throws DomainError unless `p` has the chart dimension, finite components and,
/// on the half-plane, y > 0.
void validate_base_point(Geometry geom, const BasePoint& p);

/// Points with dot(normal, p) >= offset.
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

/// Points with lo <= p[axis] <= hi.
struct Slab {
    std::size_t axis = 0;
    double lo = 0.0;
    double hi = 0.0;
};

using RegionShape = std::variant<HalfSpace, Slab>;

/// A boundary plane dot(normal, p) = offset. The normal is not normalized.
struct Plane {
    Vec normal;
    double offset = 0.0;

    /// Signed chart distance; positive on the side the normal points to.
    [[nodiscard]] double signed_distance(const BasePoint& p) const { return (dot(normal, p) - offset) / norm(normal); }
};

struct Region {
    RegionShape shape;
    double index = 1.0;

    [[nodiscard]] bool contains(const BasePoint& p) const;
    /// Boundary planes, one for a half-space and two (lo, hi) for a slab.
    [[nodiscard]] std::vector<Plane> boundary_planes(std::size_t dim) const;
};

/// Throws DomainError when the region is unusable in `geom` (zero normal,
/// axis out of range, lo > hi, n <= 0, non-finite values).
void validate_region(Geometry geom, const Region& region);

/// Body metric g at `p` for a medium of index `n`.
Mat body_metric_at(Geometry geom, double n, const BasePoint& p);

/// Conformal factor of the body metric: g = factor * delta.
double conformal_factor(Geometry geom, double n, const BasePoint& p);

/// g(v, w) at `p`.
double g_inner(Geometry geom, double n, const BasePoint& p, const TangentVector& v, const TangentVector& w);

inline double g_norm(Geometry geom, double n, const BasePoint& p, const TangentVector& v) {
    return std::sqrt(g_inner(geom, n, p, v, v));
}

/// Distance from a point to a region boundary within which it counts as "on" it.
inline constexpr double kBoundaryTolerance = 1e-8;

/// g-unit normal of the region boundary through `p`, measured with index
/// `n_at_p`. Without `n_other` the normal follows the stored half-space normal
/// (or +axis for slabs); with it, and when the indices differ, the normal points
/// from the higher-index side to the lower-index side.
/// Throws DomainError when `p` is farther than kBoundaryTolerance from the boundary.
TangentVector interface_normal(Geometry geom, double n_at_p, const Region& region, const BasePoint& p,
                               std::optional<double> n_other = std::nullopt);

/// Cayley transform w = (z - i)/(z + i), z = x + iy, from the closed upper
/// half-plane onto the closed unit disc.
Vec to_poincare_disc(const BasePoint& p);

}  // namespace contact_optics
