#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contact_optics/wavefront.hpp"

namespace contact_optics {

enum class Projection { Chart, PoincareDisc };

struct TimeSpec {
    double t_max = 1.0;
    double dt = 1e-3;
    std::vector<double> front_times;
    std::optional<double> front_every;

    /// Explicit front times, or multiples of front_every up to t_max.
    [[nodiscard]] std::vector<double> resolved_front_times() const;
};

/// Parsed scene document (schema version 1, see docs/scene-schema.md).
struct SceneFile {
    int version = 1;
    std::string description;
    Medium medium;
    Fan fan;
    TimeSpec time;
    TirMode tir_mode = TirMode::Terminate;
    Projection projection = Projection::Chart;
};

/// Parses and validates a scene. Throws SceneError naming the offending field
/// path, or the line and column of a syntax error.
SceneFile parse_scene(std::string_view text);

/// Serializes a scene in the same schema; parse_scene(emit_scene(s)) == s.
std::string emit_scene(const SceneFile& scene);

bool operator==(const SceneFile& a, const SceneFile& b);

std::string_view to_string(TirMode mode);
std::string_view to_string(Projection projection);
std::optional<TirMode> parse_tir_mode(std::string_view name);
std::optional<Projection> parse_projection(std::string_view name);

struct CsvOutput {
    std::string rays;
    std::string fronts;
};

/// rays.csv (ray_id,t,x,y[,z],fiber...,n_local,event) and fronts.csv
/// (front_t,launch_index,x,y[,z]); 17 significant digits.
CsvOutput emit_csv(Geometry geom, const std::vector<Ray>& rays, const std::vector<Wavefront>& fronts);

/// Deterministic SVG of regions, rays and fronts in the scene's projection.
/// Euclidean3 scenes are drawn in the x-z plane.
std::string emit_svg(const SceneFile& scene, const std::vector<Ray>& rays, const std::vector<Wavefront>& fronts);

struct TraceOptions {
    std::string out_dir;
    bool write_csv = true;
    bool write_svg = true;
    int threads = 0;
};

/// Traces the scene's fan and writes rays.csv, fronts.csv and figure.svg.
FanResult run_trace(const SceneFile& scene, const TraceOptions& options);

}  // namespace contact_optics
