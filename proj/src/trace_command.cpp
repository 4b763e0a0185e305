#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "contact_optics/scene_io.hpp"

namespace contact_optics {

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

FanResult run_trace(const SceneFile& scene, const TraceOptions& options) {
    FanOptions fan_options;
    fan_options.t_max = scene.time.t_max;
    fan_options.dt = scene.time.dt;
    fan_options.front_times = scene.time.resolved_front_times();
    fan_options.tir_mode = scene.tir_mode;
    FanResult result = propagate_fan(scene.medium, scene.fan, fan_options, options.threads);

    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    if (options.write_csv) {
        const CsvOutput csv = emit_csv(scene.medium.geom, result.rays, result.fronts);
        write_file(dir / "rays.csv", csv.rays);
        write_file(dir / "fronts.csv", csv.fronts);
    }
    if (options.write_svg) write_file(dir / "figure.svg", emit_svg(scene, result.rays, result.fronts));
    return result;
}

}  // namespace contact_optics
