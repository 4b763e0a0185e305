#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contact_optics/checks.hpp"
#include "contact_optics/errors.hpp"
#include "contact_optics/scene_io.hpp"

namespace {

constexpr int kExitSceneError = 1;
constexpr int kExitNumericError = 2;
constexpr int kExitCheckFailure = 3;
constexpr const char* kVersion = "contact-optics 1.0.0 (scene schema 1)";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw contact_optics::SceneError("", "cannot read scene file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    namespace co = contact_optics;
    CLI::App app{"Ray and wavefront propagation on contact bundles of optical media"};
    app.require_subcommand(1);

    std::string scene_path;
    std::string out_dir;
    std::vector<std::string> formats{"csv", "svg"};
    int threads = 0;
    std::string tir_mode;
    std::string projection;
    auto* trace = app.add_subcommand("trace", "Trace a scene's ray fan and write rays.csv, fronts.csv, figure.svg");
    trace->add_option("--scene", scene_path, "Scene file (JSON, schema version 1)")->required();
    trace->add_option("--out", out_dir, "Output directory")->required();
    trace->add_option("--format", formats, "Comma-separated outputs: csv, svg")
        ->delimiter(',')
        ->check(CLI::IsMember({"csv", "svg"}));
    trace->add_option("--threads", threads, "Worker threads (default: OpenMP default)")->check(CLI::NonNegativeNumber);
    trace->add_option("--tir-mode", tir_mode, "Override the scene's TIR handling")
        ->check(CLI::IsMember({"terminate", "reflect"}));
    trace->add_option("--projection", projection, "Override the scene's projection")
        ->check(CLI::IsMember({"chart", "poincare-disc"}));

    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    auto* check = app.add_subcommand("check", "Run the contact-structure invariant battery");
    check->add_option("--seed", seed, "Random seed");
    check->add_option("--samples", samples, "States per check, geometry and index")->check(CLI::PositiveNumber);

    app.add_subcommand("version", "Print version");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("version")) {
        std::cout << kVersion << "\n";
        return 0;
    }

    if (app.got_subcommand("check")) {
        const auto report = co::run_checks(seed, samples);
        std::cout << report.to_text();
        if (!report.all_pass()) {
            std::cerr << "check: one or more invariants failed\n";
            return kExitCheckFailure;
        }
        return 0;
    }

    co::SceneFile scene;
    try {
        scene = co::parse_scene(read_file(scene_path));
        if (!tir_mode.empty()) scene.tir_mode = *co::parse_tir_mode(tir_mode);
        if (!projection.empty()) {
            scene.projection = *co::parse_projection(projection);
            if (scene.projection == co::Projection::PoincareDisc && !scene.medium.geom.hyperbolic())
                throw co::SceneError("projection", "poincare-disc requires the hyperbolic geometry");
        }
    } catch (const co::SceneError& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return kExitSceneError;
    }

    co::TraceOptions options;
    options.out_dir = out_dir;
    options.threads = threads;
    options.write_csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
    options.write_svg = std::find(formats.begin(), formats.end(), "svg") != formats.end();
    try {
        co::run_trace(scene, options);
    } catch (const co::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const co::DomainError& e) {
        std::cerr << "scene error: " << e.what() << "\n";
        return kExitSceneError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSceneError;
    }
    return 0;
}
