#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "contact_optics/errors.hpp"
#include "contact_optics/scene_io.hpp"

namespace contact_optics {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw SceneError(path.empty() ? "<root>" : path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items())
        if (!ok.count(item.key())) throw SceneError(join(path, item.key()), "unknown key");
}

const json& member(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw SceneError(join(path, key), "missing required field");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SceneError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SceneError(path, "must be finite");
    return d;
}

double number_field(const json& obj, const std::string& path, const char* key) {
    return number(member(obj, path, key), join(path, key));
}

std::int64_t integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SceneError(path, "expected an integer");
    return v.get<std::int64_t>();
}

std::string string_field(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_string()) throw SceneError(join(path, key), "expected a string");
    return v.get<std::string>();
}

Vec vector_field(const json& obj, const std::string& path, const char* key, std::size_t dim) {
    const json& v = member(obj, path, key);
    const std::string p = join(path, key);
    if (!v.is_array() || v.size() != dim) throw SceneError(p, "expected an array of " + std::to_string(dim) + " numbers");
    Vec out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = number(v[i], at_index(p, i));
    return out;
}

std::size_t count_field(const json& obj, const std::string& path, const char* key) {
    const std::int64_t c = integer(member(obj, path, key), join(path, key));
    if (c < 0) throw SceneError(join(path, key), "must be non-negative");
    return static_cast<std::size_t>(c);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Region parse_region(const json& obj, const std::string& path, Geometry geom) {
    if (!obj.is_object()) throw SceneError(path, "expected an object");
    const std::string type = string_field(obj, path, "type");
    Region region;
    if (type == "slab") {
        expect_keys(obj, path, {"type", "axis", "lo", "hi", "n"});
        const std::int64_t axis = integer(member(obj, path, "axis"), join(path, "axis"));
        if (axis < 0 || static_cast<std::size_t>(axis) >= geom.dim())
            throw SceneError(join(path, "axis"), "axis out of range for this geometry");
        Slab slab{static_cast<std::size_t>(axis), number_field(obj, path, "lo"), number_field(obj, path, "hi")};
        if (slab.lo > slab.hi) throw SceneError(join(path, "hi"), "slab requires lo <= hi");
        region.shape = slab;
    } else if (type == "halfspace") {
        expect_keys(obj, path, {"type", "normal", "offset", "n"});
        HalfSpace hs{vector_field(obj, path, "normal", geom.dim()), number_field(obj, path, "offset")};
        if (norm(hs.normal) == 0.0) throw SceneError(join(path, "normal"), "normal must be nonzero");
        region.shape = hs;
    } else {
        throw SceneError(join(path, "type"), "expected \"slab\" or \"halfspace\"");
    }
    region.index = number_field(obj, path, "n");
    if (!(region.index > 0.0)) throw SceneError(join(path, "n"), "refractive index must be > 0");
    return region;
}

Fan parse_fan(const json& obj, const std::string& path, Geometry geom) {
    Fan fan;
    if (geom.kind == GeometryKind::Euclidean3) {
        expect_keys(obj, path, {"polar_count", "azimuth_count", "count"});
        fan.polar_count = count_field(obj, path, "polar_count");
        fan.azimuth_count = count_field(obj, path, "azimuth_count");
        if (fan.polar_count < 1) throw SceneError(join(path, "polar_count"), "must be >= 1");
        if (fan.azimuth_count < 1) throw SceneError(join(path, "azimuth_count"), "must be >= 1");
        fan.count = fan.polar_count * fan.azimuth_count;
        if (obj.contains("count") && count_field(obj, path, "count") != fan.count)
            throw SceneError(join(path, "count"), "must equal polar_count * azimuth_count");
        if (fan.count < 3) throw SceneError(join(path, "count"), "fan needs at least 3 rays");
        return fan;
    }
    expect_keys(obj, path, {"count", "angle_from", "angle_to"});
    fan.count = count_field(obj, path, "count");
    if (fan.count < 3) throw SceneError(join(path, "count"), "fan needs at least 3 rays");
    fan.angle_from = number_field(obj, path, "angle_from");
    fan.angle_to = number_field(obj, path, "angle_to");
    if (!(fan.angle_from < fan.angle_to)) throw SceneError(join(path, "angle_to"), "must be greater than angle_from");
    if (fan.angle_to - fan.angle_from > 2.0 * std::acos(-1.0) + 1e-12)
        throw SceneError(join(path, "angle_to"), "fan spans more than a full turn");
    return fan;
}

TimeSpec parse_time(const json& obj, const std::string& path) {
    expect_keys(obj, path, {"t_max", "dt", "front_times", "front_every"});
    TimeSpec time;
    time.t_max = number_field(obj, path, "t_max");
    if (!(time.t_max > 0.0)) throw SceneError(join(path, "t_max"), "must be > 0");
    if (obj.contains("dt")) time.dt = number_field(obj, path, "dt");
    if (!(time.dt > 0.0)) throw SceneError(join(path, "dt"), "must be > 0");
    if (obj.contains("front_times") && obj.contains("front_every"))
        throw SceneError(join(path, "front_every"), "give either front_times or front_every, not both");
    if (obj.contains("front_times")) {
        const json& arr = obj.at("front_times");
        const std::string p = join(path, "front_times");
        if (!arr.is_array()) throw SceneError(p, "expected an array of numbers");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const double t = number(arr[i], at_index(p, i));
            if (t < 0.0 || t > time.t_max) throw SceneError(at_index(p, i), "front time outside [0, t_max]");
            time.front_times.push_back(t);
        }
    }
    if (obj.contains("front_every")) {
        const double every = number_field(obj, path, "front_every");
        if (!(every > 0.0)) throw SceneError(join(path, "front_every"), "must be > 0");
        time.front_every = every;
    }
    return time;
}

bool same_shape(const RegionShape& a, const RegionShape& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ha = std::get_if<HalfSpace>(&a)) {
        const auto& hb = std::get<HalfSpace>(b);
        return ha->normal == hb.normal && ha->offset == hb.offset;
    }
    const auto& sa = std::get<Slab>(a);
    const auto& sb = std::get<Slab>(b);
    return sa.axis == sb.axis && sa.lo == sb.lo && sa.hi == sb.hi;
}

ordered_json vec_json(const Vec& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

}  // namespace

std::vector<double> TimeSpec::resolved_front_times() const {
    if (!front_every) {
        std::vector<double> sorted = front_times;
        std::sort(sorted.begin(), sorted.end());
        return sorted;
    }
    std::vector<double> out;
    for (std::size_t k = 1;; ++k) {
        const double t = static_cast<double>(k) * *front_every;
        if (t > t_max * (1.0 + 1e-12)) break;
        out.push_back(std::min(t, t_max));
    }
    return out;
}

std::string_view to_string(TirMode mode) { return mode == TirMode::Terminate ? "terminate" : "reflect"; }
std::string_view to_string(Projection projection) { return projection == Projection::Chart ? "chart" : "poincare-disc"; }

std::optional<TirMode> parse_tir_mode(std::string_view name) {
    if (name == "terminate") return TirMode::Terminate;
    if (name == "reflect") return TirMode::Reflect;
    return std::nullopt;
}

std::optional<Projection> parse_projection(std::string_view name) {
    if (name == "chart") return Projection::Chart;
    if (name == "poincare-disc") return Projection::PoincareDisc;
    return std::nullopt;
}

SceneFile parse_scene(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw SceneError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                 e.what());
    }

    expect_keys(doc, "", {"version", "description", "geometry", "default_n", "regions", "source", "time", "tir_mode",
                          "projection"});
    SceneFile scene;
    const std::int64_t version = integer(member(doc, "", "version"), "version");
    if (version != 1) throw SceneError("version", "unsupported schema version " + std::to_string(version));
    if (doc.contains("description")) scene.description = string_field(doc, "", "description");

    const std::string geometry = string_field(doc, "", "geometry");
    const auto kind = parse_geometry_kind(geometry);
    if (!kind) throw SceneError("geometry", "expected euclidean2, euclidean3 or hyperbolic");
    scene.medium.geom = Geometry{*kind};
    const Geometry geom = scene.medium.geom;

    scene.medium.default_index = number_field(doc, "", "default_n");
    if (!(scene.medium.default_index > 0.0)) throw SceneError("default_n", "refractive index must be > 0");

    if (doc.contains("regions")) {
        const json& regions = doc.at("regions");
        if (!regions.is_array()) throw SceneError("regions", "expected an array");
        for (std::size_t i = 0; i < regions.size(); ++i)
            scene.medium.regions.push_back(parse_region(regions[i], at_index("regions", i), geom));
    }

    const json& source = member(doc, "", "source");
    expect_keys(source, "source", {"position", "fan"});
    scene.fan = parse_fan(member(source, "source", "fan"), "source.fan", geom);
    scene.fan.source = vector_field(source, "source", "position", geom.dim());
    if (geom.hyperbolic() && !(scene.fan.source[1] > 0.0))
        throw SceneError("source.position", "half-plane source requires y > 0");

    scene.time = parse_time(member(doc, "", "time"), "time");

    if (doc.contains("tir_mode")) {
        const auto mode = parse_tir_mode(string_field(doc, "", "tir_mode"));
        if (!mode) throw SceneError("tir_mode", "expected \"terminate\" or \"reflect\"");
        scene.tir_mode = *mode;
    }
    if (doc.contains("projection")) {
        const auto proj = parse_projection(string_field(doc, "", "projection"));
        if (!proj) throw SceneError("projection", "expected \"chart\" or \"poincare-disc\"");
        if (*proj == Projection::PoincareDisc && !geom.hyperbolic())
            throw SceneError("projection", "poincare-disc requires the hyperbolic geometry");
        scene.projection = *proj;
    }
    return scene;
}

std::string emit_scene(const SceneFile& scene) {
    const Geometry geom = scene.medium.geom;
    ordered_json doc;
    doc["version"] = scene.version;
    if (!scene.description.empty()) doc["description"] = scene.description;
    doc["geometry"] = std::string(to_string(geom.kind));
    doc["default_n"] = scene.medium.default_index;
    ordered_json regions = ordered_json::array();
    for (const auto& r : scene.medium.regions) {
        ordered_json obj;
        if (const auto* hs = std::get_if<HalfSpace>(&r.shape)) {
            obj["type"] = "halfspace";
            obj["normal"] = vec_json(hs->normal);
            obj["offset"] = hs->offset;
        } else {
            const auto& slab = std::get<Slab>(r.shape);
            obj["type"] = "slab";
            obj["axis"] = slab.axis;
            obj["lo"] = slab.lo;
            obj["hi"] = slab.hi;
        }
        obj["n"] = r.index;
        regions.push_back(std::move(obj));
    }
    doc["regions"] = std::move(regions);

    ordered_json fan;
    if (geom.kind == GeometryKind::Euclidean3) {
        fan["polar_count"] = scene.fan.polar_count;
        fan["azimuth_count"] = scene.fan.azimuth_count;
    } else {
        fan["count"] = scene.fan.count;
        fan["angle_from"] = scene.fan.angle_from;
        fan["angle_to"] = scene.fan.angle_to;
    }
    doc["source"]["position"] = vec_json(scene.fan.source);
    doc["source"]["fan"] = std::move(fan);

    ordered_json time;
    time["t_max"] = scene.time.t_max;
    time["dt"] = scene.time.dt;
    if (scene.time.front_every)
        time["front_every"] = *scene.time.front_every;
    else
        time["front_times"] = scene.time.front_times;
    doc["time"] = std::move(time);
    doc["tir_mode"] = std::string(to_string(scene.tir_mode));
    doc["projection"] = std::string(to_string(scene.projection));
    return doc.dump(2) + "\n";
}

bool operator==(const SceneFile& a, const SceneFile& b) {
    if (a.version != b.version || a.description != b.description) return false;
    if (a.medium.geom != b.medium.geom || a.medium.default_index != b.medium.default_index) return false;
    if (a.medium.regions.size() != b.medium.regions.size()) return false;
    for (std::size_t i = 0; i < a.medium.regions.size(); ++i) {
        if (a.medium.regions[i].index != b.medium.regions[i].index) return false;
        if (!same_shape(a.medium.regions[i].shape, b.medium.regions[i].shape)) return false;
    }
    const Fan& fa = a.fan;
    const Fan& fb = b.fan;
    if (!(fa.source == fb.source) || fa.count != fb.count || fa.angle_from != fb.angle_from ||
        fa.angle_to != fb.angle_to || fa.polar_count != fb.polar_count || fa.azimuth_count != fb.azimuth_count)
        return false;
    if (a.time.t_max != b.time.t_max || a.time.dt != b.time.dt || a.time.front_times != b.time.front_times ||
        a.time.front_every != b.time.front_every)
        return false;
    return a.tir_mode == b.tir_mode && a.projection == b.projection;
}

}  // namespace contact_optics
