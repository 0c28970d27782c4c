#include "synthmot/config.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "synthmot/errors.hpp"

namespace synthmot {

using nlohmann::json;

EnvironmentVariant parse_variant(const std::string& text) {
    EnvironmentVariant v;
    if (text.empty() || text == "none") return v;
    for (char c : text) {
        switch (c) {
            case 'B':
                if (v.background) throw ValidationError("duplicate variant letter 'B'");
                v.background = true;
                break;
            case 'T':
                if (v.turbidity) throw ValidationError("duplicate variant letter 'T'");
                v.turbidity = true;
                break;
            case 'D':
                if (v.distractors) throw ValidationError("duplicate variant letter 'D'");
                v.distractors = true;
                break;
            default:
                throw ValidationError(std::string("unknown variant letter '") + c +
                                      "' (expected letters from {B,T,D} or \"none\")");
        }
    }
    return v;
}

const EnvironmentVariant* all_variants() {
    static const std::array<EnvironmentVariant, kVariantCount> table = {{
        {false, false, false},
        {true, false, false},
        {false, true, false},
        {false, false, true},
        {false, true, true},
        {true, true, false},
        {true, false, true},
        {true, true, true},
    }};
    return table.data();
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& context) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            throw ValidationError("unknown config key '" + context + item.key() + "'");
        }
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(std::string("config key '") + key + "' must be a number");
    return v.get<double>();
}

int64_t get_integer(const json& obj, const char* key, int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ValidationError(std::string("config key '") + key + "' must be an integer");
    }
    return v.get<int64_t>();
}

Range<double> get_range(const json& obj, const char* key, Range<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ValidationError(std::string("config key '") + key + "' must be [low, high]");
    }
    Range<double> r{v[0].get<double>(), v[1].get<double>()};
    if (r.low > r.high) throw ValidationError(std::string("inverted range for '") + key + "'");
    return r;
}

Range<int64_t> get_int_range(const json& obj, const char* key, Range<int64_t> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
        throw ValidationError(std::string("config key '") + key + "' must be [low, high] integers");
    }
    Range<int64_t> r{v[0].get<int64_t>(), v[1].get<int64_t>()};
    if (r.low > r.high) throw ValidationError(std::string("inverted range for '") + key + "'");
    return r;
}

Vec3 get_vec3(const json& arr, const char* key) {
    if (!arr.is_array() || arr.size() != 3 || !arr[0].is_number() || !arr[1].is_number() ||
        !arr[2].is_number()) {
        throw ValidationError(std::string("config key '") + key + "' must be [x, y, z]");
    }
    return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

SequenceConfig from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("config document must be a JSON object");
    reject_unknown_keys(doc,
                        {"frame_count", "fps", "image_width", "image_height", "variant",
                         "master_seed", "fish_count_range", "fish_scale_range", "world_bounds",
                         "boid_weight_ranges", "boid_kinematics", "turbidity_density_range",
                         "distractor_count_range", "distractor_radius_range",
                         "distractor_transparency_range", "camera", "background_dir"},
                        "");

    SequenceConfig cfg;
    cfg.frame_count = static_cast<int>(get_integer(doc, "frame_count", cfg.frame_count));
    cfg.fps = get_number(doc, "fps", cfg.fps);
    cfg.image_width = static_cast<int>(get_integer(doc, "image_width", cfg.image_width));
    cfg.image_height = static_cast<int>(get_integer(doc, "image_height", cfg.image_height));
    if (doc.contains("variant")) {
        if (!doc.at("variant").is_string()) throw ValidationError("config key 'variant' must be a string");
        cfg.variant = parse_variant(doc.at("variant").get<std::string>());
    }
    if (doc.contains("master_seed")) {
        const json& v = doc.at("master_seed");
        if (!v.is_number_integer()) throw ValidationError("config key 'master_seed' must be an integer");
        cfg.master_seed = v.get<uint64_t>();
    }

    cfg.fish_count_range = get_int_range(doc, "fish_count_range", cfg.fish_count_range);
    cfg.fish_scale_range = get_range(doc, "fish_scale_range", cfg.fish_scale_range);

    if (doc.contains("world_bounds")) {
        const json& wb = doc.at("world_bounds");
        if (!wb.is_object()) throw ValidationError("config key 'world_bounds' must be an object");
        reject_unknown_keys(wb, {"min", "max"}, "world_bounds.");
        if (!wb.contains("min") || !wb.contains("max")) {
            throw ValidationError("world_bounds needs both 'min' and 'max'");
        }
        cfg.world_bounds.min = get_vec3(wb.at("min"), "world_bounds.min");
        cfg.world_bounds.max = get_vec3(wb.at("max"), "world_bounds.max");
    }

    if (doc.contains("boid_weight_ranges")) {
        const json& bw = doc.at("boid_weight_ranges");
        if (!bw.is_object()) throw ValidationError("config key 'boid_weight_ranges' must be an object");
        reject_unknown_keys(bw, {"separation", "cohesion", "alignment", "leader"},
                            "boid_weight_ranges.");
        auto& r = cfg.boid_weight_ranges;
        r.separation = get_range(bw, "separation", r.separation);
        r.cohesion = get_range(bw, "cohesion", r.cohesion);
        r.alignment = get_range(bw, "alignment", r.alignment);
        r.leader = get_range(bw, "leader", r.leader);
    }

    if (doc.contains("boid_kinematics")) {
        const json& bk = doc.at("boid_kinematics");
        if (!bk.is_object()) throw ValidationError("config key 'boid_kinematics' must be an object");
        reject_unknown_keys(bk, {"neighborhood_radius", "min_speed", "max_speed", "max_force"},
                            "boid_kinematics.");
        auto& k = cfg.boid_kinematics;
        k.neighborhood_radius = get_number(bk, "neighborhood_radius", k.neighborhood_radius);
        k.min_speed = get_number(bk, "min_speed", k.min_speed);
        k.max_speed = get_number(bk, "max_speed", k.max_speed);
        k.max_force = get_number(bk, "max_force", k.max_force);
    }

    cfg.turbidity_density_range =
        get_range(doc, "turbidity_density_range", cfg.turbidity_density_range);
    cfg.distractor_count_range =
        get_int_range(doc, "distractor_count_range", cfg.distractor_count_range);
    cfg.distractor_radius_range =
        get_range(doc, "distractor_radius_range", cfg.distractor_radius_range);
    cfg.distractor_transparency_range =
        get_range(doc, "distractor_transparency_range", cfg.distractor_transparency_range);

    if (doc.contains("camera")) {
        const json& cam = doc.at("camera");
        if (!cam.is_object()) throw ValidationError("config key 'camera' must be an object");
        reject_unknown_keys(cam, {"focal_px", "cx", "cy"}, "camera.");
        cfg.camera.focal_px = get_number(cam, "focal_px", cfg.camera.focal_px);
        if (cam.contains("cx")) cfg.camera.cx = get_number(cam, "cx", 0.0);
        if (cam.contains("cy")) cfg.camera.cy = get_number(cam, "cy", 0.0);
    }

    if (doc.contains("background_dir")) {
        const json& bd = doc.at("background_dir");
        if (!bd.is_null()) {
            if (!bd.is_string()) throw ValidationError("config key 'background_dir' must be a string");
            cfg.background_dir = bd.get<std::string>();
        }
    }
    return cfg;
}

void check_invariants(const SequenceConfig& cfg) {
    if (cfg.frame_count < 1) throw ValidationError("frame_count must be >= 1");
    if (!(cfg.fps > 0.0)) throw ValidationError("fps must be > 0");
    if (cfg.image_width <= 0 || cfg.image_height <= 0) {
        throw ValidationError("non-positive dimension: image size must be > 0");
    }
    if (cfg.fish_count_range.low < 1) throw ValidationError("fish_count_range low must be >= 1");
    if (!(cfg.fish_scale_range.low > 0.0)) throw ValidationError("fish_scale_range must be positive");
    const Box3& wb = cfg.world_bounds;
    if (!(wb.min.x < wb.max.x && wb.min.y < wb.max.y && wb.min.z < wb.max.z)) {
        throw ValidationError("inverted range for 'world_bounds'");
    }
    if (!(wb.min.z > 0.0)) throw ValidationError("world_bounds must lie in front of the camera (min z > 0)");

    const auto& w = cfg.boid_weight_ranges;
    for (const Range<double>* r : {&w.separation, &w.cohesion, &w.alignment, &w.leader}) {
        if (r->low < 0.0) throw ValidationError("boid weights must be >= 0");
    }
    const auto& k = cfg.boid_kinematics;
    if (!(k.neighborhood_radius > 0.0)) throw ValidationError("neighborhood_radius must be > 0");
    if (k.min_speed < 0.0 || k.min_speed > k.max_speed) {
        throw ValidationError("need 0 <= min_speed <= max_speed");
    }
    if (!(k.max_force > 0.0)) throw ValidationError("max_force must be > 0");

    if (cfg.turbidity_density_range.low < 0.0) {
        throw ValidationError("turbidity_density_range must be >= 0");
    }
    if (cfg.distractor_count_range.low < 0) {
        throw ValidationError("distractor_count_range must be >= 0");
    }
    if (!(cfg.distractor_radius_range.low > 0.0)) {
        throw ValidationError("distractor_radius_range must be positive");
    }
    if (cfg.distractor_transparency_range.low < 0.0 ||
        cfg.distractor_transparency_range.high > 1.0) {
        throw ValidationError("distractor_transparency_range must lie in [0,1]");
    }
    if (!(cfg.camera.focal_px > 0.0)) throw ValidationError("camera focal_px must be > 0");
    if (cfg.camera.cx && (*cfg.camera.cx < 0.0 || *cfg.camera.cx >= cfg.image_width)) {
        throw ValidationError("camera cx outside the image");
    }
    if (cfg.camera.cy && (*cfg.camera.cy < 0.0 || *cfg.camera.cy >= cfg.image_height)) {
        throw ValidationError("camera cy outside the image");
    }
}

}  // namespace

SequenceConfig validate_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    SequenceConfig cfg = from_json(doc);
    check_invariants(cfg);
    return cfg;
}

SequenceConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return validate_config(ss.str());
}

SequenceConfig default_config() { return validate_config("{}"); }

}  // namespace synthmot
