#include "chainsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace chainsim {
namespace {

using nlohmann::json;

constexpr double kCollinearTol = 1e-9;  // m^2, cross-product norm

bool finite(const Vec3& v) {
    return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

class ViolationLog {
public:
    void add(const std::string& name, const std::string& detail) {
        if (std::find(names_.begin(), names_.end(), name) == names_.end()) {
            names_.push_back(name);
        }
        if (!details_.empty()) details_ += "; ";
        details_ += detail;
    }

    bool empty() const { return names_.empty(); }

    [[noreturn]] void raise() const { throw InvalidScene(names_, details_); }

private:
    std::vector<std::string> names_;
    std::string details_;
};

// Any three effective anchors spanning a plane make the scene usable; all of
// them on one line leaves position undetermined around that line.
bool anchors_collinear(const std::vector<Vec3>& e) {
    const size_t n = e.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            for (size_t k = j + 1; k < n; ++k) {
                if (((e[j] - e[i]).cross(e[k] - e[i])).norm() > kCollinearTol) {
                    return false;
                }
            }
        }
    }
    return true;
}

int line_of_byte_offset(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
    for (const auto& item : obj.items()) {
        if (!required.count(item.key()) && !optional.count(item.key())) {
            throw ParseError(0, "unknown key \"" + item.key() + "\" in " + where);
        }
    }
    for (const auto& key : required) {
        if (!obj.contains(key)) {
            throw ParseError(0, "missing key \"" + key + "\" in " + where);
        }
    }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ParseError(0, "\"" + key + "\" in " + where + " must be a number");
    }
    return v.get<double>();
}

Vec3 get_vec3(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
        throw ParseError(0, where + " must be an array of 3 numbers");
    }
    return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

bool vec_equal(const Vec3& a, const Vec3& b) {
    return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

}  // namespace

Scene validate_scene(const Scene& raw) {
    ViolationLog log;
    const int n = raw.drive_count();

    if (!(raw.room.size_x > 0.0) || !(raw.room.size_y > 0.0) || !(raw.room.size_z > 0.0)) {
        log.add("room-size", "room sizes must be strictly positive");
    }
    if (n < 3 || n > 8) {
        log.add("drive-count", "drive count " + std::to_string(n) + " outside 3..8");
    }
    if (raw.platform.attachment_offsets.size() != raw.drives.size()) {
        log.add("offset-count", "attachment offset count " +
                                    std::to_string(raw.platform.attachment_offsets.size()) +
                                    " != drive count " + std::to_string(n));
    }
    if (!(raw.platform.mass >= 0.0) || !(raw.platform.payload_mass >= 0.0)) {
        log.add("mass", "platform mass and payload_mass must be >= 0");
    }
    if (!(raw.gravity > 0.0) || !std::isfinite(raw.gravity)) {
        log.add("gravity", "gravity must be positive and finite");
    }
    if (!(raw.clearance >= 0.0) || !std::isfinite(raw.clearance)) {
        log.add("clearance", "clearance must be >= 0 and finite");
    }

    for (int i = 0; i < n; ++i) {
        const ChainDrive& d = raw.drives[static_cast<size_t>(i)];
        const std::string tag = "drive " + std::to_string(i);
        if (!finite(d.anchor)) {
            log.add("non-finite", tag + ": anchor has a non-finite component");
            continue;
        }
        if (!raw.inside_room(d.anchor)) {
            log.add("anchor-outside-room", tag + ": anchor outside the room box");
        }
        if (!(d.length_min >= 0.0 && d.length_min < d.length_max &&
              d.length_max <= d.stored_length)) {
            log.add("length-bounds",
                    tag + ": need 0 <= length_min < length_max <= stored_length");
        }
        if (!(d.resolution > 0.0 && d.resolution <= d.pitch)) {
            log.add("resolution-pitch", tag + ": need 0 < resolution <= pitch");
        }
        if (!(d.speed_max > 0.0) || !(d.accel_max > 0.0)) {
            log.add("motion-limits", tag + ": speed_max and accel_max must be positive");
        }
        if (!(d.error_coefficient >= 0.0)) {
            log.add("error-coefficient", tag + ": error_coefficient must be >= 0");
        }
        if (!(d.tension_limit > 0.0) || !(d.compression_limit > 0.0)) {
            log.add("force-capacity",
                    tag + ": tension_limit and compression_limit must be positive");
        }
        if (!(d.gimbal_cone_half_angle > 0.0 && d.gimbal_cone_half_angle <= kHalfPi)) {
            log.add("gimbal-range", tag + ": gimbal_cone_half_angle outside (0, pi/2]");
        }
    }

    for (const Vec3& r : raw.platform.attachment_offsets) {
        if (!finite(r)) {
            log.add("non-finite", "attachment offset has a non-finite component");
        }
    }

    if (n >= 3 && raw.platform.attachment_offsets.size() == raw.drives.size()) {
        std::vector<Vec3> eff;
        eff.reserve(static_cast<size_t>(n));
        bool all_finite = true;
        for (int i = 0; i < n; ++i) {
            Vec3 e = raw.effective_anchor(i);
            if (!finite(e)) all_finite = false;
            eff.push_back(e);
        }
        if (all_finite && anchors_collinear(eff)) {
            log.add("anchors-collinear", "effective anchors do not span a plane");
        }
    }

    if (!log.empty()) log.raise();
    return raw;
}

Scene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scene file: " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(line_of_byte_offset(text, e.byte), e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(0, "scene document must be a JSON object");
    }

    require_keys(doc, "scene", {"room", "platform", "drives"}, {"gravity", "clearance"});

    Scene s;

    const json& room = doc.at("room");
    if (!room.is_object()) throw ParseError(0, "\"room\" must be an object");
    require_keys(room, "room", {"size_x", "size_y", "size_z"}, {});
    s.room.size_x = get_number(room, "size_x", "room");
    s.room.size_y = get_number(room, "size_y", "room");
    s.room.size_z = get_number(room, "size_z", "room");

    if (doc.contains("gravity")) s.gravity = get_number(doc, "gravity", "scene");
    if (doc.contains("clearance")) s.clearance = get_number(doc, "clearance", "scene");

    const json& plat = doc.at("platform");
    if (!plat.is_object()) throw ParseError(0, "\"platform\" must be an object");
    require_keys(plat, "platform", {"attachment_offsets", "mass", "payload_mass"}, {});
    const json& offs = plat.at("attachment_offsets");
    if (!offs.is_array()) {
        throw ParseError(0, "\"attachment_offsets\" must be an array");
    }
    for (size_t i = 0; i < offs.size(); ++i) {
        s.platform.attachment_offsets.push_back(
            get_vec3(offs[i], "attachment_offsets[" + std::to_string(i) + "]"));
    }
    s.platform.mass = get_number(plat, "mass", "platform");
    s.platform.payload_mass = get_number(plat, "payload_mass", "platform");

    const json& drives = doc.at("drives");
    if (!drives.is_array()) throw ParseError(0, "\"drives\" must be an array");
    for (size_t i = 0; i < drives.size(); ++i) {
        const json& jd = drives[i];
        const std::string where = "drives[" + std::to_string(i) + "]";
        if (!jd.is_object()) throw ParseError(0, where + " must be an object");
        require_keys(jd, where,
                     {"anchor", "length_min", "length_max", "stored_length", "pitch",
                      "resolution", "speed_max", "accel_max", "tension_limit"},
                     {"error_coefficient", "compression_limit", "gimbal_cone_half_angle"});
        ChainDrive d;
        d.anchor = get_vec3(jd.at("anchor"), where + ".anchor");
        d.length_min = get_number(jd, "length_min", where);
        d.length_max = get_number(jd, "length_max", where);
        d.stored_length = get_number(jd, "stored_length", where);
        d.pitch = get_number(jd, "pitch", where);
        d.resolution = get_number(jd, "resolution", where);
        d.speed_max = get_number(jd, "speed_max", where);
        d.accel_max = get_number(jd, "accel_max", where);
        d.tension_limit = get_number(jd, "tension_limit", where);
        if (jd.contains("error_coefficient")) {
            d.error_coefficient = get_number(jd, "error_coefficient", where);
        }
        if (jd.contains("compression_limit")) {
            d.compression_limit = get_number(jd, "compression_limit", where);
        } else {
            // Buckling proxy: a folded chain pushes far less than it pulls.
            d.compression_limit = 0.25 * d.tension_limit;
        }
        if (jd.contains("gimbal_cone_half_angle")) {
            d.gimbal_cone_half_angle = get_number(jd, "gimbal_cone_half_angle", where);
        }
        s.drives.push_back(d);
    }

    return validate_scene(s);
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
    json doc;
    doc["room"] = {{"size_x", scene.room.size_x},
                   {"size_y", scene.room.size_y},
                   {"size_z", scene.room.size_z}};
    doc["gravity"] = scene.gravity;
    doc["clearance"] = scene.clearance;
    json offs = json::array();
    for (const Vec3& r : scene.platform.attachment_offsets) offs.push_back(vec3_to_json(r));
    doc["platform"] = {{"attachment_offsets", offs},
                       {"mass", scene.platform.mass},
                       {"payload_mass", scene.platform.payload_mass}};
    json drives = json::array();
    for (const ChainDrive& d : scene.drives) {
        drives.push_back({{"anchor", vec3_to_json(d.anchor)},
                          {"length_min", d.length_min},
                          {"length_max", d.length_max},
                          {"stored_length", d.stored_length},
                          {"pitch", d.pitch},
                          {"resolution", d.resolution},
                          {"speed_max", d.speed_max},
                          {"accel_max", d.accel_max},
                          {"error_coefficient", d.error_coefficient},
                          {"tension_limit", d.tension_limit},
                          {"compression_limit", d.compression_limit},
                          {"gimbal_cone_half_angle", d.gimbal_cone_half_angle}});
    }
    doc["drives"] = drives;

    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write scene file: " + path.string());
    }
    out << doc.dump(2) << "\n";
}

bool scene_equal(const Scene& a, const Scene& b) {
    if (a.room.size_x != b.room.size_x || a.room.size_y != b.room.size_y ||
        a.room.size_z != b.room.size_z) {
        return false;
    }
    if (a.gravity != b.gravity || a.clearance != b.clearance) return false;
    if (a.platform.mass != b.platform.mass ||
        a.platform.payload_mass != b.platform.payload_mass) {
        return false;
    }
    if (a.platform.attachment_offsets.size() != b.platform.attachment_offsets.size() ||
        a.drives.size() != b.drives.size()) {
        return false;
    }
    for (size_t i = 0; i < a.platform.attachment_offsets.size(); ++i) {
        if (!vec_equal(a.platform.attachment_offsets[i], b.platform.attachment_offsets[i])) {
            return false;
        }
    }
    for (size_t i = 0; i < a.drives.size(); ++i) {
        const ChainDrive& x = a.drives[i];
        const ChainDrive& y = b.drives[i];
        if (!vec_equal(x.anchor, y.anchor) || x.length_min != y.length_min ||
            x.length_max != y.length_max || x.stored_length != y.stored_length ||
            x.pitch != y.pitch || x.resolution != y.resolution ||
            x.speed_max != y.speed_max || x.accel_max != y.accel_max ||
            x.error_coefficient != y.error_coefficient ||
            x.tension_limit != y.tension_limit ||
            x.compression_limit != y.compression_limit ||
            x.gimbal_cone_half_angle != y.gimbal_cone_half_angle) {
            return false;
        }
    }
    return true;
}

}  // namespace chainsim
