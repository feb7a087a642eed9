#include "plc/layout.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace plc {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

double get_num(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(path + "." + key, "missing or non-numeric");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(path + "." + key, "missing or non-integer");
    return j[key].get<int>();
}

Rect parse_rect(const json& j, const std::string& path) {
    Rect r;
    r.min_x = get_num(j, path, "min_x_m");
    r.min_y = get_num(j, path, "min_y_m");
    r.max_x = get_num(j, path, "max_x_m");
    r.max_y = get_num(j, path, "max_y_m");
    if (r.width() <= 0.0 || r.height() <= 0.0) fail(path, "degenerate rectangle");
    return r;
}

json rect_to_json(const Rect& r) {
    return json{{"min_x_m", r.min_x}, {"min_y_m", r.min_y},
                {"max_x_m", r.max_x}, {"max_y_m", r.max_y}};
}

Point2 parse_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected [x_m, y_m]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::array<double, 3> parse_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) fail(path, "expected 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Pose2D parse_pose(const json& j, const std::string& path) {
    return Pose2D(get_num(j, path, "x_m"), get_num(j, path, "y_m"),
                  get_num(j, path, "theta_rad"));
}

json pose_to_json(const Pose2D& p) {
    return json{{"x_m", p.x}, {"y_m", p.y}, {"theta_rad", p.theta}};
}

void check_strictly_increasing(const std::vector<double>& ts, const std::string& path) {
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (ts[i] <= ts[i - 1]) fail(path, "timestamps not strictly increasing");
}

}  // namespace

Scenario scenario_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }

    Scenario s;
    if (!j.contains("workspace")) fail("workspace", "missing");
    s.workspace = parse_rect(j["workspace"], "workspace");

    if (!j.contains("robots") || !j["robots"].is_array() || j["robots"].empty())
        fail("robots", "missing or empty");
    for (std::size_t i = 0; i < j["robots"].size(); ++i) {
        const json& jr = j["robots"][i];
        const std::string path = "robots[" + std::to_string(i) + "]";
        RobotFootprint r;
        r.id = jr.value("id", std::string("robot") + std::to_string(i));
        if (!jr.contains("vertices_m") || !jr["vertices_m"].is_array() ||
            jr["vertices_m"].size() != 4)
            fail(path + ".vertices_m", "robot '" + r.id + "' must have exactly 4 vertices");
        std::vector<Point2> verts;
        for (std::size_t k = 0; k < 4; ++k)
            verts.push_back(parse_point(jr["vertices_m"][k],
                                        path + ".vertices_m[" + std::to_string(k) + "]"));
        try {
            const Polygon2 poly(verts);
            if (!poly.is_convex())
                fail(path + ".vertices_m", "robot '" + r.id + "' footprint not convex");
            for (std::size_t k = 0; k < 4; ++k) r.vertices[k] = poly[k];  // CCW order
        } catch (const DegenerateInput& e) {
            fail(path + ".vertices_m", "robot '" + r.id + "': " + e.what());
        }
        for (const auto& v : r.vertices)
            if (!s.workspace.contains(v))
                fail(path + ".vertices_m", "robot '" + r.id + "' outside workspace");
        r.z_min = jr.value("z_min_m", r.z_min);
        r.z_max = jr.value("z_max_m", r.z_max);
        r.reflectivity = jr.value("reflectivity", r.reflectivity);
        for (const auto& other : s.robots)
            if (other.id == r.id) fail(path + ".id", "duplicate robot id '" + r.id + "'");
        s.robots.push_back(std::move(r));
    }

    s.plc_count = j.value("plc_count", 1);
    if (s.plc_count < 1) fail("plc_count", "must be >= 1");

    if (j.contains("grid")) {
        const json& jg = j["grid"];
        s.grid.x_bins = get_int(jg, "grid", "x_bins");
        s.grid.y_bins = get_int(jg, "grid", "y_bins");
        s.grid.theta_bins = get_int(jg, "grid", "theta_bins");
        if (s.grid.x_bins < 1 || s.grid.y_bins < 1 || s.grid.theta_bins < 1)
            fail("grid", "bin counts must be >= 1");
        s.grid.bounds = jg.contains("bounds") ? parse_rect(jg["bounds"], "grid.bounds")
                                              : s.workspace;
    } else {
        s.grid.bounds = s.workspace;
    }

    if (j.contains("sensor")) {
        const json& js = j["sensor"];
        SensorConfig& c = s.sensor;
        c.fov = js.value("fov_rad", c.fov);
        c.max_range = js.value("max_range_m", c.max_range);
        c.n_cols = js.value("n_cols", c.n_cols);
        c.n_rows = js.value("n_rows", c.n_rows);
        c.frame_rate_hz = js.value("frame_rate_hz", c.frame_rate_hz);
        c.dynamic_rate_hz = js.value("dynamic_rate_hz", c.dynamic_rate_hz);
        c.curtain_thickness = js.value("curtain_thickness_m", c.curtain_thickness);
        c.mount_height = js.value("mount_height_m", c.mount_height);
        c.vertical_fov = js.value("vertical_fov_rad", c.vertical_fov);
        c.safety_offset = js.value("safety_offset_m", c.safety_offset);
        c.galvo_slope_limit = js.value("galvo_slope_limit_m", c.galvo_slope_limit);
        if (c.n_cols < 2) fail("sensor.n_cols", "must be >= 2");
        if (!(c.fov > 0.0 && c.fov <= 3.14159265358979323847))
            fail("sensor.fov_rad", "must be in (0, pi]");
        if (c.frame_rate_hz <= 0.0) fail("sensor.frame_rate_hz", "must be > 0");
        if (c.curtain_thickness <= 0.0) fail("sensor.curtain_thickness_m", "must be > 0");
    }

    if (j.contains("monitor")) {
        const json& jm = j["monitor"];
        MonitorConfig& m = s.monitor;
        m.threshold = jm.value("threshold", m.threshold);
        m.persistence = jm.value("persistence_frames", m.persistence);
        m.command_latency_ms = jm.value("command_latency_ms", m.command_latency_ms);
        m.braking_latency_ms = jm.value("braking_latency_ms", m.braking_latency_ms);
        m.attribution_cap = jm.value("attribution_cap_m", m.attribution_cap);
        m.planar_depth = jm.value("planar_depth_m", m.planar_depth);
        if (!(m.threshold > 0.0 && m.threshold < 1.0))
            fail("monitor.threshold", "must be in (0, 1)");
        if (m.persistence < 1) fail("monitor.persistence_frames", "must be >= 1");
    }

    s.occlusion = j.value("occlusion", false);

    if (j.contains("fixed_plc_poses")) {
        const json& jp = j["fixed_plc_poses"];
        for (std::size_t i = 0; i < jp.size(); ++i)
            s.fixed_plc_poses.push_back(
                parse_pose(jp[i], "fixed_plc_poses[" + std::to_string(i) + "]"));
    }

    if (j.contains("arms")) {
        for (std::size_t i = 0; i < j["arms"].size(); ++i) {
            const json& ja = j["arms"][i];
            const std::string path = "arms[" + std::to_string(i) + "]";
            ArmSpec a;
            a.id = ja.value("id", std::string("arm") + std::to_string(i));
            if (ja.contains("base_xyz_m"))
                a.base_xyz = parse_vec3(ja["base_xyz_m"], path + ".base_xyz_m");
            if (ja.contains("base_rpy_rad"))
                a.base_rpy = parse_vec3(ja["base_rpy_rad"], path + ".base_rpy_rad");
            if (!ja.contains("links") || ja["links"].empty())
                fail(path + ".links", "arm '" + a.id + "' needs at least one link");
            for (std::size_t k = 0; k < ja["links"].size(); ++k) {
                const json& jl = ja["links"][k];
                const std::string lpath = path + ".links[" + std::to_string(k) + "]";
                ArmLinkSpec link;
                if (jl.contains("axis")) link.axis = parse_vec3(jl["axis"], lpath + ".axis");
                if (jl.contains("offset_m"))
                    link.offset = parse_vec3(jl["offset_m"], lpath + ".offset_m");
                if (jl.contains("rpy_rad"))
                    link.rpy = parse_vec3(jl["rpy_rad"], lpath + ".rpy_rad");
                a.links.push_back(link);
            }
            if (ja.contains("virtual_points")) {
                for (std::size_t k = 0; k < ja["virtual_points"].size(); ++k) {
                    const json& jv = ja["virtual_points"][k];
                    const std::string vpath =
                        path + ".virtual_points[" + std::to_string(k) + "]";
                    ArmSpec::VirtualPoint vp;
                    vp.link = get_int(jv, vpath, "link");
                    if (vp.link < 0 || vp.link >= static_cast<int>(a.links.size()))
                        fail(vpath + ".link", "link index out of range");
                    vp.offset = parse_vec3(jv["offset_m"], vpath + ".offset_m");
                    a.virtual_points.push_back(vp);
                }
            }
            if (ja.contains("trajectory")) {
                std::vector<double> ts;
                for (std::size_t k = 0; k < ja["trajectory"].size(); ++k) {
                    const json& jk = ja["trajectory"][k];
                    const std::string kpath =
                        path + ".trajectory[" + std::to_string(k) + "]";
                    ArmKeyframe kf;
                    kf.t = get_num(jk, kpath, "t_s");
                    if (!jk.contains("angles_rad") ||
                        jk["angles_rad"].size() != a.links.size())
                        fail(kpath + ".angles_rad", "length must match link count");
                    for (const auto& ang : jk["angles_rad"])
                        kf.angles.push_back(ang.get<double>());
                    ts.push_back(kf.t);
                    a.trajectory.push_back(std::move(kf));
                }
                check_strictly_increasing(ts, path + ".trajectory");
            }
            s.arms.push_back(std::move(a));
        }
    }

    if (j.contains("obstacles")) {
        for (std::size_t i = 0; i < j["obstacles"].size(); ++i) {
            const json& jo = j["obstacles"][i];
            const std::string path = "obstacles[" + std::to_string(i) + "]";
            ObstaclePrism o;
            o.id = jo.value("id", std::string("obstacle") + std::to_string(i));
            if (!jo.contains("footprint_m") || jo["footprint_m"].size() < 3)
                fail(path + ".footprint_m", "need at least 3 vertices");
            for (std::size_t k = 0; k < jo["footprint_m"].size(); ++k)
                o.footprint.push_back(parse_point(
                    jo["footprint_m"][k], path + ".footprint_m[" + std::to_string(k) + "]"));
            try {
                (void)o.polygon();
            } catch (const DegenerateInput& e) {
                fail(path + ".footprint_m", e.what());
            }
            o.z_min = jo.value("z_min_m", o.z_min);
            o.z_max = jo.value("z_max_m", o.z_max);
            if (o.z_min >= o.z_max) fail(path, "z_min_m must be < z_max_m");
            o.reflectivity = jo.value("reflectivity", o.reflectivity);
            if (o.reflectivity < 0.0 || o.reflectivity > 1.0)
                fail(path + ".reflectivity", "must be in [0, 1]");
            if (jo.contains("trajectory")) {
                std::vector<double> ts;
                for (std::size_t k = 0; k < jo["trajectory"].size(); ++k) {
                    const std::string kpath =
                        path + ".trajectory[" + std::to_string(k) + "]";
                    PoseKeyframe kf;
                    kf.t = get_num(jo["trajectory"][k], kpath, "t_s");
                    kf.pose = parse_pose(jo["trajectory"][k], kpath);
                    ts.push_back(kf.t);
                    o.trajectory.push_back(kf);
                }
                check_strictly_increasing(ts, path + ".trajectory");
            } else {
                o.trajectory.push_back({0.0, Pose2D(0, 0, 0)});
            }
            s.obstacles.push_back(std::move(o));
        }
    }

    return s;
}

std::string scenario_to_json_string(const Scenario& s) {
    json j;
    j["workspace"] = rect_to_json(s.workspace);
    j["robots"] = json::array();
    for (const auto& r : s.robots) {
        json jr;
        jr["id"] = r.id;
        jr["vertices_m"] = json::array();
        for (const auto& v : r.vertices) jr["vertices_m"].push_back({v.x, v.y});
        jr["z_min_m"] = r.z_min;
        jr["z_max_m"] = r.z_max;
        jr["reflectivity"] = r.reflectivity;
        j["robots"].push_back(jr);
    }
    j["plc_count"] = s.plc_count;
    j["grid"] = {{"x_bins", s.grid.x_bins},
                 {"y_bins", s.grid.y_bins},
                 {"theta_bins", s.grid.theta_bins},
                 {"bounds", rect_to_json(s.grid.bounds)}};
    const SensorConfig& c = s.sensor;
    j["sensor"] = {{"fov_rad", c.fov},
                   {"max_range_m", c.max_range},
                   {"n_cols", c.n_cols},
                   {"n_rows", c.n_rows},
                   {"frame_rate_hz", c.frame_rate_hz},
                   {"dynamic_rate_hz", c.dynamic_rate_hz},
                   {"curtain_thickness_m", c.curtain_thickness},
                   {"mount_height_m", c.mount_height},
                   {"vertical_fov_rad", c.vertical_fov},
                   {"safety_offset_m", c.safety_offset},
                   {"galvo_slope_limit_m", c.galvo_slope_limit}};
    const MonitorConfig& m = s.monitor;
    j["monitor"] = {{"threshold", m.threshold},
                    {"persistence_frames", m.persistence},
                    {"command_latency_ms", m.command_latency_ms},
                    {"braking_latency_ms", m.braking_latency_ms},
                    {"attribution_cap_m", m.attribution_cap},
                    {"planar_depth_m", m.planar_depth}};
    j["occlusion"] = s.occlusion;
    j["fixed_plc_poses"] = json::array();
    for (const auto& p : s.fixed_plc_poses) j["fixed_plc_poses"].push_back(pose_to_json(p));
    j["arms"] = json::array();
    for (const auto& a : s.arms) {
        json ja;
        ja["id"] = a.id;
        ja["base_xyz_m"] = a.base_xyz;
        ja["base_rpy_rad"] = a.base_rpy;
        ja["links"] = json::array();
        for (const auto& l : a.links)
            ja["links"].push_back(
                {{"axis", l.axis}, {"offset_m", l.offset}, {"rpy_rad", l.rpy}});
        ja["virtual_points"] = json::array();
        for (const auto& vp : a.virtual_points)
            ja["virtual_points"].push_back({{"link", vp.link}, {"offset_m", vp.offset}});
        ja["trajectory"] = json::array();
        for (const auto& kf : a.trajectory)
            ja["trajectory"].push_back({{"t_s", kf.t}, {"angles_rad", kf.angles}});
        j["arms"].push_back(ja);
    }
    j["obstacles"] = json::array();
    for (const auto& o : s.obstacles) {
        json jo;
        jo["id"] = o.id;
        jo["footprint_m"] = json::array();
        for (const auto& v : o.footprint) jo["footprint_m"].push_back({v.x, v.y});
        jo["z_min_m"] = o.z_min;
        jo["z_max_m"] = o.z_max;
        jo["reflectivity"] = o.reflectivity;
        jo["trajectory"] = json::array();
        for (const auto& kf : o.trajectory) {
            json jk = pose_to_json(kf.pose);
            jk["t_s"] = kf.t;
            jo["trajectory"].push_back(jk);
        }
        j["obstacles"].push_back(jo);
    }
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_string(ss.str());
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write scenario file: " + path);
    out << scenario_to_json_string(scenario);
}

Pose2D grid_pose(const SearchGrid& grid, int ix, int iy, int itheta) {
    if (ix < 0 || ix >= grid.x_bins || iy < 0 || iy >= grid.y_bins || itheta < 0 ||
        itheta >= grid.theta_bins)
        throw IndexOutOfRange("grid_pose: index outside bin counts");
    const double dx = grid.bounds.width() / grid.x_bins;
    const double dy = grid.bounds.height() / grid.y_bins;
    return Pose2D(grid.bounds.min_x + (ix + 0.5) * dx,
                  grid.bounds.min_y + (iy + 0.5) * dy,
                  itheta * (kTwoPi / grid.theta_bins));
}

Pose2D obstacle_pose(const ObstaclePrism& obstacle, double t) {
    const auto& traj = obstacle.trajectory;
    if (traj.empty()) return Pose2D(0, 0, 0);
    if (t <= traj.front().t) return traj.front().pose;
    if (t >= traj.back().t) return traj.back().pose;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        if (t <= traj[i].t) {
            const auto& a = traj[i - 1];
            const auto& b = traj[i];
            const double u = (t - a.t) / (b.t - a.t);
            return Pose2D(a.pose.x + u * (b.pose.x - a.pose.x),
                          a.pose.y + u * (b.pose.y - a.pose.y),
                          a.pose.theta + u * (b.pose.theta - a.pose.theta));
        }
    }
    return traj.back().pose;
}

}  // namespace plc
