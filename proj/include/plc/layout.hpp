#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "plc/geom2d.hpp"

namespace plc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the JSON field path of the offending value.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct Rect {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool contains(const Point2& p, double eps = kGeomEps) const {
        return p.x >= min_x - eps && p.x <= max_x + eps &&
               p.y >= min_y - eps && p.y <= max_y + eps;
    }
};

// Four-cornered robot footprint in the top-down view. The vertical extent and
// reflectivity are only used when the footprint is rendered as a scene prism.
struct RobotFootprint {
    std::string id;
    std::array<Point2, 4> vertices;  // CCW
    double z_min = 0.1;
    double z_max = 1.5;
    double reflectivity = 0.6;

    Polygon2 polygon() const {
        return Polygon2({vertices[0], vertices[1], vertices[2], vertices[3]});
    }
};

struct SearchGrid {
    int x_bins = 1;
    int y_bins = 1;
    int theta_bins = 1;
    Rect bounds;

    long total_poses() const {
        return static_cast<long>(x_bins) * y_bins * theta_bins;
    }
};

struct SensorConfig {
    double fov = 1.5707963267948966;  // 90 deg full angle
    double max_range = 30.0;
    int n_cols = 512;
    int n_rows = 640;
    double frame_rate_hz = 24.0;        // planar / random curtain imaging rate
    double dynamic_rate_hz = 7.0;       // dynamic safety curtain imaging rate
    double curtain_thickness = 0.03;
    double mount_height = 3.35;
    double vertical_fov = 1.2;
    double safety_offset = 0.10;
    double galvo_slope_limit = 0.5;     // max |range step| between adjacent columns
};

struct MonitorConfig {
    double threshold = 0.5;
    int persistence = 1;               // consecutive frames required for a stop
    double command_latency_ms = 49.0;
    double braking_latency_ms = 283.0;
    double attribution_cap = 2.0;      // beyond this, stop broadcasts to all robots
    double planar_depth = 3.0;         // fixed planar curtain depth in planar mode
};

struct ArmLinkSpec {
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    std::array<double, 3> offset{0.0, 0.0, 0.0};  // fixed link translation, meters
    std::array<double, 3> rpy{0.0, 0.0, 0.0};     // fixed link rotation, radians
};

struct ArmKeyframe {
    double t = 0.0;
    std::vector<double> angles;
};

struct ArmSpec {
    std::string id;
    std::array<double, 3> base_xyz{0.0, 0.0, 0.0};
    std::array<double, 3> base_rpy{0.0, 0.0, 0.0};
    std::vector<ArmLinkSpec> links;
    struct VirtualPoint {
        int link = 0;
        std::array<double, 3> offset{0.0, 0.0, 0.0};
    };
    std::vector<VirtualPoint> virtual_points;
    std::vector<ArmKeyframe> trajectory;
};

struct PoseKeyframe {
    double t = 0.0;
    Pose2D pose;
};

// Extruded moving obstacle: a footprint polygon swept over [z_min, z_max],
// driven by a timestamped pose trajectory.
struct ObstaclePrism {
    std::string id;
    std::vector<Point2> footprint;  // local frame, CCW
    double z_min = 0.0;
    double z_max = 2.0;
    double reflectivity = 0.9;
    std::vector<PoseKeyframe> trajectory;

    Polygon2 polygon() const { return Polygon2(footprint); }
};

struct Scenario {
    Rect workspace;
    std::vector<RobotFootprint> robots;
    int plc_count = 1;
    SearchGrid grid;
    std::vector<Pose2D> fixed_plc_poses;
    std::vector<ArmSpec> arms;
    std::vector<ObstaclePrism> obstacles;
    SensorConfig sensor;
    MonitorConfig monitor;
    bool occlusion = false;
};

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);
std::string scenario_to_json_string(const Scenario& scenario);
Scenario scenario_from_json_string(const std::string& text);

// Pose at the center of grid bin (ix, iy); theta spans [0, 2pi) without
// duplicating 2pi: theta = itheta * 2pi / theta_bins.
Pose2D grid_pose(const SearchGrid& grid, int ix, int iy, int itheta);

// Obstacle pose at time t: piecewise-linear in (x, y, theta), clamped at the
// trajectory endpoints.
Pose2D obstacle_pose(const ObstaclePrism& obstacle, double t);

}  // namespace plc
