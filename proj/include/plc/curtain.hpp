#pragma once

#include <cstdint>
#include <vector>

#include "plc/geom2d.hpp"
#include "plc/layout.hpp"

namespace plc {

// Sensor geometry of one PLC: top-down pose plus the camera/laser parameters
// that determine its rays, range, and vertical imaging extent.
struct PlcModel {
    Pose2D pose;
    double fov = 1.5707963267948966;
    int n_cols = 512;
    int n_rows = 640;
    double max_range = 30.0;
    double frame_rate = 24.0;
    double curtain_thickness = 0.03;
    double mount_height = 3.35;
    double vertical_fov = 1.2;
};

PlcModel make_plc(const SensorConfig& config, const Pose2D& pose);

enum class CurtainKind { safety, planar, random };

// One curtain: a control-point range along every camera ray.
struct CurtainProfile {
    std::vector<double> ranges;  // meters, one per column, each in (0, max_range]
    CurtainKind kind = CurtainKind::planar;
    long stamp = 0;
    bool degenerate_fallback = false;  // set when collinear input forced the capsule path
};

// Top-down ray of pixel column `col`. Bearings increase with col across the
// field of view, one per column at the column center.
Ray2 camera_ray(const PlcModel& plc, int col);

// Offset convex-hull curtain around the given robot points (world frame).
// Columns whose ray misses the offset hull are parked at max_range.
CurtainProfile design_safety_curtain(const std::vector<Point2>& points,
                                     const PlcModel& plc, double offset);

// Frontal-plane curtain at the given depth along the sensor heading.
CurtainProfile planar_curtain(double depth, const PlcModel& plc);

// Planar curtains at d_min, d_min + interval, ... while <= d_max.
std::vector<CurtainProfile> sweep_schedule(double d_min, double d_max, double interval,
                                           const PlcModel& plc);

// Random curtain with per-column ranges limited by the galvo slope bound
// (max |range difference| between adjacent columns). Deterministic per seed.
CurtainProfile random_curtain(const PlcModel& plc, std::uint64_t seed,
                              double slope_limit);

// k safety curtains then one sweep curtain, repeating; relative order within
// each stream is preserved. An exhausted stream is skipped.
std::vector<CurtainProfile> interleave(const std::vector<CurtainProfile>& safety,
                                       const std::vector<CurtainProfile>& sweep, int k);

}  // namespace plc
