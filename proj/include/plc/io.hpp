#pragma once

#include <string>

#include "plc/curtain.hpp"
#include "plc/instrument.hpp"
#include "plc/monitor.hpp"
#include "plc/recon.hpp"

namespace plc {

// ASCII PLY with x y z intensity per vertex.
void write_ply(const PointCloud& cloud, const std::string& path);

// 8-bit binary PGM (P5).
void write_pgm(const IntensityImage& image, const std::string& path);
void write_pgm(const MergedImage& image, const std::string& path);

// Curtain profile as "col,range_m" CSV.
void write_profile_csv(const CurtainProfile& profile, const std::string& path);

// Timeline as JSON with integer millisecond timestamps.
std::string timeline_to_json(const EventTimeline& timeline);
void write_timeline(const EventTimeline& timeline, const std::string& path);

// Top-down SVG of a scenario with the given PLC poses: workspace frame,
// robot squares, sensor positions with heading rays and FOV wedges.
void write_placement_svg(const Scenario& scenario, const std::vector<Pose2D>& poses,
                         double fov, const std::string& path);

}  // namespace plc
