#include "plc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace plc {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw ParseError("cannot open output file: " + path);
    return out;
}

char to_byte(float v) {
    const int b = static_cast<int>(std::lround(v * 255.0f));
    return static_cast<char>(std::clamp(b, 0, 255));
}

void write_pgm_raw(int width, int height, const std::vector<float>& intensity,
                   const std::string& path) {
    auto out = open_out(path, std::ios::binary);
    out << "P5\n" << width << " " << height << "\n255\n";
    for (float v : intensity) out.put(to_byte(v));
}

}  // namespace

void write_ply(const PointCloud& cloud, const std::string& path) {
    auto out = open_out(path);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << cloud.points.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "property float intensity\nend_header\n";
    char buf[128];
    for (const auto& cp : cloud.points) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f %.4f\n", cp.p.x(), cp.p.y(),
                      cp.p.z(), static_cast<double>(cp.intensity));
        out << buf;
    }
}

void write_pgm(const IntensityImage& image, const std::string& path) {
    write_pgm_raw(image.width, image.height, image.intensity, path);
}

void write_pgm(const MergedImage& image, const std::string& path) {
    write_pgm_raw(image.width, image.height, image.intensity, path);
}

void write_profile_csv(const CurtainProfile& profile, const std::string& path) {
    auto out = open_out(path);
    out << "col,range_m\n";
    char buf[64];
    for (std::size_t i = 0; i < profile.ranges.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f\n", i, profile.ranges[i]);
        out << buf;
    }
}

std::string timeline_to_json(const EventTimeline& timeline) {
    nlohmann::json j;
    j["events"] = nlohmann::json::array();
    for (const auto& e : timeline.events)
        j["events"].push_back({{"t_ms", e.t_ms},
                               {"kind", event_kind_name(e.kind)},
                               {"payload", e.payload}});
    return j.dump(2) + "\n";
}

void write_timeline(const EventTimeline& timeline, const std::string& path) {
    open_out(path) << timeline_to_json(timeline);
}

void write_placement_svg(const Scenario& scenario, const std::vector<Pose2D>& poses,
                         double fov, const std::string& path) {
    const Rect& w = scenario.workspace;
    const double scale = 80.0;  // pixels per meter
    const double width = w.width() * scale, height = w.height() * scale;
    auto px = [&](double x) { return (x - w.min_x) * scale; };
    // SVG y grows downward; flip so the figure matches the top-down view.
    auto py = [&](double y) { return height - (y - w.min_y) * scale; };

    auto out = open_out(path);
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                  "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  width, height, width, height);
    out << buf;
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";

    for (const auto& r : scenario.robots) {
        out << "<polygon points=\"";
        for (const auto& v : r.vertices) {
            std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", px(v.x), py(v.y));
            out << buf;
        }
        out << "\" fill=\"#5cb85c\" stroke=\"#2d6a2d\"/>\n";
    }

    for (const auto& p : poses) {
        // FOV wedge (dashed) and heading ray.
        const double reach = 2.0 * scale;
        for (double sign : {-1.0, 1.0}) {
            const double a = p.theta + sign * fov / 2.0;
            std::snprintf(buf, sizeof(buf),
                          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                          "stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
                          px(p.x), py(p.y), px(p.x) + reach * std::cos(a),
                          py(p.y) - reach * std::sin(a));
            out << buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"#f08080\" stroke-width=\"2\"/>\n",
                      px(p.x), py(p.y), px(p.x) + reach * std::cos(p.theta),
                      py(p.y) - reach * std::sin(p.theta));
        out << buf;
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"6\" fill=\"#d9534f\"/>\n",
                      px(p.x), py(p.y));
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace plc
