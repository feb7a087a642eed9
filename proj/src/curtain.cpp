#include "plc/curtain.hpp"

#include <algorithm>
#include <cmath>

#include "plc/rng.hpp"

namespace plc {

namespace {

// Padded rectangle around the principal segment of a collinear point set, so
// safety-curtain synthesis still has a hull to offset.
Polygon2 capsule_fallback(const std::vector<Point2>& points, double pad) {
    Point2 a = points.front(), b = points.front();
    for (const auto& p : points) {
        for (const auto& q : points) {
            if (distance(p, q) > distance(a, b)) {
                a = p;
                b = q;
            }
        }
    }
    Point2 dir = b - a;
    const double len = dir.norm();
    if (len <= kGeomEps) {
        // All points coincide: tiny square around them.
        return Polygon2({{a.x - pad, a.y - pad},
                         {a.x + pad, a.y - pad},
                         {a.x + pad, a.y + pad},
                         {a.x - pad, a.y + pad}});
    }
    dir = dir * (1.0 / len);
    const Point2 n{-dir.y, dir.x};
    return Polygon2({a - dir * pad - n * pad, b + dir * pad - n * pad,
                     b + dir * pad + n * pad, a - dir * pad + n * pad});
}

}  // namespace

PlcModel make_plc(const SensorConfig& c, const Pose2D& pose) {
    PlcModel m;
    m.pose = pose;
    m.fov = c.fov;
    m.n_cols = c.n_cols;
    m.n_rows = c.n_rows;
    m.max_range = c.max_range;
    m.frame_rate = c.frame_rate_hz;
    m.curtain_thickness = c.curtain_thickness;
    m.mount_height = c.mount_height;
    m.vertical_fov = c.vertical_fov;
    return m;
}

Ray2 camera_ray(const PlcModel& plc, int col) {
    if (col < 0 || col >= plc.n_cols)
        throw IndexOutOfRange("camera_ray: column index out of range");
    const double bearing =
        plc.pose.theta - plc.fov / 2.0 + (col + 0.5) * (plc.fov / plc.n_cols);
    return Ray2(plc.pose.position(), bearing);
}

CurtainProfile design_safety_curtain(const std::vector<Point2>& points,
                                     const PlcModel& plc, double offset) {
    if (offset <= 0.0) throw DegenerateInput("design_safety_curtain: offset must be > 0");
    if (points.size() < 3)
        throw DegenerateInput("design_safety_curtain: need at least 3 points");

    CurtainProfile profile;
    profile.kind = CurtainKind::safety;

    Polygon2 hull = [&] {
        try {
            return convex_hull(points);
        } catch (const DegenerateInput&) {
            profile.degenerate_fallback = true;
            return capsule_fallback(points, 0.01);
        }
    }();
    const Polygon2 shell = offset_convex(hull, offset);

    profile.ranges.resize(static_cast<std::size_t>(plc.n_cols), plc.max_range);
    for (int col = 0; col < plc.n_cols; ++col) {
        const auto t = ray_polygon_entry(camera_ray(plc, col), shell);
        if (t && *t > kGeomEps && *t <= plc.max_range)
            profile.ranges[static_cast<std::size_t>(col)] = *t;
    }
    return profile;
}

CurtainProfile planar_curtain(double depth, const PlcModel& plc) {
    if (!(depth > 0.0 && depth <= plc.max_range))
        throw DegenerateInput("planar_curtain: depth out of (0, max_range]");
    CurtainProfile profile;
    profile.kind = CurtainKind::planar;
    profile.ranges.resize(static_cast<std::size_t>(plc.n_cols));
    for (int col = 0; col < plc.n_cols; ++col) {
        const double off =
            -plc.fov / 2.0 + (col + 0.5) * (plc.fov / plc.n_cols);  // bearing - heading
        const double r = depth / std::cos(off);
        profile.ranges[static_cast<std::size_t>(col)] = std::min(r, plc.max_range);
    }
    return profile;
}

std::vector<CurtainProfile> sweep_schedule(double d_min, double d_max, double interval,
                                           const PlcModel& plc) {
    if (!(d_min < d_max) || interval <= 0.0)
        throw DegenerateInput("sweep_schedule: require d_min < d_max and interval > 0");
    std::vector<CurtainProfile> out;
    for (long i = 0;; ++i) {
        const double d = d_min + i * interval;
        if (d > d_max + 1e-12) break;
        CurtainProfile p = planar_curtain(std::min(d, plc.max_range), plc);
        p.stamp = i;
        out.push_back(std::move(p));
    }
    return out;
}

CurtainProfile random_curtain(const PlcModel& plc, std::uint64_t seed,
                              double slope_limit) {
    CurtainProfile profile;
    profile.kind = CurtainKind::random;
    profile.ranges.resize(static_cast<std::size_t>(plc.n_cols));
    Rng rng(seed);
    const double floor = 1e-3;  // keep ranges strictly positive
    double prev = rng.next_in(floor, plc.max_range);
    profile.ranges[0] = prev;
    for (int col = 1; col < plc.n_cols; ++col) {
        const double lo = std::max(floor, prev - slope_limit);
        const double hi = std::min(plc.max_range, prev + slope_limit);
        prev = (hi > lo) ? rng.next_in(lo, hi) : lo;
        profile.ranges[static_cast<std::size_t>(col)] = prev;
    }
    return profile;
}

std::vector<CurtainProfile> interleave(const std::vector<CurtainProfile>& safety,
                                       const std::vector<CurtainProfile>& sweep, int k) {
    if (k < 1) throw DegenerateInput("interleave: k must be >= 1");
    std::vector<CurtainProfile> out;
    out.reserve(safety.size() + sweep.size());
    std::size_t si = 0, wi = 0;
    while (si < safety.size() || wi < sweep.size()) {
        for (int i = 0; i < k && si < safety.size(); ++i) out.push_back(safety[si++]);
        if (wi < sweep.size()) out.push_back(sweep[wi++]);
    }
    return out;
}

}  // namespace plc
