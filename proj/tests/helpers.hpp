#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plc/geom2d.hpp"
#include "plc/layout.hpp"
#include "plc/robotarm.hpp"

namespace testutil {

inline constexpr double kPi = 3.14159265358979323846;

inline std::string scenario_path(const std::string& name) {
    return std::string(PLC_SCENARIO_DIR) + "/" + name;
}

// Gift-wrapping (Jarvis march) hull, independent of the library Quickhull.
// Collinear boundary points are dropped, matching the library convention.
inline std::vector<plc::Point2> gift_wrap_hull(std::vector<plc::Point2> pts) {
    auto orient = [](const plc::Point2& a, const plc::Point2& b, const plc::Point2& c) {
        return (b - a).cross(c - a);
    };
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].x < pts[start].x ||
            (pts[i].x == pts[start].x && pts[i].y < pts[start].y))
            start = i;
    }
    std::vector<plc::Point2> hull;
    std::size_t cur = start;
    do {
        hull.push_back(pts[cur]);
        std::size_t next = (cur + 1) % pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double o = orient(pts[cur], pts[next], pts[i]);
            // Pick the most counter-clockwise candidate; on ties keep the
            // farther one so collinear intermediates are skipped.
            if (o > 1e-12 ||
                (std::abs(o) <= 1e-12 && plc::distance(pts[cur], pts[i]) >
                                             plc::distance(pts[cur], pts[next])))
                next = i;
        }
        cur = next;
    } while (cur != start && hull.size() <= pts.size());
    return hull;
}

// Ray entry oracle: coarse 1e-2 march to bracket the first boundary crossing,
// then a 1e-4 refinement inside the bracket.
inline std::optional<double> marching_ray_entry(const plc::Ray2& ray,
                                                const plc::Polygon2& poly,
                                                double t_max) {
    auto inside = [&](double t) {
        return plc::point_in_polygon(ray.at(t), poly, 1e-7) >= 0;
    };
    const double coarse = 1e-2, fine = 1e-4;
    double prev = 0.0;
    if (inside(0.0)) return 0.0;
    for (double t = coarse; t <= t_max + coarse; t += coarse) {
        if (inside(t)) {
            for (double u = prev; u <= t + fine; u += fine)
                if (inside(u)) return u;
            return t;
        }
        prev = t;
    }
    return std::nullopt;
}

// Occlusion oracle: march the open segment at 1e-4 resolution looking for a
// strictly-interior sample of any blocker.
inline bool marching_segment_occluded(const plc::Point2& a, const plc::Point2& b,
                                      const std::vector<plc::Polygon2>& blockers) {
    const double len = plc::distance(a, b);
    const int n = std::max(2, static_cast<int>(len / 1e-4));
    for (int i = 1; i < n; ++i) {
        const double u = static_cast<double>(i) / n;
        const plc::Point2 p = a + (b - a) * u;
        for (const auto& poly : blockers)
            if (plc::point_in_polygon(p, poly, -1e-9) > 0) return true;
    }
    return false;
}

// FK oracle: independent chain of explicit 4x4 matrices.
inline std::vector<Eigen::Vector3d> fk_matrix_oracle(const plc::ArmSpec& spec,
                                                     const std::vector<double>& angles) {
    auto rot4 = [](const Eigen::Matrix3d& r) {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        m.block<3, 3>(0, 0) = r;
        return m;
    };
    auto trans4 = [](const Eigen::Vector3d& t) {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        m.block<3, 1>(0, 3) = t;
        return m;
    };
    auto rpy_mat = [](const std::array<double, 3>& rpy) {
        return Eigen::Matrix3d(
            Eigen::AngleAxisd(rpy[2], Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(rpy[1], Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(rpy[0], Eigen::Vector3d::UnitX()));
    };

    Eigen::Matrix4d t = trans4({spec.base_xyz[0], spec.base_xyz[1], spec.base_xyz[2]}) *
                        rot4(rpy_mat(spec.base_rpy));
    std::vector<Eigen::Matrix4d> frames;
    for (std::size_t i = 0; i < spec.links.size(); ++i) {
        const auto& l = spec.links[i];
        const Eigen::Vector3d axis =
            Eigen::Vector3d(l.axis[0], l.axis[1], l.axis[2]).normalized();
        t = t * rot4(Eigen::AngleAxisd(angles[i], axis).toRotationMatrix());
        t = t * trans4({l.offset[0], l.offset[1], l.offset[2]}) * rot4(rpy_mat(l.rpy));
        frames.push_back(t);
    }
    std::vector<Eigen::Vector3d> out;
    for (const auto& f : frames) out.push_back(f.block<3, 1>(0, 3));
    for (const auto& vp : spec.virtual_points) {
        const Eigen::Vector4d local(vp.offset[0], vp.offset[1], vp.offset[2], 1.0);
        out.emplace_back((frames[static_cast<std::size_t>(vp.link)] * local).head<3>());
    }
    return out;
}

inline plc::Polygon2 random_convex_polygon(std::mt19937_64& gen, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<plc::Point2> pts;
    const int n = 4 + static_cast<int>(u(gen) * 8);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * u(gen);
        const double r = radius * (0.3 + 0.7 * u(gen));
        pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return plc::convex_hull(pts);
}

inline bool point_sets_equal(std::vector<plc::Point2> a, std::vector<plc::Point2> b,
                             double eps = 1e-9) {
    if (a.size() != b.size()) return false;
    auto lt = [](const plc::Point2& p, const plc::Point2& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (plc::distance(a[i], b[i]) > eps) return false;
    return true;
}

}  // namespace testutil
