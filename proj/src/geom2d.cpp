#include "plc/geom2d.hpp"

#include <algorithm>
#include <limits>

namespace plc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite(const Point2& p, const char* what) {
    if (!p.finite()) throw DegenerateInput(std::string(what) + ": non-finite coordinate");
}

// Twice the signed area of triangle (a, b, c); > 0 for CCW.
double orient(const Point2& a, const Point2& b, const Point2& c) {
    return (b - a).cross(c - a);
}

// Proper (interior) crossing of segments ab and cd, excluding shared endpoints.
bool segments_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double d1 = orient(c, d, a);
    const double d2 = orient(c, d, b);
    const double d3 = orient(a, b, c);
    const double d4 = orient(a, b, d);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double wrap_angle_2pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a;
}

double wrap_angle_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a < 0) a += 2.0 * kPi;
    return a - kPi;
}

Pose2D::Pose2D(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle_2pi(theta_)) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(theta))
        throw DegenerateInput("Pose2D: non-finite component");
}

Ray2::Ray2(Point2 origin_, Point2 direction_) : origin(origin_), direction(direction_) {
    const double n = direction.norm();
    if (std::abs(n - 1.0) > kGeomEps)
        throw DegenerateInput("Ray2: direction must be a unit vector");
}

Polygon2::Polygon2(std::vector<Point2> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3) throw DegenerateInput("Polygon2: fewer than 3 vertices");
    for (const auto& v : verts_) require_finite(v, "Polygon2");
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point2& a = verts_[i];
        const Point2& b = verts_[(i + 1) % verts_.size()];
        if (distance(a, b) <= kGeomEps)
            throw DegenerateInput("Polygon2: repeated consecutive vertex");
    }
    const double area2 = signed_area() * 2.0;
    if (std::abs(area2) <= kGeomEps) throw DegenerateInput("Polygon2: zero area");
    if (area2 < 0) std::reverse(verts_.begin(), verts_.end());

    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_cross(verts_[i], verts_[(i + 1) % n], verts_[j], verts_[(j + 1) % n]))
                throw DegenerateInput("Polygon2: self-intersecting boundary");
        }
    }
}

double Polygon2::signed_area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        s += verts_[i].cross(verts_[(i + 1) % verts_.size()]);
    return 0.5 * s;
}

bool Polygon2::is_convex(double eps) const {
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(verts_[i], verts_[(i + 1) % n], verts_[(i + 2) % n]) < -eps) return false;
    }
    return true;
}

Point2 Polygon2::centroid() const {
    Point2 c{0, 0};
    for (const auto& v : verts_) c = c + v;
    return c * (1.0 / static_cast<double>(verts_.size()));
}

Polygon2 Polygon2::transformed(const Pose2D& pose) const {
    const double c = std::cos(pose.theta), s = std::sin(pose.theta);
    std::vector<Point2> out;
    out.reserve(verts_.size());
    for (const auto& v : verts_)
        out.push_back({pose.x + c * v.x - s * v.y, pose.y + s * v.x + c * v.y});
    return Polygon2(std::move(out));
}

namespace {

// Quickhull recursion: appends to `out` the hull vertices strictly right of
// a->b (a CCW boundary chain bulges right of its chord), in a->b order,
// excluding a and b themselves.
void quickhull_side(const std::vector<Point2>& pts, const Point2& a, const Point2& b,
                    std::vector<Point2>& out) {
    double best = -kGeomEps;
    int best_i = -1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = orient(a, b, pts[i]);
        if (d < best) {
            best = d;
            best_i = static_cast<int>(i);
        }
    }
    if (best_i < 0) return;
    const Point2 far = pts[static_cast<std::size_t>(best_i)];
    std::vector<Point2> right_af, right_fb;
    for (const auto& p : pts) {
        if (orient(a, far, p) < -kGeomEps) right_af.push_back(p);
        else if (orient(far, b, p) < -kGeomEps) right_fb.push_back(p);
    }
    quickhull_side(right_af, a, far, out);
    out.push_back(far);
    quickhull_side(right_fb, far, b, out);
}

}  // namespace

Polygon2 convex_hull(const std::vector<Point2>& points) {
    std::vector<Point2> pts = points;
    for (const auto& p : pts) require_finite(p, "convex_hull");
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() < 3) throw DegenerateInput("convex_hull: fewer than 3 distinct points");

    const Point2 lo = pts.front();
    const Point2 hi = pts.back();
    std::vector<Point2> upper, lower;
    for (const auto& p : pts) {
        const double d = orient(lo, hi, p);
        if (d > kGeomEps) upper.push_back(p);
        else if (d < -kGeomEps) lower.push_back(p);
    }
    if (upper.empty() && lower.empty())
        throw DegenerateInput("convex_hull: all points collinear");

    std::vector<Point2> hull;
    hull.push_back(lo);
    quickhull_side(lower, lo, hi, hull);  // bottom chain, CCW from lo to hi
    hull.push_back(hi);
    quickhull_side(upper, hi, lo, hull);  // top chain, CCW from hi back to lo
    if (hull.size() < 3) throw DegenerateInput("convex_hull: degenerate hull");
    return Polygon2(std::move(hull));
}

std::optional<double> ray_polygon_entry(const Ray2& ray, const Polygon2& poly) {
    double best = std::numeric_limits<double>::infinity();
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p = v[i];
        const Point2 q = v[(i + 1) % n];
        const Point2 e = q - p;
        const double denom = ray.direction.cross(e);
        const Point2 w = p - ray.origin;
        if (std::abs(denom) > kGeomEps) {
            const double t = w.cross(e) / denom;
            const double s = w.cross(ray.direction) / denom;
            if (t >= -kGeomEps && s >= -kGeomEps && s <= 1.0 + kGeomEps)
                best = std::min(best, std::max(t, 0.0));
        } else if (std::abs(w.cross(ray.direction)) <= kGeomEps) {
            // Edge collinear with the ray: its endpoints are candidate hits.
            for (const Point2& end : {p, q}) {
                const double t = (end - ray.origin).dot(ray.direction);
                if (t >= -kGeomEps) best = std::min(best, std::max(t, 0.0));
            }
        }
    }
    if (!std::isfinite(best)) return std::nullopt;
    return best;
}

double subtended_angle(const Point2& viewpoint, const Point2& a, const Point2& b) {
    const Point2 u = a - viewpoint;
    const Point2 w = b - viewpoint;
    if (u.norm() <= kGeomEps || w.norm() <= kGeomEps)
        throw DegenerateInput("subtended_angle: endpoint coincides with viewpoint");
    return std::atan2(std::abs(u.cross(w)), u.dot(w));
}

bool in_fov(const Pose2D& sensor, double fov, double max_range, const Point2& p) {
    if (!(fov > 0.0 && fov <= 2.0 * kPi))
        throw DegenerateInput("in_fov: fov out of (0, 2pi]");
    const Point2 d = p - sensor.position();
    if (d.norm() > max_range) return false;
    const double bearing = wrap_angle_pi(std::atan2(d.y, d.x) - sensor.theta);
    return std::abs(bearing) <= fov / 2.0 + kGeomEps;
}

bool segment_occluded(const Point2& a, const Point2& b,
                      const std::vector<Polygon2>& blockers) {
    if (distance(a, b) <= kGeomEps)
        throw DegenerateInput("segment_occluded: zero-length segment");
    const Point2 d = b - a;
    for (const auto& poly : blockers) {
        std::vector<double> ts{0.0, 1.0};
        const auto& v = poly.vertices();
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 p = v[i];
            const Point2 e = v[(i + 1) % n] - p;
            const double denom = d.cross(e);
            if (std::abs(denom) <= kGeomEps) continue;
            const Point2 w = p - a;
            const double t = w.cross(e) / denom;
            const double s = w.cross(d) / denom;
            if (t > 0.0 && t < 1.0 && s >= -kGeomEps && s <= 1.0 + kGeomEps)
                ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (ts[i + 1] - ts[i] <= 1e-12) continue;
            const Point2 mid = a + d * ((ts[i] + ts[i + 1]) / 2.0);
            if (point_in_polygon(mid, poly) > 0) return true;
        }
    }
    return false;
}

Polygon2 offset_convex(const Polygon2& poly, double d) {
    if (d < 0.0) throw DegenerateInput("offset_convex: negative distance");
    if (!poly.is_convex()) throw DegenerateInput("offset_convex: polygon not convex");
    const auto& v = poly.vertices();
    const std::size_t n = v.size();

    struct Line {
        Point2 point;  // a point on the offset line
        Point2 dir;    // unit edge direction
    };
    std::vector<Line> lines(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point2 e = v[(i + 1) % n] - v[i];
        const Point2 dir = e * (1.0 / e.norm());
        const Point2 outward{dir.y, -dir.x};  // CCW polygon: interior on the left
        lines[i] = {v[i] + outward * d, dir};
    }
    std::vector<Point2> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // New vertex i sits at the meet of offset edges (i-1) and i.
        const Line& l0 = lines[(i + n - 1) % n];
        const Line& l1 = lines[i];
        const double denom = l0.dir.cross(l1.dir);
        if (std::abs(denom) <= 1e-12) {
            out[i] = l1.point;
        } else {
            const double t = (l1.point - l0.point).cross(l1.dir) / denom;
            out[i] = l0.point + l0.dir * t;
        }
    }
    return Polygon2(std::move(out));
}

double distance_point_segment(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double len2 = ab.squared_norm();
    if (len2 <= kGeomEps * kGeomEps) return distance(p, a);
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

double distance_to_boundary(const Point2& p, const Polygon2& poly) {
    double best = std::numeric_limits<double>::infinity();
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, distance_point_segment(p, v[i], v[(i + 1) % n]));
    return best;
}

int point_in_polygon(const Point2& p, const Polygon2& poly, double eps) {
    if (distance_to_boundary(p, poly) <= eps) return 0;
    // Crossing number along the +x direction.
    bool inside = false;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xint > p.x) inside = !inside;
        }
    }
    return inside ? 1 : -1;
}

}  // namespace plc
