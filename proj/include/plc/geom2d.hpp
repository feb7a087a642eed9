#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plc {

// On-boundary tolerance for all geometric predicates, in meters.
inline constexpr double kGeomEps = 1e-9;

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point2 operator+(const Point2& r) const { return {x + r.x, y + r.y}; }
    constexpr Point2 operator-(const Point2& r) const { return {x - r.x, y - r.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr double dot(const Point2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Point2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double squared_norm() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }

// Sensor or object pose in the top-down plane. theta is normalized to [0, 2pi).
struct Pose2D {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Pose2D() = default;
    Pose2D(double x_, double y_, double theta_);
    Point2 position() const { return {x, y}; }
};

// Wraps an angle into [0, 2pi).
double wrap_angle_2pi(double a);
// Wraps an angle into [-pi, pi].
double wrap_angle_pi(double a);

struct Ray2 {
    Point2 origin;
    Point2 direction;  // unit vector, |direction| = 1 within kGeomEps

    Ray2(Point2 origin_, double heading)
        : origin(origin_), direction{std::cos(heading), std::sin(heading)} {}
    Ray2(Point2 origin_, Point2 direction_);

    Point2 at(double t) const { return origin + direction * t; }
    double heading() const { return std::atan2(direction.y, direction.x); }
};

// Simple polygon with >= 3 vertices, normalized to CCW orientation on
// construction. Hull and offset operations additionally produce convex ones.
class Polygon2 {
public:
    explicit Polygon2(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Point2& operator[](std::size_t i) const { return verts_[i]; }

    double signed_area() const;
    bool is_convex(double eps = kGeomEps) const;
    Point2 centroid() const;

    Polygon2 transformed(const Pose2D& pose) const;  // rotate by theta, then translate

private:
    std::vector<Point2> verts_;
};

// Strictly-convex hull of the input points (Quickhull). Collinear boundary
// points are dropped. Throws DegenerateInput if fewer than 3 distinct points
// or all points collinear.
Polygon2 convex_hull(const std::vector<Point2>& points);

// Smallest non-negative t with ray.at(t) on the polygon boundary, or nullopt.
std::optional<double> ray_polygon_entry(const Ray2& ray, const Polygon2& poly);

// Unsigned angle in [0, pi] between the rays viewpoint->a and viewpoint->b.
double subtended_angle(const Point2& viewpoint, const Point2& a, const Point2& b);

// True iff p is within the sensor's angular field of view (full angle `fov`,
// centered on the heading) and within max_range of the sensor position.
bool in_fov(const Pose2D& sensor, double fov, double max_range, const Point2& p);

// True iff the open segment (a, b) passes through the interior of any blocker.
bool segment_occluded(const Point2& a, const Point2& b,
                      const std::vector<Polygon2>& blockers);

// Outward edge offset of a convex polygon by d >= 0 with mitered joins.
// Every point of the result boundary is at distance >= d from the input.
Polygon2 offset_convex(const Polygon2& poly, double d);

// 1 if p is strictly inside, 0 if on the boundary (within eps), -1 outside.
int point_in_polygon(const Point2& p, const Polygon2& poly, double eps = kGeomEps);

double distance_point_segment(const Point2& p, const Point2& a, const Point2& b);

// Distance from p to the polygon boundary (0 if exactly on it).
double distance_to_boundary(const Point2& p, const Polygon2& poly);

}  // namespace plc
