#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "plc/recon.hpp"

using namespace plc;
using testutil::kPi;

namespace {

PlcModel test_plc() {
    SensorConfig config;
    return make_plc(config, Pose2D(0, 0, 0));
}

IntensityImage blank(const PlcModel& plc, double range = 3.0) {
    IntensityImage img;
    img.width = plc.n_cols;
    img.height = plc.n_rows;
    img.intensity.assign(static_cast<std::size_t>(plc.n_cols) * plc.n_rows, 0.0f);
    img.column_range.assign(static_cast<std::size_t>(plc.n_cols), range);
    return img;
}

// Structured cloud: grid samples on three mutually orthogonal planes, which
// pins down all six rigid degrees of freedom for ICP.
PointCloud corner_cloud(double spacing = 0.05) {
    PointCloud cloud;
    for (double a = 0.0; a <= 1.0 + 1e-9; a += spacing) {
        for (double b = 0.0; b <= 1.0 + 1e-9; b += spacing) {
            cloud.points.push_back({{a, b, 0.0}, 1.0f});
            cloud.points.push_back({{a, 0.0, b}, 1.0f});
            cloud.points.push_back({{0.0, a, b}, 1.0f});
        }
    }
    return cloud;
}

RigidTransform3 small_transform() {
    RigidTransform3 t;
    t.rotation =
        Eigen::AngleAxisd(2.0 * kPi / 180.0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    t.translation = {0.03, -0.02, 0.01};
    return t;
}

PointCloud transformed(const PointCloud& cloud, const RigidTransform3& t) {
    PointCloud out;
    for (const auto& cp : cloud.points) out.points.push_back({t.apply(cp.p), cp.intensity});
    return out;
}

}  // namespace

TEST_CASE("merge_max identity and error cases") {
    const PlcModel plc = test_plc();
    IntensityImage img = blank(plc, 2.5);
    img.at(10, 20) = 0.7f;
    const MergedImage m = merge_max({img});
    CHECK(m.width == img.width);
    CHECK(m.at(10, 20) == 0.7f);
    CHECK(m.range_at(10, 20) == 2.5);
    CHECK(m.at(0, 0) == 0.0f);

    CHECK_THROWS_AS(merge_max({}), DimensionMismatch);
    IntensityImage other = img;
    other.width = img.width / 2;
    other.intensity.resize(static_cast<std::size_t>(other.width) * other.height);
    CHECK_THROWS_AS(merge_max({img, other}), DimensionMismatch);
}

TEST_CASE("merge_max takes the per-pixel max, ties toward nearer range") {
    const PlcModel plc = test_plc();
    IntensityImage a = blank(plc, 3.0);
    IntensityImage b = blank(plc, 2.0);
    a.at(5, 5) = 0.4f;
    b.at(5, 5) = 0.9f;  // b wins on intensity
    a.at(6, 6) = 0.8f;
    b.at(6, 6) = 0.8f;  // tie: nearer range (b) wins
    a.at(7, 7) = 0.6f;  // only a

    const MergedImage ab = merge_max({a, b});
    CHECK(ab.at(5, 5) == 0.9f);
    CHECK(ab.range_at(5, 5) == 2.0);
    CHECK(ab.at(6, 6) == 0.8f);
    CHECK(ab.range_at(6, 6) == 2.0);
    CHECK(ab.at(7, 7) == 0.6f);
    CHECK(ab.range_at(7, 7) == 3.0);

    // Order independence.
    const MergedImage ba = merge_max({b, a});
    CHECK(ab.intensity == ba.intensity);
    CHECK(ab.range == ba.range);
}

TEST_CASE("backproject geometry") {
    const PlcModel plc = test_plc();
    const MergedImage empty = merge_max({blank(plc)});
    CHECK(backproject(empty, plc, 0.5).points.empty());
    CHECK_THROWS_AS(backproject(empty, plc, 0.0), DegenerateInput);

    IntensityImage img = blank(plc, 2.0);
    const int col = plc.n_cols / 2, row = plc.n_rows / 4;
    img.at(row, col) = 0.8f;
    const PointCloud cloud = backproject(merge_max({img}), plc, 0.5);
    REQUIRE(cloud.points.size() == 1);
    const Eigen::Vector3d& p = cloud.points[0].p;
    // Planar range equals the pixel's stored range; the row is above center,
    // so the point sits above the mount height.
    CHECK(p.head<2>().norm() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(p.z() > plc.mount_height);
    CHECK(p.z() < plc.mount_height + 2.0 * std::tan(plc.vertical_fov / 2.0) + 1e-9);
    CHECK(cloud.points[0].intensity == 0.8f);

    // Below the threshold nothing survives.
    CHECK(backproject(merge_max({img}), plc, 0.9).points.empty());
}

TEST_CASE("sweeping a wall reconstructs its plane") {
    const PlcModel plc = test_plc();
    const Scene scene{{Polygon2({{3.0, -4.0}, {3.2, -4.0}, {3.2, 4.0}, {3.0, 4.0}}),
                       0.0, 2.5, 0.9}};
    MergedImage merged;
    for (const auto& profile : sweep_schedule(2.5, 3.5, 0.01, plc))
        merge_into(merged, image_curtain(scene, plc, profile));
    const PointCloud cloud = backproject(merged, plc, 0.5);
    REQUIRE(cloud.points.size() > 1000);
    for (const auto& cp : cloud.points) {
        CHECK(cp.p.x() >= 3.0 - plc.curtain_thickness - 1e-9);
        CHECK(cp.p.x() <= 3.0 + plc.curtain_thickness + 1e-9);
    }
}

TEST_CASE("icp_register on identical clouds is the identity") {
    const PointCloud cloud = corner_cloud();
    const IcpResult r = icp_register(cloud, cloud, RigidTransform3{});
    CHECK(r.converged);
    CHECK(r.rmse == doctest::Approx(0.0).epsilon(1e-9));
    CHECK((r.transform.rotation - Eigen::Matrix3d::Identity()).norm() < 1e-9);
    CHECK(r.transform.translation.norm() < 1e-9);
}

TEST_CASE("icp_register recovers a small known transform") {
    const PointCloud target = corner_cloud();
    const RigidTransform3 t = small_transform();
    const PointCloud source = transformed(target, t);
    const IcpResult r = icp_register(source, target, RigidTransform3{});
    CHECK(r.converged);
    CHECK(r.rmse < 0.01);
    // The recovered transform maps source back onto target, i.e. it inverts t.
    const RigidTransform3 round_trip = r.transform.compose(t);
    CHECK((round_trip.rotation - Eigen::Matrix3d::Identity()).norm() < 0.01);
    CHECK(round_trip.translation.norm() < 0.01);
}

TEST_CASE("icp_register rejects undersized clouds") {
    PointCloud tiny;
    for (int i = 0; i < 10; ++i) tiny.points.push_back({{0.1 * i, 0, 0}, 1.0f});
    const PointCloud big = corner_cloud();
    CHECK_THROWS_AS(icp_register(tiny, big, RigidTransform3{}), InsufficientPoints);
    CHECK_THROWS_AS(icp_register(big, tiny, RigidTransform3{}), InsufficientPoints);
}

TEST_CASE("RigidTransform3 compose applies inner first") {
    RigidTransform3 rot;
    rot.rotation =
        Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    RigidTransform3 shift;
    shift.translation = {1, 0, 0};
    const Eigen::Vector3d p(1, 0, 0);
    // rot(shift(p)) = rot((2,0,0)) = (0,2,0)
    CHECK(rot.compose(shift).apply(p).isApprox(Eigen::Vector3d(0, 2, 0), 1e-12));
    // shift(rot(p)) = shift((0,1,0)) = (1,1,0)
    CHECK(shift.compose(rot).apply(p).isApprox(Eigen::Vector3d(1, 1, 0), 1e-12));
}

TEST_CASE("filter_cloud range gating and outlier removal") {
    CHECK(filter_cloud(PointCloud{}).points.empty());

    // Dense cluster plus one far outlier: the outlier has no neighbors within
    // the search radius and is dropped by the statistical test.
    PointCloud cloud = corner_cloud();
    const std::size_t n = cloud.points.size();
    cloud.points.push_back({{50.0, 50.0, 50.0}, 1.0f});

    FilterParams params;
    const PointCloud kept = filter_cloud(cloud, params);
    CHECK(kept.points.size() <= n);
    CHECK(kept.points.size() >= n * 9 / 10);  // the trim may clip cluster edges
    for (const auto& cp : kept.points) CHECK(cp.p.norm() < 10.0);

    // Range gate alone.
    FilterParams ranged;
    ranged.max_range = 10.0;
    ranged.sigma = std::numeric_limits<double>::infinity();
    CHECK(filter_cloud(cloud, ranged).points.size() == n);

    // Infinite sigma and range keeps everything.
    FilterParams open;
    open.sigma = std::numeric_limits<double>::infinity();
    CHECK(filter_cloud(cloud, open).points.size() == n + 1);

    // Range measured from a configurable origin.
    FilterParams from_far;
    from_far.origin = {50.0, 50.0, 50.0};
    from_far.max_range = 1.0;
    from_far.sigma = std::numeric_limits<double>::infinity();
    CHECK(filter_cloud(cloud, from_far).points.size() == 1);
}
