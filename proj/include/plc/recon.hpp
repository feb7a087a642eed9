#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "plc/curtain.hpp"
#include "plc/plcsim.hpp"

namespace plc {

struct InsufficientPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-pixel max over a sweep, with the range of the frame that supplied it.
struct MergedImage {
    int width = 0;
    int height = 0;
    std::vector<float> intensity;
    std::vector<double> range;

    float& at(int row, int col) { return intensity[static_cast<std::size_t>(row) * width + col]; }
    float at(int row, int col) const { return intensity[static_cast<std::size_t>(row) * width + col]; }
    double& range_at(int row, int col) { return range[static_cast<std::size_t>(row) * width + col]; }
    double range_at(int row, int col) const { return range[static_cast<std::size_t>(row) * width + col]; }
};

struct CloudPoint {
    Eigen::Vector3d p;
    float intensity = 0.0f;
};

struct PointCloud {
    std::vector<CloudPoint> points;
    std::string frame_id;
};

struct RigidTransform3 {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
        return rotation * p + translation;
    }
    RigidTransform3 compose(const RigidTransform3& inner) const;
};

// Per-pixel maximum intensity; the range comes from the argmax frame, with
// ties resolved toward the nearest range so foreground surfaces win.
MergedImage merge_max(const std::vector<IntensityImage>& images);
void merge_into(MergedImage& acc, const IntensityImage& image);

// One world-frame 3D point per pixel at or above min_intensity.
PointCloud backproject(const MergedImage& merged, const PlcModel& plc,
                       double min_intensity);

struct IcpParams {
    int max_iter = 50;
    double tol = 1e-6;              // stop when mean residual improves by less
    std::size_t min_points = 100;
    double max_pair_dist = 0.5;     // reject correspondences farther than this
    double grid_cell = 0.1;         // neighbor-grid cell size for NN queries
};

struct IcpResult {
    RigidTransform3 transform;
    double rmse = 0.0;
    int iterations = 0;
    bool converged = false;  // false when max_iter was reached
};

// Point-to-point ICP: nearest-neighbor pairing over a spatial grid hash,
// closed-form rigid update from the cross-covariance SVD.
IcpResult icp_register(const PointCloud& source, const PointCloud& target,
                       const RigidTransform3& init, const IcpParams& params = {});

struct FilterParams {
    double max_range = std::numeric_limits<double>::infinity();
    int k = 8;          // neighbors for the statistical outlier test
    double sigma = 2.0; // keep points with mean k-NN distance <= mu + sigma*sd
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();  // range measured from here
};

PointCloud filter_cloud(const PointCloud& cloud, const FilterParams& params = {});

}  // namespace plc
