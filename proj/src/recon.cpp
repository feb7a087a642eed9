#include "plc/recon.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/SVD>

namespace plc {

namespace {

// Spatial grid hash over 3D points for approximate nearest-neighbor queries.
class NeighborGrid {
public:
    NeighborGrid(const std::vector<CloudPoint>& points, double cell)
        : points_(points), cell_(cell) {
        for (std::size_t i = 0; i < points.size(); ++i)
            cells_[cell_key(points[i].p)].push_back(static_cast<int>(i));
    }

    // Index of the nearest point within max_dist, or -1.
    int nearest(const Eigen::Vector3d& q, double max_dist) const {
        const auto [cx, cy, cz] = coords(q);
        const int reach = std::max(1, static_cast<int>(std::ceil(max_dist / cell_)));
        int best = -1;
        double best_d2 = max_dist * max_dist;
        for (int dx = -reach; dx <= reach; ++dx)
            for (int dy = -reach; dy <= reach; ++dy)
                for (int dz = -reach; dz <= reach; ++dz) {
                    const auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
                    if (it == cells_.end()) continue;
                    for (int i : it->second) {
                        const double d2 = (points_[static_cast<std::size_t>(i)].p - q).squaredNorm();
                        if (d2 < best_d2) {
                            best_d2 = d2;
                            best = i;
                        }
                    }
                }
        return best;
    }

    // Distances to up to k nearest neighbors of point index self.
    std::vector<double> knn_distances(int self, int k) const {
        const Eigen::Vector3d& q = points_[static_cast<std::size_t>(self)].p;
        const auto [cx, cy, cz] = coords(q);
        std::vector<double> d2s;
        for (int reach = 1; reach <= 4 && d2s.size() < static_cast<std::size_t>(k); ++reach) {
            d2s.clear();
            for (int dx = -reach; dx <= reach; ++dx)
                for (int dy = -reach; dy <= reach; ++dy)
                    for (int dz = -reach; dz <= reach; ++dz) {
                        const auto it = cells_.find(pack(cx + dx, cy + dy, cz + dz));
                        if (it == cells_.end()) continue;
                        for (int i : it->second) {
                            if (i == self) continue;
                            d2s.push_back(
                                (points_[static_cast<std::size_t>(i)].p - q).squaredNorm());
                        }
                    }
        }
        std::sort(d2s.begin(), d2s.end());
        if (d2s.size() > static_cast<std::size_t>(k)) d2s.resize(static_cast<std::size_t>(k));
        for (auto& d : d2s) d = std::sqrt(d);
        return d2s;
    }

private:
    std::uint64_t cell_key(const Eigen::Vector3d& p) const {
        const auto [x, y, z] = coords(p);
        return pack(x, y, z);
    }
    std::tuple<long, long, long> coords(const Eigen::Vector3d& p) const {
        return {static_cast<long>(std::floor(p.x() / cell_)),
                static_cast<long>(std::floor(p.y() / cell_)),
                static_cast<long>(std::floor(p.z() / cell_))};
    }
    // Injective for cell coordinates within +/- 2^20 of the origin.
    static std::uint64_t pack(long x, long y, long z) {
        const std::uint64_t a = static_cast<std::uint64_t>(x) & 0x1FFFFFULL;
        const std::uint64_t b = static_cast<std::uint64_t>(y) & 0x1FFFFFULL;
        const std::uint64_t c = static_cast<std::uint64_t>(z) & 0x1FFFFFULL;
        return (a << 42) | (b << 21) | c;
    }

    const std::vector<CloudPoint>& points_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

// Least-squares rigid transform mapping src onto dst (Kabsch).
RigidTransform3 kabsch(const std::vector<Eigen::Vector3d>& src,
                       const std::vector<Eigen::Vector3d>& dst) {
    Eigen::Vector3d cs = Eigen::Vector3d::Zero(), cd = Eigen::Vector3d::Zero();
    for (const auto& p : src) cs += p;
    for (const auto& p : dst) cd += p;
    cs /= static_cast<double>(src.size());
    cd /= static_cast<double>(dst.size());

    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < src.size(); ++i)
        h += (src[i] - cs) * (dst[i] - cd).transpose();

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
    d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
    RigidTransform3 t;
    t.rotation = svd.matrixV() * d * svd.matrixU().transpose();
    t.translation = cd - t.rotation * cs;
    return t;
}

}  // namespace

RigidTransform3 RigidTransform3::compose(const RigidTransform3& inner) const {
    RigidTransform3 out;
    out.rotation = rotation * inner.rotation;
    out.translation = rotation * inner.translation + translation;
    return out;
}

void merge_into(MergedImage& acc, const IntensityImage& image) {
    if (acc.width == 0) {
        acc.width = image.width;
        acc.height = image.height;
        acc.intensity.assign(image.intensity.size(), 0.0f);
        acc.range.assign(image.intensity.size(), 0.0);
    }
    if (image.width != acc.width || image.height != acc.height)
        throw DimensionMismatch("merge_max: image dimensions differ");
    for (int r = 0; r < acc.height; ++r) {
        for (int c = 0; c < acc.width; ++c) {
            const float v = image.at(r, c);
            if (v <= 0.0f) continue;
            const double rho = image.column_range[static_cast<std::size_t>(c)];
            const float cur = acc.at(r, c);
            if (v > cur || (v == cur && rho < acc.range_at(r, c))) {
                acc.at(r, c) = v;
                acc.range_at(r, c) = rho;
            }
        }
    }
}

MergedImage merge_max(const std::vector<IntensityImage>& images) {
    if (images.empty()) throw DimensionMismatch("merge_max: no images");
    MergedImage acc;
    for (const auto& img : images) merge_into(acc, img);
    return acc;
}

PointCloud backproject(const MergedImage& merged, const PlcModel& plc,
                       double min_intensity) {
    if (!(min_intensity > 0.0 && min_intensity <= 1.0))
        throw DegenerateInput("backproject: min_intensity out of (0, 1]");
    PointCloud cloud;
    const double row_step = plc.vertical_fov / plc.n_rows;
    for (int c = 0; c < merged.width; ++c) {
        const Ray2 ray = camera_ray(plc, c);
        for (int r = 0; r < merged.height; ++r) {
            const float v = merged.at(r, c);
            if (v < min_intensity) continue;
            const double rho = merged.range_at(r, c);
            const double elev = plc.vertical_fov / 2.0 - (r + 0.5) * row_step;
            const Point2 xy = ray.at(rho);
            cloud.points.push_back(
                {{xy.x, xy.y, plc.mount_height + rho * std::tan(elev)}, v});
        }
    }
    return cloud;
}

IcpResult icp_register(const PointCloud& source, const PointCloud& target,
                       const RigidTransform3& init, const IcpParams& params) {
    if (source.points.size() < params.min_points ||
        target.points.size() < params.min_points)
        throw InsufficientPoints("icp_register: cloud below min_points");

    const NeighborGrid grid(target.points, params.grid_cell);

    IcpResult result;
    result.transform = init;
    double prev_mean = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < params.max_iter; ++iter) {
        std::vector<Eigen::Vector3d> src, dst;
        src.reserve(source.points.size());
        dst.reserve(source.points.size());
        double sum = 0.0;
        for (const auto& sp : source.points) {
            const Eigen::Vector3d p = result.transform.apply(sp.p);
            const int j = grid.nearest(p, params.max_pair_dist);
            if (j < 0) continue;
            const Eigen::Vector3d& q = target.points[static_cast<std::size_t>(j)].p;
            src.push_back(p);
            dst.push_back(q);
            sum += (p - q).norm();
        }
        if (src.size() < 3) break;
        const double mean = sum / static_cast<double>(src.size());
        result.iterations = iter + 1;
        if (prev_mean - mean < params.tol) {
            result.converged = true;
            break;
        }
        prev_mean = mean;
        result.transform = kabsch(src, dst).compose(result.transform);
    }

    // Final RMS over the converged correspondences.
    double sq = 0.0;
    std::size_t n = 0;
    for (const auto& sp : source.points) {
        const Eigen::Vector3d p = result.transform.apply(sp.p);
        const int j = grid.nearest(p, params.max_pair_dist);
        if (j < 0) continue;
        sq += (p - target.points[static_cast<std::size_t>(j)].p).squaredNorm();
        ++n;
    }
    result.rmse = (n > 0) ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
    return result;
}

PointCloud filter_cloud(const PointCloud& cloud, const FilterParams& params) {
    PointCloud ranged;
    ranged.frame_id = cloud.frame_id;
    for (const auto& cp : cloud.points)
        if ((cp.p - params.origin).norm() <= params.max_range) ranged.points.push_back(cp);
    if (ranged.points.size() < 2 || !std::isfinite(params.sigma)) return ranged;

    const NeighborGrid grid(ranged.points, 0.1);
    std::vector<double> means(ranged.points.size(), 0.0);
    for (std::size_t i = 0; i < ranged.points.size(); ++i) {
        const auto ds = grid.knn_distances(static_cast<int>(i), params.k);
        if (ds.empty()) {
            means[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        double s = 0.0;
        for (double d : ds) s += d;
        means[i] = s / static_cast<double>(ds.size());
    }
    double mu = 0.0;
    std::size_t finite = 0;
    for (double m : means)
        if (std::isfinite(m)) {
            mu += m;
            ++finite;
        }
    if (finite == 0) return ranged;
    mu /= static_cast<double>(finite);
    double var = 0.0;
    for (double m : means)
        if (std::isfinite(m)) var += (m - mu) * (m - mu);
    const double sd = std::sqrt(var / static_cast<double>(finite));

    PointCloud out;
    out.frame_id = ranged.frame_id;
    for (std::size_t i = 0; i < ranged.points.size(); ++i)
        if (means[i] <= mu + params.sigma * sd) out.points.push_back(ranged.points[i]);
    return out;
}

}  // namespace plc
