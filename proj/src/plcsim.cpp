#include "plc/plcsim.hpp"

#include <algorithm>
#include <cmath>

#include "plc/rng.hpp"

namespace plc {

namespace {

struct Hit {
    double range = 0.0;
    int prism = -1;
};

// Nearest surface hit along the ray, within max_range.
std::optional<Hit> nearest_hit(const Scene& scene, const Ray2& ray, double max_range) {
    std::optional<Hit> best;
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto t = ray_polygon_entry(ray, scene[i].footprint);
        if (t && *t <= max_range && (!best || *t < best->range))
            best = Hit{*t, static_cast<int>(i)};
    }
    return best;
}

// Elevation band [lo, hi] of a prism seen at horizontal range r from a sensor
// at mount height h.
std::pair<double, double> elevation_band(const ScenePrism& prism, double r, double h) {
    return {std::atan2(prism.z_min - h, r), std::atan2(prism.z_max - h, r)};
}

}  // namespace

Scene scene_at(const Scenario& scenario, double t, bool include_robots) {
    Scene scene;
    for (const auto& o : scenario.obstacles) {
        const Pose2D pose = obstacle_pose(o, t);
        scene.push_back({o.polygon().transformed(pose), o.z_min, o.z_max, o.reflectivity});
    }
    if (include_robots) {
        for (const auto& r : scenario.robots)
            scene.push_back({r.polygon(), r.z_min, r.z_max, r.reflectivity});
    }
    return scene;
}

float IntensityImage::column_max(int col) const {
    float m = 0.0f;
    for (int r = 0; r < height; ++r) m = std::max(m, at(r, col));
    return m;
}

IntensityImage image_curtain(const Scene& scene, const PlcModel& plc,
                             const CurtainProfile& profile, double laser_gain) {
    if (static_cast<int>(profile.ranges.size()) != plc.n_cols)
        throw DegenerateInput("image_curtain: profile does not match sensor column count");

    IntensityImage img;
    img.frame = profile.stamp;
    img.width = plc.n_cols;
    img.height = plc.n_rows;
    img.intensity.assign(static_cast<std::size_t>(plc.n_cols) * plc.n_rows, 0.0f);
    img.column_range = profile.ranges;

    const double row_step = plc.vertical_fov / plc.n_rows;
    for (int col = 0; col < plc.n_cols; ++col) {
        const double rc = profile.ranges[static_cast<std::size_t>(col)];
        const auto hit = nearest_hit(scene, camera_ray(plc, col), plc.max_range);
        if (!hit) continue;
        // The nearest surface both occludes and is the only candidate return.
        if (std::abs(hit->range - rc) > plc.curtain_thickness) continue;

        const ScenePrism& prism = scene[static_cast<std::size_t>(hit->prism)];
        const float value = static_cast<float>(
            std::clamp(prism.reflectivity * laser_gain, 0.0, 1.0));
        if (value <= 0.0f) continue;
        const auto [lo, hi] = elevation_band(prism, hit->range, plc.mount_height);
        for (int row = 0; row < plc.n_rows; ++row) {
            // Row 0 is the top of the image (highest elevation).
            const double elev = plc.vertical_fov / 2.0 - (row + 0.5) * row_step;
            if (elev >= lo && elev <= hi) img.at(row, col) = value;
        }
    }
    return img;
}

bool curtain_intersects(const Scene& scene, const PlcModel& plc,
                        const CurtainProfile& profile, double threshold) {
    for (int col = 0; col < plc.n_cols; ++col) {
        const auto hit = nearest_hit(scene, camera_ray(plc, col), plc.max_range);
        if (!hit) continue;
        const ScenePrism& prism = scene[static_cast<std::size_t>(hit->prism)];
        if (prism.reflectivity < threshold) continue;
        if (std::abs(hit->range - profile.ranges[static_cast<std::size_t>(col)]) >
            plc.curtain_thickness)
            continue;
        const auto [lo, hi] = elevation_band(prism, hit->range, plc.mount_height);
        if (hi >= -plc.vertical_fov / 2.0 && lo <= plc.vertical_fov / 2.0) return true;
    }
    return false;
}

InterferenceInjector::InterferenceInjector(const InterferenceModel& model)
    : model_(model) {
    if (model_.burst_length < 2 || model_.burst_length > 4)
        throw DegenerateInput("InterferenceModel: burst_length must be in [2, 4]");
}

IntensityImage InterferenceInjector::apply(IntensityImage image) {
    if (active_frames_ == 0 && !cooldown_) {
        Rng rng(derive_seed(model_.seed, counter_));
        if (rng.next_unit() < model_.burst_probability) {
            active_frames_ = model_.burst_length;
            const int max_start = std::max(1, image.width - model_.burst_columns);
            burst_col_ = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_start)));
        }
    } else if (active_frames_ == 0) {
        cooldown_ = false;
    }
    ++counter_;
    if (active_frames_ > 0) {
        --active_frames_;
        if (active_frames_ == 0) cooldown_ = true;
        const int end = std::min(image.width, burst_col_ + model_.burst_columns);
        for (int r = 0; r < image.height; ++r)
            for (int c = burst_col_; c < end; ++c) image.at(r, c) = 1.0f;
    }
    return image;
}

WatchdogStatus watchdog_check(const PlcModel& plc, double reference_range,
                              const IntensityImage& image, double expected_intensity,
                              double band) {
    (void)reference_range;
    std::vector<float> lit;
    for (int c = 0; c < plc.n_cols; ++c) {
        const float m = image.column_max(c);
        if (m > 0.0f) lit.push_back(m);
    }
    if (lit.size() < static_cast<std::size_t>(plc.n_cols) / 2)
        return WatchdogStatus::mirror_fault;
    std::nth_element(lit.begin(), lit.begin() + lit.size() / 2, lit.end());
    const double median = lit[lit.size() / 2];
    if (std::abs(median - expected_intensity) > band * expected_intensity)
        return WatchdogStatus::power_fault;
    return WatchdogStatus::healthy;
}

}  // namespace plc
