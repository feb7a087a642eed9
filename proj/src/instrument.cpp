#include "plc/instrument.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "plc/rng.hpp"

namespace plc {

namespace {

// Precomputed per-scenario scoring context so the hot loop allocates nothing.
struct ScoreContext {
    const Scenario& scenario;
    ScoreOptions options;
    std::vector<std::array<Point2, 4>> verts;
    std::vector<Polygon2> polygons;  // only populated when occlusion is on

    explicit ScoreContext(const Scenario& sc, const ScoreOptions& opt)
        : scenario(sc), options(opt) {
        verts.reserve(sc.robots.size());
        for (const auto& r : sc.robots) verts.push_back(r.vertices);
        if (options.occlusion) {
            polygons.reserve(sc.robots.size());
            for (const auto& r : sc.robots) polygons.push_back(r.polygon());
        }
    }
};

double score_fast(const ScoreContext& ctx, const std::vector<Pose2D>& poses,
                  std::vector<std::uint8_t>& observed,
                  std::vector<CountedEdge>* edges) {
    const std::size_t n_robots = ctx.verts.size();
    observed.assign(n_robots * 4, 0);
    double sum = 0.0;

    for (std::size_t p = 0; p < poses.size(); ++p) {
        const Pose2D& pose = poses[p];
        const Point2 pos = pose.position();
        for (std::size_t r = 0; r < n_robots; ++r) {
            const auto& v = ctx.verts[r];
            bool fov[4];
            bool any = false;
            for (int k = 0; k < 4; ++k) {
                fov[k] = in_fov(pose, ctx.options.fov, ctx.options.max_range, v[k]);
                any = any || fov[k];
            }
            if (!any) continue;

            // Two sensor-closest vertices; ties resolved by lower index.
            int order[4] = {0, 1, 2, 3};
            double d2[4];
            for (int k = 0; k < 4; ++k) d2[k] = (v[k] - pos).squared_norm();
            std::sort(order, order + 4, [&](int a, int b) {
                return d2[a] < d2[b] || (d2[a] == d2[b] && a < b);
            });
            int ia = order[0], ib = order[1];
            if (ia > ib) std::swap(ia, ib);
            // A sensor exactly on a robot corner has no defined sight line or
            // subtended angle there; such a pose scores nothing for the robot.
            if (d2[ia] == 0.0 || d2[ib] == 0.0) continue;

            if (!fov[ia] || !fov[ib]) continue;
            std::uint8_t& oa = observed[r * 4 + static_cast<std::size_t>(ia)];
            std::uint8_t& ob = observed[r * 4 + static_cast<std::size_t>(ib)];
            if (oa && ob) continue;  // edge fully double-counted already

            if (ctx.options.occlusion) {
                bool blocked = false;
                for (std::size_t o = 0; o < ctx.polygons.size() && !blocked; ++o) {
                    if (o == r) continue;
                    const std::vector<Polygon2> blocker{ctx.polygons[o]};
                    if (segment_occluded(pos, v[ia], blocker) ||
                        segment_occluded(pos, v[ib], blocker))
                        blocked = true;
                }
                if (blocked) continue;
            }

            const double angle = subtended_angle(pos, v[ia], v[ib]);
            sum += angle;
            oa = 1;
            ob = 1;
            if (edges && angle > 0.0)
                edges->push_back({static_cast<int>(p), ctx.scenario.robots[r].id, ia, ib,
                                  angle});
        }
    }

    for (std::size_t r = 0; r < n_robots; ++r) {
        if (observed[r * 4] && observed[r * 4 + 1] && observed[r * 4 + 2] &&
            observed[r * 4 + 3])
            sum += kFullCoverageBonus;
    }
    return sum;
}

CoverageScore full_score(const ScoreContext& ctx, const std::vector<Pose2D>& poses) {
    CoverageScore score;
    std::vector<std::uint8_t> observed;
    score.angle_sum = score_fast(ctx, poses, observed, &score.counted_edges);
    for (std::size_t r = 0; r < ctx.verts.size(); ++r) {
        bool all = true;
        for (int k = 0; k < 4; ++k) {
            if (observed[r * 4 + static_cast<std::size_t>(k)])
                score.observed_vertices.insert({ctx.scenario.robots[r].id, k});
            else
                all = false;
        }
        if (all) ++score.full_coverage_bonus_count;
    }
    return score;
}

std::vector<Pose2D> sample_poses(const Scenario& sc, int M, Rng& rng) {
    std::vector<Pose2D> poses;
    poses.reserve(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const int ix = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sc.grid.x_bins)));
        const int iy = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sc.grid.y_bins)));
        const int it = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(sc.grid.theta_bins)));
        poses.push_back(grid_pose(sc.grid, ix, iy, it));
    }
    return poses;
}

}  // namespace

CoverageScore score_configuration(const Scenario& scenario,
                                  const std::vector<Pose2D>& poses,
                                  const ScoreOptions& options) {
    const ScoreContext ctx(scenario, options);
    return full_score(ctx, poses);
}

BestConfig sample_search(const Scenario& scenario, int M, std::uint64_t n,
                         std::uint64_t seed, const ScoreOptions& options) {
    if (M < 1 || n < 1) throw DegenerateInput("sample_search: require M >= 1, n >= 1");
    const ScoreContext ctx(scenario, options);

    double best_sum = -1.0;
    std::vector<Pose2D> best_poses;
    std::vector<std::uint8_t> observed;
    for (std::uint64_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, i));
        const std::vector<Pose2D> poses = sample_poses(scenario, M, rng);
        const double sum = score_fast(ctx, poses, observed, nullptr);
        if (sum > best_sum) {
            best_sum = sum;
            best_poses = poses;
        }
    }

    BestConfig best;
    best.poses = std::move(best_poses);
    best.score = full_score(ctx, best.poses);
    best.samples_evaluated = n;
    best.seed = seed;
    return best;
}

BestConfig brute_force_search(const Scenario& scenario, int M,
                              const ScoreOptions& options, std::uint64_t budget) {
    if (M < 1) throw DegenerateInput("brute_force_search: require M >= 1");
    const std::uint64_t per_plc = static_cast<std::uint64_t>(scenario.grid.total_poses());
    std::uint64_t total = 1;
    for (int m = 0; m < M; ++m) {
        if (total > budget / per_plc) throw BudgetExceeded("brute_force_search: grid^M exceeds budget");
        total *= per_plc;
    }
    if (total > budget) throw BudgetExceeded("brute_force_search: grid^M exceeds budget");

    // Flattened pose index -> pose, lexicographic in (ix, iy, itheta).
    std::vector<Pose2D> poses_flat;
    poses_flat.reserve(per_plc);
    for (int ix = 0; ix < scenario.grid.x_bins; ++ix)
        for (int iy = 0; iy < scenario.grid.y_bins; ++iy)
            for (int it = 0; it < scenario.grid.theta_bins; ++it)
                poses_flat.push_back(grid_pose(scenario.grid, ix, iy, it));

    const ScoreContext ctx(scenario, options);
    std::vector<std::size_t> digits(static_cast<std::size_t>(M), 0);
    std::vector<Pose2D> poses(static_cast<std::size_t>(M), poses_flat[0]);
    std::vector<std::uint8_t> observed;

    double best_sum = -1.0;
    std::vector<Pose2D> best_poses;
    for (std::uint64_t step = 0; step < total; ++step) {
        for (std::size_t m = 0; m < digits.size(); ++m) poses[m] = poses_flat[digits[m]];
        const double sum = score_fast(ctx, poses, observed, nullptr);
        if (sum > best_sum) {
            best_sum = sum;
            best_poses = poses;
        }
        // Odometer increment, last PLC fastest.
        for (std::size_t m = digits.size(); m-- > 0;) {
            if (++digits[m] < poses_flat.size()) break;
            digits[m] = 0;
        }
    }

    BestConfig best;
    best.poses = std::move(best_poses);
    best.score = full_score(ctx, best.poses);
    best.samples_evaluated = total;
    return best;
}

double coverage_percentage(const CoverageScore& score, const Scenario& scenario) {
    const double denom = 4.0 * static_cast<double>(scenario.robots.size());
    if (denom == 0.0) return 0.0;
    return 100.0 * static_cast<double>(score.observed_vertices.size()) / denom;
}

std::optional<int> min_plcs(const Scenario& scenario, std::uint64_t n, int max_M,
                            std::uint64_t seed, const ScoreOptions& options) {
    if (max_M < 2) throw DegenerateInput("min_plcs: require max_M >= 2");
    for (int M = 2; M <= max_M; ++M) {
        const BestConfig best = sample_search(scenario, M, n, seed, options);
        if (coverage_percentage(best.score, scenario) >= 100.0 - 1e-9) return M;
    }
    return std::nullopt;
}

}  // namespace plc
