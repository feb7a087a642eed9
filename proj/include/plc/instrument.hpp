#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plc/geom2d.hpp"
#include "plc/layout.hpp"

namespace plc {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScoreOptions {
    double fov = 1.5707963267948966;
    double max_range = 30.0;
    bool occlusion = false;

    static ScoreOptions from_scenario(const Scenario& s) {
        return {s.sensor.fov, s.sensor.max_range, s.occlusion};
    }
};

struct CountedEdge {
    int plc = 0;
    std::string robot;
    int vertex_a = 0;
    int vertex_b = 0;
    double angle = 0.0;  // radians, in (0, pi]
};

// Score of one joint PLC configuration: sum of subtended edge angles plus a
// bonus of 10 per fully-observed robot, with per-vertex bookkeeping.
struct CoverageScore {
    double angle_sum = 0.0;
    std::set<std::pair<std::string, int>> observed_vertices;
    std::vector<CountedEdge> counted_edges;
    int full_coverage_bonus_count = 0;
};

inline constexpr double kFullCoverageBonus = 10.0;

struct BestConfig {
    std::vector<Pose2D> poses;
    CoverageScore score;
    std::uint64_t samples_evaluated = 0;
    std::uint64_t seed = 0;
};

// Deterministic coverage score: PLCs processed in list order; per robot the
// edge between the two sensor-closest vertices is counted once if at least
// one endpoint is still unobserved and both endpoints pass the FOV (and, with
// occlusion on, neither sight line crosses another robot).
CoverageScore score_configuration(const Scenario& scenario,
                                  const std::vector<Pose2D>& poses,
                                  const ScoreOptions& options);

// Best of n independent uniform grid-pose samples of M PLCs; ties broken by
// earliest sample. Per-sample seeds are derived from (seed, sample index), so
// results for a prefix of samples are stable under a larger n.
BestConfig sample_search(const Scenario& scenario, int M, std::uint64_t n,
                         std::uint64_t seed, const ScoreOptions& options);

// Exhaustive argmax over all grid pose tuples, lexicographic tie-break.
// Throws BudgetExceeded if the tuple count exceeds the evaluation budget.
BestConfig brute_force_search(const Scenario& scenario, int M,
                              const ScoreOptions& options,
                              std::uint64_t budget = 1'000'000'000ULL);

// 100 * observed vertices / (4 * robot count).
double coverage_percentage(const CoverageScore& score, const Scenario& scenario);

// Smallest M in [2, max_M] whose best sampled configuration reaches 100%
// coverage, or nullopt if none does.
std::optional<int> min_plcs(const Scenario& scenario, std::uint64_t n, int max_M,
                            std::uint64_t seed, const ScoreOptions& options);

}  // namespace plc
