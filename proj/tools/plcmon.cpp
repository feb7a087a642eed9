// plcmon: scenario-driven PLC safety-monitoring toolkit.
//
// Subcommands:
//   instrument  - optimize PLC placement for robot coverage
//   simulate    - run the intrusion-detection pipeline on a scripted scene
//   reconstruct - sweep planar curtains and build registered point clouds
//   report      - recompute latency medians from a timeline JSON

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "plc/instrument.hpp"
#include "plc/io.hpp"
#include "plc/layout.hpp"
#include "plc/monitor.hpp"
#include "plc/recon.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInsufficientPoints = 4;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct RunTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw plc::ParseError("cannot write " + path.string());
    out << text;
}

void write_run_meta(const fs::path& out_dir, const std::string& command,
                    const std::string& scenario_path, const plc::Scenario& scenario,
                    std::uint64_t seed, const json& flags, const RunTimer& timer) {
    json meta;
    meta["command"] = command;
    meta["scenario"] = scenario_path;
    meta["seed"] = seed;
    meta["flags"] = flags;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a(plc::scenario_to_json_string(scenario))));
    meta["config_hash"] = hash;
    meta["wall_time_ms"] = timer.elapsed_ms();
    write_text(out_dir / "run_meta.json", meta.dump(2) + "\n");
}

json pose_json(const plc::Pose2D& p) {
    return json{{"x_m", p.x}, {"y_m", p.y}, {"theta_rad", p.theta}};
}

int cmd_instrument(const std::string& scenario_path, int plcs, std::uint64_t samples,
                   std::uint64_t seed, bool brute, bool occlusion, double fov_deg,
                   const std::string& out_dir_str) {
    RunTimer timer;
    const plc::Scenario scenario = plc::load_scenario(scenario_path);
    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);

    plc::ScoreOptions options = plc::ScoreOptions::from_scenario(scenario);
    if (occlusion) options.occlusion = true;
    if (fov_deg > 0.0) options.fov = fov_deg * 3.14159265358979323846 / 180.0;
    const int M = plcs > 0 ? plcs : scenario.plc_count;

    const plc::BestConfig best =
        brute ? plc::brute_force_search(scenario, M, options)
              : plc::sample_search(scenario, M, samples, seed, options);

    json report;
    report["method"] = brute ? "brute_force" : "sample_search";
    report["plcs"] = M;
    report["samples_evaluated"] = best.samples_evaluated;
    report["seed"] = seed;
    report["poses"] = json::array();
    for (const auto& p : best.poses) report["poses"].push_back(pose_json(p));
    report["angle_sum"] = best.score.angle_sum;
    report["full_coverage_bonus_count"] = best.score.full_coverage_bonus_count;
    report["observed_vertices"] = best.score.observed_vertices.size();
    report["coverage_percent"] = plc::coverage_percentage(best.score, scenario);
    write_text(out_dir / "placement.json", report.dump(2) + "\n");
    plc::write_placement_svg(scenario, best.poses, options.fov,
                             (out_dir / "placement.svg").string());

    write_run_meta(out_dir, "instrument", scenario_path, scenario, seed,
                   json{{"plcs", M},
                        {"samples", samples},
                        {"brute_force", brute},
                        {"occlusion", options.occlusion},
                        {"fov_rad", options.fov}},
                   timer);
    std::printf("instrument: coverage %.1f%%, angle_sum %.4f (%s, %llu evaluations)\n",
                plc::coverage_percentage(best.score, scenario), best.score.angle_sum,
                brute ? "brute force" : "sampled",
                static_cast<unsigned long long>(best.samples_evaluated));
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& mode,
                 double duration, std::uint64_t seed, int persistence,
                 bool dump_curtains, const std::string& out_dir_str) {
    RunTimer timer;
    plc::Scenario scenario = plc::load_scenario(scenario_path);
    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);

    plc::PipelineConfig config;
    config.mode =
        (mode == "dynamic") ? plc::PipelineMode::dynamic_safety : plc::PipelineMode::planar;
    config.duration_s = duration;
    config.seed = seed;
    if (persistence > 0) scenario.monitor.persistence = persistence;

    const plc::EventTimeline timeline = plc::run_pipeline(scenario, config);
    plc::write_timeline(timeline, (out_dir / "timeline.json").string());

    try {
        const plc::LatencyReport report = plc::latency_report(timeline);
        json j{{"detection_ms", report.detection_ms},
               {"stop_issued_ms", report.stop_issued_ms},
               {"robot_stopped_ms", report.robot_stopped_ms},
               {"episodes", report.episodes}};
        write_text(out_dir / "latency.json", j.dump(2) + "\n");
    } catch (const plc::EmptyTimeline&) {
        std::fprintf(stderr, "simulate: no complete intrusion episode; latency report skipped\n");
    }

    if (dump_curtains && !scenario.fixed_plc_poses.empty()) {
        const plc::PlcModel plcm =
            plc::make_plc(scenario.sensor, scenario.fixed_plc_poses[0]);
        const double rate = (config.mode == plc::PipelineMode::planar)
                                ? scenario.sensor.frame_rate_hz
                                : scenario.sensor.dynamic_rate_hz;
        const long frames = static_cast<long>(duration * rate);
        for (long i = 0; i < frames; ++i) {
            const plc::CurtainProfile profile =
                (config.mode == plc::PipelineMode::planar)
                    ? plc::planar_curtain(scenario.monitor.planar_depth, plcm)
                    : plc::design_safety_curtain(
                          [&] {
                              std::vector<plc::Point2> pts;
                              for (const auto& r : scenario.robots)
                                  pts.insert(pts.end(), r.vertices.begin(),
                                             r.vertices.end());
                              return pts;
                          }(),
                          plcm, scenario.sensor.safety_offset);
            char name[64];
            std::snprintf(name, sizeof(name), "curtain_%06ld.csv", i);
            plc::write_profile_csv(profile, (out_dir / name).string());
        }
    }

    write_run_meta(out_dir, "simulate", scenario_path, scenario, seed,
                   json{{"mode", mode},
                        {"duration_s", duration},
                        {"persistence", scenario.monitor.persistence}},
                   timer);
    std::printf("simulate: %zu events over %.2f s\n", timeline.events.size(), duration);
    return 0;
}

int cmd_reconstruct(const std::string& scenario_path, double sweep_interval,
                    double sweep_min, double sweep_max, std::uint64_t seed,
                    const std::string& out_dir_str) {
    RunTimer timer;
    const plc::Scenario scenario = plc::load_scenario(scenario_path);
    const fs::path out_dir(out_dir_str);
    fs::create_directories(out_dir);
    if (scenario.fixed_plc_poses.empty())
        throw plc::ValidationError("reconstruct: scenario has no fixed_plc_poses");

    const plc::Scene scene = plc::scene_at(scenario, 0.0, /*include_robots=*/true);
    if (scene.empty())
        std::fprintf(stderr, "reconstruct: scene is empty; clouds will be empty\n");

    std::vector<plc::PointCloud> clouds;
    for (std::size_t i = 0; i < scenario.fixed_plc_poses.size(); ++i) {
        const plc::PlcModel plcm =
            plc::make_plc(scenario.sensor, scenario.fixed_plc_poses[i]);
        double d_max = sweep_max;
        if (d_max <= 0.0) {
            // Reach the farthest workspace corner.
            d_max = 0.0;
            for (double cx : {scenario.workspace.min_x, scenario.workspace.max_x})
                for (double cy : {scenario.workspace.min_y, scenario.workspace.max_y})
                    d_max = std::max(d_max, plc::distance(plcm.pose.position(), {cx, cy}));
            d_max = std::min(d_max, plcm.max_range);
        }
        plc::MergedImage merged;
        for (const auto& profile :
             plc::sweep_schedule(sweep_min, d_max, sweep_interval, plcm))
            plc::merge_into(merged, plc::image_curtain(scene, plcm, profile));

        plc::PointCloud cloud = plc::backproject(merged, plcm, 0.1);
        plc::FilterParams fparams;
        fparams.origin = {plcm.pose.x, plcm.pose.y, plcm.mount_height};
        fparams.max_range = plcm.max_range;
        cloud = plc::filter_cloud(cloud, fparams);
        cloud.frame_id = "plc" + std::to_string(i);

        char name[64];
        std::snprintf(name, sizeof(name), "plc%zu.ply", i);
        plc::write_ply(cloud, (out_dir / name).string());
        std::snprintf(name, sizeof(name), "plc%zu_merged.pgm", i);
        plc::write_pgm(merged, (out_dir / name).string());
        clouds.push_back(std::move(cloud));
    }

    json icp_report = json::array();
    plc::PointCloud combined = clouds[0];
    if (clouds.size() > 1 && !scene.empty()) {
        for (std::size_t i = 1; i < clouds.size(); ++i) {
            const plc::IcpResult r =
                plc::icp_register(clouds[i], clouds[0], plc::RigidTransform3{});
            for (const auto& cp : clouds[i].points)
                combined.points.push_back({r.transform.apply(cp.p), cp.intensity});
            json jr;
            jr["source"] = clouds[i].frame_id;
            jr["target"] = clouds[0].frame_id;
            jr["rmse_m"] = r.rmse;
            jr["iterations"] = r.iterations;
            jr["converged"] = r.converged;
            icp_report.push_back(jr);
        }
    }
    plc::write_ply(combined, (out_dir / "combined.ply").string());
    write_text(out_dir / "icp_report.json", icp_report.dump(2) + "\n");

    write_run_meta(out_dir, "reconstruct", scenario_path, scenario, seed,
                   json{{"sweep_interval_m", sweep_interval},
                        {"sweep_min_m", sweep_min},
                        {"sweep_max_m", sweep_max}},
                   timer);
    std::printf("reconstruct: %zu cloud(s), combined %zu points\n", clouds.size(),
                combined.points.size());
    return 0;
}

int cmd_report(const std::string& timeline_path) {
    std::ifstream in(timeline_path);
    if (!in) throw plc::ParseError("cannot open timeline: " + timeline_path);
    json j;
    in >> j;
    plc::EventTimeline timeline;
    for (const auto& je : j["events"]) {
        plc::Event e;
        e.t_ms = je["t_ms"].get<long>();
        const std::string kind = je["kind"].get<std::string>();
        if (kind == "intrusion_truth") e.kind = plc::EventKind::intrusion_truth;
        else if (kind == "detection") e.kind = plc::EventKind::detection;
        else if (kind == "stop_issued") e.kind = plc::EventKind::stop_issued;
        else if (kind == "robot_stopped") e.kind = plc::EventKind::robot_stopped;
        else e.kind = plc::EventKind::resume;
        e.payload = je.value("payload", "");
        timeline.events.push_back(e);
    }
    const plc::LatencyReport report = plc::latency_report(timeline);
    std::printf("episodes: %d\n", report.episodes);
    std::printf("detection_ms: %.1f\n", report.detection_ms);
    std::printf("stop_issued_ms: %.1f\n", report.stop_issued_ms);
    std::printf("robot_stopped_ms: %.1f\n", report.robot_stopped_ms);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"programmable light curtain safety-monitoring toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".", mode = "planar", timeline_path;
    std::uint64_t seed = 0, samples = 10000;
    int plcs = 0, persistence = 0;
    double fov_deg = 0.0, duration = 10.0;
    double sweep_interval = 0.01, sweep_min = 0.5, sweep_max = 0.0;
    bool brute = false, occlusion = false, dump_curtains = false;

    auto* inst = app.add_subcommand("instrument", "optimize PLC placement");
    inst->add_option("--scenario", scenario_path, "scenario JSON")->required();
    inst->add_option("--plcs", plcs, "number of PLCs (default: scenario plc_count)");
    inst->add_option("--samples", samples, "number of random samples");
    inst->add_option("--seed", seed, "RNG seed");
    inst->add_option("--out", out_dir, "output directory");
    inst->add_flag("--brute-force", brute, "exhaustive grid search");
    inst->add_flag("--occlusion", occlusion, "enable robot-robot occlusion");
    inst->add_option("--fov-deg", fov_deg, "override sensor FOV, degrees");

    auto* sim = app.add_subcommand("simulate", "run the intrusion pipeline");
    sim->add_option("--scenario", scenario_path, "scenario JSON")->required();
    sim->add_option("--mode", mode, "planar|dynamic")
        ->check(CLI::IsMember({"planar", "dynamic"}));
    sim->add_option("--duration", duration, "simulated seconds");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--persistence", persistence, "stop after k consecutive frames");
    sim->add_flag("--dump-curtains", dump_curtains, "write per-frame curtain CSVs");
    sim->add_option("--out", out_dir, "output directory");

    auto* rec = app.add_subcommand("reconstruct", "sweep and reconstruct the scene");
    rec->add_option("--scenario", scenario_path, "scenario JSON")->required();
    rec->add_option("--sweep-interval", sweep_interval, "sweep step, meters");
    rec->add_option("--sweep-min", sweep_min, "first sweep depth, meters");
    rec->add_option("--sweep-max", sweep_max, "last sweep depth (0 = auto)");
    rec->add_option("--seed", seed, "RNG seed");
    rec->add_option("--out", out_dir, "output directory");

    auto* rep = app.add_subcommand("report", "latency medians from a timeline");
    rep->add_option("--timeline", timeline_path, "timeline JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (inst->parsed())
            return cmd_instrument(scenario_path, plcs, samples, seed, brute, occlusion,
                                  fov_deg, out_dir);
        if (sim->parsed())
            return cmd_simulate(scenario_path, mode, duration, seed, persistence,
                                dump_curtains, out_dir);
        if (rec->parsed())
            return cmd_reconstruct(scenario_path, sweep_interval, sweep_min, sweep_max,
                                   seed, out_dir);
        if (rep->parsed()) return cmd_report(timeline_path);
    } catch (const plc::BudgetExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBudget;
    } catch (const plc::InsufficientPoints& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInsufficientPoints;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return 0;
}
