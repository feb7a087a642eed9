#include "plc/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "plc/robotarm.hpp"
#include "plc/rng.hpp"

namespace plc {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double hull_distance(const Point2& p, const Polygon2& poly) {
    if (point_in_polygon(p, poly) >= 0) return 0.0;
    return distance_to_boundary(p, poly);
}

}  // namespace

std::optional<Detection> detect(const IntensityImage& image, double threshold,
                                const PlcModel& plc) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw DegenerateInput("detect: threshold must be in (0, 1)");
    Detection det;
    det.frame = image.frame;
    const double row_step = plc.vertical_fov / plc.n_rows;
    for (int col = 0; col < image.width; ++col) {
        float best = 0.0f;
        int best_row = -1;
        for (int row = 0; row < image.height; ++row) {
            if (image.at(row, col) > best) {
                best = image.at(row, col);
                best_row = row;
            }
        }
        if (best_row < 0 || best < threshold) continue;
        det.columns.push_back(col);
        const Ray2 ray = camera_ray(plc, col);
        const double rho = image.column_range[static_cast<std::size_t>(col)];
        const double elev = plc.vertical_fov / 2.0 - (best_row + 0.5) * row_step;
        const Point2 xy = ray.at(rho);
        det.locations.emplace_back(xy.x, xy.y, plc.mount_height + rho * std::tan(elev));
    }
    if (det.columns.empty()) return std::nullopt;
    return det;
}

PersistenceFilter::PersistenceFilter(int k) : k_(k) {
    if (k < 1) throw DegenerateInput("PersistenceFilter: k must be >= 1");
}

std::optional<StopEvent> PersistenceFilter::push(const std::optional<Detection>& det) {
    if (!det) {
        run_ = 0;
        fired_ = false;
        return std::nullopt;
    }
    ++run_;
    if (run_ >= k_ && !fired_) {
        fired_ = true;
        return StopEvent{det->frame, *det};
    }
    return std::nullopt;
}

std::vector<StopEvent> persistence_filter(
    const std::vector<std::optional<Detection>>& stream, int k) {
    PersistenceFilter filter(k);
    std::vector<StopEvent> out;
    for (const auto& det : stream) {
        if (auto stop = filter.push(det)) out.push_back(std::move(*stop));
    }
    return out;
}

std::string attribute_robot(const Detection& det,
                            const std::vector<std::pair<std::string, Polygon2>>& hulls) {
    if (hulls.empty()) throw DegenerateInput("attribute_robot: no robot hulls");
    Point2 centroid{0, 0};
    for (const auto& loc : det.locations) centroid = centroid + Point2{loc.x(), loc.y()};
    centroid = centroid * (1.0 / static_cast<double>(det.locations.size()));

    const std::string* best_id = nullptr;
    double best_d = 0.0;
    for (const auto& [id, poly] : hulls) {
        const double d = hull_distance(centroid, poly);
        if (!best_id || d < best_d || (d == best_d && id < *best_id)) {
            best_id = &id;
            best_d = d;
        }
    }
    return *best_id;
}

const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::intrusion_truth: return "intrusion_truth";
        case EventKind::detection: return "detection";
        case EventKind::stop_issued: return "stop_issued";
        case EventKind::robot_stopped: return "robot_stopped";
        case EventKind::resume: return "resume";
    }
    return "unknown";
}

namespace {

// Curtain for the pipeline at simulation time t. Dynamic mode re-derives the
// safety envelope from the arm joint states each frame; without arms it falls
// back to the robots' footprint corners.
CurtainProfile pipeline_curtain(const Scenario& scenario, const PlcModel& plc,
                                PipelineMode mode, double t) {
    if (mode == PipelineMode::planar)
        return planar_curtain(scenario.monitor.planar_depth, plc);

    std::vector<Point2> points;
    if (!scenario.arms.empty()) {
        for (const auto& arm : scenario.arms) {
            const ArmChain chain = build_chain(arm);
            const auto joints = forward_kinematics(chain, arm_state_at(arm, t));
            const auto flat = project_top_down(joints, Pose2D(0, 0, 0));
            points.insert(points.end(), flat.begin(), flat.end());
        }
    } else {
        for (const auto& r : scenario.robots)
            points.insert(points.end(), r.vertices.begin(), r.vertices.end());
    }
    return design_safety_curtain(points, plc, scenario.sensor.safety_offset);
}

}  // namespace

EventTimeline run_pipeline(const Scenario& scenario, const PipelineConfig& config) {
    if (scenario.fixed_plc_poses.empty())
        throw ValidationError("run_pipeline: scenario has no fixed_plc_poses");
    if (config.duration_s < 0.0)
        throw ValidationError("run_pipeline: negative duration");

    const PlcModel plc = make_plc(scenario.sensor, scenario.fixed_plc_poses[0]);
    const double rate = (config.mode == PipelineMode::planar)
                            ? scenario.sensor.frame_rate_hz
                            : scenario.sensor.dynamic_rate_hz;
    const double period = 1.0 / rate;
    const double threshold = scenario.monitor.threshold;

    EventTimeline timeline;

    // Ground-truth intrusion times: millisecond scan for rising edges of
    // curtain/obstacle overlap.
    const bool planar_mode = config.mode == PipelineMode::planar;
    CurtainProfile static_profile;
    if (planar_mode) static_profile = pipeline_curtain(scenario, plc, config.mode, 0.0);
    bool was_intruding = false;
    const long duration_ms = std::lround(config.duration_s * 1000.0);
    for (long ms = 0; ms <= duration_ms; ++ms) {
        const double t = ms / 1000.0;
        const Scene scene = scene_at(scenario, t);
        const CurtainProfile profile =
            planar_mode ? static_profile : pipeline_curtain(scenario, plc, config.mode, t);
        const bool intruding = curtain_intersects(scene, plc, profile, threshold);
        if (intruding && !was_intruding)
            timeline.events.push_back({ms, EventKind::intrusion_truth, ""});
        was_intruding = intruding;
    }

    // Frame loop: frame i integrates around mid-exposure time phase + i*T and
    // its image is delivered half a period later.
    Rng rng(derive_seed(config.seed, 0));
    const double phase = rng.next_unit() * period;
    std::optional<InterferenceInjector> injector;
    if (config.interference) injector.emplace(*config.interference);

    std::vector<std::pair<std::string, Polygon2>> hulls;
    for (const auto& r : scenario.robots) hulls.emplace_back(r.id, r.polygon());

    PersistenceFilter filter(scenario.monitor.persistence);
    std::map<std::string, long> stopped_until;  // robot id -> robot_stopped time

    for (long i = 0;; ++i) {
        const double t_mid = phase + i * period;
        if (t_mid > config.duration_s) break;
        const long deliver_ms = std::lround((t_mid + period / 2.0) * 1000.0);

        const Scene scene = scene_at(scenario, t_mid);
        const CurtainProfile profile = pipeline_curtain(scenario, plc, config.mode, t_mid);
        IntensityImage img = image_curtain(scene, plc, profile);
        img.frame = i;
        if (injector) img = injector->apply(std::move(img));

        const auto det = detect(img, threshold, plc);
        std::optional<std::string> attributed;
        if (det) {
            attributed = attribute_robot(*det, hulls);
            Point2 centroid{0, 0};
            for (const auto& loc : det->locations)
                centroid = centroid + Point2{loc.x(), loc.y()};
            centroid = centroid * (1.0 / static_cast<double>(det->locations.size()));
            bool inside_cap = false;
            for (const auto& [id, poly] : hulls) {
                if (id == *attributed)
                    inside_cap = hull_distance(centroid, poly) <= scenario.monitor.attribution_cap;
            }
            if (!inside_cap) attributed = "all";  // fail-safe broadcast
            timeline.events.push_back({deliver_ms, EventKind::detection, *attributed});
        }

        if (auto stop = filter.push(det)) {
            const long stop_ms =
                deliver_ms + std::lround(scenario.monitor.command_latency_ms);
            const long stopped_ms =
                stop_ms + std::lround(scenario.monitor.braking_latency_ms);
            const std::string target = attributed.value_or("all");
            std::vector<std::string> targets;
            if (target == "all")
                for (const auto& [id, poly] : hulls) targets.push_back(id);
            else
                targets.push_back(target);
            for (const auto& id : targets) {
                timeline.events.push_back({stop_ms, EventKind::stop_issued, id});
                timeline.events.push_back({stopped_ms, EventKind::robot_stopped, id});
                stopped_until[id] = stopped_ms;
            }
        }

        // A stopped robot resumes after the first frame with no detection
        // attributed to it, once it has actually come to rest.
        for (auto it = stopped_until.begin(); it != stopped_until.end();) {
            const bool still_flagged =
                det && (attributed == it->first || attributed == "all");
            if (!still_flagged) {
                const long resume_ms = std::max(deliver_ms, it->second);
                timeline.events.push_back({resume_ms, EventKind::resume, it->first});
                it = stopped_until.erase(it);
            } else {
                ++it;
            }
        }
    }

    std::stable_sort(timeline.events.begin(), timeline.events.end(),
                     [](const Event& a, const Event& b) {
                         if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
                         return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                     });
    return timeline;
}

LatencyReport latency_report(const EventTimeline& timeline) {
    std::vector<double> det_deltas, stop_deltas, stopped_deltas;
    const auto& ev = timeline.events;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (ev[i].kind != EventKind::intrusion_truth) continue;
        const long t0 = ev[i].t_ms;
        // End of this episode: the next intrusion_truth, if any.
        std::size_t end = ev.size();
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            if (ev[j].kind == EventKind::intrusion_truth) {
                end = j;
                break;
            }
        }
        std::optional<long> t_det, t_stop, t_stopped;
        for (std::size_t j = i + 1; j < end; ++j) {
            if (!t_det && ev[j].kind == EventKind::detection) t_det = ev[j].t_ms;
            if (!t_stop && ev[j].kind == EventKind::stop_issued) t_stop = ev[j].t_ms;
            if (!t_stopped && ev[j].kind == EventKind::robot_stopped)
                t_stopped = ev[j].t_ms;
        }
        if (t_det && t_stop && t_stopped) {
            det_deltas.push_back(static_cast<double>(*t_det - t0));
            stop_deltas.push_back(static_cast<double>(*t_stop - t0));
            stopped_deltas.push_back(static_cast<double>(*t_stopped - t0));
        }
    }
    if (det_deltas.empty())
        throw EmptyTimeline("latency_report: no complete intrusion episode");
    LatencyReport report;
    report.detection_ms = median(det_deltas);
    report.stop_issued_ms = median(stop_deltas);
    report.robot_stopped_ms = median(stopped_deltas);
    report.episodes = static_cast<int>(det_deltas.size());
    return report;
}

}  // namespace plc
