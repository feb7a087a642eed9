#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plc/curtain.hpp"
#include "plc/layout.hpp"
#include "plc/plcsim.hpp"

namespace plc {

struct EmptyTimeline : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Detection {
    long frame = 0;
    std::vector<int> columns;
    std::vector<Eigen::Vector3d> locations;  // world frame, one per column
    std::optional<std::string> robot_id;
};

// Columns whose max intensity reaches the threshold, back-projected to 3D at
// the column's imaged control-point range and the row of peak intensity.
std::optional<Detection> detect(const IntensityImage& image, double threshold,
                                const PlcModel& plc);

struct StopEvent {
    long frame = 0;  // frame at which the persistence requirement was met
    Detection detection;
};

// Streaming persistence filter: one StopEvent per maximal run of >= k
// consecutive detection frames, emitted on the k-th frame of the run.
class PersistenceFilter {
public:
    explicit PersistenceFilter(int k);
    std::optional<StopEvent> push(const std::optional<Detection>& det);

private:
    int k_;
    int run_ = 0;
    bool fired_ = false;
};

std::vector<StopEvent> persistence_filter(
    const std::vector<std::optional<Detection>>& stream, int k);

// Id of the hull nearest (top-down) to the detection centroid; ties broken by
// id order.
std::string attribute_robot(const Detection& det,
                            const std::vector<std::pair<std::string, Polygon2>>& hulls);

enum class EventKind { intrusion_truth, detection, stop_issued, robot_stopped, resume };

struct Event {
    long t_ms = 0;
    EventKind kind = EventKind::detection;
    std::string payload;  // robot / obstacle id, free-form
};

struct EventTimeline {
    std::vector<Event> events;
};

const char* event_kind_name(EventKind kind);

enum class PipelineMode { planar, dynamic_safety };

struct PipelineConfig {
    PipelineMode mode = PipelineMode::planar;
    double duration_s = 10.0;
    std::uint64_t seed = 0;
    std::optional<InterferenceModel> interference;
};

// Steps a simulated clock at the curtain frame period, rendering curtains
// against the scripted scene, detecting, filtering, and issuing stops with
// the configured command and braking latencies. Ground-truth intrusion times
// come from a millisecond-resolution scan of the scripts.
EventTimeline run_pipeline(const Scenario& scenario, const PipelineConfig& config);

struct LatencyReport {
    double detection_ms = 0.0;
    double stop_issued_ms = 0.0;
    double robot_stopped_ms = 0.0;
    int episodes = 0;
};

// Per-event median deltas relative to the matching intrusion_truth events.
LatencyReport latency_report(const EventTimeline& timeline);

}  // namespace plc
